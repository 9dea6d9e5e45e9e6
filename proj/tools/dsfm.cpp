// dsfm command-line front end.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dsfm/bench.hpp"
#include "dsfm/generators.hpp"
#include "dsfm/problem_io.hpp"
#include "dsfm/sampling.hpp"
#include "dsfm/solver.hpp"

namespace fs = std::filesystem;
using namespace dsfm;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "1..10", "1,4,9" or "7"
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const auto a = std::stoull(s.substr(0, dots));
    const auto b = std::stoull(s.substr(dots + 2));
    if (b < a) throw UsageError("empty seed range " + s);
    for (auto v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  for (const auto& t : split(s, ',')) out.push_back(std::stoull(t));
  return out;
}

// "5:50:5" or "5,10,20"
std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  if (s.find(':') != std::string::npos) {
    const auto p = split(s, ':');
    if (p.size() != 3) throw UsageError("range must be start:stop:step");
    const int a = std::stoi(p[0]);
    const int b = std::stoi(p[1]);
    const int step = std::stoi(p[2]);
    if (step < 1) throw UsageError("range step must be positive");
    for (int v = a; v <= b; v += step) out.push_back(v);
    return out;
  }
  for (const auto& t : split(s, ',')) out.push_back(std::stoi(t));
  return out;
}

std::vector<Method> parse_methods(const std::string& s) {
  std::vector<Method> out;
  for (const auto& t : split(s, ',')) {
    auto m = parse_method(t);
    if (!m) throw UsageError("unknown algorithm '" + t + "'");
    out.push_back(*m);
  }
  return out;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("DSFM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;
}

void print_solution(const RunResult& r, std::ostream& out) {
  out << "status: "
      << (r.status == RunStatus::converged ? "converged" : "unconverged") << "\n";
  out << "F(S*): " << format_double(r.solution.value) << "\n";
  out << "|S*|: " << r.solution.set.size() << "\n";
  out << "S*:";
  for (Element e : r.solution.set) out << ' ' << e + 1;
  out << "\n";
  out << "nu_s: " << format_double(r.gaps.nu_s) << "\n";
  out << "nu_d: " << format_double(r.gaps.nu_d) << "\n";
  out << "iterations: " << r.iterations << "\n";
  out << "projections: " << r.projections << "\n";
}

void write_summary(const fs::path& path, const std::vector<BenchSummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "method,weights,K,runs,converged,median_iterations,"
         "median_scaled_iterations,median_projections\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.weights << ',' << r.k << ',' << r.runs << ','
        << r.converged << ',' << format_double(r.median_iterations) << ','
        << format_double(r.median_scaled_iterations) << ','
        << format_double(r.median_projections) << "\n";
  }
}

void print_summary(const std::vector<BenchSummaryRow>& rows) {
  std::cout << std::left << std::setw(16) << "method" << std::setw(13) << "weights"
            << std::setw(6) << "K" << std::setw(11) << "converged"
            << std::setw(14) << "med.iters" << std::setw(16) << "med.iters*K/R"
            << "med.projections\n";
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(16) << r.method << std::setw(13) << r.weights
              << std::setw(6) << r.k << std::setw(11)
              << (std::to_string(r.converged) + "/" + std::to_string(r.runs))
              << std::setw(14) << r.median_iterations << std::setw(16)
              << r.median_scaled_iterations << r.median_projections << "\n";
  }
}

void write_traces(const fs::path& dir, const std::vector<BenchRecord>& recs) {
  if (dir.empty()) return;
  for (const auto& r : recs) {
    std::string name = r.method + "_" + r.weights + "_K" + std::to_string(r.k) +
                       "_seed" + std::to_string(r.seed) + ".csv";
    write_trace(dir / name, r.result.trace);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposable submodular function minimization"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: DSFM_THREADS or all cores)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
  std::string problem;
  std::string algo = "iap";
  int k = 1;
  std::string plan = "uniform";
  double eps = 1e-6;
  std::string gap = "smooth";
  std::string wmode = "ones";
  std::uint64_t seed = 1;
  long max_iters = 1000000;
  long period = 0;
  double restart_c = 1.0;
  std::string trace_path;
  solve_cmd->add_option("problem", problem, "Problem file")->required();
  solve_cmd->add_option("--algo", algo, "ap|iap|rcdm-seq|rcdm-par|rcdm-u|rcdm-g|acdm|iap-weighted|rcdm-weighted");
  solve_cmd->add_option("--k", k, "Blocks per iteration");
  solve_cmd->add_option("--plan", plan, "uniform|greedy");
  solve_cmd->add_option("--eps", eps, "Gap threshold");
  solve_cmd->add_option("--gap", gap, "smooth|discrete|both");
  solve_cmd->add_option("--w", wmode, "ones|mu|mu_sqrt|table2|table2_sqrt");
  solve_cmd->add_option("--seed", seed);
  solve_cmd->add_option("--max-iters", max_iters);
  solve_cmd->add_option("--period", period, "Iterations between gap checks");
  solve_cmd->add_option("--restart-c", restart_c, "ACDM restart constant");
  solve_cmd->add_option("--trace", trace_path, "Trace CSV output");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment matrix");
  std::string kind;
  std::string ns = "5:50:5";
  std::string algos;
  std::string seeds = "1..10";
  std::string out_dir;
  std::string ks = "10,50";
  std::string wmodes = "ones,table2,table2_sqrt";
  double ratio = 0.001;
  double alpha = 0.1;
  int bench_k = 0;
  int width = 16;
  int height = 16;
  int block = 4;
  std::string image;
  int ba_n = 100;
  long bench_max = 1000000;
  bench_cmd->add_option("kind", kind, "example31|karate|ba|grid")->required();
  bench_cmd->add_option("--n", ns, "example31: n range a:b:step; ba: N");
  bench_cmd->add_option("--algos", algos, "Comma-separated algorithms");
  bench_cmd->add_option("--seeds", seeds, "Seed list a..b or a,b,c");
  bench_cmd->add_option("--out", out_dir, "Output directory");
  bench_cmd->add_option("--eps", eps, "Gap threshold (example31: same as --ratio)");
  bench_cmd->add_option("--gap", gap, "smooth|discrete|both");
  bench_cmd->add_option("--ratio", ratio, "example31: stop at g <= ratio*g0");
  bench_cmd->add_option("--alpha", alpha, "K = round(alpha*R)");
  bench_cmd->add_option("--k", ks, "K (ba: list)");
  bench_cmd->add_option("--w", wmodes, "ba: weight modes");
  bench_cmd->add_option("--width", width);
  bench_cmd->add_option("--height", height);
  bench_cmd->add_option("--block", block, "grid: region side (0: none)");
  bench_cmd->add_option("--image", image, "grid: 8-bit PGM/PPM input");
  bench_cmd->add_option("--max-iters", bench_max);

  // partition
  auto* part_cmd = app.add_subcommand("partition", "Greedy balanced partition report");
  int part_k = 1;
  part_cmd->add_option("problem", problem, "Problem file")->required();
  part_cmd->add_option("--k", part_k, "Blocks per part")->required();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated problem file");
  std::string gen_kind;
  int gen_n = 10;
  int gen_m = 20;
  std::string gen_out;
  gen_cmd->add_option("kind", gen_kind, "example31|karate|ba|grid|hypergraph|mixed")->required();
  gen_cmd->add_option("--n", gen_n, "Size parameter");
  gen_cmd->add_option("--m", gen_m, "Components (hypergraph, mixed)");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--width", width);
  gen_cmd->add_option("--height", height);
  gen_cmd->add_option("--block", block);
  gen_cmd->add_option("--image", image);
  gen_cmd->add_option("-o,--out", gen_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const int nthreads = resolve_threads(threads);

  try {
    auto parse_gap = [](const std::string& g) {
      if (g == "smooth") return GapKind::smooth;
      if (g == "discrete") return GapKind::discrete;
      if (g == "both") return GapKind::both;
      throw UsageError("unknown gap kind '" + g + "'");
    };

    if (*solve_cmd) {
      auto parsed = read_problem(problem);
      for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
      const Decomposition& d = parsed.decomposition;
      auto method = parse_method(algo);
      if (!method) throw UsageError("unknown algorithm '" + algo + "'");
      if (plan == "greedy") {
        method->plan = PlanKind::balanced_partition;
      } else if (plan != "uniform") {
        throw UsageError("unknown plan '" + plan + "'");
      }
      if (method->plan == PlanKind::balanced_partition &&
          (is_full_sweep(method->algorithm) || method->algorithm == Algorithm::rcdm_seq)) {
        throw UsageError("--plan greedy needs rcdm-par or acdm");
      }
      auto mode = parse_weight_mode(wmode);
      if (!mode) throw UsageError("unknown weight mode '" + wmode + "'");
      if (*mode != WeightMode::ones &&
          !(method->algorithm == Algorithm::iap || method->algorithm == Algorithm::iap_weighted ||
            method->algorithm == Algorithm::rcdm_par || method->algorithm == Algorithm::rcdm_weighted ||
            method->algorithm == Algorithm::acdm)) {
        throw UsageError("--w needs an IAP, RCDM or ACDM algorithm");
      }
      SolverConfig cfg;
      cfg.k = k;
      cfg.epsilon = eps;
      cfg.gap = parse_gap(gap);
      cfg.seed = seed;
      cfg.max_iterations = max_iters;
      cfg.gap_check_period = period;
      cfg.restart_c = restart_c;
      cfg.threads = nthreads;
      if (cfg.projection_tolerance >= eps / 10) cfg.projection_tolerance = eps / 100;
      const auto rec = run_method(d, *method, cfg, *mode);
      if (!trace_path.empty()) write_trace(fs::path(trace_path), rec.result.trace);
      std::cout << "algorithm: " << rec.result.trace.algorithm << " K=" << rec.result.trace.k
                << " plan=" << rec.result.trace.plan
                << " theta_one_inf=" << format_double(rec.result.trace.theta_one_inf) << "\n";
      print_solution(rec.result, std::cout);
      return rec.result.status == RunStatus::converged ? 0 : 2;
    }

    if (*bench_cmd) {
      const fs::path out = out_dir;
      if (!out.empty()) fs::create_directories(out);
      if (kind == "example31") {
        if (bench_cmd->count("--eps") && !bench_cmd->count("--ratio")) ratio = eps;
        const auto summary = bench_example31(parse_int_list(ns),
                                             static_cast<int>(parse_seeds(seeds).size()),
                                             ratio, parse_seeds(seeds).front());
        std::cout << "n,N,mean_iterations\n";
        for (const auto& p : summary.points) {
          std::cout << p.n << ',' << p.ground_size << ',' << format_double(p.mean_iterations) << "\n";
        }
        std::cout << "slope: " << format_double(summary.slope) << "\n";
        if (!out.empty()) {
          std::ofstream f(out / "summary.csv");
          f << "# slope=" << format_double(summary.slope) << "\n";
          f << "n,N,mean_iterations\n";
          for (const auto& p : summary.points) {
            f << p.n << ',' << p.ground_size << ',' << format_double(p.mean_iterations) << "\n";
          }
        }
        return 0;
      }
      std::vector<BenchRecord> recs;
      if (kind == "karate" || kind == "grid") {
        Decomposition d = kind == "karate"
                              ? gen_karate()
                              : [&] {
                                  Image img = image.empty() ? synthetic_image(width, height, 1)
                                                            : read_pnm(image);
                                  auto regions = block > 0 ? tile_regions(img.width, img.height, block)
                                                           : std::vector<std::vector<Element>>{};
                                  return gen_grid(img, regions);
                                }();
        const auto r = static_cast<double>(d.num_components());
        SolverConfig cfg;
        const auto klist = parse_int_list(ks);
        bench_k = bench_cmd->count("--k") ? klist.front()
                                           : std::max(1, static_cast<int>(std::lround(alpha * r)));
        cfg.k = bench_k;
        cfg.epsilon = eps;
        cfg.gap = parse_gap(gap);
        cfg.max_iterations = bench_max;
        cfg.threads = nthreads;
        if (cfg.projection_tolerance >= eps / 10) cfg.projection_tolerance = eps / 100;
        const auto methods = parse_methods(algos.empty() ? "ap,iap,rcdm-u,rcdm-g,acdm-u" : algos);
        recs = bench_matrix(d, methods, parse_seeds(seeds), cfg);
      } else if (kind == "ba") {
        std::vector<WeightMode> modes;
        for (const auto& t : split(wmodes, ',')) {
          auto m = parse_weight_mode(t);
          if (!m) throw UsageError("unknown weight mode '" + t + "'");
          modes.push_back(*m);
        }
        const int n = bench_cmd->count("--n") ? std::stoi(ns) : ba_n;
        recs = bench_ba(n, parse_seeds(seeds), parse_methods(algos.empty() ? "iap,rcdm-u" : algos),
                        modes, parse_int_list(ks), bench_max, nthreads);
      } else {
        throw UsageError("unknown bench kind '" + kind + "'");
      }
      const auto rows = summarize(recs);
      print_summary(rows);
      if (!out.empty()) {
        write_traces(out, recs);
        write_summary(out / "summary.csv", rows);
      }
      return 0;
    }

    if (*part_cmd) {
      auto parsed = read_problem(problem);
      for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
      const Decomposition& d = parsed.decomposition;
      const auto p = compute_incidence(d);
      const auto greedy = greedy_balanced_partition(d, part_k);
      const auto uniform = uniform_plan(d, p, part_k);
      const double bound =
          std::max(static_cast<double>(part_k) / d.num_components() * p.mu_l1,
                   static_cast<double>(d.n()));
      for (std::size_t i = 0; i < greedy.parts.size(); ++i) {
        std::cout << "part " << i + 1 << " (" << greedy.parts[i].size() << "):";
        for (int r : greedy.parts[i]) std::cout << ' ' << r + 1;
        std::cout << "\n";
      }
      std::cout << "greedy theta_one_inf: " << format_double(greedy.theta_one_inf) << "\n";
      std::cout << "uniform theta_one_inf: " << format_double(uniform.theta_one_inf) << "\n";
      std::cout << "lower bound: " << format_double(bound) << "\n";
      return 0;
    }

    if (*gen_cmd) {
      std::optional<Decomposition> d;
      if (gen_kind == "example31") {
        d = gen_example31(gen_n).first;
      } else if (gen_kind == "karate") {
        d = gen_karate();
      } else if (gen_kind == "ba") {
        d = gen_ba(gen_n, seed);
      } else if (gen_kind == "grid") {
        Image img = image.empty() ? synthetic_image(width, height, seed) : read_pnm(image);
        auto regions = block > 0 ? tile_regions(img.width, img.height, block)
                                 : std::vector<std::vector<Element>>{};
        d = gen_grid(img, regions);
      } else if (gen_kind == "hypergraph") {
        d = gen_hypergraph(gen_n, gen_m, 5, seed);
      } else if (gen_kind == "mixed") {
        d = gen_random_mixed(gen_n, gen_m, seed);
      } else {
        throw UsageError("unknown generator '" + gen_kind + "'");
      }
      if (gen_out.empty()) {
        write_problem(std::cout, *d);
      } else {
        write_problem(fs::path(gen_out), *d);
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << problem << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
