#include "dsfm/problem_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace dsfm {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

double to_real(const std::string& s, int line, const char* what) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(line, std::string("invalid ") + what + " '" + s + "'");
  }
  return v;
}

long to_int(const std::string& s, int line, const char* what) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + s + "'");
  }
  return v;
}

Element to_id(const std::string& s, int line, long n) {
  const long v = to_int(s, line, "element id");
  if (v < 1 || v > n) {
    throw ParseError(line, "element id " + s + " outside [1, " + std::to_string(n) + "]");
  }
  return static_cast<Element>(v - 1);
}

double to_weight(const std::string& s, int line) {
  const double w = to_real(s, line, "weight");
  if (!(w > 0.0)) throw ParseError(line, "weight must be positive");
  return w;
}

}  // namespace

ParsedProblem parse_problem(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::optional<long> n;
  double tau = 1.0;
  std::vector<SubmodularComponent> comps;
  std::map<Element, double> x0_lines;
  std::vector<std::string> warnings;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (!n) {
      if (tok.size() < 3 || tok[0] != "dsfm" || tok[1] != "v1") {
        throw ParseError(lineno, "expected header 'dsfm v1 N=<int> tau=<real>'");
      }
      for (std::size_t i = 2; i < tok.size(); ++i) {
        if (tok[i].rfind("N=", 0) == 0) {
          n = to_int(tok[i].substr(2), lineno, "N");
          if (*n < 1) throw ParseError(lineno, "N must be >= 1");
        } else if (tok[i].rfind("tau=", 0) == 0) {
          tau = to_real(tok[i].substr(4), lineno, "tau");
          if (!(tau > 0.0)) throw ParseError(lineno, "tau must be positive");
        } else {
          throw ParseError(lineno, "unknown header field '" + tok[i] + "'");
        }
      }
      if (!n) throw ParseError(lineno, "header is missing N=");
      continue;
    }
    const std::string& kw = tok[0];
    try {
      if (kw == "edge") {
        if (tok.size() != 4) throw ParseError(lineno, "edge needs: u v w");
        comps.push_back(SubmodularComponent::edge(to_id(tok[1], lineno, *n),
                                                  to_id(tok[2], lineno, *n),
                                                  to_weight(tok[3], lineno)));
      } else if (kw == "hyperedge") {
        if (tok.size() < 4) throw ParseError(lineno, "hyperedge needs: w v1 v2 ...");
        const double w = to_weight(tok[1], lineno);
        std::vector<Element> vs;
        for (std::size_t i = 2; i < tok.size(); ++i) vs.push_back(to_id(tok[i], lineno, *n));
        comps.push_back(SubmodularComponent::hyperedge(std::move(vs), w));
      } else if (kw == "region") {
        if (tok.size() < 2) throw ParseError(lineno, "region needs at least one id");
        std::vector<Element> vs;
        for (std::size_t i = 1; i < tok.size(); ++i) vs.push_back(to_id(tok[i], lineno, *n));
        comps.push_back(SubmodularComponent::concave_cardinality(std::move(vs)));
      } else if (kw == "table") {
        const std::size_t rest = tok.size() - 2;
        std::size_t k = 0;
        while (k <= 12 && (std::size_t{1} << k) + k < rest) ++k;
        if (tok.size() < 2 || k > 12 || (std::size_t{1} << k) + k != rest || k == 0) {
          throw ParseError(lineno, "table needs: w, 2^k values, k ids");
        }
        const double w = to_weight(tok[1], lineno);
        std::vector<double> values;
        for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
          values.push_back(to_real(tok[2 + i], lineno, "table value"));
        }
        std::vector<Element> vs;
        for (std::size_t i = 2 + values.size(); i < tok.size(); ++i) {
          vs.push_back(to_id(tok[i], lineno, *n));
        }
        comps.push_back(SubmodularComponent::table(std::move(vs), std::move(values), w));
      } else if (kw == "edges") {
        if (tok.size() < 4 || (tok.size() - 1) % 3 != 0) {
          throw ParseError(lineno, "edges needs triples: u v w ...");
        }
        std::vector<WeightedEdge> es;
        for (std::size_t i = 1; i < tok.size(); i += 3) {
          es.push_back({to_id(tok[i], lineno, *n), to_id(tok[i + 1], lineno, *n),
                        to_weight(tok[i + 2], lineno)});
        }
        comps.push_back(SubmodularComponent::edge_set(std::move(es)));
      } else if (kw == "x0") {
        if (tok.size() != 3) throw ParseError(lineno, "x0 needs: v value");
        const Element v = to_id(tok[1], lineno, *n);
        const double val = to_real(tok[2], lineno, "x0 value");
        if (x0_lines.count(v)) {
          warnings.push_back("line " + std::to_string(lineno) +
                             ": duplicate x0 for element " + tok[1] +
                             ", last value wins");
        }
        x0_lines[v] = val;
      } else {
        throw ParseError(lineno, "unknown line type '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!n) throw ParseError(lineno, "missing header");
  if (comps.empty()) throw ParseError(lineno, "no components");
  std::vector<double> x0(static_cast<std::size_t>(*n), 0.0);
  for (auto [v, val] : x0_lines) x0[v] = val;
  return {Decomposition(static_cast<int>(*n), std::move(comps), std::move(x0), tau),
          std::move(warnings)};
}

ParsedProblem read_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_problem(in);
}

void write_problem(std::ostream& out, const Decomposition& d) {
  out << "dsfm v1 N=" << d.n() << " tau=" << format_double(d.tau()) << "\n";
  for (const auto& f : d.components()) {
    const auto s = f.support();
    switch (f.family()) {
      case Family::edge_cut:
        out << "edge " << s[0] + 1 << ' ' << s[1] + 1 << ' '
            << format_double(f.cardinality_profile()[1]) << "\n";
        break;
      case Family::hyperedge_cut:
        out << "hyperedge " << format_double(f.weight());
        for (Element e : s) out << ' ' << e + 1;
        out << "\n";
        break;
      case Family::concave_cardinality:
        if (f.weight() != 1.0) {
          throw std::invalid_argument("write_problem: region weights must be 1");
        }
        out << "region";
        for (Element e : s) out << ' ' << e + 1;
        out << "\n";
        break;
      case Family::table:
        out << "table 1";
        for (double v : f.table_values()) out << ' ' << format_double(v);
        for (Element e : s) out << ' ' << e + 1;
        out << "\n";
        break;
      case Family::edge_set:
        out << "edges";
        for (const auto& e : f.local_edges()) {
          out << ' ' << s[e.a] + 1 << ' ' << s[e.b] + 1 << ' ' << format_double(e.weight);
        }
        out << "\n";
        break;
    }
  }
  const auto x0 = d.x0();
  for (std::size_t i = 0; i < x0.size(); ++i) {
    if (x0[i] != 0.0) out << "x0 " << i + 1 << ' ' << format_double(x0[i]) << "\n";
  }
}

void write_problem(const std::filesystem::path& path, const Decomposition& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_problem(out, d);
}

void write_trace(std::ostream& out, const ConvergenceTrace& trace) {
  out << "# algorithm=" << trace.algorithm << " K=" << trace.k
      << " seed=" << trace.seed
      << " theta_one_inf=" << format_double(trace.theta_one_inf)
      << " plan=" << trace.plan << "\n";
  out << "iteration,cumulative_projections,nu_s,nu_d,g_value,wall_seconds\n";
  for (const auto& r : trace.rows) {
    out << r.iteration << ',' << r.cumulative_projections << ','
        << format_double(r.nu_s) << ',' << format_double(r.nu_d) << ','
        << format_double(r.g_value) << ',' << format_double(r.wall_seconds)
        << "\n";
  }
}

void write_trace(const std::filesystem::path& path, const ConvergenceTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trace(out, trace);
}

ConvergenceTrace read_trace(std::istream& in) {
  ConvergenceTrace t;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      for (const auto& tok : tokens_of(line.substr(1))) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "algorithm") t.algorithm = val;
        if (key == "plan") t.plan = val;
        if (key == "K") t.k = static_cast<int>(to_int(val, lineno, "K"));
        if (key == "seed") t.seed = static_cast<std::uint64_t>(to_int(val, lineno, "seed"));
        if (key == "theta_one_inf") t.theta_one_inf = to_real(val, lineno, "theta");
      }
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw ParseError(lineno, "trace row needs 6 fields");
    TraceRow r;
    r.iteration = to_int(f[0], lineno, "iteration");
    r.cumulative_projections = to_int(f[1], lineno, "projections");
    r.nu_s = std::stod(f[2]);
    r.nu_d = std::stod(f[3]);
    r.g_value = std::stod(f[4]);
    r.wall_seconds = std::stod(f[5]);
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace dsfm
