#include "dsfm/generators.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#ifndef DSFM_DATA_DIR
#define DSFM_DATA_DIR "data"
#endif

namespace dsfm {

std::pair<Decomposition, BlockVector> gen_example31(int n) {
  if (n < 1) throw std::invalid_argument("example31: n must be >= 1");
  std::vector<SubmodularComponent> comps;
  for (int r = 0; r < 2 * n; ++r) comps.push_back(SubmodularComponent::edge(r, r + 1));
  Decomposition d(2 * n + 1, std::move(comps));
  BlockVector y(d);
  for (int r = 1; r <= 2 * n; ++r) {
    const double v = r <= n ? static_cast<double>(r) / n
                            : static_cast<double>(2 * n + 1 - r) / n;
    auto b = y.block(r - 1);
    b[0] = v;
    b[1] = -v;
  }
  return {std::move(d), std::move(y)};
}

std::vector<std::pair<Element, Element>> load_edge_list(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list " + path.string());
  std::vector<std::pair<Element, Element>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long u = 0;
    long v = 0;
    if (!(ss >> u)) continue;
    if (!(ss >> v) || u < 1 || v < 1) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected two positive vertex ids");
    }
    edges.emplace_back(static_cast<Element>(u - 1), static_cast<Element>(v - 1));
  }
  return edges;
}

std::filesystem::path default_karate_path() {
  return std::filesystem::path(DSFM_DATA_DIR) / "karate_club.edges";
}

Decomposition gen_karate(const std::vector<std::pair<Element, Element>>& edges,
                         double tau) {
  Element n = 0;
  for (auto [u, v] : edges) n = std::max({n, u + 1, v + 1});
  if (n != 34 || edges.size() != 78) {
    throw std::invalid_argument("karate: expected 34 vertices and 78 edges");
  }
  std::vector<SubmodularComponent> comps;
  for (auto [u, v] : edges) comps.push_back(SubmodularComponent::edge(u, v));
  std::vector<double> x0(34, 0.0);
  x0[0] = 1.0;
  x0[33] = -1.0;
  return Decomposition(34, std::move(comps), std::move(x0), tau);
}

Decomposition gen_karate(double tau) {
  return gen_karate(load_edge_list(default_karate_path()), tau);
}

std::vector<std::pair<Element, Element>> ba_edges(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("ba: N must be >= 2");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Element, Element>> edges{{0, 1}};
  std::vector<Element> ends{0, 1};
  for (Element v = 2; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
    const Element t = ends[pick(rng)];
    edges.emplace_back(t, v);
    ends.push_back(t);
    ends.push_back(v);
  }
  return edges;
}

Decomposition gen_ba(int n, std::uint64_t seed) {
  const auto edges = ba_edges(n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x0(static_cast<std::size_t>(n));
  for (double& v : x0) v = gauss(rng);
  std::vector<SubmodularComponent> comps;
  for (auto [u, v] : edges) comps.push_back(SubmodularComponent::edge(u, v));
  return Decomposition(n, std::move(comps), std::move(x0));
}

namespace {

void skip_pnm_space(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string dummy;
      std::getline(in, dummy);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_pnm_int(std::istream& in) {
  skip_pnm_space(in);
  int v = -1;
  if (!(in >> v) || v < 0) throw std::runtime_error("pnm: malformed header");
  return v;
}

}  // namespace

Image read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open image " + path.string());
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  Image img;
  if (magic == "P5") {
    img.channels = 1;
  } else if (magic == "P6") {
    img.channels = 3;
  } else {
    throw std::runtime_error("pnm: only binary P5/P6 supported");
  }
  img.width = read_pnm_int(in);
  img.height = read_pnm_int(in);
  const int maxval = read_pnm_int(in);
  if (maxval < 1 || maxval > 255) throw std::runtime_error("pnm: only 8-bit images");
  if (img.width < 1 || img.height < 1) throw std::runtime_error("pnm: empty image");
  in.get();
  const std::size_t count =
      static_cast<std::size_t>(img.width) * img.height * img.channels;
  std::vector<unsigned char> raw(count);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<long>(count))) {
    throw std::runtime_error("pnm: truncated pixel data");
  }
  img.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) img.pixels[i] = raw[i] / double(maxval);
  return img;
}

Image synthetic_image(int width, int height, std::uint64_t seed) {
  if (width < 2 || height < 2) throw std::invalid_argument("image: size >= 2");
  Image img;
  img.width = width;
  img.height = height;
  img.channels = 3;
  img.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-0.08, 0.08);
  const double cx1 = width * 0.3;
  const double cy1 = height * 0.35;
  const double cx2 = width * 0.7;
  const double cy2 = height * 0.65;
  const double rad = std::min(width, height) * 0.25;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double rgb[3] = {0.2, 0.25, 0.3};
      if (std::hypot(x - cx1, y - cy1) < rad) {
        rgb[0] = 0.9; rgb[1] = 0.8; rgb[2] = 0.2;
      } else if (std::hypot(x - cx2, y - cy2) < rad) {
        rgb[0] = 0.85; rgb[1] = 0.3; rgb[2] = 0.6;
      }
      for (int c = 0; c < 3; ++c) {
        img.pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c] =
            std::clamp(rgb[c] + noise(rng), 0.0, 1.0);
      }
    }
  }
  return img;
}

Decomposition gen_grid(const Image& img,
                       const std::vector<std::vector<Element>>& regions,
                       double tau) {
  const int w = img.width;
  const int h = img.height;
  if (w < 2 || h < 2) throw std::invalid_argument("grid: dimensions must be >= 2");
  auto id = [w](int x, int y) { return static_cast<Element>(y * w + x); };
  auto weight = [&](int x1, int y1, int x2, int y2) {
    double s = 0.0;
    for (int c = 0; c < img.channels; ++c) {
      const double diff = img.at(x1, y1, c) - img.at(x2, y2, c);
      s += diff * diff;
    }
    return std::exp(-s);
  };
  std::vector<SubmodularComponent> comps;
  for (int x = 0; x + 1 < w; ++x) {
    std::vector<WeightedEdge> edges;
    for (int y = 0; y < h; ++y) edges.push_back({id(x, y), id(x + 1, y), weight(x, y, x + 1, y)});
    comps.push_back(SubmodularComponent::edge_set(std::move(edges)));
  }
  for (int y = 0; y + 1 < h; ++y) {
    std::vector<WeightedEdge> edges;
    for (int x = 0; x < w; ++x) edges.push_back({id(x, y), id(x, y + 1), weight(x, y, x, y + 1)});
    comps.push_back(SubmodularComponent::edge_set(std::move(edges)));
  }
  for (const auto& region : regions) {
    comps.push_back(SubmodularComponent::concave_cardinality(region));
  }
  std::vector<double> x0(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double gray = 0.0;
      for (int c = 0; c < img.channels; ++c) gray += img.at(x, y, c);
      x0[id(x, y)] = 2.0 * gray / img.channels - 1.0;
    }
  }
  return Decomposition(w * h, std::move(comps), std::move(x0), tau);
}

std::vector<std::vector<Element>> tile_regions(int width, int height, int block) {
  if (block < 1) throw std::invalid_argument("tile_regions: block must be >= 1");
  std::vector<std::vector<Element>> out;
  for (int y0 = 0; y0 < height; y0 += block) {
    for (int x0 = 0; x0 < width; x0 += block) {
      std::vector<Element> r;
      for (int y = y0; y < std::min(height, y0 + block); ++y) {
        for (int x = x0; x < std::min(width, x0 + block); ++x) {
          r.push_back(static_cast<Element>(y * width + x));
        }
      }
      if (r.size() >= 2) out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

std::vector<Element> random_subset(int n, int size, std::mt19937_64& rng) {
  std::vector<Element> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < size; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(static_cast<std::size_t>(size));
  return all;
}

double dyadic(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> q(lo, hi);
  return q(rng) * 0.25;
}

// Integer-valued submodular table: a sum of cuts, truncations and concave
// cardinality pieces on random subsets of the support.
std::vector<double> random_table(int k, std::mt19937_64& rng) {
  const std::size_t count = std::size_t{1} << k;
  std::vector<double> t(count, 0.0);
  std::uniform_int_distribution<int> pieces(1, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> wt(1, 3);
  const int p = pieces(rng);
  for (int piece = 0; piece < p; ++piece) {
    const int sz = std::uniform_int_distribution<int>(2, k)(rng);
    const auto sub = random_subset(k, sz, rng);
    std::uint64_t sub_mask = 0;
    for (Element e : sub) sub_mask |= std::uint64_t{1} << e;
    const int ty = kind(rng);
    const int a = wt(rng);
    const int cap = std::uniform_int_distribution<int>(1, sz)(rng);
    for (std::size_t mask = 0; mask < count; ++mask) {
      const int c = std::popcount(mask & sub_mask);
      double v = 0.0;
      if (ty == 0) v = (c > 0 && c < sz) ? a : 0;      // hyperedge-like cut
      if (ty == 1) v = a * std::min(c, cap);          // truncation
      if (ty == 2) v = a * c * (sz - c);              // concave cardinality
      t[mask] += v;
    }
  }
  return t;
}

}  // namespace

Decomposition gen_hypergraph(int n, int m, int max_size, std::uint64_t seed) {
  if (n < 2 || m < 1 || max_size < 2) {
    throw std::invalid_argument("hypergraph: need N >= 2, M >= 1, size >= 2");
  }
  std::mt19937_64 rng(seed);
  std::vector<SubmodularComponent> comps;
  std::uniform_int_distribution<int> size(2, std::min(max_size, n));
  std::uniform_int_distribution<int> wt(1, 3);
  for (int e = 0; e < m; ++e) {
    comps.push_back(SubmodularComponent::hyperedge(random_subset(n, size(rng), rng), wt(rng)));
  }
  std::vector<double> x0(static_cast<std::size_t>(n));
  for (double& v : x0) v = dyadic(rng, -8, 8);
  return Decomposition(n, std::move(comps), std::move(x0));
}

Decomposition gen_random_mixed(int n, int r, std::uint64_t seed) {
  if (n < 2 || r < 1) throw std::invalid_argument("random_mixed: N >= 2, R >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> family(0, 4);
  std::uniform_int_distribution<int> wt(1, 3);
  std::vector<SubmodularComponent> comps;
  for (int c = 0; c < r; ++c) {
    const int fam = family(rng);
    const int hi = std::min(n, 5);
    if (fam == 0) {
      const auto s = random_subset(n, 2, rng);
      comps.push_back(SubmodularComponent::edge(s[0], s[1], wt(rng)));
    } else if (fam == 1) {
      const int sz = std::uniform_int_distribution<int>(2, hi)(rng);
      comps.push_back(SubmodularComponent::hyperedge(random_subset(n, sz, rng), wt(rng)));
    } else if (fam == 2) {
      const int sz = std::uniform_int_distribution<int>(2, hi)(rng);
      comps.push_back(SubmodularComponent::concave_cardinality(random_subset(n, sz, rng)));
    } else if (fam == 3) {
      const int k = std::uniform_int_distribution<int>(2, std::min(n, 4))(rng);
      auto elems = random_subset(n, k, rng);
      comps.push_back(SubmodularComponent::table(std::move(elems), random_table(k, rng)));
    } else {
      const int pairs = std::uniform_int_distribution<int>(1, std::max(1, n / 4))(rng);
      const auto s = random_subset(n, 2 * pairs, rng);
      std::vector<WeightedEdge> edges;
      for (int p = 0; p < pairs; ++p) {
        edges.push_back({s[2 * p], s[2 * p + 1], static_cast<double>(wt(rng))});
      }
      comps.push_back(SubmodularComponent::edge_set(std::move(edges)));
    }
  }
  std::vector<double> x0(static_cast<std::size_t>(n));
  for (double& v : x0) v = dyadic(rng, -12, 12);
  return Decomposition(n, std::move(comps), std::move(x0));
}

}  // namespace dsfm
