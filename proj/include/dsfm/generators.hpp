#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dsfm/core.hpp"

namespace dsfm {

/// 2n unit edges {r, r+1} on N = 2n+1 elements, with the staircase starting
/// point y_{r,r} = −y_{r,r+1} = r/n (r ≤ n), (2n+1−r)/n (r > n).
std::pair<Decomposition, BlockVector> gen_example31(int n);

/// Undirected edge list, 1-based "u v" per line, '#' comments.
std::vector<std::pair<Element, Element>> load_edge_list(
    const std::filesystem::path& path);

/// One unit edge cut per edge, x0(first) = 1, x0(last) = −1.
Decomposition gen_karate(const std::vector<std::pair<Element, Element>>& edges,
                         double tau = 0.1);
/// Karate club graph from the bundled data file.
Decomposition gen_karate(double tau = 0.1);
std::filesystem::path default_karate_path();

/// Barabási–Albert graph grown from the edge {1,2}, one preferential edge
/// per new vertex; standard Gaussian x0; tau = 1.
std::vector<std::pair<Element, Element>> ba_edges(int n, std::uint64_t seed);
Decomposition gen_ba(int n, std::uint64_t seed);

/// Row-major RGB image with channels in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  int channels = 3;  ///< 1 (gray) or 3 (RGB)
  std::vector<double> pixels;
  double at(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

/// 8-bit binary PGM (P5) or PPM (P6).
Image read_pnm(const std::filesystem::path& path);
/// Deterministic synthetic image: two colored blobs on noise.
Image synthetic_image(int width, int height, std::uint64_t seed);

/// 4-neighbour grid: one component per column gap (horizontal edges) and per
/// row gap (vertical edges), each a union of disjoint edges weighted
/// exp(−‖Δrgb‖²); one concave-cardinality component per region (0-based
/// pixel ids, row-major). x0 = 2·gray − 1.
Decomposition gen_grid(const Image& img,
                       const std::vector<std::vector<Element>>& regions = {},
                       double tau = 1.0);
/// Square regions of side `block` tiling the image.
std::vector<std::vector<Element>> tile_regions(int width, int height, int block);

/// Random hypergraph cut instance: `m` hyperedges of sizes in [2, max_size].
Decomposition gen_hypergraph(int n, int m, int max_size, std::uint64_t seed);

/// Random small decomposition mixing every family, integer-valued oracles
/// and dyadic x0; for cross-checks against exhaustive search.
Decomposition gen_random_mixed(int n, int r, std::uint64_t seed);

}  // namespace dsfm
