#pragma once

// Test-side oracles and generators. These deliberately avoid the library's
// own enumeration and eigen code so they can check it independently.

#include <cstdint>
#include <filesystem>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trustgrow/trustgrow.hpp"

namespace support {

using trustgrow::Edge;
using trustgrow::Fraction;
using trustgrow::TrustGraph;
using trustgrow::VertexId;

// Random connected graph: a random spanning tree plus each remaining pair
// with probability p.
inline TrustGraph random_connected(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  trustgrow::GraphBuilder b(n);
  for (VertexId v = 1; v < n; ++v) b.add_edge(v, static_cast<VertexId>(rng() % v));
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng) < p) b.try_add_edge(u, v);
  return b.build();
}

inline TrustGraph cycle(std::size_t n) {
  trustgrow::GraphBuilder b(n);
  for (VertexId v = 0; v < n; ++v) b.add_edge(v, static_cast<VertexId>((v + 1) % n));
  return b.build();
}

inline TrustGraph complete(std::size_t n) {
  trustgrow::GraphBuilder b(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) b.add_edge(u, v);
  return b.build();
}

// Smallest e(S, S^c) / min(vol S, vol S^c) over every proper non-empty S,
// straight from the definition.
inline Fraction brute_conductance(const TrustGraph& g) {
  const std::size_t n = g.vertex_count();
  const auto edges = g.edges();
  std::int64_t best_num = -1, best_den = 1;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::int64_t cut = 0, vol_in = 0, vol_out = 0;
    for (const auto& [u, v] : edges) {
      const bool iu = (mask >> u) & 1, iv = (mask >> v) & 1;
      if (iu != iv) ++cut;
      (iu ? vol_in : vol_out) += 1;
      (iv ? vol_in : vol_out) += 1;
    }
    const std::int64_t den = std::min(vol_in, vol_out);
    if (den == 0) {
      if (cut == 0) return Fraction(0);
      continue;
    }
    if (best_num < 0 || cut * best_den < best_num * den) {
      best_num = cut;
      best_den = den;
    }
  }
  return best_num < 0 ? Fraction(0) : Fraction(best_num, best_den);
}

// Smallest |{x in S : x has a neighbor outside S}| / |S| over 0 < |S| <= n/2.
inline Fraction brute_vertex_expansion(const TrustGraph& g) {
  const std::size_t n = g.vertex_count();
  std::int64_t best_num = -1, best_den = 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::int64_t>(std::popcount(mask));
    if (2 * size > static_cast<std::int64_t>(n)) continue;
    std::int64_t boundary = 0;
    for (VertexId x = 0; x < n; ++x) {
      if (!((mask >> x) & 1)) continue;
      for (VertexId y : g.neighbors(x))
        if (!((mask >> y) & 1)) {
          ++boundary;
          break;
        }
    }
    if (best_num < 0 || boundary * best_den < best_num * size) {
      best_num = boundary;
      best_den = size;
    }
  }
  return Fraction(best_num, best_den);
}

// Second-largest eigenvalue of D^-1 A from a dense symmetric solve.
inline double dense_lambda2(const TrustGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    const double w = 1.0 / std::sqrt(static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v)));
    m(u, v) = w;
    m(v, u) = w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[n - 2];
}

inline std::size_t diameter(const TrustGraph& g) {
  std::size_t best = 0;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<VertexId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      for (VertexId w : g.neighbors(v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
    }
    for (int d : dist) {
      if (d < 0) return SIZE_MAX;
      best = std::max<std::size_t>(best, static_cast<std::size_t>(d));
    }
  }
  return best;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("trustgrow-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace support
