#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trustgrow/error.hpp"
#include "trustgrow/fraction.hpp"
#include "trustgrow/spectral.hpp"
#include "trustgrow/trust_graph.hpp"
#include "trustgrow/vertex_set.hpp"

namespace trustgrow {

inline constexpr std::size_t kDefaultEnumerationLimit = 24;
// Bitmask enumeration below works on 64-bit masks.
inline constexpr std::size_t kHardEnumerationLimit = 40;

struct ExactCut {
  Fraction value;
  VertexSet witness;        // a minimizing side A
  bool degenerate = false;  // edgeless input; value is 0 by convention
};

namespace detail {

inline void check_enumerable(const TrustGraph& g, std::size_t limit, const char* what) {
  const std::size_t n = g.vertex_count();
  if (n < 2) fail(ErrorKind::input, std::string(what) + " needs at least two vertices");
  if (n > limit || n > kHardEnumerationLimit)
    fail(ErrorKind::scale, std::string(what) + ": " + std::to_string(n) +
                               " vertices exceed the enumeration limit of " +
                               std::to_string(std::min(limit, kHardEnumerationLimit)));
}

inline VertexSet mask_to_set(std::size_t n, std::uint64_t mask) {
  VertexSet s(n);
  while (mask != 0) {
    s.insert(static_cast<VertexId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

}  // namespace detail

// Exact conductance by enumerating every unordered bipartition. The last
// vertex is pinned to the complement, and a Gray-code walk updates cut and
// volume in O(1) per subset.
inline ExactCut conductance_exact(const TrustGraph& g, std::size_t limit = kDefaultEnumerationLimit) {
  detail::check_enumerable(g, limit, "exact conductance");
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) return {Fraction(0), VertexSet::of(n, {0}), true};

  std::vector<std::uint64_t> adj(n, 0);
  std::vector<std::int64_t> deg(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : g.neighbors(v)) adj[v] |= std::uint64_t{1} << w;
    deg[v] = static_cast<std::int64_t>(g.degree(v));
  }
  const std::int64_t total = static_cast<std::int64_t>(2 * g.edge_count());

  std::int64_t best_num = 1, best_den = 0;  // +infinity
  std::uint64_t best_mask = 0;
  std::uint64_t mask = 0;
  std::int64_t cut = 0, vol = 0;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < count; ++i) {
    const int x = std::countr_zero(i);
    const std::uint64_t bit = std::uint64_t{1} << x;
    if (mask & bit) {
      mask ^= bit;
      cut -= deg[x] - 2 * std::popcount(adj[x] & mask);
      vol -= deg[x];
    } else {
      cut += deg[x] - 2 * std::popcount(adj[x] & mask);
      mask ^= bit;
      vol += deg[x];
    }
    const std::int64_t min_vol = std::min(vol, total - vol);
    if (min_vol == 0) {
      // Only possible when one side is all isolated vertices, so the cut is empty.
      best_num = 0;
      best_den = 1;
      best_mask = mask;
      break;
    }
    if (best_den == 0 || cut * best_den < best_num * min_vol) {
      best_num = cut;
      best_den = min_vol;
      best_mask = mask;
      if (cut == 0) break;
    }
  }
  return {Fraction(best_num, best_den), detail::mask_to_set(n, best_mask), false};
}

// Exact inner-boundary vertex expansion over all A with 0 < |A| <= n/2.
// The Gray-code walk keeps, per vertex, the number of neighbors outside A.
inline ExactCut vertex_expansion_exact(const TrustGraph& g, std::size_t limit = kDefaultEnumerationLimit) {
  detail::check_enumerable(g, limit, "exact vertex expansion");
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::uint8_t>> nbrs(n);
  std::vector<int> outside(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : g.neighbors(v)) nbrs[v].push_back(static_cast<std::uint8_t>(w));
    outside[v] = static_cast<int>(g.degree(v));
  }

  std::uint64_t mask = 0;
  std::int64_t size = 0, boundary = 0;
  std::int64_t best_num = 1, best_den = 0;
  std::uint64_t best_mask = 0;
  const std::int64_t half = static_cast<std::int64_t>(n / 2);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < count; ++i) {
    const int x = std::countr_zero(i);
    const std::uint64_t bit = std::uint64_t{1} << x;
    if (mask & bit) {
      mask ^= bit;
      --size;
      if (outside[x] > 0) --boundary;
      for (auto y : nbrs[x])
        if (++outside[y] == 1 && (mask >> y) & 1u) ++boundary;
    } else {
      for (auto y : nbrs[x])
        if (--outside[y] == 0 && (mask >> y) & 1u) --boundary;
      mask ^= bit;
      ++size;
      if (outside[x] > 0) ++boundary;
    }
    if (size == 0 || size > half) continue;
    if (best_den == 0 || boundary * best_den < best_num * size) {
      best_num = boundary;
      best_den = size;
      best_mask = mask;
      if (boundary == 0) break;
    }
  }
  return {Fraction(best_num, best_den), detail::mask_to_set(n, best_mask), false};
}

struct CheegerBounds {
  double lambda2 = 1.0;
  double residual = 0.0;
  double lower = 0.0;      // (1 - lambda2) / 2, lambda2 taken at its certified upper end
  double upper_raw = 0.0;  // sqrt(2 (1 - lambda2))
  double upper = 0.0;      // upper_raw clamped to 1, the range of conductance
  bool disconnected = false;
};

inline CheegerBounds cheeger_from_lambda2(const SpectralResult& s) {
  CheegerBounds b;
  b.lambda2 = s.lambda2;
  b.residual = s.residual;
  b.disconnected = s.disconnected;
  if (s.disconnected) return b;  // lower = upper = 0
  const double certified = std::min(1.0, s.lambda2 + s.residual);
  b.lower = std::max(0.0, (1.0 - certified) / 2.0);
  b.upper_raw = std::sqrt(2.0 * std::max(0.0, 1.0 - s.lambda2 + s.residual));
  b.upper = std::min(1.0, b.upper_raw);
  return b;
}

inline CheegerBounds conductance_bounds_spectral(const TrustGraph& g, double tolerance = 1e-9) {
  return cheeger_from_lambda2(lambda2(g, tolerance));
}

struct ExpansionBound {
  double value = 0.0;
  bool regular = false;
  bool heuristic = false;  // true when the graph is not regular
  CheegerBounds spectral;
};

// Spectral lower bound on vertex expansion. On a d-regular graph
// d * boundary(A) >= e(A, A^c) and |A| <= n/2 means vol(A) <= vol(A^c), so the
// Cheeger lower bound on conductance also bounds vertex expansion. Otherwise
// the bound is scaled by min/max degree and flagged heuristic.
inline ExpansionBound vertex_expansion_lower_bound(const TrustGraph& g, double tolerance = 1e-9) {
  ExpansionBound out;
  out.spectral = conductance_bounds_spectral(g, tolerance);
  const auto range = degree_range(g);
  out.regular = range.min == range.max;
  if (out.regular) {
    out.value = out.spectral.lower;
  } else {
    out.heuristic = true;
    out.value = out.spectral.lower * static_cast<double>(range.min) / static_cast<double>(range.max);
  }
  return out;
}

struct Threshold {
  Fraction value;
  bool feasible = true;
};

// (gamma_e / alpha) * (1 - beta) / beta. Feasible when below 1/2.
inline Threshold threshold_conductance(const Fraction& alpha, const Fraction& beta, const Fraction& gamma_e) {
  if (beta <= Fraction(0)) fail(ErrorKind::config, "beta = 0 is not attainable");
  if (beta > Fraction(1, 2)) fail(ErrorKind::config, "beta must not exceed 1/2");
  if (alpha <= Fraction(0) || alpha > Fraction(1)) fail(ErrorKind::config, "alpha must lie in (0, 1]");
  if (gamma_e < Fraction(0)) fail(ErrorKind::config, "gamma_e must be non-negative");
  const Fraction value = (gamma_e / alpha) * ((Fraction(1) - beta) / beta);
  return {value, value < Fraction(1, 2)};
}

// gamma_v / beta. Feasible when at most 1.
inline Threshold threshold_vertex_expansion(const Fraction& beta, const Fraction& gamma_v) {
  if (beta <= Fraction(0)) fail(ErrorKind::config, "beta = 0 is not attainable");
  if (beta > Fraction(1, 2)) fail(ErrorKind::config, "beta must not exceed 1/2");
  if (gamma_v < Fraction(0)) fail(ErrorKind::config, "gamma_v must be non-negative");
  const Fraction value = gamma_v / beta;
  return {value, value <= Fraction(1)};
}

enum class Method { enumeration, spectral };

inline const char* to_string(Method m) { return m == Method::enumeration ? "enumeration" : "spectral"; }

struct ConnectivityReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  bool disconnected = false;
  std::optional<Fraction> phi_e_exact;
  std::optional<VertexSet> phi_e_witness;
  std::optional<CheegerBounds> spectral;
  std::optional<Fraction> phi_v_exact;
  std::optional<VertexSet> phi_v_witness;
  std::optional<double> phi_v_lower;
  bool phi_v_lower_heuristic = false;
  Method method = Method::enumeration;
};

struct AnalyzeOptions {
  std::size_t exact_limit = kDefaultEnumerationLimit;
  bool spectral = false;  // allow graphs beyond exact_limit (bounds only)
  double tolerance = 1e-9;
};

inline ConnectivityReport analyze(const TrustGraph& g, const AnalyzeOptions& opts = {}) {
  ConnectivityReport r;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();
  if (r.vertices < 2) fail(ErrorKind::input, "analysis needs at least two vertices");
  const bool exact = r.vertices <= opts.exact_limit;
  if (!exact && !opts.spectral)
    fail(ErrorKind::scale, std::to_string(r.vertices) + " vertices exceed the exact limit of " +
                               std::to_string(opts.exact_limit) + "; use spectral bounds");
  r.method = exact ? Method::enumeration : Method::spectral;
  r.disconnected = !is_connected(g);

  if (exact) {
    auto ce = conductance_exact(g, opts.exact_limit);
    r.phi_e_exact = ce.value;
    r.phi_e_witness = ce.witness;
    auto ve = vertex_expansion_exact(g, opts.exact_limit);
    r.phi_v_exact = ve.value;
    r.phi_v_witness = ve.witness;
  }
  if (r.disconnected) {
    CheegerBounds b;
    b.disconnected = true;
    r.spectral = b;
    if (!exact) r.phi_v_lower = 0.0;
  } else {
    const auto eb = vertex_expansion_lower_bound(g, opts.tolerance);
    r.spectral = eb.spectral;
    r.phi_v_lower = eb.value;
    r.phi_v_lower_heuristic = eb.heuristic;
  }
  return r;
}

}  // namespace trustgrow
