#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "trustgrow/error.hpp"
#include "trustgrow/trust_graph.hpp"

namespace trustgrow {

struct SpectralResult {
  double lambda2 = 1.0;   // second-largest signed eigenvalue of D^-1 A
  double residual = 0.0;  // ||N y - lambda2 y|| for the returned Ritz pair
  bool disconnected = false;
  std::size_t matvecs = 0;
};

struct LanczosOptions {
  double tolerance = 1e-9;
  std::size_t max_matvecs = 1'000'000;
  std::size_t max_basis = 300;  // explicit restart beyond this many vectors
  std::uint64_t seed = 0x5eed'c0de'2024ULL;
};

namespace detail {

// Symmetric normalized walk matrix N = D^-1/2 A D^-1/2; it shares its
// spectrum with the random-walk matrix D^-1 A.
class NormalizedWalk {
 public:
  explicit NormalizedWalk(const TrustGraph& g) : g_(g), inv_sqrt_deg_(g.vertex_count()), top_(g.vertex_count()) {
    double total = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) total += static_cast<double>(g.degree(v));
    const double norm = std::sqrt(total);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const double d = static_cast<double>(g.degree(v));
      inv_sqrt_deg_[v] = 1.0 / std::sqrt(d);
      top_[v] = std::sqrt(d) / norm;
    }
  }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      double s = 0;
      for (VertexId w : g_.neighbors(v)) s += inv_sqrt_deg_[w] * x[w];
      y[v] = inv_sqrt_deg_[v] * s;
    }
  }

  // Unit eigenvector for eigenvalue 1.
  const std::vector<double>& top() const { return top_; }

 private:
  const TrustGraph& g_;
  std::vector<double> inv_sqrt_deg_;
  std::vector<double> top_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline double normalize(std::vector<double>& x) {
  const double n = std::sqrt(dot(x, x));
  if (n > 0)
    for (auto& v : x) v /= n;
  return n;
}

// Two passes of classical Gram-Schmidt against `top` and `basis`.
inline void orthogonalize(std::vector<double>& w, const std::vector<double>& top,
                          const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    axpy(-dot(top, w), top, w);
    for (const auto& q : basis) axpy(-dot(q, w), q, w);
  }
}

}  // namespace detail

// Second-largest eigenvalue of the random-walk matrix via Lanczos with full
// reorthogonalization on the complement of the known top eigenvector. The
// start vector comes from a fixed seed, so results are reproducible.
inline SpectralResult lambda2(const TrustGraph& g, const LanczosOptions& opts = {}) {
  const std::size_t n = g.vertex_count();
  if (n < 2) fail(ErrorKind::input, "second eigenvalue needs at least two vertices");
  for (VertexId v = 0; v < n; ++v)
    if (g.degree(v) == 0) fail(ErrorKind::input, "isolated vertex " + std::to_string(v));
  if (!is_connected(g)) return {1.0, 0.0, true, 0};

  const detail::NormalizedWalk walk(g);
  const std::size_t dim = n - 1;  // dimension of the complement of the top eigenvector
  const std::size_t max_basis = std::max<std::size_t>(2, std::min(dim, opts.max_basis));

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_vector = [&] {
    std::vector<double> x(n);
    for (auto& v : x) v = unit(rng);
    return x;
  };

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> w(n), start = random_vector();
  detail::orthogonalize(start, walk.top(), basis);
  detail::normalize(start);

  SpectralResult result;
  std::size_t spanned = 0;  // total Krylov dimension explored without restart
  double theta = 0;

  auto ritz = [&](Eigen::VectorXd& s) {
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index i = 0; i < m; ++i) diag[i] = alpha[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    s = es.eigenvectors().col(m - 1);
    return es.eigenvalues()[m - 1];
  };

  basis.push_back(start);
  while (true) {
    const auto& q = basis.back();
    walk.apply(q, w);
    ++result.matvecs;
    const double a = detail::dot(q, w);
    alpha.push_back(a);
    detail::orthogonalize(w, walk.top(), basis);
    const double b = detail::normalize(w);
    ++spanned;

    const bool exhausted = spanned >= dim;
    const bool breakdown = b < 1e-12;
    const bool full = basis.size() >= max_basis;
    const bool check = exhausted || breakdown || full || alpha.size() % 8 == 0;

    if (check) {
      Eigen::VectorXd s;
      theta = ritz(s);
      const double last = std::abs(s[s.size() - 1]);
      // A breakdown means the Krylov space is invariant; from a generic start
      // vector it then holds every eigenvalue of the complement exactly.
      const double residual = breakdown ? 0.0 : b * last;
      if (residual <= opts.tolerance || exhausted) {
        result.lambda2 = theta;
        result.residual = residual;
        return result;
      }
      if (full) {
        // Explicit restart from the current Ritz vector.
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < basis.size(); ++i) detail::axpy(s[static_cast<Eigen::Index>(i)], basis[i], y);
        detail::orthogonalize(y, walk.top(), {});
        detail::normalize(y);
        basis.assign(1, std::move(y));
        alpha.clear();
        beta.clear();
        spanned = 0;
        if (result.matvecs >= opts.max_matvecs) break;
        continue;
      }
    }
    if (result.matvecs >= opts.max_matvecs) break;

    beta.push_back(b);
    basis.push_back(w);
  }
  fail(ErrorKind::analysis, "lambda2 did not converge within " + std::to_string(opts.max_matvecs) +
                                " matrix-vector products");
}

inline SpectralResult lambda2(const TrustGraph& g, double tolerance) {
  LanczosOptions opts;
  opts.tolerance = tolerance;
  return lambda2(g, opts);
}

}  // namespace trustgrow
