#pragma once

#include <cstddef>
#include <string>

#include "trustgrow/connectivity.hpp"
#include "trustgrow/error.hpp"
#include "trustgrow/fraction.hpp"

namespace trustgrow {

enum class GrowthMode { conductance, vertex_expansion };

inline const char* to_string(GrowthMode m) {
  return m == GrowthMode::conductance ? "conductance" : "vertex";
}

inline GrowthMode parse_mode(const std::string& s) {
  if (s == "conductance" || s == "edge") return GrowthMode::conductance;
  if (s == "vertex" || s == "vertex_expansion") return GrowthMode::vertex_expansion;
  fail(ErrorKind::input, "unknown mode '" + s + "' (expected conductance or vertex)");
}

// Admission parameters. The growth cap delta = 1 - 2 beta is always derived.
struct GrowthPolicy {
  GrowthMode mode = GrowthMode::conductance;
  Fraction alpha{1};       // conductance mode: lower degree bound as a fraction of d
  Fraction beta{1, 5};     // target byzantine penetration
  Fraction gamma_e{0};     // conductance mode: attack-edge ratio assumption
  Fraction gamma_v{0};     // vertex mode: corrupt-fraction assumption
  std::size_t d = 16;      // degree cap
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
  bool spectral = true;                 // spectral bounds beyond the enumeration limit
  bool heuristic_vertex_bound = false;  // accept the scaled bound on non-regular graphs
  bool gates_enabled = true;            // false only for negative-control simulations

  Fraction delta() const { return Fraction(1) - Fraction(2) * beta; }

  Threshold threshold() const {
    return mode == GrowthMode::conductance ? threshold_conductance(alpha, beta, gamma_e)
                                           : threshold_vertex_expansion(beta, gamma_v);
  }

  void validate() const {
    if (beta <= Fraction(0)) fail(ErrorKind::config, "beta = 0 is not attainable");
    if (beta > Fraction(1, 2)) fail(ErrorKind::config, "beta must not exceed 1/2");
    if (d < 1) fail(ErrorKind::config, "degree cap d must be at least 1");
    if (mode == GrowthMode::conductance) {
      if (alpha <= Fraction(0) || alpha > Fraction(1)) fail(ErrorKind::config, "alpha must lie in (0, 1]");
      if (gamma_e < Fraction(0) || gamma_e > Fraction(1)) fail(ErrorKind::config, "gamma_e must lie in [0, 1]");
    } else {
      if (gamma_v < Fraction(0) || gamma_v > Fraction(1)) fail(ErrorKind::config, "gamma_v must lie in [0, 1]");
    }
    (void)threshold();
  }
};

// Initial-community requirement on beta: 1/2 - 1/|A_1| in conductance mode,
// 1/2 - 1/(2|A_1|) in vertex mode.
inline Fraction initial_beta_limit(const GrowthPolicy& p, std::size_t initial_size) {
  if (initial_size == 0) fail(ErrorKind::input, "empty initial community");
  const auto size = static_cast<std::int64_t>(initial_size);
  return p.mode == GrowthMode::conductance ? Fraction(1, 2) - Fraction(1, size)
                                           : Fraction(1, 2) - Fraction(1, 2 * size);
}

inline bool initial_condition_ok(const GrowthPolicy& p, std::size_t initial_size) {
  return p.beta <= initial_beta_limit(p, initial_size);
}

}  // namespace trustgrow
