#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trustgrow/connectivity.hpp"
#include "trustgrow/error.hpp"
#include "trustgrow/fraction.hpp"
#include "trustgrow/identity.hpp"
#include "trustgrow/policy.hpp"
#include "trustgrow/trust_graph.hpp"

namespace trustgrow {

enum class ConditionStatus { pass, fail, assumed, skipped };

inline const char* to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::pass: return "pass";
    case ConditionStatus::fail: return "fail";
    case ConditionStatus::assumed: return "assumed";
    case ConditionStatus::skipped: return "skipped";
  }
  return "?";
}

struct ConditionResult {
  int id = 0;
  std::string name;
  ConditionStatus status = ConditionStatus::skipped;
  std::string measured;
  std::string bound;
  std::string note;

  bool failed() const { return status == ConditionStatus::fail; }
};

// Connectivity of an induced community graph, as used by the gates.
struct Measurement {
  Method method = Method::enumeration;
  double value = 0.0;              // exact value, or the spectral lower bound
  std::optional<Fraction> exact;   // set for enumeration
  std::optional<double> lambda2;   // set for spectral
  bool heuristic = false;          // vertex mode: scaled bound on a non-regular graph
  bool usable = true;              // false when no bound applies
  std::string note;

  std::string str() const {
    if (exact) return exact->str();
    std::ostringstream os;
    os.precision(12);
    os << value;
    return os.str();
  }
};

struct AdmissionVerdict {
  GrowthMode mode = GrowthMode::conductance;
  bool admitted = false;
  std::vector<ConditionResult> conditions;
  std::optional<Measurement> measured;
  Fraction threshold;
  bool threshold_feasible = true;
  Fraction growth_used;  // |A' \ A| / (delta |A|)
  std::string binding;   // first failing condition, empty when admitted
};

namespace detail {

inline std::string frac_str(const Fraction& f) { return f.str(); }

inline Measurement measure(GrowthMode mode, const TrustGraph& induced, const GrowthPolicy& policy) {
  Measurement m;
  const std::size_t n = induced.vertex_count();
  const bool enumerable = n <= policy.enumeration_limit && n <= kHardEnumerationLimit;
  if (n < 2) {
    m.exact = Fraction(0);
    m.note = "single vertex";
    return m;
  }
  if (enumerable) {
    m.method = Method::enumeration;
    const auto cut = mode == GrowthMode::conductance ? conductance_exact(induced, policy.enumeration_limit)
                                                     : vertex_expansion_exact(induced, policy.enumeration_limit);
    m.exact = cut.value;
    m.value = cut.value.to_double();
    if (cut.degenerate) m.note = "edgeless";
    return m;
  }
  if (!policy.spectral)
    fail(ErrorKind::scale, std::to_string(n) + " vertices exceed the enumeration limit of " +
                               std::to_string(policy.enumeration_limit) + " and spectral bounds are disabled");
  m.method = Method::spectral;
  const auto range = degree_range(induced);
  if (range.min == 0 || !is_connected(induced)) {
    m.value = 0.0;
    m.lambda2 = 1.0;
    m.note = "disconnected";
    return m;
  }
  if (mode == GrowthMode::conductance) {
    const auto b = conductance_bounds_spectral(induced);
    m.value = b.lower;
    m.lambda2 = b.lambda2;
    return m;
  }
  const auto eb = vertex_expansion_lower_bound(induced);
  m.value = eb.value;
  m.lambda2 = eb.spectral.lambda2;
  m.heuristic = eb.heuristic;
  if (eb.heuristic && !policy.heuristic_vertex_bound) {
    m.usable = false;
    m.note = "no vertex-expansion bound for non-regular graphs beyond the enumeration limit";
  }
  return m;
}

inline bool exceeds(const Measurement& m, const Fraction& threshold) {
  if (!m.usable) return false;
  if (m.exact) return *m.exact > threshold;
  return m.value > threshold.to_double();
}

inline ConditionResult degree_condition(int id, const TrustGraph& induced, const GrowthPolicy& p) {
  const auto range = degree_range(induced);
  ConditionResult c{id, "degree_bounds", ConditionStatus::pass,
                    "[" + std::to_string(range.min) + ", " + std::to_string(range.max) + "]",
                    "[" + (p.alpha * Fraction(static_cast<std::int64_t>(p.d))).str() + ", " +
                        std::to_string(p.d) + "]",
                    ""};
  if (!degree_bounds_ok(induced, p.alpha, p.d)) c.status = ConditionStatus::fail;
  return c;
}

inline ConditionResult growth_condition(int id, std::size_t before, std::size_t after, const GrowthPolicy& p) {
  const auto added = static_cast<std::int64_t>(after - before);
  const Fraction cap = p.delta() * Fraction(static_cast<std::int64_t>(before));
  ConditionResult c{id, "growth_cap", ConditionStatus::pass, std::to_string(added), "<= " + cap.str(), ""};
  if (Fraction(added) > cap) c.status = ConditionStatus::fail;
  return c;
}

inline ConditionResult connectivity_condition(int id, GrowthMode mode, const Measurement& m, const Threshold& t) {
  ConditionResult c{id, mode == GrowthMode::conductance ? "conductance" : "vertex_expansion",
                    ConditionStatus::pass, m.str(), "> " + t.value.str(), m.note};
  if (m.method == Method::spectral && c.note.empty()) c.note = "spectral lower bound";
  if (!exceeds(m, t.value)) c.status = ConditionStatus::fail;
  return c;
}

inline Fraction growth_used(std::size_t before, std::size_t after, const GrowthPolicy& p) {
  const auto added = static_cast<std::int64_t>(after - before);
  if (added == 0) return Fraction(0);
  const Fraction cap = p.delta() * Fraction(static_cast<std::int64_t>(before));
  if (cap == Fraction(0)) return Fraction(added);
  return Fraction(added) / cap;
}

inline void check_step(const CommunityTrustGraph& current, const VertexSet& candidate) {
  check_range(current.edges(), candidate);
  if (!current.community.is_subset_of(candidate))
    fail(ErrorKind::input, "candidate community is not a superset of the current community");
  if (candidate.size() < 2) fail(ErrorKind::input, "candidate community needs at least two members");
}

inline std::string first_failure(const std::vector<ConditionResult>& cs) {
  for (const auto& c : cs)
    if (c.failed()) return c.name;
  return {};
}

}  // namespace detail

// Label-blind admission check for growing `current` into `candidate`. Only the
// observable conditions are evaluated; conditions on byzantines are recorded
// as assumed.
inline AdmissionVerdict gate(const CommunityTrustGraph& current, const VertexSet& candidate,
                             const GrowthPolicy& policy) {
  policy.validate();
  detail::check_step(current, candidate);
  const auto induced = induced_subgraph(current.edges(), candidate);
  const std::size_t before = current.size(), after = candidate.size();
  const Threshold t = policy.threshold();

  AdmissionVerdict v;
  v.mode = policy.mode;
  v.threshold = t.value;
  v.threshold_feasible = t.feasible;
  v.growth_used = detail::growth_used(before, after, policy);
  v.measured = detail::measure(policy.mode, induced.graph, policy);

  if (policy.mode == GrowthMode::conductance) {
    v.conditions.push_back(detail::degree_condition(1, induced.graph, policy));
    v.conditions.push_back({2, "initial_penetration", ConditionStatus::assumed, "", "beta(G) + delta/2 <= 1/2", ""});
    v.conditions.push_back({3, "attack_edge_scarcity", ConditionStatus::assumed, "", "<= " + policy.gamma_e.str(), ""});
    v.conditions.push_back(detail::growth_condition(4, before, after, policy));
    v.conditions.push_back(detail::connectivity_condition(5, policy.mode, *v.measured, t));
  } else {
    v.conditions.push_back({1, "initial_penetration", ConditionStatus::assumed, "", "beta(G) + delta/2 <= 1/2", ""});
    v.conditions.push_back({2, "corrupt_population", ConditionStatus::assumed, "", "<= " + policy.gamma_v.str(), ""});
    v.conditions.push_back(detail::growth_condition(3, before, after, policy));
    v.conditions.push_back(detail::connectivity_condition(4, policy.mode, *v.measured, t));
  }
  v.binding = detail::first_failure(v.conditions);
  v.admitted = v.binding.empty();
  return v;
}

inline AdmissionVerdict gate_conductance(const CommunityTrustGraph& current, const VertexSet& candidate,
                                         GrowthPolicy policy) {
  policy.mode = GrowthMode::conductance;
  return gate(current, candidate, policy);
}

inline AdmissionVerdict gate_vertex_expansion(const CommunityTrustGraph& current, const VertexSet& candidate,
                                              GrowthPolicy policy) {
  policy.mode = GrowthMode::vertex_expansion;
  return gate(current, candidate, policy);
}

enum class AuditOutcome {
  safe,                     // premises held, conclusion held
  premises_unmet,           // some premise failed, conclusion still held
  unsafe_premises_unmet,    // some premise failed and beta exceeded the target
  soundness_violation,      // premises held but beta exceeded the target
};

inline const char* to_string(AuditOutcome o) {
  switch (o) {
    case AuditOutcome::safe: return "safe";
    case AuditOutcome::premises_unmet: return "premises unmet, conclusion held";
    case AuditOutcome::unsafe_premises_unmet: return "unsafe growth, premises unmet";
    case AuditOutcome::soundness_violation: return "soundness violation";
  }
  return "?";
}

struct AuditRecord {
  GrowthMode mode = GrowthMode::conductance;
  std::vector<ConditionResult> premises;
  std::optional<Measurement> measured;
  Fraction beta_prev;
  Fraction beta_next;
  bool premises_hold = false;
  bool conclusion_holds = false;
  AuditOutcome outcome = AuditOutcome::safe;
};

// Ledger-aware check of one growth step: every premise of the step guarantee,
// and whether beta(next) <= beta followed.
inline AuditRecord audit_step(const CommunityTrustGraph& prev, const CommunityTrustGraph& next,
                              const IdentityLedger& ledger, const GrowthPolicy& policy) {
  policy.validate();
  if (prev.graph->vertex_count() != next.graph->vertex_count())
    fail(ErrorKind::input, "audit steps over different vertex sets");
  if (!prev.community.is_subset_of(next.community))
    fail(ErrorKind::input, "next community is not a superset of the previous one");
  const TrustGraph* sets[] = {prev.graph.get(), next.graph.get()};
  (void)classify(std::span<const TrustGraph* const>(sets), ledger);

  const auto induced = induced_subgraph(next.edges(), next.community);
  const Threshold t = policy.threshold();
  const std::size_t before = prev.size(), after = next.size();

  AuditRecord r;
  r.mode = policy.mode;
  r.beta_prev = byzantine_penetration(prev, ledger);
  r.beta_next = byzantine_penetration(next, ledger);
  r.measured = detail::measure(policy.mode, induced.graph, policy);

  const Fraction half(1, 2);
  ConditionResult initial{0, "initial_penetration", ConditionStatus::pass,
                          (r.beta_prev + policy.delta() / Fraction(2)).str(), "<= 1/2", ""};
  if (r.beta_prev + policy.delta() / Fraction(2) > half) initial.status = ConditionStatus::fail;

  if (policy.mode == GrowthMode::conductance) {
    r.premises.push_back(detail::degree_condition(1, induced.graph, policy));
    initial.id = 2;
    r.premises.push_back(initial);
    ConditionResult scarce{3, "attack_edge_scarcity", ConditionStatus::pass, "", "<= " + policy.gamma_e.str(), ""};
    const auto counts = count_attack_edges(next, ledger);
    if (counts.honest_volume == 0) {
      scarce.status = ConditionStatus::fail;
      scarce.note = "honest part has zero internal volume";
    } else {
      const Fraction ratio(static_cast<std::int64_t>(counts.attack_edges),
                           static_cast<std::int64_t>(counts.honest_volume));
      scarce.measured = ratio.str();
      if (ratio > policy.gamma_e) scarce.status = ConditionStatus::fail;
    }
    r.premises.push_back(scarce);
    r.premises.push_back(detail::growth_condition(4, before, after, policy));
    r.premises.push_back(detail::connectivity_condition(5, policy.mode, *r.measured, t));
  } else {
    initial.id = 1;
    r.premises.push_back(initial);
    const Fraction corrupt = corrupt_fraction(next, ledger);
    ConditionResult bounded{2, "corrupt_population", ConditionStatus::pass, corrupt.str(),
                            "<= " + policy.gamma_v.str(), ""};
    if (corrupt > policy.gamma_v) bounded.status = ConditionStatus::fail;
    r.premises.push_back(bounded);
    r.premises.push_back(detail::growth_condition(3, before, after, policy));
    r.premises.push_back(detail::connectivity_condition(4, policy.mode, *r.measured, t));
  }

  r.premises_hold = detail::first_failure(r.premises).empty();
  r.conclusion_holds = r.beta_next <= policy.beta;
  if (r.premises_hold)
    r.outcome = r.conclusion_holds ? AuditOutcome::safe : AuditOutcome::soundness_violation;
  else
    r.outcome = r.conclusion_holds ? AuditOutcome::premises_unmet : AuditOutcome::unsafe_premises_unmet;
  return r;
}

struct HistoryAudit {
  Fraction initial_beta;
  bool initial_beta_ok = false;       // beta(G_1) <= beta
  bool initial_condition_ok = false;  // beta within the initial-size limit
  std::vector<AuditRecord> steps;     // steps[i] audits G_{i+1} -> G_{i+2}
  bool all_premises_hold = true;
  std::size_t beta_violations = 0;    // steps (including G_1) with beta above target
  std::size_t soundness_violations = 0;
  Fraction max_beta;
};

inline HistoryAudit audit_history(const CommunityHistory& history, const IdentityLedger& ledger,
                                  const GrowthPolicy& policy) {
  if (history.empty()) fail(ErrorKind::input, "empty history");
  (void)classify(history, ledger);
  HistoryAudit out;
  out.initial_beta = byzantine_penetration(history[0], ledger);
  out.initial_beta_ok = out.initial_beta <= policy.beta;
  out.initial_condition_ok = initial_condition_ok(policy, history[0].size());
  out.max_beta = out.initial_beta;
  if (!out.initial_beta_ok) ++out.beta_violations;
  for (std::size_t i = 1; i < history.size(); ++i) {
    auto rec = audit_step(history[i - 1], history[i], ledger, policy);
    if (!rec.premises_hold) out.all_premises_hold = false;
    if (!rec.conclusion_holds) ++out.beta_violations;
    if (rec.outcome == AuditOutcome::soundness_violation) ++out.soundness_violations;
    out.max_beta = std::max(out.max_beta, rec.beta_next);
    out.steps.push_back(std::move(rec));
  }
  return out;
}

// Orders candidates for prefix selection.
using CandidateOrder = std::function<std::vector<VertexId>(const CommunityTrustGraph&, const VertexSet&)>;

// Descending number of edges into the current community; ties by id.
inline std::vector<VertexId> greedy_by_attachment(const CommunityTrustGraph& current, const VertexSet& pool) {
  std::vector<std::pair<std::size_t, VertexId>> keyed;
  pool.for_each([&](VertexId v) {
    std::size_t links = 0;
    for (VertexId w : current.edges().neighbors(v))
      if (current.community.contains(w)) ++links;
    keyed.emplace_back(links, v);
  });
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<VertexId> out;
  out.reserve(keyed.size());
  for (const auto& [links, v] : keyed) out.push_back(v);
  return out;
}

struct GrowOptions {
  std::shared_ptr<const TrustGraph> next_edges;  // edge set of the new step; default: unchanged
  CandidateOrder order = greedy_by_attachment;
  std::size_t max_batch = std::numeric_limits<std::size_t>::max();
};

struct GrowResult {
  bool admitted = false;
  VertexSet added;
  AdmissionVerdict verdict;
  std::size_t gates_evaluated = 0;
};

// One growth step: try prefixes of the ordered pool, largest first, up to
// floor(delta |A|) and admit the first one whose gate passes. The history is
// left unchanged when nothing passes.
inline GrowResult grow(CommunityHistory& history, const VertexSet& pool, const GrowthPolicy& policy,
                       const GrowOptions& opts = {}) {
  if (history.empty()) fail(ErrorKind::input, "cannot grow an empty history");
  policy.validate();
  const auto& last = history.back();
  auto edges = opts.next_edges ? opts.next_edges : last.graph;
  if (edges->vertex_count() != history.vertex_count())
    fail(ErrorKind::input, "new edge set is over a different vertex set");
  const CommunityTrustGraph current(edges, last.community);
  check_range(*edges, pool);

  GrowResult result;
  result.added = VertexSet(history.vertex_count());
  result.verdict.mode = policy.mode;
  if (pool.empty()) {
    result.verdict.binding = "empty_pool";
    return result;
  }
  if (pool.intersects(current.community)) fail(ErrorKind::input, "candidate pool overlaps the community");
  pool.for_each([&](VertexId v) {
    for (VertexId w : edges->neighbors(v))
      if (current.community.contains(w)) return;
    fail(ErrorKind::input, "candidate " + std::to_string(v) + " has no edge into the community");
  });

  const Fraction delta = policy.delta();
  const auto a = static_cast<std::int64_t>(current.size());
  std::size_t cap = static_cast<std::size_t>((delta.num() * a) / delta.den());
  cap = std::min({cap, opts.max_batch, pool.size()});
  if (cap == 0) {
    result.verdict.binding = "growth_cap";
    return result;
  }

  const auto order = opts.order(current, pool);
  auto prefix = [&](std::size_t k) {
    VertexSet s = current.community;
    for (std::size_t i = 0; i < k; ++i) s.insert(order[i]);
    return s;
  };

  if (!policy.gates_enabled) {
    VertexSet next = prefix(cap);
    result.admitted = true;
    result.added = next - current.community;
    result.verdict.admitted = true;
    result.verdict.growth_used = detail::growth_used(current.size(), next.size(), policy);
    result.verdict.binding.clear();
    result.verdict.conditions.push_back({0, "gates_disabled", ConditionStatus::skipped, "", "", ""});
    history.append(CommunityTrustGraph(edges, std::move(next)));
    return result;
  }

  for (std::size_t k = cap; k >= 1; --k) {
    VertexSet next = prefix(k);
    if (policy.mode == GrowthMode::conductance && k > 1) {
      // Degree bounds are cheap; skip the connectivity computation when they fail.
      const auto induced = induced_subgraph(*edges, next);
      if (!degree_bounds_ok(induced.graph, policy.alpha, policy.d)) continue;
    }
    result.verdict = gate(current, next, policy);
    ++result.gates_evaluated;
    if (result.verdict.admitted) {
      result.admitted = true;
      result.added = next - current.community;
      history.append(CommunityTrustGraph(edges, std::move(next)));
      return result;
    }
  }
  return result;
}

struct UnionVerdict {
  AdmissionVerdict from_a;
  AdmissionVerdict from_b;
  bool safe = false;
};

namespace detail {
inline VertexSet checked_union(const CommunityTrustGraph& ga, const CommunityTrustGraph& gb) {
  if (ga.graph != gb.graph && *ga.graph != *gb.graph)
    fail(ErrorKind::input, "communities live in different trust graphs");
  if (!ga.community.intersects(gb.community)) fail(ErrorKind::input, "communities do not overlap");
  return ga.community | gb.community;
}
}  // namespace detail

// Union of two overlapping communities is accepted only if the step check
// passes from each side.
inline UnionVerdict check_union(const CommunityTrustGraph& ga, const CommunityTrustGraph& gb,
                                const GrowthPolicy& policy) {
  const VertexSet u = detail::checked_union(ga, gb);
  UnionVerdict out{gate(ga, u, policy), gate(gb, u, policy), false};
  out.safe = out.from_a.admitted && out.from_b.admitted;
  return out;
}

inline std::pair<AuditRecord, AuditRecord> audit_union(const CommunityTrustGraph& ga, const CommunityTrustGraph& gb,
                                                       const IdentityLedger& ledger, const GrowthPolicy& policy) {
  const VertexSet u = detail::checked_union(ga, gb);
  const CommunityTrustGraph joined(ga.graph, u);
  return {audit_step(ga, joined, ledger, policy), audit_step(gb, joined, ledger, policy)};
}

// Starts a history after checking the initial-size requirement on beta.
inline CommunityHistory start_history(CommunityTrustGraph initial, const GrowthPolicy& policy) {
  policy.validate();
  if (!initial_condition_ok(policy, initial.size()))
    fail(ErrorKind::config, "beta " + policy.beta.str() + " exceeds " +
                                initial_beta_limit(policy, initial.size()).str() +
                                " for an initial community of " + std::to_string(initial.size()));
  return CommunityHistory(std::move(initial));
}

}  // namespace trustgrow
