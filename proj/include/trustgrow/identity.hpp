#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trustgrow/error.hpp"
#include "trustgrow/fraction.hpp"
#include "trustgrow/trust_graph.hpp"
#include "trustgrow/vertex_set.hpp"

namespace trustgrow {

struct IdentityRecord {
  bool genuine = true;
  bool corrupt_at_heart = false;  // ignored for sybils

  friend bool operator==(const IdentityRecord&, const IdentityRecord&) = default;
};

// H / C / S / B sets derived from a ledger.
struct Partition {
  VertexSet honest;
  VertexSet corrupt;
  VertexSet sybil;
  VertexSet byzantine;  // corrupt | sybil
};

// Ground-truth labels for every vertex of V.
class IdentityLedger {
 public:
  IdentityLedger() = default;
  explicit IdentityLedger(std::size_t vertex_count) : records_(vertex_count) {}
  explicit IdentityLedger(std::vector<IdentityRecord> records) : records_(std::move(records)) {}

  std::size_t vertex_count() const { return records_.size(); }

  const IdentityRecord& operator[](VertexId v) const {
    check(v);
    return records_[v];
  }
  void set(VertexId v, IdentityRecord r) {
    check(v);
    records_[v] = r;
  }
  void mark_sybil(VertexId v) { set(v, {false, false}); }
  void mark_corrupt(VertexId v) { set(v, {true, true}); }
  void mark_honest(VertexId v) { set(v, {true, false}); }

  bool is_sybil(VertexId v) const { return !(*this)[v].genuine; }
  bool is_corrupt(VertexId v) const {
    const auto& r = (*this)[v];
    return r.genuine && r.corrupt_at_heart;
  }
  bool is_honest(VertexId v) const {
    const auto& r = (*this)[v];
    return r.genuine && !r.corrupt_at_heart;
  }
  bool is_byzantine(VertexId v) const { return !is_honest(v); }

  Partition partition() const {
    const std::size_t n = vertex_count();
    Partition p{VertexSet(n), VertexSet(n), VertexSet(n), VertexSet(n)};
    for (VertexId v = 0; v < n; ++v) {
      if (is_sybil(v)) {
        p.sybil.insert(v);
        p.byzantine.insert(v);
      } else if (is_corrupt(v)) {
        p.corrupt.insert(v);
        p.byzantine.insert(v);
      } else {
        p.honest.insert(v);
      }
    }
    return p;
  }

  // Copy with every genuine vertex adjacent to a sybil in any of `edge_sets`
  // flagged corrupt.
  IdentityLedger with_inferred_corruption(std::span<const TrustGraph* const> edge_sets) const {
    IdentityLedger out(*this);
    for (const TrustGraph* g : edge_sets) {
      for (const auto& [u, v] : g->edges()) {
        if (is_sybil(u) && !is_sybil(v)) out.mark_corrupt(v);
        if (is_sybil(v) && !is_sybil(u)) out.mark_corrupt(u);
      }
    }
    return out;
  }

  const std::vector<IdentityRecord>& records() const { return records_; }

  friend bool operator==(const IdentityLedger&, const IdentityLedger&) = default;

 private:
  void check(VertexId v) const {
    if (v >= records_.size())
      fail(ErrorKind::input, "ledger has no record for vertex " + std::to_string(v));
  }

  std::vector<IdentityRecord> records_;
};

// A trust graph with a distinguished, non-empty community.
struct CommunityTrustGraph {
  std::shared_ptr<const TrustGraph> graph;
  VertexSet community;

  CommunityTrustGraph() = default;
  CommunityTrustGraph(std::shared_ptr<const TrustGraph> g, VertexSet a)
      : graph(std::move(g)), community(std::move(a)) {
    if (!graph) fail(ErrorKind::input, "community trust graph without a graph");
    check_range(*graph, community);
    if (community.empty()) fail(ErrorKind::input, "community must be non-empty");
  }
  CommunityTrustGraph(TrustGraph g, VertexSet a)
      : CommunityTrustGraph(std::make_shared<const TrustGraph>(std::move(g)), std::move(a)) {}

  const TrustGraph& edges() const { return *graph; }
  std::size_t size() const { return community.size(); }
};

// G_1, G_2, ... over a fixed vertex set with A_i strictly growing and
// E_i non-decreasing.
class CommunityHistory {
 public:
  CommunityHistory() = default;

  explicit CommunityHistory(CommunityTrustGraph initial) { steps_.push_back(std::move(initial)); }

  std::size_t vertex_count() const { return steps_.empty() ? 0 : steps_.front().graph->vertex_count(); }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }

  const CommunityTrustGraph& operator[](std::size_t i) const { return steps_.at(i); }
  const CommunityTrustGraph& back() const { return steps_.back(); }
  const std::vector<CommunityTrustGraph>& steps() const { return steps_; }

  void append(CommunityTrustGraph next) {
    if (steps_.empty()) {
      steps_.push_back(std::move(next));
      return;
    }
    const auto& prev = steps_.back();
    if (next.graph->vertex_count() != vertex_count())
      fail(ErrorKind::input, "history step over a different vertex set");
    if (!prev.community.is_subset_of(next.community) || prev.community.size() == next.community.size())
      fail(ErrorKind::input, "history communities must grow strictly");
    if (next.graph != prev.graph && !edges_contained(*prev.graph, *next.graph))
      fail(ErrorKind::input, "history edge sets must be non-decreasing");
    steps_.push_back(std::move(next));
  }

  std::vector<const TrustGraph*> edge_sets() const {
    std::vector<const TrustGraph*> out;
    const TrustGraph* last = nullptr;
    for (const auto& s : steps_) {
      if (s.graph.get() != last) out.push_back(s.graph.get());
      last = s.graph.get();
    }
    return out;
  }

 private:
  static bool edges_contained(const TrustGraph& a, const TrustGraph& b) {
    for (VertexId v = 0; v < a.vertex_count(); ++v)
      for (VertexId w : a.neighbors(v))
        if (v < w && !b.has_edge(v, w)) return false;
    return true;
  }

  std::vector<CommunityTrustGraph> steps_;
};

// Derives H/C/S/B after checking that no genuine vertex left unflagged ever
// shares an edge with a sybil in any of the given edge sets.
inline Partition classify(std::span<const TrustGraph* const> edge_sets, const IdentityLedger& ledger) {
  for (const TrustGraph* g : edge_sets) {
    if (g->vertex_count() != ledger.vertex_count())
      fail(ErrorKind::input, "ledger covers " + std::to_string(ledger.vertex_count()) +
                                 " vertices, graph has " + std::to_string(g->vertex_count()));
    for (const auto& [u, v] : g->edges()) {
      for (auto [s, t] : {std::pair{u, v}, std::pair{v, u}}) {
        if (ledger.is_sybil(s) && ledger.is_honest(t))
          fail(ErrorKind::consistency, "vertex " + std::to_string(t) +
                                           " is labeled honest but trusts sybil " + std::to_string(s));
      }
    }
  }
  return ledger.partition();
}

inline Partition classify(const CommunityHistory& history, const IdentityLedger& ledger) {
  const auto sets = history.edge_sets();
  return classify(std::span<const TrustGraph* const>(sets), ledger);
}

namespace detail {
inline std::size_t members_in(const VertexSet& community, const VertexSet& label) {
  return (community & label).size();
}
inline void check_ledger(const CommunityTrustGraph& ctg, const IdentityLedger& ledger) {
  if (ledger.vertex_count() != ctg.graph->vertex_count())
    fail(ErrorKind::input, "ledger does not cover the graph's vertices");
  if (ctg.community.empty()) fail(ErrorKind::input, "empty community");
}
}  // namespace detail

// |A ∩ S| / |A|
inline Fraction sybil_penetration(const CommunityTrustGraph& ctg, const IdentityLedger& ledger) {
  detail::check_ledger(ctg, ledger);
  const auto p = ledger.partition();
  return Fraction(static_cast<std::int64_t>(detail::members_in(ctg.community, p.sybil)),
                  static_cast<std::int64_t>(ctg.size()));
}

// |A ∩ B| / |A|
inline Fraction byzantine_penetration(const CommunityTrustGraph& ctg, const IdentityLedger& ledger) {
  detail::check_ledger(ctg, ledger);
  const auto p = ledger.partition();
  return Fraction(static_cast<std::int64_t>(detail::members_in(ctg.community, p.byzantine)),
                  static_cast<std::int64_t>(ctg.size()));
}

// |A ∩ C| / |A|
inline Fraction corrupt_fraction(const CommunityTrustGraph& ctg, const IdentityLedger& ledger) {
  detail::check_ledger(ctg, ledger);
  const auto p = ledger.partition();
  return Fraction(static_cast<std::int64_t>(detail::members_in(ctg.community, p.corrupt)),
                  static_cast<std::int64_t>(ctg.size()));
}

struct AttackEdgeCount {
  std::size_t attack_edges = 0;   // e(A∩H, A∩B) inside G|_A
  std::size_t honest_volume = 0;  // vol_A(A∩H)
};

inline AttackEdgeCount count_attack_edges(const CommunityTrustGraph& ctg, const IdentityLedger& ledger) {
  detail::check_ledger(ctg, ledger);
  AttackEdgeCount c;
  ctg.community.for_each([&](VertexId h) {
    if (!ledger.is_honest(h)) return;
    for (VertexId y : ctg.graph->neighbors(h)) {
      if (!ctg.community.contains(y)) continue;
      ++c.honest_volume;
      if (ledger.is_byzantine(y)) ++c.attack_edges;
    }
  });
  return c;
}

// e(A∩H, A∩B) / vol_A(A∩H), both measured in the induced community graph.
inline Fraction attack_edge_ratio(const CommunityTrustGraph& ctg, const IdentityLedger& ledger) {
  const auto c = count_attack_edges(ctg, ledger);
  if (c.honest_volume == 0)
    fail(ErrorKind::undefined_metric, "honest part of the community has zero internal volume");
  return Fraction(static_cast<std::int64_t>(c.attack_edges), static_cast<std::int64_t>(c.honest_volume));
}

struct PenetrationMetrics {
  Fraction sigma;
  Fraction beta;
  std::optional<Fraction> gamma_e;  // absent when vol_A(A∩H) = 0
  Fraction gamma_v;
};

inline PenetrationMetrics penetration_metrics(const CommunityTrustGraph& ctg, const IdentityLedger& ledger) {
  PenetrationMetrics m{sybil_penetration(ctg, ledger), byzantine_penetration(ctg, ledger), std::nullopt,
                       corrupt_fraction(ctg, ledger)};
  const auto c = count_attack_edges(ctg, ledger);
  if (c.honest_volume > 0)
    m.gamma_e = Fraction(static_cast<std::int64_t>(c.attack_edges), static_cast<std::int64_t>(c.honest_volume));
  return m;
}

}  // namespace trustgrow
