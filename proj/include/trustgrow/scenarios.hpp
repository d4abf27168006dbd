#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trustgrow/error.hpp"
#include "trustgrow/fraction.hpp"
#include "trustgrow/growth.hpp"
#include "trustgrow/identity.hpp"
#include "trustgrow/policy.hpp"
#include "trustgrow/trust_graph.hpp"
#include "trustgrow/vertex_set.hpp"

namespace trustgrow {

using Rng = std::mt19937_64;

// Uniform integer in [0, n) by rejection, so results do not depend on the
// standard library's distribution implementation.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

inline constexpr std::size_t kDefaultRetryCap = 1000;

// Random d-regular simple graph. Stubs are paired one pair at a time and a
// pair that would form a loop or a repeated edge is redrawn; a dead end
// restarts the whole pairing.
inline TrustGraph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                                     std::size_t retry_cap = kDefaultRetryCap) {
  if (d >= n) fail(ErrorKind::generation, "degree " + std::to_string(d) + " must be below n = " + std::to_string(n));
  if ((n * d) % 2 != 0) fail(ErrorKind::generation, "n * d must be even");
  if (d == 0) return GraphBuilder(n).build();
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < retry_cap; ++attempt) {
    GraphBuilder b(n);
    std::vector<VertexId> stubs;
    stubs.reserve(n * d);
    for (VertexId v = 0; v < n; ++v)
      for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
    bool stuck = false;
    while (!stubs.empty()) {
      const std::size_t m = stubs.size();
      bool paired = false;
      for (std::size_t tries = 0; tries < 50 + 2 * m; ++tries) {
        const std::size_t i = uniform_below(rng, m);
        const std::size_t j = uniform_below(rng, m);
        if (i == j) continue;
        if (!b.try_add_edge(stubs[i], stubs[j])) continue;
        const std::size_t hi = std::max(i, j), lo = std::min(i, j);
        stubs[hi] = stubs.back();
        stubs.pop_back();
        stubs[lo] = stubs.back();
        stubs.pop_back();
        paired = true;
        break;
      }
      if (!paired) {
        stuck = true;
        break;
      }
    }
    if (!stuck) return b.build();
  }
  fail(ErrorKind::generation, "random regular pairing failed after " + std::to_string(retry_cap) + " attempts");
}

enum class BottleneckMode { corrupt_edge, corrupt_vertex };

struct Bottleneck {
  TrustGraph graph;
  IdentityLedger ledger;
  VertexSet honest_cluster;
  VertexSet byzantine_cluster;
  std::optional<VertexId> hub;  // corrupt_vertex mode
};

// Two cliques with almost no trust between them. Honest ids come first,
// then the byzantine clique, then the hub if any.
inline Bottleneck gen_bottleneck(std::size_t k_honest, std::size_t k_byz, std::size_t bridges, BottleneckMode mode,
                                 std::uint64_t seed) {
  if (k_honest < 2 || k_byz < 2) fail(ErrorKind::input, "cliques need at least two vertices");
  if (bridges < 1) fail(ErrorKind::input, "need at least one bridge");
  const bool hub_mode = mode == BottleneckMode::corrupt_vertex;
  if (!hub_mode && bridges > k_honest * k_byz) fail(ErrorKind::input, "more bridges than vertex pairs");
  const std::size_t n = k_honest + k_byz + (hub_mode ? 1 : 0);
  Rng rng(seed);
  GraphBuilder b(n);
  auto clique = [&](VertexId first, std::size_t k) {
    for (VertexId u = first; u < first + k; ++u)
      for (VertexId v = u + 1; v < first + k; ++v) b.add_edge(u, v);
  };
  const auto h0 = VertexId{0}, b0 = static_cast<VertexId>(k_honest);
  clique(h0, k_honest);
  clique(b0, k_byz);

  Bottleneck out{{}, IdentityLedger(n), VertexSet::range(n, k_honest), VertexSet(n), std::nullopt};
  for (VertexId v = b0; v < b0 + k_byz; ++v) {
    out.byzantine_cluster.insert(v);
    out.ledger.mark_sybil(v);
  }

  auto pick = [&](VertexId first, std::size_t k, std::size_t count) {
    std::vector<VertexId> ids(k);
    for (std::size_t i = 0; i < k; ++i) ids[i] = first + static_cast<VertexId>(i);
    shuffle_in_place(ids, rng);
    ids.resize(std::min(count, k));
    return ids;
  };

  if (hub_mode) {
    const auto hub = static_cast<VertexId>(k_honest + k_byz);
    out.hub = hub;
    out.ledger.mark_corrupt(hub);
    for (VertexId v : pick(h0, k_honest, bridges)) b.add_edge(hub, v);
    for (VertexId v : pick(b0, k_byz, bridges)) b.add_edge(hub, v);
  } else {
    std::size_t placed = 0;
    while (placed < bridges) {
      const auto h = static_cast<VertexId>(uniform_below(rng, k_honest));
      const auto y = static_cast<VertexId>(b0 + uniform_below(rng, k_byz));
      if (!b.try_add_edge(h, y)) continue;
      out.ledger.mark_corrupt(y);
      ++placed;
    }
  }
  out.graph = b.build();
  return out;
}

struct AdversaryConfig {
  std::size_t num_corrupt = 0;      // corrupt identities available over the run
  std::size_t initial_corrupt = 0;  // of which already in the initial community
  std::size_t attack_edge_budget = std::numeric_limits<std::size_t>::max();
  std::size_t sybil_supply = 0;
  std::size_t sybil_clique = 0;     // sybils per corrupt member; 0 = join degree
  // Keep attack edges within gamma_e of the honest volume (conductance mode)
  // and corrupt members within gamma_v of the community (vertex mode).
  bool respect_assumptions = true;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  std::size_t initial_size = 32;
  std::size_t d = 0;                      // world degree cap; 0 = policy.d
  Fraction honest_growth_rate{1, 2};      // honest arrivals per step, relative to |A|
  std::size_t join_degree = 0;            // edges per newcomer; 0 = ceil(alpha d), or 3 in vertex mode
  AdversaryConfig adversary;
  std::size_t steps = 8;
  std::size_t stop_size = 0;              // stop once |A| reaches this; 0 = never
  std::size_t max_community = 0;          // hard cap on |A|; 0 = none
  GrowthPolicy policy;
};

struct StepLog {
  std::size_t round = 0;  // simulation round
  GrowResult result;
};

struct GeneratedHistory {
  CommunityHistory history;
  IdentityLedger ledger;
  std::vector<StepLog> rounds;             // one per simulation round
  std::vector<AdmissionVerdict> verdicts;  // verdicts[i] admitted history step i + 1
  std::size_t attack_edges = 0;
};

namespace detail {

class World {
 public:
  World(std::size_t n, std::size_t d) : builder_(n), d_(d) {}

  bool spare(VertexId v) const { return builder_.degree(v) < d_; }
  bool connect(VertexId u, VertexId v) {
    if (!spare(u) || !spare(v)) return false;
    return builder_.try_add_edge(u, v);
  }
  bool has_edge(VertexId u, VertexId v) const { return builder_.has_edge(u, v); }
  std::shared_ptr<const TrustGraph> snapshot() const { return std::make_shared<const TrustGraph>(builder_.build()); }

 private:
  GraphBuilder builder_;
  std::size_t d_;
};

// Up to `count` distinct entries of `candidates` accepted by `ok`, uniformly.
template <typename Pred>
std::vector<VertexId> sample_where(const std::vector<VertexId>& candidates, std::size_t count, Rng& rng, Pred ok) {
  std::vector<VertexId> eligible;
  for (VertexId v : candidates)
    if (ok(v)) eligible.push_back(v);
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < eligible.size() && out.size() < count; ++i) {
    const std::size_t j = i + uniform_below(rng, eligible.size() - i);
    std::swap(eligible[i], eligible[j]);
    out.push_back(eligible[i]);
  }
  return out;
}

inline std::size_t ceil_mul(const Fraction& f, std::size_t x) {
  const auto v = f * Fraction(static_cast<std::int64_t>(x));
  return static_cast<std::size_t>((v.num() + v.den() - 1) / v.den());
}

inline std::size_t floor_mul(const Fraction& f, std::size_t x) {
  const auto v = f * Fraction(static_cast<std::int64_t>(x));
  return static_cast<std::size_t>(v.num() / v.den());
}

}  // namespace detail

// Simulates a growing community under attack. Honest newcomers trust random
// honest members; the adversary completes one corrupt candidate at a time,
// spending attack edges only when edges to byzantine members are exhausted,
// and hangs a sybil clique behind every admitted corrupt member. Every round
// calls `grow` on the candidates adjacent to the community.
inline GeneratedHistory gen_history(const ScenarioConfig& cfg) {
  GrowthPolicy policy = cfg.policy;
  if (cfg.d != 0) policy.d = cfg.d;
  policy.validate();
  const auto threshold = policy.threshold();
  if (!threshold.feasible)
    fail(ErrorKind::config, "infeasible policy: connectivity threshold " + threshold.value.str() + " cannot be met");
  const bool edge_mode = policy.mode == GrowthMode::conductance;
  const std::size_t d = policy.d;
  const std::size_t join =
      cfg.join_degree != 0 ? cfg.join_degree : (edge_mode ? detail::ceil_mul(policy.alpha, d) : std::size_t{3});
  const auto& adv = cfg.adversary;
  if (join < 1 || join > d) fail(ErrorKind::config, "join degree must lie in [1, d]");
  if (cfg.initial_size < 2) fail(ErrorKind::config, "initial community needs at least two members");
  if (adv.initial_corrupt > adv.num_corrupt) fail(ErrorKind::config, "initial corrupt exceeds num_corrupt");
  if (adv.initial_corrupt >= cfg.initial_size) fail(ErrorKind::config, "initial community must contain an honest member");
  if (cfg.honest_growth_rate < Fraction(0)) fail(ErrorKind::config, "negative honest growth rate");
  const std::size_t clique = adv.sybil_clique != 0 ? adv.sybil_clique : join;

  // Upper bound on honest arrivals over the run.
  std::size_t honest_total = cfg.initial_size - adv.initial_corrupt;
  {
    std::size_t size = cfg.initial_size;
    for (std::size_t s = 0; s < cfg.steps; ++s) {
      honest_total += detail::ceil_mul(cfg.honest_growth_rate, size);
      size += detail::floor_mul(policy.delta(), size);
      if (cfg.max_community != 0) size = std::min(size, cfg.max_community);
    }
  }
  const std::size_t n = honest_total + adv.num_corrupt + adv.sybil_supply;

  Rng rng(cfg.seed);
  std::vector<VertexId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<VertexId>(i);
  shuffle_in_place(ids, rng);
  std::vector<VertexId> honest_ids(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(honest_total));
  std::vector<VertexId> corrupt_ids(ids.begin() + static_cast<std::ptrdiff_t>(honest_total),
                                    ids.begin() + static_cast<std::ptrdiff_t>(honest_total + adv.num_corrupt));
  std::vector<VertexId> sybil_ids(ids.begin() + static_cast<std::ptrdiff_t>(honest_total + adv.num_corrupt), ids.end());

  GeneratedHistory out;
  out.ledger = IdentityLedger(n);
  for (VertexId v : corrupt_ids) out.ledger.mark_corrupt(v);
  for (VertexId v : sybil_ids) out.ledger.mark_sybil(v);

  detail::World world(n, d);
  std::size_t next_honest = 0, next_corrupt = 0, next_sybil = 0;
  std::size_t attack_used = 0;

  // Initial community: each member trusts up to `join` earlier members.
  std::vector<VertexId> initial;
  for (std::size_t i = 0; i < cfg.initial_size - adv.initial_corrupt; ++i) initial.push_back(honest_ids[next_honest++]);
  for (std::size_t i = 0; i < adv.initial_corrupt; ++i) initial.push_back(corrupt_ids[next_corrupt++]);
  shuffle_in_place(initial, rng);
  for (std::size_t i = 1; i < initial.size(); ++i) {
    std::vector<VertexId> earlier(initial.begin(), initial.begin() + static_cast<std::ptrdiff_t>(i));
    for (VertexId w : detail::sample_where(earlier, join, rng, [&](VertexId w) { return world.spare(w); })) {
      world.connect(initial[i], w);
      if (out.ledger.is_honest(initial[i]) != out.ledger.is_honest(w)) ++attack_used;
    }
  }
  out.history = CommunityHistory(CommunityTrustGraph(world.snapshot(), VertexSet::of(n, initial)));

  std::vector<VertexId> pending;  // corrupt identities activated but not yet admitted
  std::vector<bool> has_sybils(n, false);

  for (std::size_t round = 0; round < cfg.steps; ++round) {
    const VertexSet& community = out.history.back().community;
    if (cfg.stop_size != 0 && community.size() >= cfg.stop_size) break;
    if (cfg.max_community != 0 && community.size() >= cfg.max_community) break;
    const auto members = community.members();
    std::vector<VertexId> honest_members, byz_members;
    for (VertexId v : members) (out.ledger.is_honest(v) ? honest_members : byz_members).push_back(v);

    // Honest arrivals.
    const std::size_t arrivals =
        std::min(honest_total - next_honest, detail::ceil_mul(cfg.honest_growth_rate, community.size()));
    for (std::size_t i = 0; i < arrivals; ++i) {
      const VertexId h = honest_ids[next_honest++];
      for (VertexId w : detail::sample_where(honest_members, join, rng, [&](VertexId w) { return world.spare(w); }))
        world.connect(h, w);
    }

    // Adversary: budget for this round.
    std::size_t allowance = adv.attack_edge_budget > attack_used ? adv.attack_edge_budget - attack_used : 0;
    std::size_t corrupt_cap = adv.num_corrupt;
    if (adv.respect_assumptions) {
      if (edge_mode) {
        const auto counts = count_attack_edges(out.history.back(), out.ledger);
        const std::size_t cap = detail::floor_mul(policy.gamma_e, counts.honest_volume);
        allowance = std::min(allowance, cap > attack_used ? cap - attack_used : 0);
      } else {
        corrupt_cap = std::min(corrupt_cap, detail::floor_mul(policy.gamma_v, community.size()));
      }
    }
    auto links_into_community = [&](VertexId c) {
      std::size_t k = 0;
      for (VertexId m : members)
        if (world.has_edge(c, m)) ++k;
      return k;
    };
    std::erase_if(pending, [&](VertexId c) { return community.contains(c); });
    while (true) {
      if (pending.empty() || links_into_community(pending.back()) >= join) {
        if (next_corrupt >= corrupt_cap || next_corrupt >= corrupt_ids.size()) break;
        pending.push_back(corrupt_ids[next_corrupt++]);
      }
      const VertexId c = pending.back();
      std::size_t need = join - std::min(join, links_into_community(c));
      for (VertexId w : detail::sample_where(byz_members, need, rng,
                                             [&](VertexId w) { return world.spare(w) && !world.has_edge(c, w); })) {
        if (world.connect(c, w)) --need;
      }
      const std::size_t spend = std::min(need, allowance);
      for (VertexId w : detail::sample_where(honest_members, spend, rng,
                                             [&](VertexId w) { return world.spare(w) && !world.has_edge(c, w); })) {
        if (world.connect(c, w)) {
          --need;
          --allowance;
          ++attack_used;
        }
      }
      if (need > 0) break;  // out of budget or capacity; resume next round
    }

    // Sybil cliques behind admitted corrupt members.
    for (VertexId c : members) {
      if (!out.ledger.is_corrupt(c) || has_sybils[c] || next_sybil >= sybil_ids.size()) continue;
      has_sybils[c] = true;
      const std::size_t k = std::min(clique, sybil_ids.size() - next_sybil);
      std::vector<VertexId> group(sybil_ids.begin() + static_cast<std::ptrdiff_t>(next_sybil),
                                  sybil_ids.begin() + static_cast<std::ptrdiff_t>(next_sybil + k));
      next_sybil += k;
      for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = i + 1; j < group.size(); ++j) world.connect(group[i], group[j]);
      for (VertexId s : group) world.connect(c, s);
    }

    // Candidates: everyone outside the community with an edge into it.
    auto edges = world.snapshot();
    VertexSet pool(n);
    for (VertexId m : members)
      for (VertexId w : edges->neighbors(m))
        if (!community.contains(w)) pool.insert(w);

    GrowOptions opts;
    opts.next_edges = edges;
    if (cfg.max_community != 0) opts.max_batch = cfg.max_community - community.size();
    StepLog log{round, grow(out.history, pool, policy, opts)};
    if (log.result.admitted) out.verdicts.push_back(log.result.verdict);
    out.rounds.push_back(std::move(log));
  }
  out.attack_edges = attack_used;
  return out;
}

// A fully labeled community for estimator experiments: every vertex is a
// member, honest vertices never trust sybils, and each corrupt vertex that is
// not latent trusts at least one sybil.
struct LabeledCommunityConfig {
  std::size_t n = 1000;
  Fraction beta{3, 10};         // byzantine fraction of the community
  Fraction corrupt_share{1, 2}; // share of byzantines that are genuine-but-corrupt
  Fraction latent_share{0};     // share of corrupt members with no sybil edge yet
  std::size_t avg_degree = 8;
  std::uint64_t seed = 1;
};

struct LabeledCommunity {
  CommunityTrustGraph community;
  IdentityLedger ledger;
};

inline LabeledCommunity gen_labeled_community(const LabeledCommunityConfig& cfg) {
  const std::size_t n = cfg.n;
  if (n < 2) fail(ErrorKind::input, "community needs at least two vertices");
  for (const auto* f : {&cfg.beta, &cfg.corrupt_share, &cfg.latent_share})
    if (*f < Fraction(0) || *f > Fraction(1)) fail(ErrorKind::input, "fractions must lie in [0, 1]");
  const std::size_t byz = detail::floor_mul(cfg.beta, n);
  const std::size_t corrupt = detail::floor_mul(cfg.corrupt_share, byz);
  const std::size_t sybils = byz - corrupt;
  const std::size_t latent = detail::floor_mul(cfg.latent_share, corrupt);
  if (corrupt - latent > 0 && sybils == 0) fail(ErrorKind::input, "explicit corruption needs at least one sybil");

  Rng rng(cfg.seed);
  std::vector<VertexId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<VertexId>(i);
  shuffle_in_place(ids, rng);
  IdentityLedger ledger(n);
  std::vector<VertexId> sybil_ids, explicit_ids;
  for (std::size_t i = 0; i < byz; ++i) {
    const VertexId v = ids[i];
    if (i < sybils) {
      ledger.mark_sybil(v);
      sybil_ids.push_back(v);
    } else {
      ledger.mark_corrupt(v);
      if (i - sybils >= latent) explicit_ids.push_back(v);
    }
  }

  GraphBuilder b(n);
  for (VertexId c : explicit_ids) b.try_add_edge(c, sybil_ids[uniform_below(rng, sybil_ids.size())]);
  // Latent corruption means no sybil edge anywhere, so latent corrupt members
  // are kept away from sybils like honest ones.
  auto allowed = [&](VertexId u, VertexId v) {
    const bool su = ledger.is_sybil(u), sv = ledger.is_sybil(v);
    if (su == sv) return true;
    const VertexId other = su ? v : u;
    return std::find(explicit_ids.begin(), explicit_ids.end(), other) != explicit_ids.end();
  };
  const std::size_t target = n * cfg.avg_degree / 2;
  std::size_t attempts = 0;
  while (b.edge_count() < target && attempts < 50 * target) {
    ++attempts;
    const auto u = static_cast<VertexId>(uniform_below(rng, n));
    const auto v = static_cast<VertexId>(uniform_below(rng, n));
    if (u == v || !allowed(u, v)) continue;
    b.try_add_edge(u, v);
  }
  return {CommunityTrustGraph(b.build(), VertexSet::full(n)), std::move(ledger)};
}

// What a check of one identity reveals.
class Examiner {
 public:
  virtual ~Examiner() = default;
  virtual bool is_sybil(VertexId v) const = 0;
  // Genuine and already trusting a sybil; latent corruption is not visible.
  virtual bool is_explicitly_corrupt(VertexId v) const = 0;
};

class LedgerExaminer : public Examiner {
 public:
  LedgerExaminer(const TrustGraph& graph, const IdentityLedger& ledger) : graph_(graph), ledger_(ledger) {}

  bool is_sybil(VertexId v) const override { return ledger_.is_sybil(v); }
  bool is_explicitly_corrupt(VertexId v) const override {
    if (ledger_.is_sybil(v)) return false;
    for (VertexId w : graph_.neighbors(v))
      if (ledger_.is_sybil(w)) return true;
    return false;
  }

 private:
  const TrustGraph& graph_;
  const IdentityLedger& ledger_;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
  double width() const { return high - low; }
};

struct Estimate {
  double value = 0.0;
  Interval ci;
};

struct ParameterEstimates {
  std::size_t sample_size = 0;
  int radius = 0;
  bool census = false;
  Estimate beta_hat;
  std::optional<Estimate> gamma_hat;  // radius 2 only
};

// Two-sided 95% Hoeffding half-width for a mean of k samples in [0, 1].
inline double hoeffding_half_width(std::size_t k, double confidence = 0.95) {
  if (k == 0) return 1.0;
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(k)));
}

// Random checks on a uniform sample of members (without replacement).
// Radius 0 reveals sybils, radius 1 also explicit corruption, radius 2 also
// which neighbors are explicitly byzantine, giving an attack-edge estimate.
inline ParameterEstimates estimate_parameters(const CommunityTrustGraph& ctg, const Examiner& examiner,
                                              std::size_t sample_size, int radius, std::uint64_t seed) {
  if (radius < 0 || radius > 2) fail(ErrorKind::input, "radius must be 0, 1 or 2");
  const auto members = ctg.community.members();
  if (sample_size == 0 || sample_size > members.size())
    fail(ErrorKind::input, "sample size must lie in [1, |A|]");
  Rng rng(seed);
  const auto sample = detail::sample_where(members, sample_size, rng, [](VertexId) { return true; });

  auto byzantine = [&](VertexId v) {
    if (examiner.is_sybil(v)) return true;
    return radius >= 1 && examiner.is_explicitly_corrupt(v);
  };

  ParameterEstimates out;
  out.sample_size = sample_size;
  out.radius = radius;
  out.census = sample_size == members.size();
  std::size_t flagged = 0;
  std::size_t attack = 0, volume = 0, honest_sampled = 0, max_degree = 0;
  for (VertexId v : sample) {
    if (byzantine(v)) {
      ++flagged;
      continue;
    }
    if (radius < 2) continue;
    ++honest_sampled;
    std::size_t deg = 0;
    for (VertexId w : ctg.edges().neighbors(v)) {
      if (!ctg.community.contains(w)) continue;
      ++deg;
      if (examiner.is_sybil(w) || examiner.is_explicitly_corrupt(w)) ++attack;
    }
    volume += deg;
    max_degree = std::max(max_degree, deg);
  }

  const double k = static_cast<double>(sample_size);
  out.beta_hat.value = static_cast<double>(flagged) / k;
  const double h = out.census ? 0.0 : hoeffding_half_width(sample_size);
  out.beta_hat.ci = {std::max(0.0, out.beta_hat.value - h), std::min(1.0, out.beta_hat.value + h)};

  if (radius == 2) {
    Estimate g;
    if (volume > 0) {
      g.value = static_cast<double>(attack) / static_cast<double>(volume);
      // Hoeffding on per-member attack counts scaled by the largest degree,
      // divided by the mean sampled volume.
      const double mean_vol = static_cast<double>(volume) / static_cast<double>(honest_sampled);
      const double hg =
          out.census ? 0.0 : hoeffding_half_width(honest_sampled) * static_cast<double>(max_degree) / mean_vol;
      g.ci = {std::max(0.0, g.value - hg), std::min(1.0, g.value + hg)};
    } else {
      g.ci = {0.0, 1.0};
    }
    out.gamma_hat = g;
  }
  return out;
}

struct InterplayRow {
  Fraction phi;
  Fraction beta;
  Fraction gamma_max;
};

// Largest tolerable gamma for each (phi, beta): phi alpha beta / (1 - beta)
// in conductance mode, phi beta in vertex mode.
inline std::vector<InterplayRow> sweep_interplay(GrowthMode mode, std::span<const Fraction> phi_grid,
                                                 std::span<const Fraction> beta_grid, const Fraction& alpha = Fraction(1)) {
  if (mode == GrowthMode::conductance && (alpha <= Fraction(0) || alpha > Fraction(1)))
    fail(ErrorKind::input, "alpha must lie in (0, 1]");
  std::vector<InterplayRow> rows;
  for (const auto& beta : beta_grid) {
    if (beta <= Fraction(0) || beta > Fraction(1, 2)) fail(ErrorKind::input, "beta grid must lie in (0, 1/2]");
    for (const auto& phi : phi_grid) {
      if (phi < Fraction(0)) fail(ErrorKind::input, "phi grid must be non-negative");
      const Fraction g = mode == GrowthMode::conductance ? phi * alpha * beta / (Fraction(1) - beta) : phi * beta;
      rows.push_back({phi, beta, g});
    }
  }
  return rows;
}

}  // namespace trustgrow
