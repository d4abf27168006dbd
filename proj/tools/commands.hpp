#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trustgrow/trustgrow.hpp"

namespace trustgrow::cli {

namespace fs = std::filesystem;

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string out_dir;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
};

inline std::string default_out_dir() {
  const char* env = std::getenv("TRUSTGROW_OUT_DIR");
  return env && *env ? env : ".";
}

inline std::string out_path(const Context& ctx, const std::string& name) {
  fs::create_directories(ctx.out_dir);
  return (fs::path(ctx.out_dir) / name).string();
}

// Sidecar manifest with timing; traces carry a timing-free copy.
inline void write_manifest(const Context& ctx, const std::string& command, std::uint64_t seed, const Json& config,
                           const Json& inputs) {
  Json j;
  j["command"] = command;
  j["tool"] = "trustgrow";
  j["version"] = kToolVersion;
  j["seed"] = seed;
  j["config"] = config;
  j["inputs"] = inputs;
  j["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - ctx.started).count();
  write_file(out_path(ctx, command + ".manifest.json"), j.dump(2) + "\n");
}

inline Json input_digest(const std::string& path) { return digest(read_file(path)); }

inline std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline std::vector<Fraction> parse_fraction_list(const std::vector<std::string>& items) {
  std::vector<Fraction> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(Fraction::parse(part));
  }
  return out;
}

inline void print_conditions(std::ostream& os, const std::vector<ConditionResult>& cs) {
  for (const auto& c : cs) {
    char line[256];
    std::snprintf(line, sizeof line, "  [%d] %-22s %-8s measured %-14s bound %s", c.id, c.name.c_str(),
                  to_string(c.status), c.measured.empty() ? "-" : c.measured.c_str(),
                  c.bound.empty() ? "-" : c.bound.c_str());
    os << line;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  }
}

inline void print_verdict(std::ostream& os, const AdmissionVerdict& v) {
  os << "verdict: " << (v.admitted ? "admitted" : "rejected") << "\n";
  os << "mode: " << to_string(v.mode) << "\n";
  os << "threshold: " << v.threshold.str() << (v.threshold_feasible ? "" : " (infeasible)") << "\n";
  os << "growth used: " << v.growth_used.str() << " of the delta budget\n";
  if (v.measured) {
    os << "measured: " << v.measured->str() << " (" << to_string(v.measured->method);
    if (v.measured->heuristic) os << ", heuristic";
    os << ")\n";
  }
  print_conditions(os, v.conditions);
  if (!v.admitted) os << "binding: " << v.binding << "\n";
}

inline void apply_overrides(GrowthPolicy& p, const std::optional<std::string>& mode, std::optional<std::size_t> limit,
                            bool spectral, bool no_spectral) {
  if (mode) p.mode = parse_mode(*mode);
  if (limit) p.enumeration_limit = *limit;
  if (spectral) p.spectral = true;
  if (no_spectral) p.spectral = false;
}

// Candidates adjacent to the community that are not yet members.
inline VertexSet adjacent_pool(const TrustGraph& g, const VertexSet& a) {
  VertexSet pool(g.vertex_count());
  a.for_each([&](VertexId v) {
    for (VertexId w : g.neighbors(v))
      if (!a.contains(w)) pool.insert(w);
  });
  return pool;
}

inline Json scenario_to_json(const ScenarioConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["initial_size"] = c.initial_size;
  j["d"] = c.d;
  j["honest_growth_rate"] = c.honest_growth_rate.str();
  j["join_degree"] = c.join_degree;
  j["steps"] = c.steps;
  j["stop_size"] = c.stop_size;
  j["max_community"] = c.max_community;
  Json a;
  a["num_corrupt"] = c.adversary.num_corrupt;
  a["initial_corrupt"] = c.adversary.initial_corrupt;
  a["attack_edge_budget"] = c.adversary.attack_edge_budget == std::numeric_limits<std::size_t>::max()
                                ? Json(nullptr)
                                : Json(c.adversary.attack_edge_budget);
  a["sybil_supply"] = c.adversary.sybil_supply;
  a["sybil_clique"] = c.adversary.sybil_clique;
  a["respect_assumptions"] = c.adversary.respect_assumptions;
  j["adversary"] = a;
  j["policy"] = policy_to_json(c.policy);
  return j;
}

inline ScenarioConfig scenario_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::input, "scenario config must be an object");
  ScenarioConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "initial_size") c.initial_size = v.get<std::size_t>();
      else if (key == "d") c.d = v.get<std::size_t>();
      else if (key == "honest_growth_rate") c.honest_growth_rate = detail::fraction_field(v, key);
      else if (key == "join_degree") c.join_degree = v.get<std::size_t>();
      else if (key == "steps") c.steps = v.get<std::size_t>();
      else if (key == "stop_size") c.stop_size = v.get<std::size_t>();
      else if (key == "max_community") c.max_community = v.get<std::size_t>();
      else if (key == "policy") c.policy = policy_from_json(v);
      else if (key == "adversary") {
        for (const auto& [ak, av] : v.items()) {
          if (ak == "num_corrupt") c.adversary.num_corrupt = av.get<std::size_t>();
          else if (ak == "initial_corrupt") c.adversary.initial_corrupt = av.get<std::size_t>();
          else if (ak == "attack_edge_budget") {
            if (!av.is_null()) c.adversary.attack_edge_budget = av.get<std::size_t>();
          } else if (ak == "sybil_supply") c.adversary.sybil_supply = av.get<std::size_t>();
          else if (ak == "sybil_clique") c.adversary.sybil_clique = av.get<std::size_t>();
          else if (ak == "respect_assumptions") c.adversary.respect_assumptions = av.get<bool>();
          else fail(ErrorKind::input, "unknown adversary field '" + ak + "'");
        }
      } else {
        fail(ErrorKind::input, "unknown scenario field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("scenario config: ") + e.what());
  }
  return c;
}

// ---- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string graph;
  std::optional<std::size_t> exact_limit;
  bool spectral = false;
};

inline int cmd_analyze(Context& ctx, const AnalyzeArgs& a) {
  const auto g = read_graph(a.graph);
  AnalyzeOptions opts;
  if (a.exact_limit) opts.exact_limit = *a.exact_limit;
  opts.spectral = a.spectral;
  const auto r = analyze(g, opts);
  auto& os = ctx.out;
  os << "vertices: " << r.vertices << "\nedges: " << r.edges << "\n";
  os << "connected: " << (r.disconnected ? "no" : "yes") << "\n";
  os << "method: " << to_string(r.method) << "\n";
  if (r.phi_e_exact) os << "phi_e: " << r.phi_e_exact->str() << " (" << fixed(r.phi_e_exact->to_double()) << ")\n";
  if (r.spectral) {
    os << "lambda2: " << fixed(r.spectral->lambda2, 9) << "\n";
    os << "phi_e bounds: [" << fixed(r.spectral->lower) << ", " << fixed(r.spectral->upper) << "]\n";
  }
  if (r.phi_e_witness) os << "phi_e witness: " << set_to_json(*r.phi_e_witness).dump() << "\n";
  if (r.phi_v_exact) os << "phi_v: " << r.phi_v_exact->str() << " (" << fixed(r.phi_v_exact->to_double()) << ")\n";
  if (r.phi_v_witness) os << "phi_v witness: " << set_to_json(*r.phi_v_witness).dump() << "\n";
  if (!r.phi_v_exact && r.phi_v_lower)
    os << "phi_v lower: " << fixed(*r.phi_v_lower) << (r.phi_v_lower_heuristic ? " (heuristic)" : "") << "\n";
  write_file(out_path(ctx, "analyze.json"), report_to_json(r).dump(2) + "\n");
  Json cfg{{"exact_limit", opts.exact_limit}, {"spectral", opts.spectral}};
  write_manifest(ctx, "analyze", 0, cfg, {{"graph", input_digest(a.graph)}});
  return exit_code::ok;
}

// ---- gate -------------------------------------------------------------------

struct GateArgs {
  std::string graph, community, candidates, policy;
  std::optional<std::string> mode;
  std::optional<std::size_t> exact_limit;
  bool spectral = false, no_spectral = false;
};

inline int cmd_gate(Context& ctx, const GateArgs& a) {
  const auto g = std::make_shared<const TrustGraph>(read_graph(a.graph));
  const auto community = parse_vertex_list(read_file(a.community), g->vertex_count());
  const auto added = parse_vertex_list(read_file(a.candidates), g->vertex_count());
  auto policy = read_policy(a.policy);
  apply_overrides(policy, a.mode, a.exact_limit, a.spectral, a.no_spectral);
  const CommunityTrustGraph current(g, community);
  const auto v = gate(current, community | added, policy);
  print_verdict(ctx.out, v);
  write_file(out_path(ctx, "verdict.json"), verdict_to_json(v).dump(2) + "\n");
  write_manifest(ctx, "gate", 0, policy_to_json(policy),
                 {{"graph", input_digest(a.graph)},
                  {"community", input_digest(a.community)},
                  {"candidates", input_digest(a.candidates)},
                  {"policy", input_digest(a.policy)}});
  return v.admitted ? exit_code::ok : exit_code::rejected;
}

// ---- grow -------------------------------------------------------------------

struct GrowArgs {
  std::string graph, policy, trace;
  std::optional<std::string> community, pool;
  std::size_t steps = 1;
  std::optional<std::string> mode;
  std::optional<std::size_t> exact_limit;
  bool spectral = false, no_spectral = false;
};

// Starts a trace (when it does not exist yet) from the graph and initial
// community, then appends one step per admitted batch.
inline int cmd_grow(Context& ctx, const GrowArgs& a) {
  auto policy = read_policy(a.policy);
  apply_overrides(policy, a.mode, a.exact_limit, a.spectral, a.no_spectral);
  policy.validate();
  const auto graph = std::make_shared<const TrustGraph>(read_graph(a.graph));
  const std::string trace_path = fs::path(a.trace).is_absolute() || fs::path(a.trace).has_parent_path()
                                     ? a.trace
                                     : out_path(ctx, a.trace);
  const Json inputs{{"graph", input_digest(a.graph)}, {"policy", input_digest(a.policy)}};

  CommunityHistory history;
  std::string appended;
  if (fs::exists(trace_path)) {
    history = read_trace(trace_path).history;
    if (history.vertex_count() != graph->vertex_count())
      fail(ErrorKind::input, "graph and trace disagree on the vertex count");
    appended += trace_manifest("grow", 0, policy_to_json(policy), graph->vertex_count(), inputs).dump() + "\n";
  } else {
    if (!a.community) fail(ErrorKind::input, "a new trace needs --community");
    const auto a1 = parse_vertex_list(read_file(*a.community), graph->vertex_count());
    history = start_history(CommunityTrustGraph(graph, a1), policy);
    appended += trace_manifest("grow", 0, policy_to_json(policy), graph->vertex_count(), inputs).dump() + "\n";
    appended += trace_step(0, nullptr, history[0], nullptr, nullptr).dump() + "\n";
  }

  std::optional<VertexSet> fixed_pool;
  if (a.pool) fixed_pool = parse_vertex_list(read_file(*a.pool), graph->vertex_count());

  bool any = false;
  GrowResult last;
  for (std::size_t s = 0; s < a.steps; ++s) {
    const auto& community = history.back().community;
    VertexSet pool = fixed_pool ? *fixed_pool - community : adjacent_pool(*graph, community);
    GrowOptions opts;
    opts.next_edges = graph;
    last = grow(history, pool, policy, opts);
    ctx.out << "step " << history.size() - 1 << ": ";
    if (!last.admitted) {
      ctx.out << "no admission (" << (last.verdict.binding.empty() ? "none" : last.verdict.binding) << ")\n";
      break;
    }
    any = true;
    ctx.out << "admitted " << last.added.size() << ", community " << history.back().size() << "\n";
    const auto i = history.size() - 1;
    appended += trace_step(i, &history[i - 1], history[i], &last.verdict, nullptr).dump() + "\n";
  }
  if (!last.admitted) print_verdict(ctx.out, last.verdict);
  write_file(trace_path, appended, true);
  write_manifest(ctx, "grow", 0, policy_to_json(policy), inputs);
  return any ? exit_code::ok : exit_code::rejected;
}

// ---- audit ------------------------------------------------------------------

struct AuditArgs {
  std::string trace, ledger, policy;
  std::optional<std::string> mode;
  std::optional<std::size_t> exact_limit;
  bool spectral = false, no_spectral = false;
};

inline int cmd_audit(Context& ctx, const AuditArgs& a) {
  auto policy = read_policy(a.policy);
  apply_overrides(policy, a.mode, a.exact_limit, a.spectral, a.no_spectral);
  const auto trace = read_trace(a.trace);
  const auto ledger = read_ledger(a.ledger, trace.history.vertex_count());
  const auto audit = audit_history(trace.history, ledger, policy);

  // Replay: recomputed metrics must match whatever the trace recorded.
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < trace.history.size(); ++i) {
    const auto& recorded = trace.step_records[i].at("metrics");
    const auto again = step_metrics(trace.history[i], recorded.contains("beta") ? &ledger : nullptr);
    if (recorded != again) {
      ctx.err << "metrics mismatch at step " << i << "\n";
      ++mismatches;
    }
  }

  auto& os = ctx.out;
  os << "steps: " << trace.history.size() << "\n";
  os << "initial beta: " << audit.initial_beta.str() << (audit.initial_beta_ok ? "" : " (above target)") << "\n";
  os << "initial size condition: " << (audit.initial_condition_ok ? "met" : "not met") << "\n";
  Json steps = Json::array();
  for (std::size_t i = 0; i < audit.steps.size(); ++i) {
    const auto& r = audit.steps[i];
    os << "step " << i + 1 << ": beta " << r.beta_next.str() << ", " << to_string(r.outcome) << "\n";
    if (!r.premises_hold) print_conditions(os, r.premises);
    steps.push_back(audit_to_json(r));
  }
  const bool ok = audit.beta_violations == 0;
  os << (ok ? "beta <= target at all steps" : "beta exceeded the target") << " (max " << audit.max_beta.str()
     << ", target " << policy.beta.str() << ")\n";
  if (audit.soundness_violations > 0) os << "soundness violations: " << audit.soundness_violations << "\n";
  os << "metrics replay: " << (mismatches == 0 ? "identical" : "mismatch") << "\n";

  Json report;
  report["initial_beta"] = audit.initial_beta.str();
  report["initial_beta_ok"] = audit.initial_beta_ok;
  report["initial_condition_ok"] = audit.initial_condition_ok;
  report["all_premises_hold"] = audit.all_premises_hold;
  report["beta_violations"] = audit.beta_violations;
  report["soundness_violations"] = audit.soundness_violations;
  report["max_beta"] = audit.max_beta.str();
  report["replay_mismatches"] = mismatches;
  report["steps"] = steps;
  write_file(out_path(ctx, "audit.json"), report.dump(2) + "\n");
  write_manifest(ctx, "audit", 0, policy_to_json(policy),
                 {{"trace", input_digest(a.trace)}, {"ledger", input_digest(a.ledger)}, {"policy", input_digest(a.policy)}});
  if (mismatches > 0) return exit_code::input;
  return ok ? exit_code::ok : exit_code::rejected;
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string preset;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::size_t n = 0, d = 0;
  std::optional<std::size_t> k_honest, k_byz, bridges;
  std::optional<std::string> config;
  std::optional<std::string> mode;
  std::string beta = "3/10", corrupt_share = "1/2", latent_share = "0";
  std::size_t degree = 8;
  bool json = false;
};

inline void write_graph_file(Context& ctx, const TrustGraph& g, bool json) {
  if (json) write_file(out_path(ctx, "graph.json"), format_graph_json(g));
  else write_file(out_path(ctx, "graph.txt"), format_graph_text(g));
}

inline ScenarioConfig default_scenario(GrowthMode mode) {
  ScenarioConfig c;
  if (mode == GrowthMode::conductance) {
    c.policy.mode = GrowthMode::conductance;
    c.policy.alpha = Fraction(1, 4);
    c.policy.beta = Fraction(1, 4);
    c.policy.gamma_e = Fraction(1, 120);
    c.policy.d = 32;
    c.initial_size = 32;
    c.honest_growth_rate = Fraction(9, 20);
    c.steps = 12;
    c.stop_size = 513;
    c.adversary.num_corrupt = 20;
    c.adversary.sybil_supply = 200;
  } else {
    c.policy.mode = GrowthMode::vertex_expansion;
    c.policy.beta = Fraction(1, 3);
    c.policy.gamma_v = Fraction(1, 10);
    c.policy.d = 8;
    c.initial_size = 6;
    c.honest_growth_rate = Fraction(1, 4);
    c.steps = 8;
    c.max_community = 22;
    c.adversary.num_corrupt = 4;
    c.adversary.sybil_supply = 12;
    c.adversary.sybil_clique = 3;
  }
  return c;
}

inline int cmd_generate(Context& ctx, const GenerateArgs& a) {
  Json cfg;
  cfg["preset"] = a.preset;
  if (a.preset == "bottleneck-edge" || a.preset == "bottleneck-hub") {
    const bool top = a.preset == "bottleneck-edge";
    const std::size_t kh = a.k_honest.value_or(5), kb = a.k_byz.value_or(5);
    const std::size_t bridges = a.bridges.value_or(top ? 1 : std::max(kh, kb));
    const auto b = gen_bottleneck(kh, kb, bridges, top ? BottleneckMode::corrupt_edge : BottleneckMode::corrupt_vertex,
                                  a.seed);
    write_graph_file(ctx, b.graph, a.json);
    write_file(out_path(ctx, "ledger.json"), ledger_to_json(b.ledger).dump(2) + "\n");
    write_file(out_path(ctx, "community.txt"), format_vertex_list(b.honest_cluster));
    cfg["k_honest"] = kh;
    cfg["k_byz"] = kb;
    cfg["bridges"] = bridges;
    ctx.out << a.preset << ": " << b.graph.vertex_count() << " vertices, " << b.graph.edge_count() << " edges\n";
  } else if (a.preset == "regular") {
    if (a.n == 0 || a.d == 0) fail(ErrorKind::input, "regular preset needs --n and --d");
    const auto g = gen_random_regular(a.n, a.d, a.seed);
    write_graph_file(ctx, g, a.json);
    cfg["n"] = a.n;
    cfg["d"] = a.d;
    ctx.out << "regular: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  } else if (a.preset == "history") {
    ScenarioConfig sc = a.config ? scenario_from_json(detail::parse_json(read_file(*a.config), "scenario config"))
                                 : default_scenario(a.mode ? parse_mode(*a.mode) : GrowthMode::conductance);
    if (a.seed_given) sc.seed = a.seed;
    const auto gh = gen_history(sc);
    cfg["scenario"] = scenario_to_json(sc);
    const auto manifest = trace_manifest("generate", sc.seed, cfg, gh.history.vertex_count());
    write_file(out_path(ctx, "trace.ndjson"), format_trace(manifest, gh.history, gh.verdicts, &gh.ledger));
    write_graph_file(ctx, gh.history.back().edges(), a.json);
    write_file(out_path(ctx, "ledger.json"), ledger_to_json(gh.ledger).dump(2) + "\n");
    write_file(out_path(ctx, "policy.json"), policy_to_json(sc.policy).dump(2) + "\n");
    write_file(out_path(ctx, "community.txt"), format_vertex_list(gh.history.back().community));
    ctx.out << "history: " << gh.history.size() << " steps, final community " << gh.history.back().size()
            << ", beta " << byzantine_penetration(gh.history.back(), gh.ledger).str() << "\n";
    write_manifest(ctx, "generate", sc.seed, cfg, Json::object());
    return exit_code::ok;
  } else if (a.preset == "labeled") {
    LabeledCommunityConfig lc;
    lc.n = a.n != 0 ? a.n : lc.n;
    lc.beta = Fraction::parse(a.beta);
    lc.corrupt_share = Fraction::parse(a.corrupt_share);
    lc.latent_share = Fraction::parse(a.latent_share);
    lc.avg_degree = a.degree;
    lc.seed = a.seed;
    const auto l = gen_labeled_community(lc);
    write_graph_file(ctx, l.community.edges(), a.json);
    write_file(out_path(ctx, "ledger.json"), ledger_to_json(l.ledger).dump(2) + "\n");
    write_file(out_path(ctx, "community.txt"), format_vertex_list(l.community.community));
    cfg["n"] = lc.n;
    cfg["beta"] = lc.beta.str();
    cfg["corrupt_share"] = lc.corrupt_share.str();
    cfg["latent_share"] = lc.latent_share.str();
    cfg["avg_degree"] = lc.avg_degree;
    ctx.out << "labeled: " << lc.n << " vertices, beta " << byzantine_penetration(l.community, l.ledger).str() << "\n";
  } else {
    fail(ErrorKind::input, "unknown preset '" + a.preset + "'");
  }
  write_manifest(ctx, "generate", a.seed, cfg, Json::object());
  return exit_code::ok;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string mode = "conductance";
  std::vector<std::string> phi, beta;
  std::string alpha = "1";
};

inline int cmd_sweep(Context& ctx, const SweepArgs& a) {
  const auto mode = parse_mode(a.mode);
  const auto phi = parse_fraction_list(a.phi);
  const auto beta = parse_fraction_list(a.beta);
  if (phi.empty() || beta.empty()) fail(ErrorKind::input, "sweep needs --phi and --beta values");
  const auto alpha = Fraction::parse(a.alpha);
  const auto rows = sweep_interplay(mode, phi, beta, alpha);
  std::string csv = "mode,phi,beta,alpha,gamma_max,gamma_max_decimal\n";
  for (const auto& r : rows) {
    csv += std::string(to_string(mode)) + "," + r.phi.str() + "," + r.beta.str() + "," +
           (mode == GrowthMode::conductance ? alpha.str() : "") + "," + r.gamma_max.str() + "," +
           fixed(r.gamma_max.to_double(), 4) + "\n";
  }
  ctx.out << csv;
  write_file(out_path(ctx, "sweep.csv"), csv);
  Json cfg{{"mode", to_string(mode)}, {"phi", a.phi}, {"beta", a.beta}, {"alpha", alpha.str()}};
  write_manifest(ctx, "sweep", 0, cfg, Json::object());
  return exit_code::ok;
}

// ---- estimate ---------------------------------------------------------------

struct EstimateArgs {
  std::string graph, ledger;
  std::optional<std::string> community;
  std::size_t sample = 0;
  int radius = 2;
  std::uint64_t seed = 1;
};

inline int cmd_estimate(Context& ctx, const EstimateArgs& a) {
  const auto g = std::make_shared<const TrustGraph>(read_graph(a.graph));
  const auto ledger = read_ledger(a.ledger, g->vertex_count());
  const auto members =
      a.community ? parse_vertex_list(read_file(*a.community), g->vertex_count()) : VertexSet::full(g->vertex_count());
  const CommunityTrustGraph ctg(g, members);
  const LedgerExaminer examiner(*g, ledger);
  const std::size_t sample = a.sample != 0 ? a.sample : members.size();
  const auto est = estimate_parameters(ctg, examiner, sample, a.radius, a.seed);
  auto& os = ctx.out;
  os << "sample: " << est.sample_size << " of " << members.size() << (est.census ? " (census)" : "") << "\n";
  os << "radius: " << est.radius << "\n";
  os << "beta_hat: " << fixed(est.beta_hat.value) << " [" << fixed(est.beta_hat.ci.low) << ", "
     << fixed(est.beta_hat.ci.high) << "]\n";
  if (est.gamma_hat)
    os << "gamma_hat: " << fixed(est.gamma_hat->value) << " [" << fixed(est.gamma_hat->ci.low) << ", "
       << fixed(est.gamma_hat->ci.high) << "]\n";
  Json j;
  j["sample_size"] = est.sample_size;
  j["radius"] = est.radius;
  j["census"] = est.census;
  j["beta_hat"] = {{"value", est.beta_hat.value}, {"low", est.beta_hat.ci.low}, {"high", est.beta_hat.ci.high}};
  if (est.gamma_hat)
    j["gamma_hat"] = {{"value", est.gamma_hat->value}, {"low", est.gamma_hat->ci.low}, {"high", est.gamma_hat->ci.high}};
  write_file(out_path(ctx, "estimate.json"), j.dump(2) + "\n");
  write_manifest(ctx, "estimate", a.seed, {{"sample", sample}, {"radius", a.radius}},
                 {{"graph", input_digest(a.graph)}, {"ledger", input_digest(a.ledger)}});
  return exit_code::ok;
}

// ---- entry point ------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Sybil-resilient community growth on trust graphs"};
  app.require_subcommand(1);
  std::string out_dir = default_out_dir();
  app.add_option("--out-dir", out_dir, "Directory for output files (default: $TRUSTGROW_OUT_DIR or .)");

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Conductance, vertex expansion and spectral bounds of a graph");
  analyze_cmd->add_option("graph", analyze_args.graph, "Graph file")->required();
  analyze_cmd->add_option("--exact-limit", analyze_args.exact_limit, "Largest n for exact enumeration");
  analyze_cmd->add_flag("--spectral", analyze_args.spectral, "Allow spectral bounds beyond the exact limit");

  GateArgs gate_args;
  auto* gate_cmd = app.add_subcommand("gate", "Check whether a candidate batch may join a community");
  gate_cmd->add_option("graph", gate_args.graph, "Graph file")->required();
  gate_cmd->add_option("community", gate_args.community, "Current community")->required();
  gate_cmd->add_option("candidates", gate_args.candidates, "Vertices to add")->required();
  gate_cmd->add_option("policy", gate_args.policy, "Policy file")->required();
  gate_cmd->add_option("--mode", gate_args.mode, "conductance or vertex");
  gate_cmd->add_option("--exact-limit", gate_args.exact_limit, "Largest community for exact enumeration");
  gate_cmd->add_flag("--spectral", gate_args.spectral, "Use spectral bounds beyond the exact limit");
  gate_cmd->add_flag("--no-spectral", gate_args.no_spectral, "Refuse communities beyond the exact limit");

  GrowArgs grow_args;
  auto* grow_cmd = app.add_subcommand("grow", "Grow a community and append the steps to a trace");
  grow_cmd->add_option("--graph", grow_args.graph, "Graph file (edge set for the new steps)")->required();
  grow_cmd->add_option("--policy", grow_args.policy, "Policy file")->required();
  grow_cmd->add_option("--trace", grow_args.trace, "Trace file, created if missing")->required();
  grow_cmd->add_option("--community", grow_args.community, "Initial community for a new trace");
  grow_cmd->add_option("--pool", grow_args.pool, "Candidate pool (default: all adjacent non-members)");
  grow_cmd->add_option("--steps", grow_args.steps, "Growth steps to attempt");
  grow_cmd->add_option("--mode", grow_args.mode, "conductance or vertex");
  grow_cmd->add_option("--exact-limit", grow_args.exact_limit, "Largest community for exact enumeration");
  grow_cmd->add_flag("--spectral", grow_args.spectral, "Use spectral bounds beyond the exact limit");
  grow_cmd->add_flag("--no-spectral", grow_args.no_spectral, "Refuse communities beyond the exact limit");

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "Audit a history trace against ground-truth labels");
  audit_cmd->add_option("trace", audit_args.trace, "Trace file")->required();
  audit_cmd->add_option("ledger", audit_args.ledger, "Ledger file")->required();
  audit_cmd->add_option("policy", audit_args.policy, "Policy file")->required();
  audit_cmd->add_option("--mode", audit_args.mode, "conductance or vertex");
  audit_cmd->add_option("--exact-limit", audit_args.exact_limit, "Largest community for exact enumeration");
  audit_cmd->add_flag("--spectral", audit_args.spectral, "Use spectral bounds beyond the exact limit");
  audit_cmd->add_flag("--no-spectral", audit_args.no_spectral, "Refuse communities beyond the exact limit");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Generate graphs, ledgers and histories");
  gen_cmd->add_option("--preset", gen_args.preset, "bottleneck-edge, bottleneck-hub, regular, history or labeled")->required();
  auto* seed_opt = gen_cmd->add_option("--seed", gen_args.seed, "Random seed");
  gen_cmd->add_option("--n", gen_args.n, "Vertex count");
  gen_cmd->add_option("--d", gen_args.d, "Degree");
  gen_cmd->add_option("--k-honest", gen_args.k_honest, "Honest clique size");
  gen_cmd->add_option("--k-byz", gen_args.k_byz, "Byzantine clique size");
  gen_cmd->add_option("--bridges", gen_args.bridges, "Bridges between the cliques");
  gen_cmd->add_option("--config", gen_args.config, "Scenario config (history preset)");
  gen_cmd->add_option("--mode", gen_args.mode, "conductance or vertex (history preset defaults)");
  gen_cmd->add_option("--beta", gen_args.beta, "Byzantine fraction (labeled preset)");
  gen_cmd->add_option("--corrupt-share", gen_args.corrupt_share, "Share of byzantines that are corrupt");
  gen_cmd->add_option("--latent-share", gen_args.latent_share, "Share of corrupt members that are latent");
  gen_cmd->add_option("--degree", gen_args.degree, "Average degree (labeled preset)");
  gen_cmd->add_flag("--json", gen_args.json, "Write the graph as JSON");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Largest tolerable gamma over a grid of connectivity and beta");
  sweep_cmd->add_option("--mode", sweep_args.mode, "conductance or vertex");
  sweep_cmd->add_option("--phi", sweep_args.phi, "Connectivity values (comma separated or repeated)")->required();
  sweep_cmd->add_option("--beta", sweep_args.beta, "Beta values (comma separated or repeated)")->required();
  sweep_cmd->add_option("--alpha", sweep_args.alpha, "Degree-bound fraction (conductance mode)");

  EstimateArgs est_args;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate penetration from random checks");
  est_cmd->add_option("graph", est_args.graph, "Graph file")->required();
  est_cmd->add_option("ledger", est_args.ledger, "Ledger file")->required();
  est_cmd->add_option("--community", est_args.community, "Community (default: every vertex)");
  est_cmd->add_option("--sample", est_args.sample, "Sample size (default: census)");
  est_cmd->add_option("--radius", est_args.radius, "Check radius 0, 1 or 2");
  est_cmd->add_option("--seed", est_args.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::input;
  }
  gen_args.seed_given = seed_opt->count() > 0;

  Context ctx{out, err, out_dir};
  try {
    if (*analyze_cmd) return cmd_analyze(ctx, analyze_args);
    if (*gate_cmd) return cmd_gate(ctx, gate_args);
    if (*grow_cmd) return cmd_grow(ctx, grow_args);
    if (*audit_cmd) return cmd_audit(ctx, audit_args);
    if (*gen_cmd) return cmd_generate(ctx, gen_args);
    if (*sweep_cmd) return cmd_sweep(ctx, sweep_args);
    if (*est_cmd) return cmd_estimate(ctx, est_args);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input;
  }
  return exit_code::input;
}

}  // namespace trustgrow::cli
