#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "trustgrow/connectivity.hpp"
#include "trustgrow/error.hpp"
#include "trustgrow/fraction.hpp"
#include "trustgrow/growth.hpp"
#include "trustgrow/identity.hpp"
#include "trustgrow/policy.hpp"
#include "trustgrow/trust_graph.hpp"

namespace trustgrow {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content, bool append = false) {
  std::ofstream out(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
  if (!out) fail(ErrorKind::input, "cannot write " + path);
  out << content;
}

// FNV-1a, 64 bit, as a 16-digit hex string.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

namespace detail {

inline std::uint64_t parse_id(std::string_view tok, std::size_t line) {
  if (tok.empty()) fail(ErrorKind::input, "line " + std::to_string(line) + ": missing vertex id");
  std::uint64_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9')
      fail(ErrorKind::input, "line " + std::to_string(line) + ": bad vertex id '" + std::string(tok) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > 0xfffffffeULL) fail(ErrorKind::input, "line " + std::to_string(line) + ": vertex id too large");
  }
  return v;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    f(text.substr(pos, end - pos), ++lineno);
    pos = end + 1;
  }
}

inline bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    return c == '{' || c == '[';
  }
  return false;
}

inline Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, what + ": " + e.what());
  }
}

}  // namespace detail

// Edge list: one `u v` pair per line, `#` starts a comment. An optional
// `# vertices N` line fixes the vertex count (otherwise max id + 1).
inline TrustGraph parse_graph_text(std::string_view text) {
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t max_id = 0;
  bool any = false;
  detail::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      const auto toks = detail::tokens(line.substr(hash + 1));
      if (toks.size() == 2 && toks[0] == "vertices") declared = detail::parse_id(toks[1], lineno);
      line = line.substr(0, hash);
    }
    const auto toks = detail::tokens(line);
    if (toks.empty()) return;
    if (toks.size() != 2) fail(ErrorKind::input, "line " + std::to_string(lineno) + ": expected 'u v'");
    const auto u = detail::parse_id(toks[0], lineno), v = detail::parse_id(toks[1], lineno);
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    max_id = std::max<std::size_t>(max_id, std::max(u, v));
    any = true;
  });
  std::size_t n = any ? max_id + 1 : 0;
  if (declared) {
    if (any && *declared <= max_id)
      fail(ErrorKind::input, "edge endpoint " + std::to_string(max_id) + " outside declared vertex count " +
                                 std::to_string(*declared));
    n = *declared;
  }
  return make_graph(n, edges);
}

inline TrustGraph graph_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
      fail(ErrorKind::input, "graph document needs 'vertices' and 'edges'");
    const auto n = j.at("vertices").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) fail(ErrorKind::input, "edges must be [u, v] pairs");
      edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
    return make_graph(n, edges);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("graph document: ") + e.what());
  }
}

inline TrustGraph parse_graph(std::string_view text) {
  return detail::looks_like_json(text) ? graph_from_json(detail::parse_json(text, "graph document"))
                                       : parse_graph_text(text);
}

inline TrustGraph read_graph(const std::string& path) { return parse_graph(read_file(path)); }

inline std::string format_graph_text(const TrustGraph& g) {
  std::string out = "# vertices " + std::to_string(g.vertex_count()) + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

inline Json edges_to_json(const std::vector<Edge>& edges) {
  Json arr = Json::array();
  for (const auto& [u, v] : edges) arr.push_back({u, v});
  return arr;
}

inline Json graph_to_json(const TrustGraph& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = edges_to_json(g.edges());
  return j;
}

inline std::string format_graph_json(const TrustGraph& g) { return graph_to_json(g).dump() + "\n"; }

// Whitespace-separated vertex ids with `#` comments.
inline VertexSet parse_vertex_list(std::string_view text, std::size_t universe) {
  VertexSet s(universe);
  detail::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    line = line.substr(0, line.find('#'));
    for (auto tok : detail::tokens(line)) {
      const auto v = detail::parse_id(tok, lineno);
      if (v >= universe)
        fail(ErrorKind::input, "vertex " + std::to_string(v) + " outside range [0, " + std::to_string(universe) + ")");
      s.insert(static_cast<VertexId>(v));
    }
  });
  return s;
}

inline std::string format_vertex_list(const VertexSet& s) {
  std::string out;
  for (VertexId v : s.members()) out += std::to_string(v) + "\n";
  return out;
}

inline Json ledger_to_json(const IdentityLedger& ledger) {
  Json j = Json::object();
  for (VertexId v = 0; v < ledger.vertex_count(); ++v)
    j[std::to_string(v)] = {{"genuine", ledger[v].genuine}, {"corrupt_at_heart", ledger[v].corrupt_at_heart}};
  return j;
}

inline IdentityLedger ledger_from_json(const Json& j, std::size_t vertex_count) {
  if (!j.is_object()) fail(ErrorKind::input, "ledger must be an object keyed by vertex id");
  std::vector<IdentityRecord> records(vertex_count);
  std::vector<bool> seen(vertex_count, false);
  try {
    for (const auto& [key, rec] : j.items()) {
      const auto v = detail::parse_id(key, 0);
      if (v >= vertex_count) fail(ErrorKind::input, "ledger names vertex " + key + " outside the graph");
      if (!rec.is_object() || !rec.contains("genuine")) fail(ErrorKind::input, "ledger record " + key + " lacks 'genuine'");
      records[v].genuine = rec.at("genuine").get<bool>();
      records[v].corrupt_at_heart = rec.value("corrupt_at_heart", false);
      if (!records[v].genuine) records[v].corrupt_at_heart = false;
      seen[v] = true;
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("ledger: ") + e.what());
  }
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (!seen[v]) fail(ErrorKind::input, "ledger has no record for vertex " + std::to_string(v));
  return IdentityLedger(std::move(records));
}

inline IdentityLedger read_ledger(const std::string& path, std::size_t vertex_count) {
  return ledger_from_json(detail::parse_json(read_file(path), "ledger"), vertex_count);
}

inline Json policy_to_json(const GrowthPolicy& p) {
  Json j;
  j["mode"] = to_string(p.mode);
  j["alpha"] = p.alpha.str();
  j["beta"] = p.beta.str();
  j["gamma_e"] = p.gamma_e.str();
  j["gamma_v"] = p.gamma_v.str();
  j["delta"] = p.delta().str();
  j["d"] = p.d;
  j["enumeration_limit"] = p.enumeration_limit;
  j["spectral"] = p.spectral;
  j["heuristic_vertex_bound"] = p.heuristic_vertex_bound;
  j["gates_enabled"] = p.gates_enabled;
  return j;
}

namespace detail {
inline Fraction fraction_field(const Json& v, const std::string& name) {
  if (v.is_string()) return Fraction::parse(v.get<std::string>());
  if (v.is_number()) return Fraction::parse(v.dump());
  fail(ErrorKind::input, "policy field '" + name + "' must be a number or a fraction string");
}
}  // namespace detail

// `delta` is accepted but ignored; it is always 1 - 2 beta.
inline GrowthPolicy policy_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::input, "policy must be an object");
  GrowthPolicy p;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "mode") p.mode = parse_mode(v.get<std::string>());
      else if (key == "alpha") p.alpha = detail::fraction_field(v, key);
      else if (key == "beta") p.beta = detail::fraction_field(v, key);
      else if (key == "gamma_e") p.gamma_e = detail::fraction_field(v, key);
      else if (key == "gamma_v") p.gamma_v = detail::fraction_field(v, key);
      else if (key == "d") p.d = v.get<std::size_t>();
      else if (key == "enumeration_limit") p.enumeration_limit = v.get<std::size_t>();
      else if (key == "spectral") p.spectral = v.get<bool>();
      else if (key == "heuristic_vertex_bound") p.heuristic_vertex_bound = v.get<bool>();
      else if (key == "gates_enabled") p.gates_enabled = v.get<bool>();
      else if (key == "delta") continue;
      else fail(ErrorKind::input, "unknown policy field '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("policy: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(ErrorKind::input, std::string("policy: ") + e.what());
  }
  return p;
}

inline GrowthPolicy read_policy(const std::string& path) {
  return policy_from_json(detail::parse_json(read_file(path), "policy"));
}

inline Json measurement_to_json(const Measurement& m) {
  Json j;
  j["method"] = to_string(m.method);
  j["value"] = m.value;
  j["exact"] = m.exact ? Json(m.exact->str()) : Json(nullptr);
  j["lambda2"] = m.lambda2 ? Json(*m.lambda2) : Json(nullptr);
  j["heuristic"] = m.heuristic;
  j["usable"] = m.usable;
  if (!m.note.empty()) j["note"] = m.note;
  return j;
}

inline Json conditions_to_json(const std::vector<ConditionResult>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) {
    Json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["status"] = to_string(c.status);
    j["measured"] = c.measured;
    j["bound"] = c.bound;
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline Json verdict_to_json(const AdmissionVerdict& v) {
  Json j;
  j["mode"] = to_string(v.mode);
  j["admitted"] = v.admitted;
  j["threshold"] = v.threshold.str();
  j["threshold_feasible"] = v.threshold_feasible;
  j["growth_used"] = v.growth_used.str();
  j["binding"] = v.binding;
  j["measured"] = v.measured ? measurement_to_json(*v.measured) : Json(nullptr);
  j["conditions"] = conditions_to_json(v.conditions);
  return j;
}

inline Json audit_to_json(const AuditRecord& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["beta_prev"] = r.beta_prev.str();
  j["beta_next"] = r.beta_next.str();
  j["premises_hold"] = r.premises_hold;
  j["conclusion_holds"] = r.conclusion_holds;
  j["outcome"] = to_string(r.outcome);
  j["measured"] = r.measured ? measurement_to_json(*r.measured) : Json(nullptr);
  j["premises"] = conditions_to_json(r.premises);
  return j;
}

inline Json set_to_json(const VertexSet& s) {
  Json arr = Json::array();
  s.for_each([&](VertexId v) { arr.push_back(v); });
  return arr;
}

inline Json report_to_json(const ConnectivityReport& r) {
  Json j;
  j["vertices"] = r.vertices;
  j["edges"] = r.edges;
  j["disconnected"] = r.disconnected;
  j["method"] = to_string(r.method);
  if (r.phi_e_exact) {
    j["phi_e"] = r.phi_e_exact->str();
    j["phi_e_witness"] = set_to_json(*r.phi_e_witness);
  }
  if (r.spectral) {
    j["lambda2"] = r.spectral->lambda2;
    j["lambda2_residual"] = r.spectral->residual;
    j["phi_e_lower"] = r.spectral->lower;
    j["phi_e_upper"] = r.spectral->upper;
  }
  if (r.phi_v_exact) {
    j["phi_v"] = r.phi_v_exact->str();
    j["phi_v_witness"] = set_to_json(*r.phi_v_witness);
  }
  if (r.phi_v_lower) {
    j["phi_v_lower"] = *r.phi_v_lower;
    j["phi_v_lower_heuristic"] = r.phi_v_lower_heuristic;
  }
  return j;
}

// Per-step metrics recorded in traces. Ledger-dependent fields appear only
// when a ledger is known.
inline Json step_metrics(const CommunityTrustGraph& g, const IdentityLedger* ledger) {
  Json j;
  j["size"] = g.size();
  const auto induced = induced_subgraph(g.edges(), g.community);
  j["internal_edges"] = induced.graph.edge_count();
  if (ledger) {
    const auto m = penetration_metrics(g, *ledger);
    j["sigma"] = m.sigma.str();
    j["beta"] = m.beta.str();
    j["gamma_e"] = m.gamma_e ? Json(m.gamma_e->str()) : Json(nullptr);
    j["gamma_v"] = m.gamma_v.str();
  }
  return j;
}

// History traces: newline-delimited JSON. The first record is a manifest
// (no timing, so equal runs give equal bytes); step 0 carries the initial
// community and edge set, later steps carry only what was added.
inline Json trace_manifest(const std::string& command, std::uint64_t seed, const Json& config, std::size_t vertices,
                           const Json& inputs = Json::object()) {
  Json j;
  j["type"] = "manifest";
  j["tool"] = "trustgrow";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["config"] = config;
  j["vertices"] = vertices;
  j["inputs"] = inputs;
  return j;
}

inline std::vector<Edge> edges_added(const TrustGraph* prev, const TrustGraph& next) {
  std::vector<Edge> out;
  for (const auto& e : next.edges())
    if (!prev || !prev->has_edge(e.first, e.second)) out.push_back(e);
  return out;
}

inline Json trace_step(std::size_t index, const CommunityTrustGraph* prev, const CommunityTrustGraph& next,
                       const AdmissionVerdict* verdict, const IdentityLedger* ledger) {
  Json j;
  j["type"] = "step";
  j["step"] = index;
  j["added"] = set_to_json(prev ? next.community - prev->community : next.community);
  j["edges_added"] = edges_to_json(
      prev && prev->graph == next.graph ? std::vector<Edge>{} : edges_added(prev ? prev->graph.get() : nullptr, next.edges()));
  j["verdict"] = verdict ? verdict_to_json(*verdict) : Json(nullptr);
  j["metrics"] = step_metrics(next, ledger);
  return j;
}

// verdicts[i] belongs to step i + 1 when present.
inline std::string format_trace(const Json& manifest, const CommunityHistory& history,
                                const std::vector<AdmissionVerdict>& verdicts, const IdentityLedger* ledger) {
  std::string out = manifest.dump() + "\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    const AdmissionVerdict* v = i > 0 && i - 1 < verdicts.size() ? &verdicts[i - 1] : nullptr;
    out += trace_step(i, i > 0 ? &history[i - 1] : nullptr, history[i], v, ledger).dump() + "\n";
  }
  return out;
}

struct Trace {
  Json manifest;                  // the first manifest record
  CommunityHistory history;
  std::vector<Json> step_records; // raw step records, in order
};

inline Trace parse_trace(std::string_view text) {
  Trace t;
  std::optional<std::size_t> vertices;
  std::unique_ptr<GraphBuilder> builder;
  std::shared_ptr<const TrustGraph> current;
  std::optional<VertexSet> community;
  detail::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    if (detail::tokens(line).empty()) return;
    const Json rec = detail::parse_json(line, "trace line " + std::to_string(lineno));
    try {
      const auto type = rec.at("type").get<std::string>();
      if (type == "manifest") {
        const auto n = rec.at("vertices").get<std::size_t>();
        if (!vertices) {
          vertices = n;
          t.manifest = rec;
          builder = std::make_unique<GraphBuilder>(n);
        } else if (*vertices != n) {
          fail(ErrorKind::input, "trace line " + std::to_string(lineno) + ": manifest changes the vertex count");
        }
        return;
      }
      if (type != "step") fail(ErrorKind::input, "trace line " + std::to_string(lineno) + ": unknown record type");
      if (!vertices) fail(ErrorKind::input, "trace must start with a manifest");
      const auto step = rec.at("step").get<std::size_t>();
      if (step != t.history.size())
        fail(ErrorKind::input, "trace line " + std::to_string(lineno) + ": expected step " +
                                   std::to_string(t.history.size()));
      const auto& added_edges = rec.at("edges_added");
      for (const auto& e : added_edges) builder->add_edge(e.at(0).get<VertexId>(), e.at(1).get<VertexId>());
      if (!current || !added_edges.empty()) current = std::make_shared<const TrustGraph>(builder->build());
      if (!community) community = VertexSet(*vertices);
      for (const auto& v : rec.at("added")) community->insert(v.get<VertexId>());
      t.history.append(CommunityTrustGraph(current, *community));
      t.step_records.push_back(rec);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::input, "trace line " + std::to_string(lineno) + ": " + e.what());
    }
  });
  if (!vertices) fail(ErrorKind::input, "empty trace");
  if (t.history.empty()) fail(ErrorKind::input, "trace has no steps");
  return t;
}

inline Trace read_trace(const std::string& path) { return parse_trace(read_file(path)); }

}  // namespace trustgrow
