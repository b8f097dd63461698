#pragma once

// JSON report document written by the CLI. Rationals are always strings;
// pure-strategy indices are zero-based.

#include <optional>
#include <string>
#include <vector>

#include "evostab/barriers.hpp"
#include "evostab/io.hpp"
#include "evostab/oracle.hpp"
#include "evostab/stability.hpp"

namespace evostab {

inline constexpr const char* kVersion = "0.1.0";

struct StrategyEntry {
  MixedStrategy strategy;
  StabilityReport report;
  bool operator==(const StrategyEntry&) const = default;
};

struct BarrierEntry {
  MixedStrategy incumbent;
  std::vector<MixedStrategy> mutants;
  BarrierResult result;
  bool operator==(const BarrierEntry&) const = default;
};

struct UniformBarrierEntry {
  MixedStrategy incumbent;
  UniformBarrier result;
  bool operator==(const UniformBarrierEntry&) const = default;
};

struct CertificationEntry {
  MixedStrategy strategy;
  int denom = 0;
  std::size_t m = 0;
  std::vector<Rational> eps_list;
  std::optional<Counterexample> counterexample;
  bool operator==(const CertificationEntry&) const = default;
};

struct AnalysisDocument {
  SymmetricGame game;
  std::string source;
  std::vector<StrategyEntry> results;
  std::vector<BarrierEntry> barriers;
  std::vector<UniformBarrierEntry> uniform_barriers;
  std::vector<CertificationEntry> certifications;
  std::string version = kVersion;
  bool operator==(const AnalysisDocument&) const = default;
};

namespace detail {

template <class T, class F>
json array_of(const std::vector<T>& items, F&& f) {
  json out = json::array();
  for (const auto& x : items) out.push_back(f(x));
  return out;
}

inline std::vector<Rational> rationals_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], field));
  return out;
}

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(key, "missing field");
  return j.at(key);
}

}  // namespace detail

inline json to_json(const Witness& w) {
  json out = {{"flag", w.flag}, {"reason", w.reason}};
  if (const auto* pw = std::get_if<PureWitness>(&w.detail)) {
    out["j"] = pw->j;
    if (pw->l) out["l"] = *pw->l;
  } else {
    out["q"] = strategy_to_json(std::get<StrategyWitness>(w.detail).q);
  }
  return out;
}

inline Witness witness_from_json(const json& j) {
  Witness w;
  w.flag = detail::require(j, "flag").get<std::string>();
  w.reason = detail::require(j, "reason").get<std::string>();
  if (j.contains("q")) {
    w.detail = StrategyWitness{strategy_from_json(j["q"], "witness.q")};
  } else {
    PureWitness pw;
    pw.j = detail::require(j, "j").get<std::size_t>();
    if (j.contains("l")) pw.l = j["l"].get<std::size_t>();
    w.detail = pw;
  }
  return w;
}

inline json to_json(const StabilityReport& r) {
  return {{"nash", r.is_nash},
          {"strict_nash", r.is_strict_nash},
          {"ess", r.is_ess},
          {"mess", r.is_mess},
          {"locally_dominant", r.is_locally_dominant},
          {"strictly_locally_dominant", r.is_strictly_locally_dominant}};
}

inline json to_json(const Counterexample& cx) {
  return {{"mutants", detail::array_of(cx.mutants, strategy_to_json)},
          {"proportions", detail::array_of(cx.proportions, rational_to_json)},
          {"violated_index", cx.violated_index},
          {"h_value", to_string(cx.h_value)}};
}

inline Counterexample counterexample_from_json(const json& j) {
  Counterexample cx;
  for (const auto& s : detail::require(j, "mutants")) cx.mutants.push_back(strategy_from_json(s, "mutants"));
  cx.proportions = detail::rationals_from_json(detail::require(j, "proportions"), "proportions");
  cx.violated_index = detail::require(j, "violated_index").get<std::size_t>();
  cx.h_value = rational_from_json(detail::require(j, "h_value"), "h_value");
  return cx;
}

inline json to_json(const BarrierResult& b) {
  if (b.is_barrier())
    return {{"kind", "barrier"}, {"epsilon", to_string(b.epsilon)}, {"open", b.open}, {"cap_applied", b.cap_applied}};
  return {{"kind", "none"},
          {"counterexample",
           {{"proportions", detail::array_of(b.counter_proportions, rational_to_json)},
            {"violated_index", b.violated_index},
            {"h_value", to_string(b.counter_h)}}}};
}

inline BarrierResult barrier_from_json(const json& j) {
  BarrierResult b;
  const auto kind = detail::require(j, "kind").get<std::string>();
  if (kind == "barrier") {
    b.kind = BarrierResult::Kind::barrier;
    b.epsilon = rational_from_json(detail::require(j, "epsilon"), "epsilon");
    b.open = detail::require(j, "open").get<bool>();
    b.cap_applied = detail::require(j, "cap_applied").get<bool>();
  } else if (kind == "none") {
    const auto& cx = detail::require(j, "counterexample");
    b.kind = BarrierResult::Kind::none;
    b.counter_proportions = detail::rationals_from_json(detail::require(cx, "proportions"), "proportions");
    b.violated_index = detail::require(cx, "violated_index").get<std::size_t>();
    b.counter_h = rational_from_json(detail::require(cx, "h_value"), "h_value");
  } else {
    throw ParseError("kind", "unknown barrier kind " + kind);
  }
  return b;
}

inline json to_json(const UniformBarrier& u) {
  return {{"kind", "uniform"},
          {"m", u.m},
          {"epsilon", to_string(u.per_mutant)},
          {"total_fraction", to_string(u.total_fraction)},
          {"open", u.open},
          {"cap_applied", u.cap_applied}};
}

inline UniformBarrier uniform_from_json(const json& j) {
  UniformBarrier u;
  u.m = detail::require(j, "m").get<std::size_t>();
  u.per_mutant = rational_from_json(detail::require(j, "epsilon"), "epsilon");
  u.total_fraction = rational_from_json(detail::require(j, "total_fraction"), "total_fraction");
  u.open = detail::require(j, "open").get<bool>();
  u.cap_applied = detail::require(j, "cap_applied").get<bool>();
  return u;
}

inline json to_json(const CertificationEntry& c) {
  json out = {{"strategy", strategy_to_json(c.strategy)},
              {"resolution",
               {{"denom", c.denom}, {"m", c.m}, {"eps", detail::array_of(c.eps_list, rational_to_json)}}}};
  if (c.counterexample) {
    out["verdict"] = "counterexample";
    out["counterexample"] = to_json(*c.counterexample);
  } else {
    out["verdict"] = "no counterexample at resolution";
    out["counterexample"] = nullptr;
  }
  return out;
}

inline CertificationEntry certification_from_json(const json& j) {
  CertificationEntry c;
  c.strategy = strategy_from_json(detail::require(j, "strategy"), "strategy");
  const auto& res = detail::require(j, "resolution");
  c.denom = detail::require(res, "denom").get<int>();
  c.m = detail::require(res, "m").get<std::size_t>();
  c.eps_list = detail::rationals_from_json(detail::require(res, "eps"), "eps");
  if (j.contains("counterexample") && !j["counterexample"].is_null())
    c.counterexample = counterexample_from_json(j["counterexample"]);
  return c;
}

inline json to_json(const AnalysisDocument& doc) {
  json game = game_to_json(doc.game);
  if (!doc.source.empty()) game["source"] = doc.source;
  json results = json::array();
  for (const auto& e : doc.results) {
    results.push_back({{"strategy", strategy_to_json(e.strategy)},
                       {"flags", to_json(e.report)},
                       {"witness", e.report.witness ? to_json(*e.report.witness) : json(nullptr)}});
  }
  json out = {{"game", std::move(game)}, {"results", std::move(results)}, {"version", doc.version}};
  if (!doc.barriers.empty())
    out["barriers"] = detail::array_of(doc.barriers, [](const BarrierEntry& b) {
      return json{{"incumbent", strategy_to_json(b.incumbent)},
                  {"mutants", detail::array_of(b.mutants, strategy_to_json)},
                  {"result", to_json(b.result)}};
    });
  if (!doc.uniform_barriers.empty())
    out["uniform_barriers"] = detail::array_of(doc.uniform_barriers, [](const UniformBarrierEntry& u) {
      return json{{"incumbent", strategy_to_json(u.incumbent)}, {"result", to_json(u.result)}};
    });
  if (!doc.certifications.empty())
    out["certifications"] = detail::array_of(doc.certifications, [](const CertificationEntry& c) { return to_json(c); });
  return out;
}

inline AnalysisDocument document_from_json(const json& j) {
  AnalysisDocument doc;
  const auto& game = detail::require(j, "game");
  doc.game = game_from_json(game);
  if (game.contains("source")) doc.source = game["source"].get<std::string>();
  doc.version = detail::require(j, "version").get<std::string>();
  for (const auto& e : detail::require(j, "results")) {
    StrategyEntry entry;
    entry.strategy = strategy_from_json(detail::require(e, "strategy"), "strategy");
    const auto& f = detail::require(e, "flags");
    auto& r = entry.report;
    r.is_nash = detail::require(f, "nash").get<bool>();
    r.is_strict_nash = detail::require(f, "strict_nash").get<bool>();
    r.is_ess = detail::require(f, "ess").get<bool>();
    r.is_mess = detail::require(f, "mess").get<bool>();
    r.is_locally_dominant = detail::require(f, "locally_dominant").get<bool>();
    r.is_strictly_locally_dominant = detail::require(f, "strictly_locally_dominant").get<bool>();
    if (e.contains("witness") && !e["witness"].is_null()) r.witness = witness_from_json(e["witness"]);
    doc.results.push_back(std::move(entry));
  }
  if (j.contains("barriers"))
    for (const auto& b : j["barriers"]) {
      BarrierEntry entry;
      entry.incumbent = strategy_from_json(detail::require(b, "incumbent"), "incumbent");
      for (const auto& r : detail::require(b, "mutants")) entry.mutants.push_back(strategy_from_json(r, "mutants"));
      entry.result = barrier_from_json(detail::require(b, "result"));
      doc.barriers.push_back(std::move(entry));
    }
  if (j.contains("uniform_barriers"))
    for (const auto& u : j["uniform_barriers"])
      doc.uniform_barriers.push_back({strategy_from_json(detail::require(u, "incumbent"), "incumbent"),
                                      uniform_from_json(detail::require(u, "result"))});
  if (j.contains("certifications"))
    for (const auto& c : j["certifications"]) doc.certifications.push_back(certification_from_json(c));
  return doc;
}

}  // namespace evostab
