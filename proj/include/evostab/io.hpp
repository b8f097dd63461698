#pragma once

// On-disk game format:
//   {"k": <int>, "payoffs": [[<rat>, ...], ...], "labels": [<string>, ...]?}
// where <rat> is the string "a" or "a/b". Strategy literals are "[<rat>, ...]".

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "evostab/game.hpp"

namespace evostab {

using json = nlohmann::json;

inline json rational_to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j, const std::string& field) {
  if (!j.is_string()) throw ParseError(field, "rationals must be strings like \"a/b\"");
  return parse_rational(j.get<std::string>(), field);
}

inline json strategy_to_json(const MixedStrategy& s) {
  json out = json::array();
  for (const auto& w : s.weights()) out.push_back(to_string(w));
  return out;
}

inline MixedStrategy strategy_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "strategy must be an array");
  std::vector<Rational> w;
  for (std::size_t i = 0; i < j.size(); ++i)
    w.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  try {
    return MixedStrategy(std::move(w));
  } catch (const InvalidStrategy& e) {
    throw ParseError(field, e.what());
  }
}

inline json game_to_json(const SymmetricGame& g) {
  json payoffs = json::array();
  for (const auto& row : g.rows()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    payoffs.push_back(std::move(r));
  }
  json out = {{"k", g.k()}, {"payoffs", std::move(payoffs)}};
  if (!g.labels().empty()) out["labels"] = g.labels();
  return out;
}

inline SymmetricGame game_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  if (!doc.contains("k") || !doc["k"].is_number_integer())
    throw ParseError("k", "missing or not an integer");
  const auto k = doc["k"].get<long long>();
  if (k < 1) throw ParseError("k", "must be positive");
  if (!doc.contains("payoffs") || !doc["payoffs"].is_array())
    throw ParseError("payoffs", "missing or not an array");
  const auto& rows = doc["payoffs"];
  if (rows.size() != static_cast<std::size_t>(k))
    throw ParseError("payoffs", "non-square: expected " + std::to_string(k) + " rows, got " +
                                    std::to_string(rows.size()));
  std::vector<std::vector<Rational>> u;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string field = "payoffs[" + std::to_string(i) + "]";
    if (!rows[i].is_array()) throw ParseError(field, "row is not an array");
    if (rows[i].size() != static_cast<std::size_t>(k))
      throw ParseError(field, "non-square: expected " + std::to_string(k) + " entries, got " +
                                  std::to_string(rows[i].size()));
    std::vector<Rational> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      row.push_back(rational_from_json(rows[i][j], field + "[" + std::to_string(j) + "]"));
    u.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const auto& l = doc["labels"];
    if (!l.is_array() || l.size() != static_cast<std::size_t>(k))
      throw ParseError("labels", "must be an array of length k");
    for (const auto& s : l) {
      if (!s.is_string()) throw ParseError("labels", "labels must be strings");
      labels.push_back(s.get<std::string>());
    }
  }
  return SymmetricGame(u, std::move(labels));
}

inline SymmetricGame parse_game(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  return game_from_json(doc);
}

inline SymmetricGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

// "[1/2, 1/2]"; entries may optionally be quoted.
inline MixedStrategy parse_strategy(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ParseError("strategy", "expected [w1, w2, ...]");
  text = text.substr(1, text.size() - 2);
  std::vector<Rational> w;
  std::size_t index = 0;
  while (true) {
    const auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"')
      item = item.substr(1, item.size() - 2);
    w.push_back(parse_rational(item, "strategy[" + std::to_string(index++) + "]"));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  try {
    return MixedStrategy(std::move(w));
  } catch (const InvalidStrategy& e) {
    throw ParseError("strategy", e.what());
  }
}

}  // namespace evostab
