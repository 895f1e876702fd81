#pragma once

#include <string>

#include "json.hpp"

#include "sinv/error.hpp"
#include "sinv/formula.hpp"

namespace sinv {

using json = nlohmann::json;

inline constexpr const char* kFormulaFormat = "formula/1";

/// Leaves are "x<i>", "~x<i>" (1-based, x1 is coordinate 0), "0", "1";
/// gates are {"and":[...]} / {"or":[...]} with children in canonical order.
inline json formula_to_json(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Const:
      return f.value() ? "1" : "0";
    case NodeKind::Literal:
      return std::string(f.negated() ? "~x" : "x") + std::to_string(f.var() + 1);
    case NodeKind::Gate:
      break;
  }
  json kids = json::array();
  for (const auto& c : f.children()) kids.push_back(formula_to_json(c));
  return json{{gate_name(f.gate_type()), std::move(kids)}};
}

inline RawFormula raw_formula_from_json(const json& j, std::size_t n) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "0" || s == "1") return RawFormula::constant(s == "1");
    const bool neg = !s.empty() && s[0] == '~';
    const std::string body = neg ? s.substr(1) : s;
    if (body.size() < 2 || body[0] != 'x' || body.find_first_not_of("0123456789", 1) != std::string::npos) {
      throw ParseError("bad leaf '" + s + "'");
    }
    const std::size_t idx = std::stoul(body.substr(1));
    if (idx == 0 || idx > n) throw ParseError("variable '" + s + "' out of range for n=" + std::to_string(n));
    return RawFormula::literal(idx - 1, neg);
  }
  if (j.is_object() && j.size() == 1) {
    const auto it = j.begin();
    Gate g;
    if (it.key() == "and") {
      g = Gate::And;
    } else if (it.key() == "or") {
      g = Gate::Or;
    } else {
      throw ParseError("unknown gate '" + it.key() + "'");
    }
    if (!it.value().is_array()) throw ParseError("gate children must be an array");
    if (it.value().empty()) throw ParseError("gate with an empty child set");
    std::vector<RawFormula> kids;
    for (const auto& c : it.value()) kids.push_back(raw_formula_from_json(c, n));
    return RawFormula::make_gate(g, std::move(kids));
  }
  throw ParseError("formula node must be a leaf string or a single-key gate object");
}

inline Formula formula_from_json(const json& j, std::size_t n) { return canonicalize(raw_formula_from_json(j, n), n); }

/// {"format": "formula/1", "n": <int>, "formula": ...}
inline json formula_document(const Formula& f) {
  return json{{"format", kFormulaFormat}, {"n", f.ambient_dim()}, {"formula", formula_to_json(f)}};
}

inline std::string write_formula(const Formula& f) { return formula_document(f).dump() + "\n"; }

inline Formula read_formula_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("formula")) {
    throw ParseError("formula document needs 'n' and 'formula'");
  }
  if (doc.contains("format") && doc["format"] != kFormulaFormat) {
    throw ParseError("unsupported format '" + doc["format"].dump() + "'");
  }
  if (!doc["n"].is_number_unsigned()) throw ParseError("'n' must be a positive integer");
  const std::size_t n = doc["n"].get<std::size_t>();
  if (n == 0) throw ParseError("'n' must be a positive integer");
  return formula_from_json(doc["formula"], n);
}

inline Formula read_formula(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return read_formula_json(doc);
}

}  // namespace sinv
