#pragma once

// JSON transport for polynomials, forms, Witt vectors, component tuples and generator
// expressions. Big integers travel as decimal strings.

#include "wittrw/gen_expr.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wittrw::io {

using nlohmann::json;

/// Malformed payload. `where` is a JSON-pointer-like path to the offending value.
class SchemaError : public std::runtime_error {
public:
  SchemaError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

private:
  std::string where_;
};

namespace detail {

inline std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

inline const json& field(const json& j, const char* key, const std::string& loc) {
  if (!j.is_object()) throw SchemaError(loc, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(loc, key), "missing field");
  return *it;
}

inline const json& array(const json& j, const std::string& loc) {
  if (!j.is_array()) throw SchemaError(loc, "expected an array");
  return j;
}

inline std::int64_t integer(const json& j, const std::string& loc, std::int64_t lo = INT64_MIN) {
  if (!j.is_number_integer()) throw SchemaError(loc, "expected an integer");
  auto v = j.get<std::int64_t>();
  if (v < lo) throw SchemaError(loc, "integer out of range");
  return v;
}

inline BigInt big(const json& j, const std::string& loc) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (!j.is_string()) throw SchemaError(loc, "expected a decimal string");
  try {
    return parse_bigint(j.get<std::string>());
  } catch (const std::exception&) {
    throw SchemaError(loc, "not a decimal integer");
  }
}

/// A polynomial is either the object form or, as a shorthand, a bare integer constant.
inline bool is_shorthand(const json& j) { return j.is_number_integer() || j.is_string(); }

}  // namespace detail

// ---- truncation sets ----

inline json to_json(const TruncationSet& S) { return S.elems(); }

inline TruncationSet truncation_set_from_json(const json& j, const std::string& loc = "/S") {
  detail::array(j, loc);
  std::vector<std::int64_t> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(detail::integer(j[i], detail::at(loc, i), 1));
  try {
    return TruncationSet(std::move(v));
  } catch (const std::exception& e) {
    throw SchemaError(loc, e.what());
  }
}

/// "1,2,4" as given on the command line.
inline TruncationSet parse_truncation_set(const std::string& s) {
  std::vector<std::int64_t> v;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    auto piece = s.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      auto n = std::stoll(piece, &used);
      if (used != piece.size() || n < 1) throw std::invalid_argument(piece);
      v.push_back(n);
    } catch (const std::exception&) {
      throw SchemaError("--S", "bad element '" + piece + "'");
    }
    pos = comma + 1;
  }
  try {
    return TruncationSet(std::move(v));
  } catch (const std::exception& e) {
    throw SchemaError("--S", e.what());
  }
}

// ---- polynomials ----

inline json to_json(const IntPoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back(json::array({c.str(), e}));
  return {{"vars", f.var_count()}, {"terms", terms}};
}

/// `vars` fixes the variable count for the shorthand constant and checks the object form.
inline IntPoly poly_from_json(const json& j, const std::string& loc, std::optional<std::size_t> vars = {}) {
  if (detail::is_shorthand(j)) return IntPoly::constant(vars.value_or(0), detail::big(j, loc));
  auto t = static_cast<std::size_t>(detail::integer(detail::field(j, "vars", loc), detail::at(loc, "vars"), 0));
  if (vars && *vars != t) throw SchemaError(detail::at(loc, "vars"), "expected " + std::to_string(*vars) + " variables");
  const auto tloc = detail::at(loc, "terms");
  const auto& terms = detail::array(detail::field(j, "terms", loc), tloc);
  IntPoly f(t);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto iloc = detail::at(tloc, i);
    if (!terms[i].is_array() || terms[i].size() != 2) throw SchemaError(iloc, "expected [coefficient, exponents]");
    BigInt c = detail::big(terms[i][0], detail::at(iloc, 0));
    const auto eloc = detail::at(iloc, 1);
    const auto& ej = detail::array(terms[i][1], eloc);
    if (ej.size() != t) throw SchemaError(eloc, "exponent vector must have " + std::to_string(t) + " entries");
    Exponent e;
    for (std::size_t k = 0; k < t; ++k)
      e.push_back(static_cast<std::uint32_t>(detail::integer(ej[k], detail::at(eloc, k), 0)));
    f.add_term(e, c);
  }
  return f;
}

/// Variable count of a list of polynomials in object form, or `fallback` when all are shorthands.
inline std::size_t infer_vars(const json& list, std::size_t fallback = 0) {
  if (!list.is_array()) return fallback;
  for (const auto& p : list)
    if (p.is_object() && p.contains("vars") && p["vars"].is_number_unsigned()) return p["vars"].get<std::size_t>();
  return fallback;
}

inline std::vector<IntPoly> poly_list_from_json(const json& j, const std::string& loc, std::optional<std::size_t> vars) {
  detail::array(j, loc);
  const std::size_t t = vars ? *vars : infer_vars(j);
  std::vector<IntPoly> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(poly_from_json(j[i], detail::at(loc, i), t));
  return out;
}

// ---- differential forms ----

inline json to_json(const DiffForm& w) {
  json comps = json::array();
  for (const auto& [J, f] : w.comps()) {
    json idx = json::array();
    for (auto j : J) idx.push_back(j + 1);
    comps.push_back(json::array({idx, to_json(f)}));
  }
  return {{"q", w.degree()}, {"vars", w.var_count()}, {"comps", comps}};
}

inline DiffForm form_from_json(const json& j, const std::string& loc, std::optional<std::size_t> q = {},
                               std::optional<std::size_t> vars = {}) {
  auto jq = static_cast<std::size_t>(detail::integer(detail::field(j, "q", loc), detail::at(loc, "q"), 0));
  auto jt = static_cast<std::size_t>(detail::integer(detail::field(j, "vars", loc), detail::at(loc, "vars"), 0));
  if (q && *q != jq) throw SchemaError(detail::at(loc, "q"), "expected degree " + std::to_string(*q));
  if (vars && *vars != jt) throw SchemaError(detail::at(loc, "vars"), "expected " + std::to_string(*vars) + " variables");
  const auto cloc = detail::at(loc, "comps");
  const auto& comps = detail::array(detail::field(j, "comps", loc), cloc);
  DiffForm w(jq, jt);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto iloc = detail::at(cloc, i);
    if (!comps[i].is_array() || comps[i].size() != 2) throw SchemaError(iloc, "expected [indices, polynomial]");
    const auto jloc = detail::at(iloc, 0);
    const auto& idx = detail::array(comps[i][0], jloc);
    if (idx.size() != jq) throw SchemaError(jloc, "index tuple must have " + std::to_string(jq) + " entries");
    IndexTuple J;
    for (std::size_t k = 0; k < jq; ++k) {
      auto v = detail::integer(idx[k], detail::at(jloc, k), 1);
      if (static_cast<std::size_t>(v) > jt) throw SchemaError(detail::at(jloc, k), "variable index out of range");
      J.push_back(static_cast<std::size_t>(v - 1));
    }
    IntPoly f = poly_from_json(comps[i][1], detail::at(iloc, 1), jt);
    DiffForm term = DiffForm::elementary(IntPoly::constant(jt, 1), J);
    if (term.is_zero()) {
      if (!f.is_zero()) throw SchemaError(jloc, "repeated variable index");
      continue;
    }
    w += f * term;
  }
  return w;
}

// ---- Witt vectors and ghost tuples ----

inline json to_json(const WittVector& a) {
  json gh = json::array(), wt = json::array();
  for (const auto& c : a.ghost().comps()) gh.push_back(to_json(c));
  for (const auto& c : a.witt()) wt.push_back(to_json(c));
  return {{"S", to_json(a.S())}, {"ghost", gh}, {"witt", wt}};
}

inline json to_json(const GhostTuple& g) {
  json gh = json::array();
  for (const auto& c : g.comps()) gh.push_back(to_json(c));
  return {{"S", to_json(g.S())}, {"ghost", gh}};
}

/// Reads {"S", "ghost"} (or "witt" when `key` says so); S may be supplied from outside.
inline std::vector<IntPoly> tuple_from_json(const json& j, const char* key, const TruncationSet& S,
                                            std::optional<std::size_t> vars, const std::string& loc = "") {
  const auto kloc = detail::at(loc, key);
  auto polys = poly_list_from_json(detail::field(j, key, loc), kloc, vars);
  if (polys.size() != S.size())
    throw SchemaError(kloc, "expected " + std::to_string(S.size()) + " entries, one per element of S");
  for (std::size_t i = 1; i < polys.size(); ++i)
    if (polys[i].var_count() != polys[0].var_count()) throw SchemaError(detail::at(kloc, i), "variable count differs");
  return polys;
}

inline TruncationSet set_from_payload(const json& j, const std::optional<TruncationSet>& flag, const std::string& loc = "") {
  if (j.is_object() && j.contains("S")) {
    auto S = truncation_set_from_json(j["S"], detail::at(loc, "S"));
    if (flag && !(*flag == S)) throw SchemaError(detail::at(loc, "S"), "disagrees with --S");
    return S;
  }
  if (flag) return *flag;
  throw SchemaError(detail::at(loc, "S"), "missing field (or pass --S)");
}

inline GhostTuple ghost_from_json(const json& j, const std::optional<TruncationSet>& flag = {},
                                  std::optional<std::size_t> vars = {}) {
  auto S = set_from_payload(j, flag);
  auto polys = tuple_from_json(j, "ghost", S, vars);
  const auto t = polys.empty() ? 0 : polys[0].var_count();
  return GhostTuple(S, std::move(polys), t);
}

/// A Witt vector from {"S","witt"} (preferred when present) or from {"S","ghost"}; the
/// latter throws NotIntegral when the ghost tuple is not in the image.
inline WittVector witt_from_json(const json& j, const std::optional<TruncationSet>& flag = {},
                                 std::optional<std::size_t> vars = {}) {
  auto S = set_from_payload(j, flag);
  if (j.contains("witt")) {
    auto polys = tuple_from_json(j, "witt", S, vars);
    const auto t = polys.empty() ? 0 : polys[0].var_count();
    WittVector a = WittVector::from_witt(S, std::move(polys), t);
    if (j.contains("ghost") && !(a.ghost() == ghost_from_json(j, S, t)))
      throw SchemaError("/ghost", "inconsistent with /witt");
    return a;
  }
  return WittVector::from_ghost(ghost_from_json(j, S, vars));
}

// ---- component tuples ----

inline json to_json(const DrwForm& w) {
  json comps = json::array();
  for (const auto& c : w.comps()) comps.push_back(to_json(c));
  return {{"q", w.degree()}, {"S", to_json(w.S())}, {"vars", w.var_count()}, {"comps", comps},
          {"certified", w.certified()}};
}

/// Incoming tuples are never trusted as certified; the flag is accepted and ignored.
inline DrwForm drw_from_json(const json& j, const std::optional<TruncationSet>& flag = {}) {
  auto S = set_from_payload(j, flag);
  auto q = static_cast<std::size_t>(detail::integer(detail::field(j, "q", ""), "/q", 0));
  const auto& comps = detail::array(detail::field(j, "comps", ""), "/comps");
  if (comps.size() != S.size())
    throw SchemaError("/comps", "expected " + std::to_string(S.size()) + " forms, one per element of S");
  std::optional<std::size_t> vars;
  if (j.contains("vars")) vars = static_cast<std::size_t>(detail::integer(j["vars"], "/vars", 0));
  std::vector<DiffForm> forms;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    forms.push_back(form_from_json(comps[i], detail::at("/comps", i), q, vars));
    if (!vars) vars = forms.back().var_count();
  }
  if (j.contains("certified") && !j["certified"].is_boolean()) throw SchemaError("/certified", "expected a boolean");
  return DrwForm(q, S, std::move(forms), vars.value_or(0), false);
}

// ---- generator expressions ----

inline json to_json(const GenExpr& e) {
  auto rows = [](const std::vector<std::vector<IntPoly>>& rs) {
    json out = json::array();
    for (const auto& r : rs) {
      json row = json::array();
      for (const auto& f : r) row.push_back(to_json(f));
      out.push_back(row);
    }
    return out;
  };
  json terms = json::array();
  for (const auto& t : e.terms) {
    if (const auto* p = std::get_if<GenProduct>(&t)) {
      json fs = json::array();
      for (const auto& f : p->factors) fs.push_back({{"n", f.n}, {"r", to_json(f.r)}, {"dd", f.dd}});
      terms.push_back({{"coeff", p->coeff.str()}, {"factors", fs}});
    } else {
      const auto& b = std::get<GenBlock>(t);
      terms.push_back({{"block", b.n}, {"a", rows(b.a)}, {"b", rows(b.b)}});
    }
  }
  return {{"q", e.q}, {"S", to_json(e.S)}, {"vars", e.var_count}, {"terms", terms}};
}

inline GenExpr genexpr_from_json(const json& j) {
  GenExpr e;
  e.S = truncation_set_from_json(detail::field(j, "S", ""));
  e.q = static_cast<std::size_t>(detail::integer(detail::field(j, "q", ""), "/q", 0));
  e.var_count = static_cast<std::size_t>(detail::integer(detail::field(j, "vars", ""), "/vars", 0));
  const auto& terms = detail::array(detail::field(j, "terms", ""), "/terms");
  auto rows = [&](const json& rs, const std::string& loc, std::size_t width) {
    std::vector<std::vector<IntPoly>> out;
    detail::array(rs, loc);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      auto row = poly_list_from_json(rs[i], detail::at(loc, i), e.var_count);
      if (row.size() != width) throw SchemaError(detail::at(loc, i), "expected " + std::to_string(width) + " entries");
      out.push_back(std::move(row));
    }
    return out;
  };
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto loc = detail::at("/terms", i);
    const auto& tj = terms[i];
    if (!tj.is_object()) throw SchemaError(loc, "expected an object");
    if (tj.contains("block")) {
      GenBlock b;
      b.n = detail::integer(tj["block"], detail::at(loc, "block"), 1);
      if (!e.S.contains(b.n)) throw SchemaError(detail::at(loc, "block"), "index not in S");
      b.a = rows(detail::field(tj, "a", loc), detail::at(loc, "a"), e.q + 1);
      b.b = rows(detail::field(tj, "b", loc), detail::at(loc, "b"), e.q);
      e.terms.emplace_back(std::move(b));
    } else {
      GenProduct p;
      p.coeff = tj.contains("coeff") ? detail::big(tj["coeff"], detail::at(loc, "coeff")) : BigInt(1);
      const auto floc = detail::at(loc, "factors");
      const auto& fs = detail::array(detail::field(tj, "factors", loc), floc);
      std::size_t dd = 0;
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const auto kloc = detail::at(floc, k);
        GenFactor f;
        f.n = detail::integer(detail::field(fs[k], "n", kloc), detail::at(kloc, "n"), 1);
        if (!e.S.contains(f.n)) throw SchemaError(detail::at(kloc, "n"), "index not in S");
        f.r = poly_from_json(detail::field(fs[k], "r", kloc), detail::at(kloc, "r"), e.var_count);
        if (fs[k].contains("dd")) {
          if (!fs[k]["dd"].is_boolean()) throw SchemaError(detail::at(kloc, "dd"), "expected a boolean");
          f.dd = fs[k]["dd"].get<bool>();
        }
        dd += f.dd;
        p.factors.push_back(std::move(f));
      }
      if (dd != e.q) throw SchemaError(floc, "number of 𝕕-marked factors must equal q");
      e.terms.emplace_back(std::move(p));
    }
  }
  return e;
}

}  // namespace wittrw::io
