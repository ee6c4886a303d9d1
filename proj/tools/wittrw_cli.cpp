// wittrw: command-line front end. Reads a JSON payload from stdin (or --file), writes a JSON
// result to stdout. Exit status: 0 success/true, 1 false or failed membership, 2 malformed input.

#include "wittrw/io.hpp"
#include "wittrw/sampling.hpp"
#include "wittrw/witt_blowup.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace wittrw;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kMalformed = 2;

struct Options {
  std::string verb;
  std::string S;
  std::int64_t p = 0;
  std::int64_t n = 0;
  int q = -1;
  std::uint64_t seed = 20240601;
  int cases = 20;
  int vars = -1;
  std::string file;
};

class Malformed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<TruncationSet> set_flag(const Options& o) {
  if (o.S.empty()) return std::nullopt;
  return io::parse_truncation_set(o.S);
}

std::optional<std::size_t> vars_flag(const Options& o) {
  if (o.vars < 0) return std::nullopt;
  return static_cast<std::size_t>(o.vars);
}

json read_payload(const Options& o) {
  std::string text;
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw Malformed("cannot open " + o.file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Malformed(std::string("invalid JSON: ") + e.what());
  }
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

std::int64_t prime_for(const Options& o, const TruncationSet& S) {
  if (o.p != 0) {
    if (!is_prime(o.p)) throw Malformed("--p must be prime");
    return o.p;
  }
  if (auto tp = S.typical_prime()) return *tp;
  throw Malformed("--p is required for this truncation set");
}

// ---- verbs ----

int cmd_ghost(const Options& o) {
  json in = read_payload(o);
  if (!in.is_object() || !in.contains("witt")) throw io::SchemaError("/witt", "missing field");
  emit(io::to_json(io::witt_from_json(in, set_flag(o), vars_flag(o))));
  return kOk;
}

int cmd_witt(const Options& o) {
  json in = read_payload(o);
  auto g = io::ghost_from_json(in, set_flag(o), vars_flag(o));
  std::int64_t bad = 0;
  if (auto a = WittVector::try_from_ghost(g, &bad)) {
    emit(io::to_json(*a));
    return kOk;
  }
  std::cerr << "NotIntegral(" << bad << ")\n";
  emit({{"integral", false}, {"failed_at", bad}});
  return kFalse;
}

int cmd_check_dwork(const Options& o) {
  auto g = io::ghost_from_json(read_payload(o), set_flag(o), vars_flag(o));
  const bool ok = dwork_check(g);
  emit({{"dwork", ok}});
  return ok ? kOk : kFalse;
}

int cmd_drw_check(const Options& o) {
  auto w = io::drw_from_json(read_payload(o), set_flag(o));
  const auto p = prime_for(o, w.S());
  if (w.S().size() > 1 && w.S().typical_prime() != p) throw Malformed("drw-check needs S = {1, p, ..., p^n}");
  const bool ok = drw_dwork_check(w, p);
  emit({{"member", ok}});
  return ok ? kOk : kFalse;
}

int cmd_drw_lift(const Options& o) {
  auto w = io::drw_from_json(read_payload(o), set_flag(o));
  const auto p = prime_for(o, w.S());
  if (w.S().size() > 1 && w.S().typical_prime() != p) throw Malformed("drw-lift needs S = {1, p, ..., p^n}");
  try {
    auto expr = drw_lift(w, p);
    emit({{"member", true}, {"expr", io::to_json(expr)}, {"evaluation", io::to_json(evaluate(expr))}});
    return kOk;
  } catch (const NotInImage& e) {
    std::cerr << e.what() << '\n';
    emit({{"member", false}, {"level", e.level()}});
    return kFalse;
  }
}

int cmd_drw_multi(const Options& o) {
  auto w = io::drw_from_json(read_payload(o), set_flag(o));
  std::vector<std::int64_t> primes = o.p ? std::vector<std::int64_t>{o.p} : w.S().primes();
  json per = json::object();
  bool all = true;
  for (auto p : primes) {
    if (!is_prime(p) || !w.S().contains(p)) throw Malformed("--p must be a prime in S");
    const bool ok = drw_multi_check(w, p);
    per[std::to_string(p)] = ok;
    all = all && ok;
  }
  emit({{"congruences", all}, {"per_prime", per}});
  return all ? kOk : kFalse;
}

int cmd_functional(const Options& o) {
  json in = read_payload(o);
  auto w = io::drw_from_json(in.contains("form") ? in["form"] : in, set_flag(o));
  std::vector<std::pair<std::int64_t, IndexTuple>> wanted;
  if (in.contains("m")) {
    auto m = in["m"];
    if (!m.is_number_integer() || !w.S().contains(m.get<std::int64_t>())) throw io::SchemaError("/m", "must be an element of S");
    IndexTuple J;
    if (in.contains("J")) {
      if (!in["J"].is_array()) throw io::SchemaError("/J", "expected an array");
      for (std::size_t i = 0; i < in["J"].size(); ++i) {
        const auto& v = in["J"][i];
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::size_t>() > w.var_count())
          throw io::SchemaError("/J/" + std::to_string(i), "variable index out of range");
        J.push_back(v.get<std::size_t>() - 1);
      }
    }
    if (J.size() != w.degree()) throw io::SchemaError("/J", "length must equal q");
    wanted.emplace_back(m.get<std::int64_t>(), J);
  } else {
    for (auto m : w.S())
      for (const auto& J : index_tuples(w.var_count(), w.degree())) wanted.emplace_back(m, J);
  }
  json out = json::array();
  bool agree = true;
  for (const auto& [m, J] : wanted) {
    auto direct = dual_functional(w, m, J);
    const bool same = direct == dual_functional_mobius(w, m, J);
    agree = agree && same;
    json jj = json::array();
    for (auto j : J) jj.push_back(j + 1);
    out.push_back({{"m", m}, {"J", jj}, {"value", io::to_json(direct)}, {"mobius_agrees", same}});
  }
  emit({{"functionals", out}});
  return agree ? kOk : kFalse;
}

int cmd_mu(const Options& o) {
  auto S = set_flag(o);
  if (!S) throw Malformed("mu needs --S");
  if (!S->contains(o.n)) throw Malformed("--n must be an element of S");
  emit(io::to_json(mu_element(o.n, *S, vars_flag(o).value_or(0))));
  return kOk;
}

int cmd_blowup(const Options& o) {
  auto g = io::ghost_from_json(read_payload(o), set_flag(o), vars_flag(o));
  if (o.p != 0) {
    if (!is_prime(o.p) || !g.S().contains(o.p)) throw Malformed("--p must be a prime in S");
    auto [u, v] = blowup_split(g, o.p);
    const bool member = dwork_check(u) && dwork_check(v);
    emit({{"coprime", io::to_json(u)}, {"frobenius", io::to_json(v)}, {"localized_member", member}});
    return kOk;
  }
  auto leaves = iterated_blowup(g, g.S().primes());
  json out = json::array();
  for (const auto& leaf : leaves) out.push_back({{"index", leaf.index}, {"value", io::to_json(leaf.value)}});
  emit({{"leaves", out}});
  return kOk;
}

// ---- axioms ----

using Counterexample = std::optional<json>;

struct Identity {
  std::string name;
  std::function<Counterexample(sampling::Rng&, std::size_t q)> check;
};

json witt_payload(const WittVector& a) { return io::to_json(a); }

std::vector<Identity> identities(const TruncationSet& S, std::int64_t p, std::size_t vars) {
  const sampling::PolyShape shape{vars, 3, 9, 3};
  const sampling::PolyShape small{vars, 3, 9, 2};
  std::vector<Identity> ids;
  auto fail = [](std::initializer_list<std::pair<const std::string, json>> kv) { return Counterexample(json(kv)); };

  ids.push_back({"witt: witt_of_ghost(ghost(a)) = a", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto a = sampling::random_witt(rng, S, shape);
                   if (witt_of_ghost(a.ghost()).witt() == a.witt()) return std::nullopt;
                   return fail({{"a", witt_payload(a)}});
                 }});
  ids.push_back({"witt: dwork_check <=> integral", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto g = sampling::random_ghost(rng, S, shape);
                   if (dwork_check(g) == WittVector::try_from_ghost(g).has_value()) return std::nullopt;
                   return fail({{"g", io::to_json(g)}});
                 }});
  ids.push_back({"witt: F_n V_n = n", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto n = sampling::random_element(rng, S);
                   auto b = sampling::random_witt(rng, S.quotient(n), shape);
                   if (frobenius(n, verschiebung(n, b, S)) == BigInt(n) * b) return std::nullopt;
                   return fail({{"n", n}, {"b", witt_payload(b)}});
                 }});
  ids.push_back({"witt: F_n V_m = V_m F_n, (m,n) = 1", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto m = sampling::random_element(rng, S), n = sampling::random_element(rng, S);
                   if (gcd(m, n) != 1 || !S.contains(m * n)) return std::nullopt;
                   auto c = sampling::random_witt(rng, S.quotient(m), shape);
                   if (frobenius(n, verschiebung(m, c, S)) == verschiebung(m, frobenius(n, c), S.quotient(n)))
                     return std::nullopt;
                   return fail({{"m", m}, {"n", n}, {"c", witt_payload(c)}});
                 }});
  ids.push_back({"witt: V_n(F_n(r) s) = r V_n(s)", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto n = sampling::random_element(rng, S);
                   auto r = sampling::random_witt(rng, S, shape);
                   auto s = sampling::random_witt(rng, S.quotient(n), shape);
                   if (verschiebung(n, frobenius(n, r) * s, S) == r * verschiebung(n, s, S)) return std::nullopt;
                   return fail({{"n", n}, {"r", witt_payload(r)}, {"s", witt_payload(s)}});
                 }});
  ids.push_back({"witt: [r][s] = [rs]", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto r = sampling::random_poly(rng, shape), s = sampling::random_poly(rng, shape);
                   if (teichmuller(r, S) * teichmuller(s, S) == teichmuller(r * s, S)) return std::nullopt;
                   return fail({{"r", io::to_json(r)}, {"s", io::to_json(s)}});
                 }});
  ids.push_back({"witt: gh(mu_n) = sigma e_n", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto n = sampling::random_element(rng, S);
                   auto g = mu_element(n, S, vars).ghost();
                   for (auto k : S)
                     if (g.at(k) != IntPoly::constant(vars, k == n ? S.sigma() : 0)) return fail({{"n", n}});
                   return std::nullopt;
                 }});
  ids.push_back({"blowup: merge(split(g)) = g", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto g = sampling::random_ghost(rng, S, shape);
                   for (auto q : S.primes()) {
                     auto [u, v] = blowup_split(g, q);
                     if (!(blowup_merge(u, v, q, S) == g)) return fail({{"p", q}, {"g", io::to_json(g)}});
                   }
                   return std::nullopt;
                 }});
  ids.push_back({"blowup: generator product rule", [=](sampling::Rng& rng, std::size_t) -> Counterexample {
                   auto m = sampling::random_element(rng, S), n = sampling::random_element(rng, S);
                   auto r = sampling::random_poly(rng, shape), s = sampling::random_poly(rng, shape);
                   auto lhs = ghost_generator(m, r, S);
                   lhs *= ghost_generator(n, s, S);
                   if (lhs == generator_product_rule(m, r, n, s, S)) return std::nullopt;
                   return fail({{"m", m}, {"n", n}, {"r", io::to_json(r)}, {"s", io::to_json(s)}});
                 }});

  auto form = [=](sampling::Rng& rng, std::size_t q, const TruncationSet& T) {
    return sampling::random_certified(rng, q, T, small);
  };
  ids.push_back({"drw: dd dd = 0", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto w = form(rng, q, S);
                   if (drw_dd(drw_dd(w)).is_zero()) return std::nullopt;
                   return fail({{"w", io::to_json(w)}});
                 }});
  ids.push_back({"drw: dd F_n = n F_n dd", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto w = form(rng, q, S);
                   auto n = sampling::random_element(rng, S);
                   if (drw_dd(drw_frobenius(n, w)) == BigInt(n) * drw_frobenius(n, drw_dd(w))) return std::nullopt;
                   return fail({{"n", n}, {"w", io::to_json(w)}});
                 }});
  ids.push_back({"drw: V_n dd = n dd V_n", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto n = sampling::random_element(rng, S);
                   auto u = form(rng, q, S.quotient(n));
                   if (drw_verschiebung(n, drw_dd(u), S) == BigInt(n) * drw_dd(drw_verschiebung(n, u, S)))
                     return std::nullopt;
                   return fail({{"n", n}, {"u", io::to_json(u)}});
                 }});
  ids.push_back({"drw: F_n dd V_n = dd", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto n = sampling::random_element(rng, S);
                   auto u = form(rng, q, S.quotient(n));
                   if (drw_frobenius(n, drw_dd(drw_verschiebung(n, u, S))) == drw_dd(u)) return std::nullopt;
                   return fail({{"n", n}, {"u", io::to_json(u)}});
                 }});
  ids.push_back({"drw: dd V_n dd = 0", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto n = sampling::random_element(rng, S);
                   auto u = form(rng, q, S.quotient(n));
                   if (drw_dd(drw_verschiebung(n, drw_dd(u), S)).is_zero()) return std::nullopt;
                   return fail({{"n", n}, {"u", io::to_json(u)}});
                 }});
  ids.push_back({"drw: V_n F_n dd = dd V_n F_n", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto n = sampling::random_element(rng, S);
                   auto w = form(rng, q, S);
                   if (drw_verschiebung(n, drw_frobenius(n, drw_dd(w)), S) ==
                       drw_dd(drw_verschiebung(n, drw_frobenius(n, w), S)))
                     return std::nullopt;
                   return fail({{"n", n}, {"w", io::to_json(w)}});
                 }});
  ids.push_back({"drw: F_m dd V_n = i dd F V + j F V dd", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto m = sampling::random_element(rng, S), n = sampling::random_element(rng, S);
                   auto u = form(rng, q, S.quotient(n));
                   const auto b = extended_gcd(m, n);
                   auto fv = [&](const DrwForm& x) {
                     return drw_frobenius(m / b.g, drw_verschiebung(n / b.g, x, S.quotient(b.g)));
                   };
                   auto lhs = drw_frobenius(m, drw_dd(drw_verschiebung(n, u, S)));
                   if (lhs == BigInt(b.i) * drw_dd(fv(u)) + BigInt(b.j) * fv(drw_dd(u))) return std::nullopt;
                   return fail({{"m", m}, {"n", n}, {"u", io::to_json(u)}});
                 }});
  ids.push_back({"drw: Leibniz rule", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto w = form(rng, q, S), h = form(rng, 1, S);
                   auto lhs = drw_dd(drw_mul(w, h));
                   auto rhs = drw_mul(drw_dd(w), h) + BigInt(q % 2 ? -1 : 1) * drw_mul(w, drw_dd(h));
                   if (lhs == rhs) return std::nullopt;
                   return fail({{"w", io::to_json(w)}, {"h", io::to_json(h)}});
                 }});
  ids.push_back({"drw: certified forms pass drw_multi_check", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto w = form(rng, q, S);
                   for (auto prime : S.primes())
                     if (!drw_multi_check(w, prime)) return fail({{"p", prime}, {"w", io::to_json(w)}});
                   return std::nullopt;
                 }});
  const TruncationSet T = TruncationSet::p_typical(p, 2);
  ids.push_back({"drw: lift(w) evaluates to w on {1,p,p^2}", [=](sampling::Rng& rng, std::size_t q) -> Counterexample {
                   auto w = sampling::random_certified(rng, q, T, small).as_raw();
                   if (!drw_dwork_check(w, p)) return fail({{"w", io::to_json(w)}, {"stage", "check"}});
                   try {
                     if (evaluate(drw_lift(w, p)) == w) return std::nullopt;
                   } catch (const NotInImage&) {
                   }
                   return fail({{"w", io::to_json(w)}, {"stage", "lift"}});
                 }});
  return ids;
}

int cmd_axioms(const Options& o) {
  const TruncationSet S = set_flag(o).value_or(TruncationSet{1, 2, 3, 6});
  const std::int64_t p = o.p ? o.p : (S.primes().empty() ? 2 : S.primes().front());
  if (!is_prime(p)) throw Malformed("--p must be prime");
  if (o.cases < 1) throw Malformed("--cases must be positive");
  const std::size_t vars = vars_flag(o).value_or(2);
  bool all = true;
  std::size_t index = 0;
  for (const auto& id : identities(S, p, vars)) {
    sampling::Rng rng(o.seed + 7919 * index++);
    int failed = 0;
    std::optional<json> first;
    for (int c = 0; c < o.cases; ++c) {
      const std::size_t q = o.q >= 0 ? static_cast<std::size_t>(o.q) : static_cast<std::size_t>(c % 3);
      if (auto ce = id.check(rng, q)) {
        ++failed;
        if (!first) first = *ce;
      }
    }
    all = all && failed == 0;
    std::cout << (failed == 0 ? "PASS  " : "FAIL  ") << id.name << "  (" << (o.cases - failed) << "/" << o.cases << ")\n";
    if (first) std::cout << "      counterexample: " << first->dump() << '\n';
  }
  return all ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with big Witt vectors and the de Rham-Witt complex"};
  Options o;
  const std::vector<std::string> verbs{"ghost", "witt", "check-dwork", "drw-check", "drw-lift",
                                       "drw-multi", "functional", "mu", "blowup", "axioms"};
  app.add_option("verb", o.verb, "one of: ghost witt check-dwork drw-check drw-lift drw-multi functional mu blowup axioms")
      ->required()
      ->check(CLI::IsMember(verbs));
  app.add_option("--S", o.S, "truncation set as a comma list, e.g. 1,2,3,6");
  app.add_option("--p", o.p, "prime");
  app.add_option("--n", o.n, "element of S (mu)");
  app.add_option("--q", o.q, "form degree (axioms)");
  app.add_option("--seed", o.seed, "random seed (axioms)");
  app.add_option("--cases", o.cases, "cases per identity (axioms)");
  app.add_option("--vars", o.vars, "number of polynomial variables");
  app.add_option("--file,-f", o.file, "read the JSON payload from this file instead of stdin");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (o.verb == "ghost") return cmd_ghost(o);
    if (o.verb == "witt") return cmd_witt(o);
    if (o.verb == "check-dwork") return cmd_check_dwork(o);
    if (o.verb == "drw-check") return cmd_drw_check(o);
    if (o.verb == "drw-lift") return cmd_drw_lift(o);
    if (o.verb == "drw-multi") return cmd_drw_multi(o);
    if (o.verb == "functional") return cmd_functional(o);
    if (o.verb == "mu") return cmd_mu(o);
    if (o.verb == "blowup") return cmd_blowup(o);
    return cmd_axioms(o);
  } catch (const io::SchemaError& e) {
    std::cerr << "schema error at " << e.what() << '\n';
  } catch (const NotIntegral& e) {
    std::cerr << e.what() << '\n';
    return kFalse;
  } catch (const Malformed& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kMalformed;
}
