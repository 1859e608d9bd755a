#pragma once

#include <json.hpp>

#include "ppg/dsl.hpp"
#include "ppg/homogeneity.hpp"
#include "ppg/oracle.hpp"
#include "ppg/purity.hpp"

namespace ppg {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

namespace cert {

inline json envelope(const std::string& kind, json input, json evidence, std::vector<std::string> checks) {
  json e;
  e["schema"] = kSchemaVersion;
  e["kind"] = kind;
  e["tool"] = std::string("ppg ") + kToolVersion;
  e["input"] = std::move(input);
  e["evidence"] = std::move(evidence);
  e["revalidate"] = {{"command", "ppg revalidate <file>"}, {"checks", std::move(checks)}};
  return e;
}

/// Two-space indent, sorted keys, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- ordinals

inline Ordinal parse_ordinal(const std::string& s) {
  if (s == "inf") return Ordinal::infinity();
  if (s == "w") return Ordinal::omega_plus(0);
  if (s.rfind("w+", 0) == 0) return Ordinal::omega_plus(std::stoi(s.substr(2)));
  return Ordinal::finite(std::stoi(s));
}

// ---- triples

inline json encode_triple(const TypeTriple& t) {
  CoeffCodec codec{ipow(t.p, t.m), t.n};
  auto gens = [&](const CodeSubgroup& s) {
    json a = json::array();
    for (auto code : s.gens) a.push_back(codec.decode(code));
    return a;
  };
  json eta = json::array();
  for (const auto& e : t.eta) eta.push_back(gens(e));
  return {{"p", t.p}, {"n", t.n}, {"m", t.m}, {"omega", gens(t.omega)}, {"eta", eta}, {"stabilization", t.stabilization()}};
}

inline CodeSubgroup span_codes(const CoeffCodec& codec, const json& gens) {
  std::set<std::uint64_t> span{0};
  CodeSubgroup s;
  for (const auto& g : gens) {
    const std::uint64_t c = codec.encode(g.get<std::vector<i64>>());
    s.gens.push_back(c);
    std::vector<std::uint64_t> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<std::uint64_t> next;
      for (auto x : frontier) {
        const auto y = codec.add(x, c);
        if (span.insert(y).second) next.push_back(y);
      }
      frontier = std::move(next);
    }
  }
  s.members.assign(span.begin(), span.end());
  return s;
}

inline TypeTriple decode_triple(const json& j) {
  TypeTriple t;
  t.p = j.at("p").get<i64>();
  t.n = j.at("n").get<std::size_t>();
  t.m = j.at("m").get<int>();
  CoeffCodec codec{ipow(t.p, t.m), t.n};
  t.omega = span_codes(codec, j.at("omega"));
  for (const auto& e : j.at("eta")) t.eta.push_back(span_codes(codec, e));
  return t;
}

// ---- rule maps

inline json encode_rules(const GenRuleMap& f) {
  json rules = json::array();
  for (const Rule& r : f.rules) {
    if (const auto* pl = std::get_if<Placement>(&r)) {
      rules.push_back({{"type", "placement"}, {"target_summand", pl->target_summand}, {"stride", pl->stride}, {"offset", pl->offset}});
    } else if (const auto* gp = std::get_if<GenPrueferPlacement>(&r)) {
      rules.push_back({{"type", "gen_pruefer"}, {"stride", gp->stride}, {"offset", gp->offset}});
    } else {
      const auto& ex = std::get<Explicit>(r);
      json cyc = json::array(), pr = json::array();
      for (const auto& [c, img] : ex.cyclic) cyc.push_back({{"copy", c}, {"image", print_element(img)}});
      for (const auto& [c, terms] : ex.pruefer) {
        json ts = json::array();
        for (const auto& [tc, u] : terms) ts.push_back({tc.summand, tc.copy, u});
        pr.push_back({{"copy", c}, {"terms", ts}});
      }
      rules.push_back({{"type", "explicit"}, {"cyclic", cyc}, {"pruefer", pr}});
    }
  }
  return {{"source", print_group(*f.source)}, {"target", print_group(*f.target)}, {"rules", rules}};
}

inline GenRuleMap decode_rules(const json& j) {
  GenRuleMap f;
  f.source = make_group(parse_group(j.at("source").get<std::string>()));
  f.target = make_group(parse_group(j.at("target").get<std::string>()));
  for (const auto& r : j.at("rules")) {
    const std::string type = r.at("type").get<std::string>();
    if (type == "placement") {
      f.rules.push_back(Placement{r.at("target_summand").get<std::uint32_t>(), r.at("stride").get<std::uint64_t>(),
                                  r.at("offset").get<std::uint64_t>()});
    } else if (type == "gen_pruefer") {
      f.rules.push_back(GenPrueferPlacement{r.at("stride").get<std::uint64_t>(), r.at("offset").get<std::uint64_t>()});
    } else if (type == "explicit") {
      Explicit ex;
      for (const auto& c : r.at("cyclic"))
        ex.cyclic.emplace(c.at("copy").get<std::uint64_t>(), parse_element(c.at("image").get<std::string>(), f.target));
      for (const auto& c : r.at("pruefer")) {
        std::vector<std::pair<Coord, i64>> terms;
        for (const auto& t : c.at("terms"))
          terms.push_back({Coord{t.at(0).get<std::uint32_t>(), t.at(1).get<std::uint64_t>()}, t.at(2).get<i64>()});
        ex.pruefer.emplace(c.at("copy").get<std::uint64_t>(), std::move(terms));
      }
      f.rules.push_back(std::move(ex));
    } else {
      throw Error(ErrorKind::ParseError, "unknown rule type " + type);
    }
  }
  return f;
}

inline json encode_tuple(const std::vector<Element>& xs) { return print_tuple(xs); }

// ---- oracle-backed checks

struct Check {
  std::string name;
  bool ok = false;
};

struct Report {
  std::string kind;
  std::vector<Check> checks;
  bool ok() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  }
  void add(std::string name, bool ok) { checks.push_back({std::move(name), ok}); }
};

namespace detail {

inline bool divisible(const Element& x, int k) {
  std::vector<std::pair<Coord, AtomValue>> raw(x.coords().begin(), x.coords().end());
  return oracle::oracle_divisible(x.spec(), raw, k);
}

/// x ∈ p^w M read off the normal form: Pruefer coordinates and a_0 multiples only.
inline bool in_omega(const Element& x) {
  for (const auto& [c, v] : x.coords()) {
    const Atom a = x.spec().atom_at(c.summand);
    if (a.is_cyclic() || (a.is_gen_pruefer() && v.c.size() > 1)) return false;
  }
  return true;
}

inline Ordinal checked_height(const Element& x) {
  if (x.is_zero()) return Ordinal::infinity();
  if (!in_omega(x)) {
    int k = 0;
    while (divisible(x, k + 1)) {
      if (++k > 4096) throw Error(ErrorKind::StabilizationFailure, "height search did not terminate");
    }
    return Ordinal::finite(k);
  }
  std::optional<int> j;
  for (const auto& [c, v] : x.coords()) {
    const Atom a = x.spec().atom_at(c.summand);
    if (!a.is_gen_pruefer()) continue;
    const GroupSpec top(x.spec().p, {{Atom::cyclic(a.param), 1}});
    int k = 0;
    while (oracle::oracle_divisible(top, {{Coord{}, cyclic_value(v.c[0])}}, k + 1)) ++k;
    j = j ? std::min(*j, k) : k;
  }
  return j ? Ordinal::omega_plus(*j) : Ordinal::infinity();
}

}  // namespace detail

/// Re-checks every coefficient code of a triple against the tuple.
inline void verify_triple(Report& r, const std::string& tag, const GroupRef& g, const std::vector<Element>& a,
                          const TypeTriple& t, std::uint64_t cap = scope_cap(kDefaultTripleCap)) {
  r.add(tag + ".shape", t.p == g->p && t.n == a.size() && !t.eta.empty());
  if (r.checks.back().ok == false) return;
  bool order = std::all_of(a.begin(), a.end(), [&](const Element& x) { return scale(ipow(t.p, t.m), x).is_zero(); });
  if (t.m > 0)
    order = order && std::any_of(a.begin(), a.end(), [&](const Element& x) { return !scale(ipow(t.p, t.m - 1), x).is_zero(); });
  r.add(tag + ".order", order);
  CoeffCodec codec{ipow(t.p, t.m), t.n};
  if (codec.size() > cap) throw Error(ErrorKind::ScopeTooLarge, "coefficient space exceeds cap");
  const int K = t.stabilization();
  bool omega = true, eta = true, stab = true;
  for (std::uint64_t code = 0; code < codec.size(); ++code) {
    const Element x = combination(g, codec.decode(code), a);
    omega = omega && (x.is_zero() == t.omega.contains(code));
    for (int k = 0; k < K; ++k) eta = eta && (detail::divisible(x, k) == t.eta[static_cast<std::size_t>(k)].contains(code));
    const bool top = detail::in_omega(x);
    eta = eta && (top == t.eta.back().contains(code));
    if (!top) stab = stab && !detail::divisible(x, K);
  }
  r.add(tag + ".omega", omega);
  r.add(tag + ".eta", eta);
  r.add(tag + ".stabilization", stab);
}

namespace detail {

inline bool oracle_atom(const GroupRef& g, const DivAtom& d, const std::vector<Element>& a) {
  const Element x = combination(g, d.coeffs, a);
  return d.is_zero() ? x.is_zero() : divisible(x, d.depth(g->p));
}

inline bool oracle_capable(const GroupSpec& g) {
  if (g.universal) return false;
  return std::none_of(g.summands.begin(), g.summands.end(),
                      [](const Summand& s) { return s.mult == kAleph0 || s.atom.is_gen_pruefer(); });
}

/// Quantified formula by witness search in a proxy group deep enough for the
/// tuple's orders plus the simplified depth.
inline bool oracle_quantified(const GroupRef& g, const Quantified& q, const std::vector<Element>& a) {
  int e = 0, d = 0;
  for (const auto& x : a) e = std::max(e, order_exp(x));
  for (const auto& c : pp_simplify(q).conjuncts)
    if (!c.is_zero()) d = std::max(d, c.depth(g->p));
  const oracle::OGroup o = oracle::oracle_group(*g, e + d + 1);
  std::vector<std::vector<i64>> v;
  for (const auto& x : a) v.push_back(oracle::to_vec(o, x));
  return oracle::oracle_pp_eval(o, q, v);
}

/// Finite with at most 64 elements: small enough for subgroup enumeration.
inline bool small_finite(const GroupSpec& g) {
  if (!oracle_capable(g) || g.has_kind(Atom::Kind::Pruefer) || g.log_order() > 6) return false;
  return ipow(g.p, g.log_order()) <= 64;
}

inline GroupRef group_of(const json& j, const char* key) { return make_group(parse_group(j.at(key).get<std::string>())); }

}  // namespace detail

struct Issued {
  json cert;
  bool positive = true;
};

// ---- eval

inline Issued issue_eval(const GroupRef& g, const PpFormula& phi, const std::vector<Element>& a) {
  const bool holds = pp_eval(g, phi, a);
  const Simplified s = as_simplified(phi);
  json atoms = json::array();
  for (const auto& d : s.conjuncts) atoms.push_back({{"atom", print_atom(d)}, {"holds", atom_holds(g, d, a)}});
  std::vector<std::string> checks{"atoms.oracle", "conjunction"};
  const bool quantified = std::holds_alternative<Quantified>(phi);
  if (quantified) checks.push_back("simplified");
  if (quantified && detail::oracle_capable(*g)) checks.push_back("quantified.oracle");
  json input = {{"group", print_group(*g)}, {"formula", print_formula(phi)}, {"tuple", print_tuple(a)}};
  json evidence = {{"holds", holds}, {"simplified", print_formula(PpFormula(s))}, {"atoms", atoms}};
  return {envelope("eval", input, evidence, checks), holds};
}

inline void revalidate_eval(Report& r, const json& c) {
  const json& in = c.at("input");
  const json& ev = c.at("evidence");
  const GroupRef g = detail::group_of(in, "group");
  const auto a = parse_tuple(in.at("tuple").get<std::string>(), g);
  const PpFormula phi = parse_formula(in.at("formula").get<std::string>(), a.size());
  const PpFormula simp = parse_formula(ev.at("simplified").get<std::string>(), a.size());
  const bool holds = ev.at("holds").get<bool>();
  const auto* s = std::get_if<Simplified>(&simp);
  r.add("simplified.shape", s != nullptr && s->conjuncts.size() == ev.at("atoms").size());
  if (!s || !r.checks.back().ok) return;
  bool atoms = true, all = true;
  for (std::size_t i = 0; i < s->conjuncts.size(); ++i) {
    const json& at = ev.at("atoms").at(i);
    const bool v = detail::oracle_atom(g, s->conjuncts[i], a);
    atoms = atoms && at.at("atom").get<std::string>() == print_atom(s->conjuncts[i]) && at.at("holds").get<bool>() == v;
    all = all && v;
  }
  r.add("atoms.oracle", atoms);
  r.add("conjunction", all == holds);
  if (const auto* q = std::get_if<Quantified>(&phi)) {
    r.add("simplified", pp_simplify(*q) == *s);
    if (detail::oracle_capable(*g)) r.add("quantified.oracle", detail::oracle_quantified(g, *q, a) == holds);
  }
}

// ---- type

inline Issued issue_type(const GroupRef& g, const std::vector<Element>& a) {
  const TypeTriple t = pp_type_triple(g, a);
  json input = {{"group", print_group(*g)}, {"tuple", print_tuple(a)}};
  return {envelope("type", input, {{"triple", encode_triple(t)}},
                   {"triple.shape", "triple.order", "triple.omega", "triple.eta", "triple.stabilization"}),
          true};
}

inline void revalidate_type(Report& r, const json& c) {
  const json& in = c.at("input");
  const GroupRef g = detail::group_of(in, "group");
  const auto a = parse_tuple(in.at("tuple").get<std::string>(), g);
  verify_triple(r, "triple", g, a, decode_triple(c.at("evidence").at("triple")));
}

// ---- pure (partial pure monomorphism b ↦ c)

inline Issued issue_pure(const GroupRef& m, const std::vector<Element>& b, const GroupRef& n, const std::vector<Element>& c) {
  const MapVerdict v = is_partial_pure_mono(m, b, n, c);
  json input = {{"source", print_group(*m)}, {"tuple", print_tuple(b)}, {"target", print_group(*n)}, {"image", print_tuple(c)}};
  json evidence = {{"pure", v.pure},
                   {"source_triple", encode_triple(pp_type_triple(m, b))},
                   {"target_triple", encode_triple(pp_type_triple(n, c))}};
  std::vector<std::string> checks{"source.eta", "target.eta", "verdict"};
  if (v.witness) {
    evidence["witness"] = print_atom(*v.witness);
    evidence["holds_in_source"] = v.holds_in_source;
    checks.push_back("witness.oracle");
  }
  return {envelope("pure", input, evidence, checks), v.pure};
}

inline void revalidate_pure(Report& r, const json& c) {
  const json& in = c.at("input");
  const json& ev = c.at("evidence");
  const GroupRef m = detail::group_of(in, "source"), n = detail::group_of(in, "target");
  const auto b = parse_tuple(in.at("tuple").get<std::string>(), m);
  const auto cc = parse_tuple(in.at("image").get<std::string>(), n);
  const TypeTriple s = decode_triple(ev.at("source_triple")), t = decode_triple(ev.at("target_triple"));
  verify_triple(r, "source", m, b, s);
  verify_triple(r, "target", n, cc, t);
  const bool pure = ev.at("pure").get<bool>();
  r.add("verdict", b.size() == cc.size() && pure == (s == t));
  if (ev.contains("witness")) {
    const PpFormula w = parse_formula(ev.at("witness").get<std::string>(), b.size());
    const auto& conj = std::get<Simplified>(w).conjuncts;
    const bool src = conj.size() == 1 && detail::oracle_atom(m, conj[0], b);
    const bool tgt = conj.size() == 1 && detail::oracle_atom(n, conj[0], cc);
    r.add("witness.oracle", conj.size() == 1 && !pure && src == ev.at("holds_in_source").get<bool>() && src != tgt);
  }
}

// ---- hull

inline Issued issue_hull(const GroupRef& m, const std::vector<Element>& gens) {
  const HullResult h = hull(m, subgroup_generated(m, gens));
  json links = json::array();
  const auto socles = summand_socles(h.hull);
  for (std::size_t i = 0; i < socles.size(); ++i) {
    const auto& l = h.links[i];
    if (!l) {
      links.push_back({{"socle", print_element(socles[i])}, {"linked", false}});
      continue;
    }
    links.push_back({{"socle", print_element(socles[i])}, {"linked", true}, {"z_exp", l->z_exp}, {"zero", l->zero},
                     {"k", l->k}, {"b", print_element(l->b)}});
  }
  json input = {{"group", print_group(*m)}, {"tuple", print_tuple(gens)}};
  json evidence = {{"hull", print_group(*h.hull)},
                   {"embed", print_tuple(h.embed)},
                   {"stabilization", h.stabilization},
                   {"triple", encode_triple(pp_type_triple(m, gens))},
                   {"links", links}};
  std::vector<std::string> checks{"source.eta", "hull.eta", "stabilization", "exclusion", "links.oracle"};
  if (detail::small_finite(*h.hull))
    checks.push_back("minimality.oracle");
  return {envelope("hull", input, evidence, checks), true};
}

inline void revalidate_hull(Report& r, const json& c) {
  const json& in = c.at("input");
  const json& ev = c.at("evidence");
  const GroupRef m = detail::group_of(in, "group"), h = detail::group_of(ev, "hull");
  const auto gens = parse_tuple(in.at("tuple").get<std::string>(), m);
  const auto embed = parse_tuple(ev.at("embed").get<std::string>(), h);
  const TypeTriple t = decode_triple(ev.at("triple"));
  verify_triple(r, "source", m, gens, t);
  verify_triple(r, "hull", h, embed, t);
  const int s = ev.at("stabilization").get<int>();
  r.add("stabilization", s == t.stabilization());
  r.add("exclusion", std::none_of(h->summands.begin(), h->summands.end(),
                                  [&](const Summand& x) { return x.atom.is_cyclic() && x.atom.param > s; }));
  if (h->has_kind(Atom::Kind::GenPruefer) || h->universal) {
    r.add("links.oracle", false);
    return;
  }
  const auto socles = summand_socles(h);
  const FiniteSubgroup image = subgroup_generated(h, embed);
  bool linked = socles.size() == ev.at("links").size();
  for (std::size_t i = 0; linked && i < socles.size(); ++i) {
    const json& l = ev.at("links").at(i);
    linked = l.at("socle").get<std::string>() == print_element(socles[i]) && l.at("linked").get<bool>();
    if (!linked) break;
    const Element b = parse_element(l.at("b").get<std::string>(), h);
    const Element za = scale(ipow(h->p, l.at("z_exp").get<int>()), socles[i]);
    const int k = l.at("k").get<int>();
    linked = image.contains(b) && !za.is_zero();
    if (l.at("zero").get<bool>())
      linked = linked && !b.is_zero() && za == b;
    else
      linked = linked && detail::divisible(za - b, k) && !detail::divisible(-b, k);
  }
  r.add("links.oracle", linked);
  if (detail::small_finite(*h)) {
    const oracle::OGroup o = oracle::oracle_group(*h);
    std::vector<std::vector<i64>> v;
    for (const auto& x : embed) v.push_back(oracle::to_vec(o, x));
    const oracle::Bits b = oracle::generated(o, v);
    const auto pairs = oracle::oracle_summands(o, b);
    r.add("minimality.oracle", std::all_of(pairs.begin(), pairs.end(), [&](const oracle::SummandPair& sp) {
      return sp.summand.count() == o.order();
    }));
  }
}

// ---- embed

namespace detail {

inline constexpr int kEmbedDepth = 6;

/// First two copies of every summand (generator, 1/p^3, a_0..a_2), plus
/// x + y and x + p·y over pairs.
inline std::vector<Element> embed_scope(const GroupRef& g) {
  std::vector<Element> gens;
  for (std::uint32_t s = 0; s < g->summands.size(); ++s) {
    const Summand& sm = g->summands[s];
    for (Mult c = 0; c < std::min<Mult>(sm.mult, 2); ++c) {
      if (sm.atom.is_cyclic()) gens.push_back(cyclic_generator(g, {s, c}));
      else if (sm.atom.is_pruefer()) gens.push_back(pruefer_generator(g, {s, c}, 2));
      else
        for (int m = 0; m <= 2; ++m) gens.push_back(gen_pruefer_generator(g, {s, c}, m));
    }
  }
  std::vector<Element> out = gens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i < j) out.push_back(gens[i] + gens[j]);
      if (i != j) out.push_back(gens[i] + scale(g->p, gens[j]));
    }
  return out;
}

inline json issue_embed_block(const GroupRef& g) {
  const GenRuleMap f = universal_embed(g);
  PurityScope scope;
  scope.samples = embed_scope(g);
  scope.depth = kEmbedDepth;
  const PurityCertificate pc = is_pure_embedding(f, scope);
  json purity = {{"pure", pc.pure}, {"checked", pc.checked}, {"depth", pc.depth}};
  if (pc.witness) purity["witness"] = print_element(*pc.witness);
  return {{"prime", g->p}, {"map", encode_rules(f)}, {"purity", purity}};
}

inline void revalidate_embed_block(Report& r, const std::string& tag, const GroupSpec& source, const json& block) {
  const GenRuleMap f = decode_rules(block.at("map"));
  r.add(tag + ".source", *f.source == source && f.target->universal && block.at("prime").get<i64>() == source.p);
  if (!r.checks.back().ok) return;
  r.add(tag + ".relations", relations_hold(f));
  const auto xs = embed_scope(f.source);
  bool pure = true;
  for (const auto& x : xs) {
    const Element y = apply(f, x);
    if (!x.is_zero() && y.is_zero()) pure = false;
    for (int k = 1; k <= kEmbedDepth && pure; ++k) pure = divisible(x, k) == divisible(y, k);
  }
  const json& pc = block.at("purity");
  r.add(tag + ".purity.oracle", pure == pc.at("pure").get<bool>() && pc.at("checked").get<std::uint64_t>() == xs.size() &&
                                   pc.at("depth").get<int>() == kEmbedDepth);
}

inline std::vector<std::string> embed_checks(std::size_t blocks) {
  std::vector<std::string> out{"blocks"};
  for (std::size_t i = 0; i < blocks; ++i)
    for (const char* c : {".source", ".relations", ".purity.oracle"}) out.push_back("block" + std::to_string(i) + c);
  return out;
}

}  // namespace detail

inline Issued issue_embed(const GroupRef& g) {
  json block = detail::issue_embed_block(g);
  const bool pure = block.at("purity").at("pure").get<bool>();
  return {envelope("embed", {{"group", print_group(*g)}, {"torsion", false}}, {{"blocks", json::array({block})}},
                   detail::embed_checks(1)),
          pure};
}

/// One universal block per prime.
inline Issued issue_embed_torsion(const TorsionGroupSpec& t) {
  json blocks = json::array();
  bool pure = true;
  for (const auto& [p, g] : t.components) {
    blocks.push_back(detail::issue_embed_block(make_group(g)));
    pure = pure && blocks.back().at("purity").at("pure").get<bool>();
  }
  return {envelope("embed", {{"group", print_torsion_group(t)}, {"torsion", true}}, {{"blocks", blocks}},
                   detail::embed_checks(blocks.size())),
          pure};
}

inline void revalidate_embed(Report& r, const json& c) {
  const json& in = c.at("input");
  const json& blocks = c.at("evidence").at("blocks");
  std::vector<GroupSpec> parts;
  if (in.at("torsion").get<bool>()) {
    for (const auto& [p, g] : parse_torsion_group(in.at("group").get<std::string>()).components) parts.push_back(g);
  } else {
    parts.push_back(parse_group(in.at("group").get<std::string>()));
  }
  r.add("blocks", parts.size() == blocks.size());
  if (!r.checks.back().ok) return;
  for (std::size_t i = 0; i < parts.size(); ++i)
    detail::revalidate_embed_block(r, "block" + std::to_string(i), parts[i], blocks.at(i));
}

// ---- classify

inline const char* kind_name(HomogeneityVerdict::Kind k) {
  switch (k) {
    case HomogeneityVerdict::Kind::CaseA: return "CaseA";
    case HomogeneityVerdict::Kind::CaseB: return "CaseB";
    case HomogeneityVerdict::Kind::No: return "No";
  }
  return "?";
}

inline Issued issue_classify(const GroupRef& g) {
  const HomogeneityVerdict v = classify_homogeneous(g);
  json evidence = {{"verdict", kind_name(v.kind)}};
  std::vector<std::string> checks{"structure"};
  if (v.kind == HomogeneityVerdict::Kind::CaseB) {
    evidence["n"] = v.n;
    checks.push_back("ulm.top");
  }
  if (v.kind == HomogeneityVerdict::Kind::No) {
    evidence["a"] = print_element(*v.a);
    evidence["b"] = print_element(*v.b);
    evidence["alpha"] = v.alpha.str();
    evidence["triple"] = encode_triple(pp_type_triple(g, {*v.a}));
    checks = {"a.eta", "b.eta", "separation.oracle"};
  }
  return {envelope("classify", {{"group", print_group(*g)}}, evidence, checks), v.kind != HomogeneityVerdict::Kind::No};
}

inline void revalidate_classify(Report& r, const json& c) {
  const GroupRef g = detail::group_of(c.at("input"), "group");
  const json& ev = c.at("evidence");
  const std::string verdict = ev.at("verdict").get<std::string>();
  const bool gp = g->has_kind(Atom::Kind::GenPruefer);
  if (verdict == "CaseA") {
    r.add("structure", !gp);
  } else if (verdict == "CaseB") {
    const int n = ev.at("n").get<int>();
    r.add("structure", gp && !g->has_kind(Atom::Kind::Pruefer) &&
                           std::all_of(g->summands.begin(), g->summands.end(), [&](const Summand& s) {
                             return s.atom.is_cyclic() || s.atom.param == n;
                           }));
    r.add("ulm.top", validate_case_b(*g, n));
  } else if (verdict == "No") {
    const Element a = parse_element(ev.at("a").get<std::string>(), g);
    const Element b = parse_element(ev.at("b").get<std::string>(), g);
    const Ordinal alpha = parse_ordinal(ev.at("alpha").get<std::string>());
    const TypeTriple t = decode_triple(ev.at("triple"));
    verify_triple(r, "a", g, {a}, t);
    verify_triple(r, "b", g, {b}, t);
    r.add("separation.oracle", (detail::checked_height(a) >= alpha) != (detail::checked_height(b) >= alpha));
  } else {
    r.add("verdict", false);
  }
}

// ---- extend

namespace detail {

inline bool oracle_fits(const GroupSpec& g, int proxy) {
  if (!oracle_capable(g)) return false;
  double bits = 0;
  for (const auto& s : g.summands) bits += static_cast<double>(s.mult) * (s.atom.is_pruefer() ? proxy : s.atom.param);
  return bits * std::log2(static_cast<double>(g.p)) <= 16;
}

/// Images of the standard generators (1/p^K for Pruefer proxies) under f.
inline bool oracle_automorphism(const GroupRef& g, const GenRuleMap& f, int K) {
  const oracle::OGroup o = oracle::oracle_group(*g, K);
  std::vector<std::vector<i64>> images(o.rank());
  for (const auto& [c, i] : o.slot) {
    const Element e = o.proxy[i] ? pruefer_generator(g, c, K - 1) : cyclic_generator(g, c);
    images[i] = oracle::to_vec(o, apply(f, e));
  }
  return oracle::is_automorphism(o, images);
}

}  // namespace detail

inline Issued issue_extend(const GroupRef& g, const std::vector<Element>& b, const std::vector<Element>& c) {
  json input = {{"group", print_group(*g)}, {"tuple", print_tuple(b)}, {"image", print_tuple(c)}};
  try {
    const AutomorphismWitness w = extend_partial_iso(g, b, c);
    json evidence = {{"extended", true}, {"forward", encode_rules(w.forward)}, {"inverse", encode_rules(w.inverse)},
                     {"precision", w.precision}};
    std::vector<std::string> checks{"witness"};
    if (detail::oracle_fits(*g, w.precision)) checks.push_back("automorphism.oracle");
    return {envelope("extend", input, evidence, checks), true};
  } catch (const NotPureError& e) {
    json evidence = {{"extended", false}, {"witness", print_atom(*e.verdict().witness)},
                     {"holds_in_source", e.verdict().holds_in_source}};
    return {envelope("extend", input, evidence, {"witness.oracle"}), false};
  }
}

inline void revalidate_extend(Report& r, const json& c) {
  const json& in = c.at("input");
  const json& ev = c.at("evidence");
  const GroupRef g = detail::group_of(in, "group");
  const auto b = parse_tuple(in.at("tuple").get<std::string>(), g);
  const auto cc = parse_tuple(in.at("image").get<std::string>(), g);
  if (!ev.at("extended").get<bool>()) {
    const PpFormula w = parse_formula(ev.at("witness").get<std::string>(), b.size());
    const auto& conj = std::get<Simplified>(w).conjuncts;
    const bool src = conj.size() == 1 && detail::oracle_atom(g, conj[0], b);
    r.add("witness.oracle", conj.size() == 1 && src == ev.at("holds_in_source").get<bool>() &&
                                src != detail::oracle_atom(g, conj[0], cc));
    return;
  }
  AutomorphismWitness w;
  w.group = g;
  w.forward = decode_rules(ev.at("forward"));
  w.inverse = decode_rules(ev.at("inverse"));
  w.domain = b;
  w.image = cc;
  w.precision = ev.at("precision").get<int>();
  const bool shape = *w.forward.source == *g && *w.forward.target == *g && *w.inverse.source == *g &&
                     *w.inverse.target == *g && w.forward.rules.size() == g->summands.size() &&
                     w.inverse.rules.size() == g->summands.size();
  r.add("witness", shape && verify_witness(w));
  if (shape && detail::oracle_fits(*g, w.precision)) r.add("automorphism.oracle", detail::oracle_automorphism(g, w.forward, w.precision));
}

// ---- ulm

namespace detail {

inline json mult_json(Mult m) { return m == kAleph0 ? json("aleph0") : json(m); }

inline json encode_ulm(const UlmData& u) {
  json fin = json::array(), om = json::array();
  for (const auto& [j, m] : u.finite) fin.push_back({j, mult_json(m)});
  for (const auto& [j, m] : u.omega) om.push_back({j, mult_json(m)});
  return {{"finite", fin}, {"every_finite", mult_json(u.every_finite)}, {"omega", om}, {"divisible_rank", mult_json(u.divisible_rank)}};
}

/// Invariants from oracle heights of one socle element per indecomposable
/// summand; false when a height disagrees with the summand's shape.
inline std::optional<UlmData> socle_ulm(const GroupRef& g) {
  UlmData u;
  const i64 p = g->p;
  auto h = [](const Element& x) { return checked_height(x); };
  for (std::uint32_t s = 0; s < g->summands.size(); ++s) {
    const Summand& sm = g->summands[s];
    const Atom a = sm.atom;
    if (a.is_cyclic()) {
      if (h(scale(ipow(p, a.param - 1), cyclic_generator(g, {s, 0}))) != Ordinal::finite(a.param - 1)) return std::nullopt;
      u.finite[a.param - 1] = mult_add(u.finite[a.param - 1], sm.mult);
    } else if (a.is_pruefer()) {
      if (!h(pruefer_generator(g, {s, 0}, 0)).is_infinity()) return std::nullopt;
      u.divisible_rank = mult_add(u.divisible_rank, sm.mult);
    } else {
      if (h(scale(ipow(p, a.param - 1), gen_pruefer_generator(g, {s, 0}, 0))) != Ordinal::omega_plus(a.param - 1))
        return std::nullopt;
      for (int m = 1; m <= 3; ++m) {
        const Element e = scale(ipow(p, m - 1), gen_pruefer_generator(g, {s, 0}, m)) -
                          scale(ipow(p, m), gen_pruefer_generator(g, {s, 0}, m + 1));
        if (h(e) != Ordinal::finite(m - 1)) return std::nullopt;
      }
      u.omega[a.param - 1] = mult_add(u.omega[a.param - 1], sm.mult);
      u.every_finite = mult_add(u.every_finite, sm.mult);
    }
  }
  if (g->universal) {
    for (int m = 1; m <= 3; ++m) {
      const Coord c{static_cast<std::uint32_t>(g->universal_cyclic_index(m)), 0};
      if (h(scale(ipow(p, m - 1), cyclic_generator(g, c))) != Ordinal::finite(m - 1)) return std::nullopt;
    }
    if (!h(pruefer_generator(g, {static_cast<std::uint32_t>(g->universal_pruefer_index()), 0}, 0)).is_infinity())
      return std::nullopt;
    u.every_finite = kAleph0;
    u.divisible_rank = kAleph0;
  }
  return u;
}

}  // namespace detail

inline Issued issue_ulm(const GroupRef& g, const std::optional<Element>& x) {
  json input = {{"group", print_group(*g)}};
  json evidence = {{"invariants", detail::encode_ulm(ulm_invariants(*g))}};
  std::vector<std::string> checks{"socle.oracle"};
  if (x) {
    input["element"] = print_element(*x);
    json seq = json::array();
    for (const auto& o : ulm_sequence(*x)) seq.push_back(o.str());
    evidence["sequence"] = seq;
    checks.push_back("sequence.oracle");
  }
  return {envelope("ulm", input, evidence, checks), true};
}

inline void revalidate_ulm(Report& r, const json& c) {
  const json& in = c.at("input");
  const json& ev = c.at("evidence");
  const GroupRef g = detail::group_of(in, "group");
  const auto u = detail::socle_ulm(g);
  r.add("socle.oracle", u && detail::encode_ulm(*u) == ev.at("invariants"));
  if (in.contains("element")) {
    Element y = parse_element(in.at("element").get<std::string>(), g);
    const json& seq = ev.at("sequence");
    bool ok = !y.is_zero() && !seq.empty();
    for (std::size_t i = 0; ok && i < seq.size(); ++i) {
      const Ordinal h = detail::checked_height(y);
      ok = h == parse_ordinal(seq.at(i).get<std::string>()) && (h.is_infinity() == (i + 1 == seq.size()));
      y = scale(g->p, y);
    }
    r.add("sequence.oracle", ok);
  }
}

// ---- census

inline Issued issue_census(i64 p, std::size_t n, int m_bound, const GroupRef& ambient) {
  const auto types = enumerate_type_witnesses(p, n, m_bound, ambient);
  json list = json::array();
  for (const auto& [t, w] : types) list.push_back({{"triple", encode_triple(t)}, {"witness", print_tuple(w)}});
  json input = {{"p", p}, {"arity", n}, {"mbound", m_bound}, {"ambient", print_group(*ambient)}};
  return {envelope("census", input, {{"count", types.size()}, {"types", list}}, {"count", "witness.bounded", "witness.eta", "distinct"}),
          true};
}

inline void revalidate_census(Report& r, const json& c) {
  const json& in = c.at("input");
  const json& ev = c.at("evidence");
  const GroupRef g = detail::group_of(in, "ambient");
  const i64 p = in.at("p").get<i64>();
  const std::size_t n = in.at("arity").get<std::size_t>();
  const int mb = in.at("mbound").get<int>();
  const json& list = ev.at("types");
  r.add("count", g->p == p && list.size() == ev.at("count").get<std::size_t>());
  std::set<TypeTriple> seen;
  bool bounded = true;
  Report inner;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto w = parse_tuple(list.at(i).at("witness").get<std::string>(), g);
    bounded = bounded && w.size() == n &&
              std::all_of(w.begin(), w.end(), [&](const Element& x) { return scale(ipow(p, mb), x).is_zero(); });
    const TypeTriple t = decode_triple(list.at(i).at("triple"));
    verify_triple(inner, "witness", g, w, t);
    seen.insert(t);
  }
  r.add("witness.bounded", bounded);
  r.add("witness.eta", inner.ok() || list.empty());
  r.add("distinct", seen.size() == list.size());
}

// ---- dispatch

inline Report revalidate(const json& c) {
  Report r;
  r.kind = c.at("kind").get<std::string>();
  r.add("schema", c.at("schema").get<int>() == kSchemaVersion);
  if (r.kind == "eval") revalidate_eval(r, c);
  else if (r.kind == "type") revalidate_type(r, c);
  else if (r.kind == "pure") revalidate_pure(r, c);
  else if (r.kind == "hull") revalidate_hull(r, c);
  else if (r.kind == "embed") revalidate_embed(r, c);
  else if (r.kind == "classify") revalidate_classify(r, c);
  else if (r.kind == "extend") revalidate_extend(r, c);
  else if (r.kind == "ulm") revalidate_ulm(r, c);
  else if (r.kind == "census") revalidate_census(r, c);
  else r.add("kind", false);
  return r;
}

}  // namespace cert
}  // namespace ppg
