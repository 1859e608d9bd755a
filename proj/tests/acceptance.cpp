// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "ppg/ppg.hpp"

using namespace ppg;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::mt19937_64 rng(20240917);

i64 uniform(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

// partitions of e as non-increasing part lists
void partitions(int e, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (e == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(e, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(e - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<GroupRef> two_groups(int max_exp, bool with_trivial = false) {
  std::vector<GroupRef> out;
  for (int e = with_trivial ? 0 : 1; e <= max_exp; ++e) {
    std::vector<std::vector<int>> ps;
    std::vector<int> cur;
    partitions(e, e, cur, ps);
    for (const auto& parts : ps) {
      std::vector<Summand> s;
      for (int k : parts) s.push_back({Atom::cyclic(k), 1});
      out.push_back(make_group(GroupSpec(2, s)));
    }
  }
  return out;
}

std::vector<std::pair<Coord, AtomValue>> raw(const Element& x) { return {x.coords().begin(), x.coords().end()}; }

int oracle_capped_height(const Element& x, int depth) {
  int k = 0;
  while (k < depth && oracle::oracle_divisible(x.spec(), raw(x), k + 1)) ++k;
  return k;
}

Element random_element(const GroupRef& g, int pruefer_depth = 2, int gp_support = 2) {
  std::vector<std::pair<Coord, AtomValue>> r;
  for (std::uint32_t s = 0; s < g->summands.size(); ++s) {
    const Summand& sm = g->summands[s];
    for (Mult c = 0; c < sm.mult; ++c) {
      const Coord co{s, c};
      if (sm.atom.is_cyclic()) {
        r.push_back({co, cyclic_value(uniform(0, ipow(g->p, sm.atom.param) - 1))});
      } else if (sm.atom.is_pruefer()) {
        const int k = static_cast<int>(uniform(1, pruefer_depth));
        r.push_back({co, pruefer_value(uniform(0, ipow(g->p, k) - 1), k)});
      } else {
        std::vector<i64> v{uniform(0, ipow(g->p, sm.atom.param) - 1)};
        const int S = static_cast<int>(uniform(0, gp_support));
        for (int m = 1; m <= S; ++m) v.push_back(uniform(0, ipow(g->p, m) - 1));
        r.push_back({co, gen_pruefer_value(v)});
      }
    }
  }
  std::vector<std::pair<Coord, AtomValue>> keep;
  for (auto& e : r) {
    bool zero = std::all_of(e.second.c.begin(), e.second.c.end(), [](i64 v) { return v == 0; });
    if (!zero) keep.push_back(e);
  }
  return make_element(g, keep);
}

// images of the standard generators under f, checked by the oracle
bool oracle_is_automorphism(const GroupRef& g, const GenRuleMap& f, int K) {
  const oracle::OGroup o = oracle::oracle_group(*g, K);
  std::vector<std::vector<i64>> images(o.rank());
  for (const auto& [c, i] : o.slot) {
    const Element e = o.proxy[i] ? pruefer_generator(g, c, K - 1) : cyclic_generator(g, c);
    images[i] = oracle::to_vec(o, apply(f, e));
  }
  return oracle::is_automorphism(o, images);
}

bool proxied_fits(const GroupSpec& g, int K, double bits_cap) {
  double bits = 0;
  for (const auto& s : g.summands) {
    if (s.atom.is_gen_pruefer()) return false;
    bits += static_cast<double>(s.mult) * (s.atom.is_pruefer() ? K : s.atom.param);
  }
  return bits * std::log2(static_cast<double>(g.p)) <= bits_cap;
}

// ---- 1

Outcome criterion1() {
  Outcome r;
  std::size_t tuples = 0, ambients = 0;
  auto sweep = [&](const GroupRef& g, const std::vector<Element>& pool, int proxy) {
    ++ambients;
    const oracle::OGroup o = oracle::oracle_group(*g, proxy);
    int emax = 0;
    for (const auto& x : pool) emax = std::max(emax, order_exp(x));
    const auto sets = oracle::multiple_sets(o, emax + 3);
    std::vector<std::vector<i64>> vecs;
    for (const auto& x : pool) vecs.push_back(oracle::to_vec(o, x));
    for (std::size_t n = 1; n <= 2; ++n) {
      std::map<TypeTriple, std::vector<bool>> by_triple;
      std::map<std::vector<bool>, TypeTriple> by_battery;
      const std::size_t total = n == 1 ? pool.size() : pool.size() * pool.size();
      for (std::size_t t = 0; t < total; ++t) {
        std::vector<Element> a{pool[t % pool.size()]};
        std::vector<std::vector<i64>> av{vecs[t % pool.size()]};
        if (n == 2) {
          a.push_back(pool[t / pool.size()]);
          av.push_back(vecs[t / pool.size()]);
        }
        const TypeTriple tr = pp_type_triple(g, a);
        const auto bat = oracle::battery(o, av, tr.m, tr.m + 3, sets);
        ++tuples;
        auto [it, fresh] = by_triple.emplace(tr, bat);
        if (!fresh && it->second != bat) r.fail("equal triples, different batteries in " + print_group(*g));
        auto [jt, fresh2] = by_battery.emplace(bat, tr);
        if (!fresh2 && jt->second != tr) r.fail("equal batteries, different triples in " + print_group(*g));
      }
    }
  };
  for (const auto& g : two_groups(5, true)) sweep(g, enumerate_finite(g), 0);
  // G + Z(2^inf) with tuples from G + Z(2^inf)[4], |G| <= 2^3
  for (const auto& g0 : two_groups(3, true)) {
    std::vector<Summand> s = g0->summands;
    s.push_back({Atom::pruefer(), 1});
    const GroupRef g = make_group(GroupSpec(2, s));
    const Coord pc{static_cast<std::uint32_t>(g->summands.size() - 1), 0};
    std::vector<Element> pool;
    for (const auto& x : enumerate_finite(g0)) {
      Element lifted = make_element(g, raw(x));
      for (i64 a = 0; a < 4; ++a) pool.push_back(lifted + scale(a, pruefer_generator(g, pc, 1)));
    }
    int emax = 0;
    for (const auto& x : pool) emax = std::max(emax, order_exp(x));
    sweep(g, pool, 2 + emax + 3 + 1);
  }
  r.detail += std::to_string(ambients) + " ambients, " + std::to_string(tuples) + " tuples";
  return r;
}

// ---- 2

Outcome criterion2() {
  Outcome r;
  const GroupRef amb = make_group(parse_group("Z(2)+Z(2^2)+Z(2^3)+Z(2^inf)"));
  const std::size_t count = enumerate_types(2, 1, 1, amb).size();
  const oracle::OGroup o = oracle::oracle_group(*amb, 6);
  const auto sets = oracle::multiple_sets(o, 4);
  std::set<std::vector<bool>> distinct;
  for (std::uint64_t c = 0; c < o.order(); ++c) {
    const auto x = o.decode(c);
    if (o.smul(2, x) != o.zero()) continue;
    distinct.insert(oracle::battery(o, {x}, 1, 4, sets));
  }
  if (count != distinct.size()) r.fail("census " + std::to_string(count) + " vs oracle " + std::to_string(distinct.size()));
  if (count != 5) r.fail("census count " + std::to_string(count));
  r.detail += "count " + std::to_string(count) + ", oracle " + std::to_string(distinct.size());
  return r;
}

// ---- 3

GroupRef random_hull_ambient() {
  std::vector<Summand> s;
  int budget = 8;
  const int cyc = static_cast<int>(uniform(0, 3));
  for (int i = 0; i < cyc && budget > 0; ++i) {
    const int k = static_cast<int>(uniform(1, std::min(4, budget)));
    const int mult = static_cast<int>(uniform(1, std::max(1, std::min(2, budget / k))));
    s.push_back({Atom::cyclic(k), static_cast<Mult>(mult)});
    budget -= k * mult;
  }
  if (uniform(0, 1)) s.push_back({Atom::pruefer(), static_cast<Mult>(uniform(1, 2))});
  if (uniform(0, 2) == 0) s.push_back({Atom::gen_pruefer(static_cast<int>(uniform(1, 2))), 1});
  if (s.empty()) s.push_back({Atom::cyclic(3), 1});
  return make_group(GroupSpec(2, s));
}

Outcome criterion3() {
  Outcome r;
  int cases = 0, minimality = 0;
  while (cases < 200) {
    const GroupRef m = random_hull_ambient();
    std::vector<Element> gens;
    const int ng = static_cast<int>(uniform(1, 2));
    for (int i = 0; i < ng; ++i) gens.push_back(random_element(m, 3, 2));
    FiniteSubgroup b = subgroup_generated(m, gens, 1u << 12);
    if (b.size() > 8 || b.size() < 2) continue;
    ++cases;
    const HullResult h = hull(m, b);
    const std::string tag = print_group(*m) + " / " + print_tuple(gens);
    if (!respects_stabilization(h)) r.fail("exclusion fails for " + tag);
    if (!h.triple_preserved) r.fail("triple not preserved for " + tag);
    if (h.hull->is_finite() && h.hull->log_order() <= 6) {
      ++minimality;
      const oracle::OGroup o = oracle::oracle_group(*h.hull);
      std::vector<std::vector<i64>> vs;
      for (const auto& y : h.embed) vs.push_back(oracle::to_vec(o, y));
      const oracle::Bits image = oracle::generated(o, vs);
      std::size_t least = o.order();
      for (const auto& sp : oracle::oracle_summands(o, image)) least = std::min(least, sp.summand.count());
      if (least != o.order()) r.fail("hull not minimal for " + tag);
    }
  }
  r.detail += std::to_string(cases) + " cases, " + std::to_string(minimality) + " minimality checks";
  return r;
}

// ---- 4

Outcome criterion4() {
  Outcome r;
  std::uint64_t checked = 0;
  for (i64 p : {2, 3}) {
    const GroupRef h = make_group(GroupSpec(p, {{Atom::gen_pruefer(1), 1}}));
    const GenRuleMap f = universal_embed(h);
    const GroupSpec& u = *f.target;
    const Coord pr{static_cast<std::uint32_t>(u.universal_pruefer_index()), 0};
    if (apply(f, gen_pruefer_generator(h, {0, 0}, 0)) != make_element(f.target, {{pr, pruefer_value(1, 1)}}))
      r.fail("a_0 image");
    for (int m = 1; m <= 6; ++m) {
      const Coord cy{static_cast<std::uint32_t>(u.universal_cyclic_index(m)), 0};
      const Element want = make_element(f.target, {{cy, cyclic_value(1)}, {pr, pruefer_value(1, m + 1)}});
      if (apply(f, gen_pruefer_generator(h, {0, 0}, m)) != want) r.fail("a_" + std::to_string(m) + " image");
    }
    for (int N = 1; N <= 4; ++N) {
      PurityScope sc;
      sc.truncations = {{{0, 0}, N}};
      sc.depth = N + 4;
      const PurityCertificate c = is_pure_embedding(f, sc);
      checked += c.checked;
      if (!c.pure) r.fail("truncation N=" + std::to_string(N) + " p=" + std::to_string(p));
    }
    for (int N : {5, 6}) {
      PurityScope sc;
      sc.depth = N + 4;
      for (int i = 0; i < 10000; ++i) {
        std::vector<i64> v{uniform(0, p - 1)};
        for (int m = 1; m <= N; ++m) v.push_back(uniform(0, ipow(p, m) - 1));
        sc.samples.push_back(make_element(h, {{{0, 0}, gen_pruefer_value(v)}}));
      }
      const PurityCertificate c = is_pure_embedding(f, sc);
      checked += c.checked;
      if (!c.pure) r.fail("samples N=" + std::to_string(N) + " p=" + std::to_string(p));
    }
    // brute-force divisibility on both sides for small truncations
    const int oracle_N = p == 2 ? 4 : 2;
    for (int N = 1; N <= oracle_N; ++N)
      detail::for_each_truncation_element(h, {{0, 0}, N}, 1u << 20, [&](const Element& x) {
        if (x.is_zero()) return;
        if (oracle_capped_height(x, N + 4) != oracle_capped_height(apply(f, x), N + 4))
          r.fail("oracle divisibility differs at " + print_element(x));
      });
    const auto v = reduced_part_violation(f);
    if (!v || *v != gen_pruefer_generator(h, {0, 0}, 0)) r.fail("reduced_part_violation is not a_0");
  }
  r.detail += std::to_string(checked) + " elements certified";
  return r;
}

// ---- 5

Outcome criterion5() {
  Outcome r;
  std::size_t pairs = 0, oracle_checked = 0;
  for (const auto& g : two_groups(6)) {
    const auto elems = enumerate_finite(g);
    std::map<TypeTriple, std::vector<Element>> classes;
    for (const auto& x : elems)
      if (!x.is_zero()) classes[pp_type_triple(g, {x})].push_back(x);
    const bool small = g->log_order() <= 5;
    for (const auto& [t, xs] : classes)
      for (const auto& x : xs)
        for (const auto& y : xs) {
          ++pairs;
          const AutomorphismWitness w = extend_partial_iso(g, {x}, {y});
          if (apply(w.forward, x) != y || !verify_witness(w))
            r.fail("witness fails for " + print_element(x) + " -> " + print_element(y) + " in " + print_group(*g));
          if (small) {
            ++oracle_checked;
            if (!oracle_is_automorphism(g, w.forward, w.precision) || !oracle_is_automorphism(g, w.inverse, w.precision))
              r.fail("oracle rejects witness in " + print_group(*g));
          }
        }
  }
  r.detail += std::to_string(pairs) + " pairs, " + std::to_string(oracle_checked) + " oracle-checked";
  return r;
}

// ---- 6

Outcome criterion6() {
  Outcome r;
  using K = HomogeneityVerdict::Kind;
  auto classify = [](const std::string& s) {
    const GroupRef g = make_group(parse_group(s));
    return std::pair{g, classify_homogeneous(g)};
  };
  auto revalidates = [](const GroupRef& g) { return cert::revalidate(cert::issue_classify(g).cert).ok(); };

  auto [u, vu] = classify("U(2)");
  if (vu.kind != K::CaseA || !revalidates(u)) r.fail("U(2) is not CaseA");
  auto [h1, vh] = classify("H(2,w+1)");
  if (vh.kind != K::CaseB || vh.n != 1 || !validate_case_b(*h1, 1) || !revalidates(h1)) r.fail("H(2,w+1) is not CaseB(1)");
  auto [hz, vz] = classify("H(2,w+1) + Z(2^inf)");
  if (vz.kind != K::No || !validate_no_witness(hz, vz) || !revalidates(hz)) r.fail("H(2,w+1)+Z(2^inf) witness");
  auto [hh, vhh] = classify("H(2,w+1) + H(2,w+2)");
  if (vhh.kind != K::No || !validate_no_witness(hh, vhh) || !revalidates(hh)) r.fail("H(w+1)+H(w+2) witness");

  // Ulm data: one socle dimension at w and one at w+1, so p^w M[p] != p^(w+1) M[p] != 0
  const UlmData ud = ulm_invariants(*hh);
  if (ud.omega_at(0) != 1 || ud.omega_at(1) != 1 || ud.divisible_rank != 0) r.fail("Ulm data of H(w+1)+H(w+2)");
  if (validate_case_b(*hh, 1) || validate_case_b(*hh, 2)) r.fail("H(w+1)+H(w+2) passes a CaseB test");
  // in H^(N) of H(w+n) the socle element p^(n-1) a_0 has height N+n-1: w+j shows up as N+j
  for (int n = 1; n <= 2; ++n)
    for (int N = 2; N <= 5; ++N)
      if (oracle::oracle_truncation_height(2, n, N, {ipow(2, n - 1)}) != Ordinal::finite(N + n - 1))
        r.fail("truncation height of the socle of H(w+" + std::to_string(n) + ")");
  r.detail += "4 fixtures";
  return r;
}

// ---- 7

Quantified random_quantified() {
  const std::size_t n = static_cast<std::size_t>(uniform(1, 2));
  const std::size_t l = n == 2 ? 1 : static_cast<std::size_t>(uniform(1, 2));
  const std::size_t rows = static_cast<std::size_t>(uniform(1, 2));
  Quantified q{IntMatrix(rows, n), IntMatrix(rows, l)};
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t i = 0; i < n; ++i) q.A(j, i) = uniform(-8, 8);
    for (std::size_t k = 0; k < l; ++k) q.B(j, k) = uniform(-8, 8);
  }
  return q;
}

bool oracle_simplified(const oracle::OGroup& o, const Simplified& s, const std::vector<std::vector<i64>>& a,
                       const std::vector<oracle::Bits>& sets) {
  for (const auto& d : s.conjuncts) {
    const auto x = o.combo(d.coeffs, a);
    if (d.is_zero()) {
      if (x != o.zero()) return false;
      continue;
    }
    const int k = std::min(vp(d.modulus, o.p), static_cast<int>(sets.size()) - 1);
    if (!sets[static_cast<std::size_t>(k)].test(o.encode(x))) return false;
  }
  return true;
}

Outcome criterion7() {
  Outcome r;
  std::vector<Quantified> formulas;
  {
    Quantified fix{IntMatrix(1, 1), IntMatrix(1, 1)};
    fix.A(0, 0) = -2;
    fix.B(0, 0) = 4;
    formulas.push_back(fix);
  }
  while (formulas.size() < 101) formulas.push_back(random_quantified());
  std::vector<Simplified> simplified;
  for (const auto& q : formulas) simplified.push_back(pp_simplify(q));

  // E w (4 w = 2 v) is not 2 | v: they differ at v = 1 in Z(2)
  {
    const Simplified naive{1, {DivAtom::ppow(2, 1, {1})}};
    const oracle::OGroup z2 = oracle::oracle_group(parse_group("Z(2)"));
    const auto sets = oracle::multiple_sets(z2, 7);
    if (oracle::oracle_pp_eval(z2, formulas[0], {{1}}) == oracle_simplified(z2, naive, {{1}}, sets))
      r.fail("fixture does not separate E w(4w=2v) from 2|v");
  }

  std::uint64_t evals = 0;
  for (const auto& g : two_groups(6, true)) {
    const oracle::OGroup o = oracle::oracle_group(*g);
    const auto sets = oracle::multiple_sets(o, 7);
    for (std::size_t f = 0; f < formulas.size(); ++f) {
      const std::size_t n = formulas[f].arity();
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= o.order();
      for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<std::vector<i64>> a;
        std::uint64_t rest = t;
        for (std::size_t i = 0; i < n; ++i) {
          a.push_back(o.decode(rest % o.order()));
          rest /= o.order();
        }
        ++evals;
        if (oracle::oracle_pp_eval(o, formulas[f], a) != oracle_simplified(o, simplified[f], a, sets)) {
          r.fail("formula " + print_formula(PpFormula(formulas[f])) + " disagrees on " + print_group(*g));
          break;
        }
      }
    }
  }
  r.detail += std::to_string(formulas.size()) + " formulas, " + std::to_string(evals) + " evaluations";
  return r;
}

// ---- 8

GroupRef random_catalog_spec() {
  const i64 p = uniform(0, 1) ? 3 : 2;
  std::vector<Summand> s;
  const int cyc = static_cast<int>(uniform(0, 3));
  for (int i = 0; i < cyc; ++i) s.push_back({Atom::cyclic(static_cast<int>(uniform(1, 4))), static_cast<Mult>(uniform(1, 2))});
  if (uniform(0, 1)) s.push_back({Atom::pruefer(), static_cast<Mult>(uniform(1, 2))});
  const int gp = static_cast<int>(uniform(0, 2));
  for (int i = 0; i < gp; ++i) s.push_back({Atom::gen_pruefer(static_cast<int>(uniform(1, 3))), static_cast<Mult>(uniform(1, 2))});
  if (s.empty()) s.push_back({Atom::gen_pruefer(1), 1});
  return make_group(GroupSpec(p, s));
}

Outcome criterion8() {
  Outcome r;
  std::uint64_t elements = 0;
  for (int i = 0; i < 50; ++i) {
    const GroupRef m = random_catalog_spec();
    const GenRuleMap f = universal_embed(m);
    std::optional<FiniteSubgroup> b;
    while (!b) {
      std::vector<Element> gens;
      const int ng = static_cast<int>(uniform(1, 3));
      for (int j = 0; j < ng; ++j) gens.push_back(random_element(m, 2, 2));
      try {
        FiniteSubgroup cand = subgroup_generated(m, gens, 1u << 12);
        b = std::move(cand);
      } catch (const Error&) {
      }
    }
    std::vector<Element> images;
    for (const auto& x : b->elements) images.push_back(apply(f, x));
    const Subsum d0 = finite_subsum(f.target, support(images));
    if (!d0.group->is_finite() && d0.group->has_kind(Atom::Kind::GenPruefer)) r.fail("image leaves the Cyclic/Pruefer part");
    for (std::size_t j = 0; j < images.size(); ++j) {
      const Element& x = b->elements[j];
      ++elements;
      if (x.is_zero()) continue;
      if (images[j].is_zero()) r.fail("kernel element " + print_element(x) + " in " + print_group(*m));
      if (oracle_capped_height(x, 10) != oracle_capped_height(images[j], 10))
        r.fail("divisibility differs at " + print_element(x) + " in " + print_group(*m));
    }
  }
  r.detail += "50 specs, " + std::to_string(elements) + " elements";
  return r;
}

// ---- 9

Outcome criterion9() {
  Outcome r;
  int done = 0, oracle_checked = 0;
  while (done < 50) {
    const i64 p = uniform(0, 1) ? 3 : 2;
    std::vector<Summand> s;
    const int cyc = static_cast<int>(uniform(1, 3));
    for (int i = 0; i < cyc; ++i) s.push_back({Atom::cyclic(static_cast<int>(uniform(1, 3))), static_cast<Mult>(uniform(1, 2))});
    if (uniform(0, 1)) s.push_back({Atom::pruefer(), 1});
    const GroupRef m = make_group(GroupSpec(p, s));
    if (classify_homogeneous(m).kind != HomogeneityVerdict::Kind::CaseA) {
      r.fail("decomposable group not classified CaseA: " + print_group(*m));
      continue;
    }
    const Element x = random_element(m, 3);
    if (x.is_zero()) continue;
    const auto ux = full_ulm_sequence(x);
    std::optional<Element> y;
    for (int t = 0; t < 400 && !y; ++t) {
      Element c = random_element(m, 3);
      if (!c.is_zero() && c != x && full_ulm_sequence(c) == ux) y = c;
    }
    if (!y) continue;
    ++done;
    AutomorphismWitness w;
    try {
      w = transitivity_witness(m, x, *y);
    } catch (const Error& e) {
      r.fail(std::string(e.what()) + " for " + print_element(x) + " -> " + print_element(*y) + " in " + print_group(*m));
      continue;
    }
    if (apply(w.forward, x) != *y || !verify_witness(w))
      r.fail("witness fails for " + print_element(x) + " -> " + print_element(*y) + " in " + print_group(*m));
    if (proxied_fits(*m, w.precision, 16)) {
      ++oracle_checked;
      if (!oracle_is_automorphism(m, w.forward, w.precision)) r.fail("oracle rejects witness in " + print_group(*m));
    }
  }
  r.detail += std::to_string(done) + " pairs, " + std::to_string(oracle_checked) + " oracle-checked";
  return r;
}

// ---- 10

Outcome criterion10() {
  Outcome r;
  std::set<std::string> kinds;
  std::size_t files = 0;
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(PPG_GOLDEN_DIR))
    if (e.path().extension() == ".json") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    ++files;
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const json j = json::parse(text);
    if (cert::dump(j) != text) r.fail(path.filename().string() + " does not re-serialize byte-identically");
    if (!cert::revalidate(j).ok()) r.fail(path.filename().string() + " fails revalidation");
    kinds.insert(j.at("kind").get<std::string>());
    const json& input = j.at("input");
    if (input.contains("group")) {
      const std::string g = input.at("group").get<std::string>();
      if (print_torsion_group(parse_torsion_group(g)) != g) r.fail(path.filename().string() + " group does not round-trip");
    }
  }
  if (files == 0) r.fail("no golden certificates");
  r.detail += std::to_string(files) + " certificates, " + std::to_string(kinds.size()) + " kinds";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"triple faithfulness", criterion1},       {"census count", criterion2},
      {"hull exclusion and minimality", criterion3}, {"generalized Pruefer embedding", criterion4},
      {"finite homogeneity sweep", criterion5},  {"classifier fixtures", criterion6},
      {"simplifier soundness", criterion7},      {"universal embedding purity", criterion8},
      {"transitivity witnesses", criterion9},    {"golden certificates", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << o.detail
              << " [" << std::fixed << std::setprecision(1) << secs << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
