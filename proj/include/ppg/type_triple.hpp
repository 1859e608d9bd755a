#pragma once

#include <map>
#include <optional>
#include <set>

#include "ppg/formula.hpp"
#include "ppg/subgroup.hpp"

namespace ppg {

inline constexpr std::uint64_t kDefaultTripleCap = 1u << 16;

/// Subgroup of (Z/p^m)^n. Vectors are encoded as Σ r_i (p^m)^i; members are
/// sorted codes and gens a greedy generating list in code order.
struct CodeSubgroup {
  std::vector<std::uint64_t> members;
  std::vector<std::uint64_t> gens;

  bool contains(std::uint64_t code) const { return std::binary_search(members.begin(), members.end(), code); }
  bool subset_of(const CodeSubgroup& o) const {
    return std::includes(o.members.begin(), o.members.end(), members.begin(), members.end());
  }
  auto operator<=>(const CodeSubgroup&) const = default;
};

/// Canonical (m, Ω, η) data of a complete p-torsion pp-type. eta[k] = S_k for
/// k < K; eta[K] is the stable tail (combinations in p^ω M).
struct TypeTriple {
  i64 p = 2;
  std::size_t n = 0;
  int m = 0;
  CodeSubgroup omega;
  std::vector<CodeSubgroup> eta;

  int stabilization() const { return static_cast<int>(eta.size()) - 1; }
  const CodeSubgroup& eta_at(int k) const {
    return eta[static_cast<std::size_t>(std::min(k, stabilization()))];
  }
  auto operator<=>(const TypeTriple&) const = default;
};

/// Codec between coefficient vectors and codes in (Z/p^m)^n.
struct CoeffCodec {
  i64 q = 1;  // p^m
  std::size_t n = 0;

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < n; ++i) s *= static_cast<std::uint64_t>(q);
    return s;
  }
  std::vector<i64> decode(std::uint64_t code) const {
    std::vector<i64> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = static_cast<i64>(code % static_cast<std::uint64_t>(q));
      code /= static_cast<std::uint64_t>(q);
    }
    return r;
  }
  std::uint64_t encode(const std::vector<i64>& r) const {
    std::uint64_t code = 0;
    for (std::size_t i = n; i-- > 0;) code = code * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(mod(r[i], q));
    return code;
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    auto x = decode(a), y = decode(b);
    for (std::size_t i = 0; i < n; ++i) x[i] += y[i];
    return encode(x);
  }
};

namespace detail {

inline std::vector<std::uint64_t> greedy_generators(const CoeffCodec& codec, const std::vector<std::uint64_t>& members) {
  std::vector<std::uint64_t> gens;
  std::set<std::uint64_t> span{0};
  for (std::uint64_t c : members) {
    if (span.count(c)) continue;
    gens.push_back(c);
    std::vector<std::uint64_t> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<std::uint64_t> next;
      for (std::uint64_t s : frontier) {
        std::uint64_t t = codec.add(s, c);
        if (span.insert(t).second) next.push_back(t);
      }
      frontier = std::move(next);
    }
  }
  return gens;
}

inline CodeSubgroup make_code_subgroup(const CoeffCodec& codec, std::vector<std::uint64_t> members) {
  std::sort(members.begin(), members.end());
  CodeSubgroup s;
  s.gens = greedy_generators(codec, members);
  s.members = std::move(members);
  return s;
}

}  // namespace detail

inline TypeTriple pp_type_triple(const GroupRef& m, const std::vector<Element>& a,
                                 std::uint64_t cap = scope_cap(kDefaultTripleCap)) {
  check_tuple(*m, a, a.size());
  TypeTriple t;
  t.p = m->p;
  t.n = a.size();
  for (const auto& x : a) t.m = std::max(t.m, order_exp(x));
  CoeffCodec codec{ipow(t.p, t.m), t.n};
  const std::uint64_t total = codec.size();
  if (total > cap) throw Error(ErrorKind::SearchSpaceTooLarge, "coefficient space exceeds cap");
  std::vector<Ordinal> h(total);
  std::vector<std::uint64_t> om;
  int K = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    Element x = combination(m, codec.decode(code), a);
    if (x.is_zero()) om.push_back(code);
    h[code] = height(x);
    if (h[code].is_finite()) K = std::max(K, h[code].offset() + 1);
  }
  t.omega = detail::make_code_subgroup(codec, om);
  for (int k = 0; k <= K; ++k) {
    const Ordinal bound = k < K ? Ordinal::finite(k) : Ordinal::omega_plus(0);
    std::vector<std::uint64_t> s;
    for (std::uint64_t code = 0; code < total; ++code)
      if (h[code] >= bound) s.push_back(code);
    t.eta.push_back(detail::make_code_subgroup(codec, s));
  }
  return t;
}

inline bool triple_member(const TypeTriple& t, const DivAtom& d) {
  if (d.arity() != t.n) throw Error(ErrorKind::ArityError, "atom arity does not match triple");
  CoeffCodec codec{ipow(t.p, t.m), t.n};
  const std::uint64_t code = codec.encode(d.coeffs);
  if (d.is_zero()) return t.omega.contains(code);
  return t.eta_at(d.depth(t.p)).contains(code);
}

/// Pure, or a DivAtom true on exactly one side.
struct MapVerdict {
  bool pure = true;
  std::optional<DivAtom> witness;
  bool holds_in_source = false;
};

inline MapVerdict compare_triples(const TypeTriple& s, const TypeTriple& t) {
  if (s == t) return {};
  if (s.n != t.n || s.p != t.p) throw Error(ErrorKind::ArityError, "tuples differ in arity or prime");
  CoeffCodec codec{ipow(s.p, std::max(s.m, t.m)), s.n};
  const int depth = std::max(s.stabilization(), t.stabilization()) + 1;
  for (int k = -1; k <= depth; ++k) {
    for (std::uint64_t code = 0; code < codec.size(); ++code) {
      DivAtom d = k < 0 ? DivAtom::zero(codec.decode(code)) : DivAtom::ppow(s.p, k, codec.decode(code));
      const bool a = triple_member(s, d), b = triple_member(t, d);
      if (a != b) return {false, d, a};
    }
  }
  throw Error(ErrorKind::StabilizationFailure, "triples differ but no separating atom was found");
}

inline MapVerdict is_partial_pure_mono(const GroupRef& m, const std::vector<Element>& b, const GroupRef& n,
                                       const std::vector<Element>& c) {
  if (b.size() != c.size()) throw Error(ErrorKind::ArityError, "tuples of different length");
  if (m->p != n->p) throw Error(ErrorKind::MixedPrimeError, "groups over different primes");
  return compare_triples(pp_type_triple(m, b), pp_type_triple(n, c));
}

inline constexpr std::uint64_t kDefaultCensusCap = 1u << 18;

/// Elements of exponent <= e: M[p^e] for finite-plus-Pruefer ambients.
inline std::vector<Element> bounded_elements(const GroupRef& g, int e, std::uint64_t cap) {
  std::vector<Element> gens;
  for (std::uint32_t s = 0; s < g->summands.size(); ++s) {
    const Summand& sm = g->summands[s];
    if (sm.atom.is_gen_pruefer() || sm.mult == kAleph0 || g->universal)
      throw Error(ErrorKind::InvalidArgument, "ambient must be finite plus finitely many Pruefer copies");
    for (Mult c = 0; c < sm.mult; ++c) {
      if (e == 0) continue;
      if (sm.atom.is_cyclic())
        gens.push_back(scale(ipow(g->p, std::max(sm.atom.param - e, 0)), cyclic_generator(g, {s, c})));
      else
        gens.push_back(pruefer_generator(g, {s, c}, e - 1));
    }
  }
  return subgroup_generated(g, gens, cap).elements;
}

/// Every triple realised by an n-tuple from M[p^m_bound], with the first
/// tuple (in pool order) realising it.
inline std::map<TypeTriple, std::vector<Element>> enumerate_type_witnesses(i64 p, std::size_t n, int m_bound,
                                                                           const GroupRef& ambient,
                                                                           std::uint64_t cap = scope_cap(kDefaultCensusCap)) {
  if (ambient->p != p) throw Error(ErrorKind::MixedPrimeError, "ambient prime differs");
  std::vector<Element> pool = bounded_elements(ambient, m_bound, cap);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count *= pool.size();
    if (count > cap) throw Error(ErrorKind::SearchSpaceTooLarge, "tuple count exceeds cap");
  }
  std::map<TypeTriple, std::vector<Element>> out;
  std::vector<std::size_t> idx(n, 0);
  for (std::uint64_t t = 0; t < count; ++t) {
    std::vector<Element> tuple;
    for (std::size_t i = 0; i < n; ++i) tuple.push_back(pool[idx[i]]);
    TypeTriple tr = pp_type_triple(ambient, tuple);
    out.try_emplace(std::move(tr), std::move(tuple));
    for (std::size_t i = 0; i < n && ++idx[i] == pool.size(); ++i) idx[i] = 0;
  }
  return out;
}

inline std::set<TypeTriple> enumerate_types(i64 p, std::size_t n, int m_bound, const GroupRef& ambient,
                                            std::uint64_t cap = scope_cap(kDefaultCensusCap)) {
  std::set<TypeTriple> out;
  for (auto& [t, _] : enumerate_type_witnesses(p, n, m_bound, ambient, cap)) out.insert(t);
  return out;
}

}  // namespace ppg
