#pragma once

// Brute-force reference implementations over finite groups. Nothing here
// calls the library's element arithmetic or height code.

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "ppg/formula.hpp"
#include "ppg/group.hpp"

namespace ppg::oracle {

inline constexpr std::uint64_t kOracleCap = 1u << 20;

/// Dense bitset over element codes.
struct Bits {
  std::vector<std::uint64_t> w;
  std::size_t n = 0;

  Bits() = default;
  explicit Bits(std::size_t size) : w((size + 63) / 64, 0), n(size) {}
  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1u; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  bool meets_only_in_zero(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::uint64_t both = w[i] & o.w[i];
      if (i == 0) both &= ~std::uint64_t{1};
      if (both) return false;
    }
    return true;
  }
  auto operator<=>(const Bits&) const = default;
};

/// ⊕ Z(p^e_i); Pruefer copies become Z(p^K) proxies.
struct OGroup {
  i64 p = 2;
  std::vector<int> exps;
  std::vector<bool> proxy;
  std::map<Coord, std::size_t> slot;
  int proxy_exp = 0;

  std::size_t rank() const { return exps.size(); }
  i64 modulus(std::size_t i) const { return ipow(p, exps[i]); }
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < rank(); ++i) o *= static_cast<std::uint64_t>(modulus(i));
    return o;
  }
  std::uint64_t encode(const std::vector<i64>& x) const {
    std::uint64_t c = 0;
    for (std::size_t i = rank(); i-- > 0;) c = c * static_cast<std::uint64_t>(modulus(i)) + static_cast<std::uint64_t>(x[i]);
    return c;
  }
  std::vector<i64> decode(std::uint64_t c) const {
    std::vector<i64> x(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      x[i] = static_cast<i64>(c % static_cast<std::uint64_t>(modulus(i)));
      c /= static_cast<std::uint64_t>(modulus(i));
    }
    return x;
  }
  std::vector<i64> add(std::vector<i64> x, const std::vector<i64>& y) const {
    for (std::size_t i = 0; i < rank(); ++i) x[i] = mod(x[i] + y[i], modulus(i));
    return x;
  }
  std::vector<i64> smul(i64 z, std::vector<i64> x) const {
    for (std::size_t i = 0; i < rank(); ++i) x[i] = mulmod(mod(z, modulus(i)), x[i], modulus(i));
    return x;
  }
  std::vector<i64> zero() const { return std::vector<i64>(rank(), 0); }
  std::vector<i64> combo(const std::vector<i64>& r, const std::vector<std::vector<i64>>& xs) const {
    std::vector<i64> acc = zero();
    for (std::size_t i = 0; i < xs.size(); ++i) acc = add(acc, smul(r[i], xs[i]));
    return acc;
  }
};

inline OGroup oracle_group(const GroupSpec& g, int proxy_exp = 0) {
  if (g.universal) throw Error(ErrorKind::ScopeTooLarge, "oracle needs an explicit finite spec");
  OGroup o;
  o.p = g.p;
  o.proxy_exp = proxy_exp;
  for (std::uint32_t s = 0; s < g.summands.size(); ++s) {
    const Summand& sm = g.summands[s];
    if (sm.mult == kAleph0 || sm.atom.is_gen_pruefer())
      throw Error(ErrorKind::ScopeTooLarge, "oracle needs finite multiplicities and no GenPruefer atoms");
    if (sm.atom.is_pruefer() && proxy_exp <= 0) throw Error(ErrorKind::InvalidArgument, "Pruefer atom needs a proxy exponent");
    for (Mult c = 0; c < sm.mult; ++c) {
      o.slot[{s, c}] = o.exps.size();
      o.exps.push_back(sm.atom.is_pruefer() ? proxy_exp : sm.atom.param);
      o.proxy.push_back(sm.atom.is_pruefer());
    }
  }
  return o;
}

/// Reads a library element into proxy coordinates: a/p^k ↦ a·p^(K-k).
inline std::vector<i64> to_vec(const OGroup& o, const Element& x) {
  std::vector<i64> v = o.zero();
  for (const auto& [c, val] : x.coords()) {
    const std::size_t i = o.slot.at(c);
    if (o.proxy[i]) {
      if (val.exp > o.proxy_exp) throw Error(ErrorKind::ScopeTooLarge, "Pruefer value deeper than proxy");
      v[i] = mod(val.c[0] * ipow(o.p, o.proxy_exp - val.exp), o.modulus(i));
    } else {
      v[i] = val.c[0];
    }
  }
  return v;
}

inline Element from_vec(const OGroup& o, const GroupRef& g, const std::vector<i64>& v) {
  std::vector<std::pair<Coord, AtomValue>> raw;
  for (const auto& [c, i] : o.slot) {
    if (v[i] == 0) continue;
    raw.push_back({c, o.proxy[i] ? pruefer_value(v[i], o.proxy_exp) : cyclic_value(v[i])});
  }
  return make_element(g, raw);
}

inline void check_size(const OGroup& o, std::uint64_t cap) {
  const double bits = [&] {
    double b = 0;
    for (std::size_t i = 0; i < o.rank(); ++i) b += o.exps[i] * std::log2(static_cast<double>(o.p));
    return b;
  }();
  if (bits > 62 || o.order() > cap) throw Error(ErrorKind::ScopeTooLarge, "group too large for the oracle");
}

/// p^k G as a bitset over codes.
inline Bits multiples(const OGroup& o, int k, std::uint64_t cap = scope_cap(kOracleCap)) {
  check_size(o, cap);
  Bits b(o.order());
  const i64 z = ipow(o.p, k);
  for (std::uint64_t c = 0; c < o.order(); ++c) b.set(o.encode(o.smul(z, o.decode(c))));
  return b;
}

/// Largest k with x ∈ p^k G, found by direct search; Infinity for zero.
inline Ordinal oracle_height(const OGroup& o, const std::vector<i64>& x, std::uint64_t cap = scope_cap(kOracleCap)) {
  if (x == o.zero()) return Ordinal::infinity();
  const std::uint64_t code = o.encode(x);
  int k = 0;
  while (multiples(o, k + 1, cap).test(code)) ++k;
  return Ordinal::finite(k);
}


/// Truth of ∃w̄ (A v̄ + B w̄ ≐ 0) by trying every witness tuple.
inline bool oracle_pp_eval(const OGroup& o, const Quantified& q, const std::vector<std::vector<i64>>& a,
                           std::uint64_t cap = scope_cap(kOracleCap)) {
  check_size(o, cap);
  if (a.size() != q.A.cols) throw Error(ErrorKind::ArityError, "tuple length does not match formula arity");
  const std::size_t l = q.B.cols;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < l; ++k) {
    total *= o.order();
    if (total > cap) throw Error(ErrorKind::ScopeTooLarge, "witness space exceeds cap");
  }
  std::vector<std::vector<i64>> fixed(q.A.rows);
  for (std::size_t j = 0; j < q.A.rows; ++j) {
    std::vector<i64> row(q.A.cols);
    for (std::size_t i = 0; i < q.A.cols; ++i) row[i] = q.A(j, i);
    fixed[j] = o.combo(row, a);
  }
  std::vector<std::vector<i64>> w(l);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (std::size_t k = 0; k < l; ++k) {
      w[k] = o.decode(rest % o.order());
      rest /= o.order();
    }
    bool ok = true;
    for (std::size_t j = 0; j < q.A.rows && ok; ++j) {
      std::vector<i64> row(l);
      for (std::size_t k = 0; k < l; ++k) row[k] = q.B(j, k);
      ok = o.add(fixed[j], o.combo(row, w)) == o.zero();
    }
    if (ok) return true;
  }
  return false;
}

/// Results of every ZERO atom and every p^k | atom (k ≤ depth) with
/// coefficients in [0, p^m)^n, in a fixed order.
inline std::vector<bool> battery(const OGroup& o, const std::vector<std::vector<i64>>& a, int m, int depth,
                                 const std::vector<Bits>& mult_sets) {
  const std::size_t n = a.size();
  const i64 q = ipow(o.p, m);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(q);
  std::vector<bool> out;
  out.reserve(total * static_cast<std::size_t>(depth + 2));
  std::vector<i64> r(n, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = static_cast<i64>(rest % static_cast<std::uint64_t>(q));
      rest /= static_cast<std::uint64_t>(q);
    }
    const std::vector<i64> x = o.combo(r, a);
    const std::uint64_t code = o.encode(x);
    out.push_back(x == o.zero());
    for (int k = 0; k <= depth; ++k) out.push_back(mult_sets[static_cast<std::size_t>(k)].test(code));
  }
  return out;
}

inline std::vector<Bits> multiple_sets(const OGroup& o, int depth, std::uint64_t cap = scope_cap(kOracleCap)) {
  std::vector<Bits> sets;
  for (int k = 0; k <= depth; ++k) sets.push_back(multiples(o, k, cap));
  return sets;
}

/// Subgroup generated by a set of elements together with an existing subgroup.
inline Bits close_subgroup(const OGroup& o, Bits s, const std::vector<std::uint64_t>& extra) {
  std::vector<std::uint64_t> frontier;
  for (std::uint64_t c = 0; c < o.order(); ++c)
    if (s.test(c)) frontier.push_back(c);
  if (frontier.empty()) {
    s.set(0);
    frontier.push_back(0);
  }
  std::vector<std::uint64_t> gens = extra;
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t c : frontier)
      for (std::uint64_t g : gens) {
        std::uint64_t d = o.encode(o.add(o.decode(c), o.decode(g)));
        if (!s.test(d)) {
          s.set(d);
          next.push_back(d);
        }
      }
    frontier = std::move(next);
  }
  return s;
}

inline Bits generated(const OGroup& o, const std::vector<std::vector<i64>>& gens) {
  std::vector<std::uint64_t> codes;
  for (const auto& g : gens) codes.push_back(o.encode(g));
  return close_subgroup(o, Bits(o.order()), codes);
}

/// Every subgroup, by adjoining one element at a time starting from {0}.
inline std::vector<Bits> all_subgroups(const OGroup& o, std::uint64_t cap = scope_cap(kOracleCap)) {
  check_size(o, cap);
  std::set<Bits> seen;
  Bits zero(o.order());
  zero.set(0);
  std::vector<Bits> frontier{zero};
  seen.insert(zero);
  while (!frontier.empty()) {
    std::vector<Bits> next;
    for (const Bits& s : frontier)
      for (std::uint64_t c = 0; c < o.order(); ++c) {
        if (s.test(c)) continue;
        Bits t = close_subgroup(o, s, {c});
        if (seen.insert(t).second) {
          if (seen.size() > cap) throw Error(ErrorKind::ScopeTooLarge, "too many subgroups");
          next.push_back(std::move(t));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

struct SummandPair {
  Bits summand, complement;
};

/// Every internal decomposition G = S ⊕ T with B ≤ S (one complement per S).
inline std::vector<SummandPair> oracle_summands(const OGroup& o, const Bits& b, std::uint64_t cap = scope_cap(kOracleCap)) {
  const std::vector<Bits> subs = all_subgroups(o, cap);
  const std::size_t total = o.order();
  std::vector<SummandPair> out;
  for (const Bits& s : subs) {
    if (!b.subset_of(s)) continue;
    const std::size_t ss = s.count();
    for (const Bits& t : subs) {
      if (ss * t.count() != total) continue;
      if (!s.meets_only_in_zero(t)) continue;
      out.push_back({s, t});
      break;
    }
  }
  return out;
}

/// Images of the standard generators define an automorphism iff each image is
/// killed by the generator's order and the images generate G.
inline bool is_automorphism(const OGroup& o, const std::vector<std::vector<i64>>& images) {
  if (images.size() != o.rank()) return false;
  for (std::size_t i = 0; i < o.rank(); ++i)
    if (o.smul(o.modulus(i), images[i]) != o.zero()) return false;
  return generated(o, images).count() == o.order();
}

/// Calls f on every automorphism (as generator images) until f returns false.
inline void oracle_automorphisms(const OGroup& o, const std::function<bool(const std::vector<std::vector<i64>>&)>& f,
                                 std::uint64_t cap = scope_cap(kOracleCap)) {
  check_size(o, cap);
  std::vector<std::vector<std::vector<i64>>> candidates(o.rank());
  for (std::size_t i = 0; i < o.rank(); ++i)
    for (std::uint64_t c = 0; c < o.order(); ++c) {
      auto x = o.decode(c);
      if (o.smul(o.modulus(i), x) == o.zero()) candidates[i].push_back(std::move(x));
    }
  std::uint64_t space = 1;
  for (const auto& c : candidates) {
    space *= c.size();
    if (space > cap * 64) throw Error(ErrorKind::ScopeTooLarge, "automorphism search space exceeds cap");
  }
  std::vector<std::size_t> idx(o.rank(), 0);
  std::vector<std::vector<i64>> images(o.rank());
  for (std::uint64_t t = 0; t < space; ++t) {
    for (std::size_t i = 0; i < o.rank(); ++i) images[i] = candidates[i][idx[i]];
    if (generated(o, images).count() == o.order() && !f(images)) return;
    for (std::size_t i = 0; i < o.rank() && ++idx[i] == candidates[i].size(); ++i) idx[i] = 0;
  }
}

/// Truncation H^(N) of H(w+n) as explicit normal forms c_0 < p^n,
/// c_m < p^m, with its own carry rule p^m a_m = a_0.
struct OTruncation {
  i64 p;
  int n, N;

  std::vector<i64> normalize(std::vector<i64> c) const {
    for (int m = N; m >= 1; --m) {
      const i64 q = ipow(p, m);
      const i64 carry = (c[static_cast<std::size_t>(m)] - mod(c[static_cast<std::size_t>(m)], q)) / q;
      c[static_cast<std::size_t>(m)] = mod(c[static_cast<std::size_t>(m)], q);
      c[0] += carry;
    }
    c[0] = mod(c[0], ipow(p, n));
    return c;
  }
  std::vector<std::vector<i64>> elements() const {
    std::vector<std::vector<i64>> out{std::vector<i64>(static_cast<std::size_t>(N) + 1, 0)};
    for (int m = 0; m <= N; ++m) {
      const i64 bound = ipow(p, m == 0 ? n : m);
      std::vector<std::vector<i64>> next;
      for (const auto& e : out)
        for (i64 v = 0; v < bound; ++v) {
          auto f = e;
          f[static_cast<std::size_t>(m)] = v;
          next.push_back(std::move(f));
        }
      out = std::move(next);
    }
    return out;
  }
  std::vector<i64> smul(i64 z, std::vector<i64> c) const {
    for (auto& v : c) v *= z;
    return normalize(std::move(c));
  }
};

/// Height of c in H^(N), by testing membership in p^k H^(N) for growing k.
inline Ordinal oracle_truncation_height(i64 p, int n, int N, std::vector<i64> c) {
  OTruncation t{p, n, N};
  c.resize(static_cast<std::size_t>(N) + 1, 0);
  c = t.normalize(std::move(c));
  if (std::all_of(c.begin(), c.end(), [](i64 v) { return v == 0; })) return Ordinal::infinity();
  const auto elems = t.elements();
  int k = 0;
  for (;;) {
    const i64 z = ipow(p, k + 1);
    bool hit = false;
    for (const auto& y : elems)
      if (t.smul(z, y) == c) {
        hit = true;
        break;
      }
    if (!hit) return Ordinal::finite(k);
    ++k;
  }
}

/// x ∈ p^k H^(N) by exhaustive search for y = Σ d_i a_i with p^k y = x. Under
/// the carry rule, coordinate i >= 1 of p^k y is p^k d_i mod p^i and sends
/// floor(p^k d_i / p^i) into c_0, so each d_i is searched on its own and the
/// carries are combined as a reachable set mod p^n.
inline bool truncation_divisible(i64 p, int n, int N, const std::vector<i64>& x, int k,
                                 std::uint64_t cap = scope_cap(kOracleCap)) {
  const i64 qn = ipow(p, n);
  std::set<i64> reach{0};
  for (int i = 1; i <= N; ++i) {
    const i64 q = ipow(p, i);
    if (static_cast<std::uint64_t>(q) > cap) throw Error(ErrorKind::ScopeTooLarge, "truncation coordinate exceeds cap");
    const i64 xi = i < static_cast<int>(x.size()) ? x[static_cast<std::size_t>(i)] : 0;
    std::set<i64> carries;
    for (i64 d = 0; d < q; ++d) {
      if (k >= i) {
        if (xi == 0) carries.insert(mod(static_cast<i128>(d) * ipow(p, std::min(k - i, n)), qn));
        continue;
      }
      const i128 v = static_cast<i128>(d) * ipow(p, k);
      if (mod(v, q) == xi) carries.insert(mod(v / q, qn));
    }
    if (carries.empty()) return false;
    std::set<i64> next;
    for (i64 r : reach)
      for (i64 c : carries) next.insert(mod(r + c, qn));
    reach = std::move(next);
  }
  for (i64 r : reach)
    for (i64 d0 = 0; d0 < qn; ++d0)
      if (mod(static_cast<i128>(d0) * ipow(p, std::min(k, n)) + r, qn) == mod(x[0], qn)) return true;
  return false;
}

/// x ∈ p^k M, coordinate by coordinate from the raw normal forms: cyclic
/// coordinates by search in Z(p^e), Pruefer coordinates always, GenPruefer
/// coordinates in the truncation H^(S+k).
inline bool oracle_divisible(const GroupSpec& g, const std::vector<std::pair<Coord, AtomValue>>& coords, int k,
                             std::uint64_t cap = scope_cap(kOracleCap)) {
  if (k <= 0) return true;
  for (const auto& [c, v] : coords) {
    const Atom a = g.atom_at(c.summand);
    if (a.is_pruefer()) continue;
    if (a.is_cyclic()) {
      const i64 q = ipow(g.p, a.param);
      bool hit = false;
      for (i64 y = 0; y < q && !hit; ++y) hit = mod(static_cast<i128>(y) * ipow(g.p, std::min(k, a.param)), q) == mod(v.c[0], q);
      if (!hit) return false;
      continue;
    }
    const int S = static_cast<int>(v.c.size()) - 1;
    if (S == 0) continue;  // multiples of a_0 = p^m a_m for every m
    const int N = S + k;
    std::vector<i64> x(v.c.begin(), v.c.end());
    x.resize(static_cast<std::size_t>(N) + 1, 0);
    x = OTruncation{g.p, a.param, N}.normalize(std::move(x));
    if (!truncation_divisible(g.p, a.param, N, x, k, cap)) return false;
  }
  return true;
}

}  // namespace ppg::oracle
