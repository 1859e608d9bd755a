#pragma once

#include <cmath>

#include "ppg/matrix.hpp"
#include "ppg/subgroup.hpp"
#include "ppg/type_triple.hpp"

namespace ppg {

/// A direct summand S of D containing B, with B's generators rewritten in S.
struct SummandResult {
  GroupRef hull;                       // spec of S
  std::vector<Element> embed;          // images of B's generators in hull
  std::vector<Element> basis;          // S's generators as elements of D, in hull coordinate order
  std::vector<Element> complement;     // split-off generators (proxy level for Pruefer)
  std::vector<int> complement_exps;    // 0 marks a Pruefer complement summand
  int proxy_exp = 0;
};

namespace detail {

struct Slot {
  Coord coord;
  int exp = 0;
  bool proxy = false;
};

/// Working basis of D ⊕ (Pruefer copies cut down to Z(p^K)).
struct SplitState {
  i64 p = 2;
  int K = 0;
  std::vector<Slot> slots;
  std::vector<std::vector<i64>> basis;  // basis[i] in slot coordinates
  std::vector<int> exps;
  std::vector<bool> proxy;
  std::vector<bool> active;
  std::vector<std::vector<i64>> beta;   // beta[b][i]: coordinate of B generator b on basis i

  i64 slot_mod(std::size_t s) const { return ipow(p, slots[s].exp); }
};

inline SplitState make_split_state(const GroupRef& d, const std::vector<Element>& gens) {
  SplitState st;
  st.p = d->p;
  int maxfin = 0, E = 0;
  for (std::uint32_t s = 0; s < d->summands.size(); ++s) {
    const Summand& sm = d->summands[s];
    if (sm.atom.is_gen_pruefer() || sm.mult == kAleph0 || d->universal)
      throw Error(ErrorKind::InvalidArgument, "summand search needs finitely many Cyclic and Pruefer copies");
    if (sm.atom.is_cyclic()) maxfin = std::max(maxfin, sm.atom.param);
  }
  for (const auto& g : gens) E = std::max(E, order_exp(g));
  st.K = maxfin + 2 * E + 2;
  if (static_cast<double>(st.K) * std::log2(static_cast<double>(st.p)) >= 62)
    throw Error(ErrorKind::Overflow, "Pruefer proxy exponent too large");
  for (std::uint32_t s = 0; s < d->summands.size(); ++s) {
    const Summand& sm = d->summands[s];
    for (Mult c = 0; c < sm.mult; ++c)
      st.slots.push_back({{s, c}, sm.atom.is_pruefer() ? st.K : sm.atom.param, sm.atom.is_pruefer()});
  }
  const std::size_t r = st.slots.size();
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<i64> e(r, 0);
    e[i] = 1;
    st.basis.push_back(std::move(e));
    st.exps.push_back(st.slots[i].exp);
    st.proxy.push_back(st.slots[i].proxy);
    st.active.push_back(true);
  }
  for (const auto& g : gens) {
    std::vector<i64> b(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      const AtomValue* v = g.at(st.slots[i].coord);
      if (!v) continue;
      b[i] = st.slots[i].proxy ? v->c[0] * ipow(st.p, st.K - v->exp) : v->c[0];
    }
    st.beta.push_back(std::move(b));
  }
  return st;
}

/// Tries to split basis element j off with B inside the complement.
inline bool try_split(SplitState& st, std::size_t j) {
  const int k = st.exps[j];
  const i64 q = ipow(st.p, k);
  std::vector<std::size_t> unknowns;
  std::vector<i64> factor;
  for (std::size_t i = 0; i < st.basis.size(); ++i) {
    if (!st.active[i] || i == j) continue;
    if (st.proxy[i] && !st.proxy[j]) continue;  // Hom(Z(p^inf), Z(p^k)) = 0
    unknowns.push_back(i);
    factor.push_back(ipow(st.p, std::max(k - st.exps[i], 0)));
  }
  IntMatrix A(st.beta.size(), unknowns.size());
  std::vector<i64> rhs(st.beta.size());
  for (std::size_t b = 0; b < st.beta.size(); ++b) {
    for (std::size_t u = 0; u < unknowns.size(); ++u) A(b, u) = mulmod(mod(st.beta[b][unknowns[u]], q), factor[u], q);
    rhs[b] = mod(-st.beta[b][j], q);
  }
  auto sol = solve_mod(A, rhs, st.p, k);
  if (!sol) return false;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const std::size_t i = unknowns[u];
    const i64 c = mulmod(factor[u], (*sol)[u], q);
    if (c == 0) continue;
    for (std::size_t s = 0; s < st.slots.size(); ++s)
      st.basis[i][s] = mod(st.basis[i][s] - static_cast<i128>(c) * st.basis[j][s], st.slot_mod(s));
  }
  st.active[j] = false;
  return true;
}

inline Element basis_element(const GroupRef& d, const SplitState& st, const std::vector<i64>& v) {
  std::vector<std::pair<Coord, AtomValue>> raw;
  for (std::size_t s = 0; s < st.slots.size(); ++s)
    if (v[s] != 0) raw.push_back({st.slots[s].coord, st.slots[s].proxy ? pruefer_value(v[s], st.K) : cyclic_value(v[s])});
  return make_element(d, raw);
}

}  // namespace detail

/// Splits cyclic summands off D one at a time while B stays in the
/// complement. Z(p^k) = <g_j> splits off with B in the complement iff some
/// π: D → Z(p^k) kills B and sends g_j to a unit.
inline SummandResult minimal_summand(const GroupRef& d, const FiniteSubgroup& b) {
  std::vector<Element> gens = b.generators;
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Element& x) { return x.is_zero(); }), gens.end());
  detail::SplitState st = detail::make_split_state(d, gens);
  SummandResult out;
  out.proxy_exp = st.K;
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < st.basis.size(); ++i)
      if (st.active[i]) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return st.exps[x] < st.exps[y]; });
    for (std::size_t j : order) {
      if (detail::try_split(st, j)) {
        out.complement.push_back(detail::basis_element(d, st, st.basis[j]));
        out.complement_exps.push_back(st.proxy[j] ? 0 : st.exps[j]);
        progress = true;
        break;
      }
    }
  }
  // hull spec: finite exponents ascending, then Pruefer copies
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < st.basis.size(); ++i)
    if (st.active[i]) keep.push_back(i);
  std::stable_sort(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) {
    return std::pair(st.proxy[x], st.exps[x]) < std::pair(st.proxy[y], st.exps[y]);
  });
  std::vector<Summand> sums;
  for (std::size_t i : keep) sums.push_back({st.proxy[i] ? Atom::pruefer() : Atom::cyclic(st.exps[i]), 1});
  out.hull = make_group(GroupSpec(d->p, sums));
  std::vector<Coord> hull_coord;
  {
    std::map<Atom, std::uint64_t> next_copy;
    for (std::size_t i : keep) {
      const Atom a = st.proxy[i] ? Atom::pruefer() : Atom::cyclic(st.exps[i]);
      std::uint32_t idx = 0;
      while (out.hull->summands[idx].atom != a) ++idx;
      hull_coord.push_back({idx, next_copy[a]++});
    }
  }
  for (std::size_t i : keep) out.basis.push_back(detail::basis_element(d, st, st.basis[i]));
  std::size_t bi = 0;
  for (const auto& g : b.generators) {
    if (g.is_zero()) {
      out.embed.push_back(Element(out.hull));
      continue;
    }
    std::vector<std::pair<Coord, AtomValue>> raw;
    for (std::size_t u = 0; u < keep.size(); ++u) {
      const i64 v = st.beta[bi][keep[u]];
      if (v == 0) continue;
      raw.push_back({hull_coord[u], st.proxy[keep[u]] ? pruefer_value(v, st.K) : cyclic_value(v)});
    }
    out.embed.push_back(make_element(out.hull, raw));
    ++bi;
  }
  return out;
}

/// φ(u) = p^k | p^z u - b, or p^z u ≐ b when zero is set.
struct LinkFormula {
  int z_exp = 0;
  bool zero = false;
  int k = 0;
  Element b;
};

/// First linking formula: z = 1, p, p^2, ... while z·a != 0; at each z the
/// equality form first, then p^k | for k = 1..bound; b in B's element order.
inline std::optional<LinkFormula> check_linked(const FiniteSubgroup& b, const Element& a, int bound) {
  for (int z = 0;; ++z) {
    const Element za = scale(ipow(a.spec().p, z), a);
    if (za.is_zero()) return std::nullopt;
    for (const auto& x : b.elements)
      if (!x.is_zero() && za == x) return LinkFormula{z, true, 0, x};
    for (int k = 1; k <= bound; ++k)
      for (const auto& x : b.elements)
        if (in_p_alpha(za - x, Ordinal::finite(k)) && !in_p_alpha(-x, Ordinal::finite(k))) return LinkFormula{z, false, k, x};
  }
}

inline int default_link_bound(const GroupSpec& d, const FiniteSubgroup& b) {
  int e = 0;
  for (const auto& s : d.summands)
    if (s.atom.is_cyclic()) e = std::max(e, s.atom.param);
  int eb = 0;
  for (const auto& x : b.generators) eb = std::max(eb, order_exp(x));
  return e + eb + 1;
}

}  // namespace ppg
