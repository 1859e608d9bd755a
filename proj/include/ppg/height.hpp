#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "ppg/group.hpp"
#include "ppg/matrix.hpp"
#include "ppg/ordinal.hpp"

namespace ppg {

/// Least e with p^e * x == 0.
inline int order_exp(const Element& x) {
  const GroupSpec& g = x.spec();
  int best = 0;
  for (const auto& [c, v] : x.coords()) {
    const Atom a = g.atom_at(c.summand);
    int e = 0;
    switch (a.kind) {
      case Atom::Kind::Cyclic: e = a.param - vp(v.c[0], g.p); break;
      case Atom::Kind::Pruefer: e = v.exp; break;
      case Atom::Kind::GenPruefer: {
        std::optional<AtomValue> cur = v;
        while (cur) {
          cur = detail::scale_value(g, c, g.p, *cur);
          ++e;
        }
        break;
      }
    }
    best = std::max(best, e);
  }
  return best;
}

/// Height of a GenPruefer(n) value inside the truncation
/// H^(N) = <a_0..a_N | p^n a_0, p^m a_m - a_0>, N >= top index.
/// H^(N) is the direct sum of <b_m> ≅ Z(p^m) (m < N), b_m = a_m - p a_{m+1},
/// and <a_N> ≅ Z(p^(N+n)); heights are minimal valuations of the coordinates.
/// Returns nullopt for zero.
inline std::optional<int> truncation_height(const AtomValue& v, i64 p, int n, int N) {
  const int S = static_cast<int>(v.c.size()) - 1;
  if (N < S) throw Error(ErrorKind::InvalidArgument, "truncation below support");
  std::optional<int> h;
  auto consider = [&](i64 coord, int e) {
    const i64 q = ipow(p, e);
    const i64 r = mod(coord, q);
    if (r == 0) return;
    const int val = vp(r, p);
    if (!h || val < *h) h = val;
  };
  for (int j = 1; j < N; ++j) {
    const i64 q = ipow(p, j);
    i128 beta = 0;
    for (int m = 1; m <= std::min(j, S); ++m)
      beta = (beta + static_cast<i128>(v.c[static_cast<std::size_t>(m)]) * ipow(p, j - m)) % q;
    consider(static_cast<i64>(beta), j);
  }
  const i64 q = ipow(p, N + n);
  i128 alpha = static_cast<i128>(v.c[0]) * ipow(p, N) % q;
  for (int m = 1; m <= S; ++m) alpha = (alpha + static_cast<i128>(v.c[static_cast<std::size_t>(m)]) * ipow(p, N - m)) % q;
  consider(static_cast<i64>(alpha), N + n);
  return h;
}

/// Finite height of a GenPruefer value with some c_m != 0 (m >= 1), from the
/// stabilised truncation heights. Accepts once three consecutive truncations
/// agree and the value sits at most N - n - 2.
inline int gen_pruefer_finite_height(const AtomValue& v, i64 p, int n) {
  const int S = static_cast<int>(v.c.size()) - 1;
  const int start = S + n + 2;
  std::vector<int> seen;
  for (int N = start; N < start + 48; ++N) {
    auto h = truncation_height(v, p, n, N);
    if (!h) throw Error(ErrorKind::StabilizationFailure, "element vanished in a truncation");
    seen.push_back(*h);
    const std::size_t k = seen.size();
    if (k >= 3 && seen[k - 1] == seen[k - 2] && seen[k - 2] == seen[k - 3] && *h <= N - n - 2) return *h;
  }
  throw Error(ErrorKind::StabilizationFailure, "truncation heights did not stabilise");
}

inline Ordinal atom_height(const GroupSpec& g, Coord c, const AtomValue& v) {
  const Atom a = g.atom_at(c.summand);
  switch (a.kind) {
    case Atom::Kind::Cyclic: return Ordinal::finite(vp(v.c[0], g.p));
    case Atom::Kind::Pruefer: return Ordinal::infinity();
    case Atom::Kind::GenPruefer:
      if (v.c.size() == 1) return Ordinal::omega_plus(vp(v.c[0], g.p));
      return Ordinal::finite(gen_pruefer_finite_height(v, g.p, a.param));
  }
  return Ordinal::infinity();
}

/// h_M(x): the minimum of the coordinate heights; h(0) = inf.
inline Ordinal height(const Element& x) {
  Ordinal h = Ordinal::infinity();
  for (const auto& [c, v] : x.coords()) h = std::min(h, atom_height(x.spec(), c, v));
  return h;
}

inline bool in_p_alpha(const Element& x, Ordinal alpha) {
  if (x.is_zero()) return true;
  return height(x) >= alpha;
}

/// Spec of p^alpha M for alpha finite or w+j.
inline GroupSpec p_alpha_spec(const GroupSpec& m, Ordinal alpha) {
  if (alpha.is_infinity()) throw Error(ErrorKind::InvalidArgument, "alpha must be finite or w+j");
  const int j = alpha.offset();
  std::vector<Summand> out;
  bool univ = false;
  for (const auto& s : m.summands) {
    switch (s.atom.kind) {
      case Atom::Kind::Cyclic:
        if (alpha.is_finite() && s.atom.param > j) out.push_back({Atom::cyclic(s.atom.param - j), s.mult});
        break;
      case Atom::Kind::Pruefer: out.push_back(s); break;
      case Atom::Kind::GenPruefer:
        if (alpha.is_finite())
          out.push_back(s);
        else if (s.atom.param > j)
          out.push_back({Atom::cyclic(s.atom.param - j), s.mult});
        break;
    }
  }
  if (m.universal) {
    if (alpha.is_finite())
      univ = true;
    else
      out.push_back({Atom::pruefer(), kAleph0});
  }
  return GroupSpec(m.p, std::move(out), univ);
}

/// Dimension of the socle of a spec (each atom contributes one).
inline Mult socle_dim(const GroupSpec& g) {
  if (g.universal) return kAleph0;
  Mult d = 0;
  for (const auto& s : g.summands) d = mult_add(d, s.mult);
  return d;
}

/// (h(x), h(px), h(p^2 x), ...) through the first inf.
inline std::vector<Ordinal> ulm_sequence(const Element& x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "Ulm sequence of zero");
  std::vector<Ordinal> seq;
  Element y = x;
  for (;;) {
    Ordinal h = height(y);
    seq.push_back(h);
    if (h.is_infinity()) break;
    y = scale(x.spec().p, y);
  }
  return seq;
}

/// Least beta with p^beta M = p^(beta+1) M.
inline Ordinal group_length(const GroupSpec& g) {
  Ordinal t = Ordinal::finite(0);
  for (const auto& s : g.summands) {
    if (s.atom.is_cyclic()) t = std::max(t, Ordinal::finite(s.atom.param));
    if (s.atom.is_gen_pruefer()) t = std::max(t, Ordinal::omega_plus(s.atom.param));
  }
  if (g.universal) t = std::max(t, Ordinal::omega_plus(0));
  return t;
}

/// Like ulm_sequence, but runs until p^k x = 0 and gives nonzero divisible
/// elements the height group_length(M) instead of inf. Elements with equal
/// full sequences have equal orders.
inline std::vector<Ordinal> full_ulm_sequence(const Element& x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "Ulm sequence of zero");
  const Ordinal tau = group_length(x.spec());
  std::vector<Ordinal> seq;
  for (Element y = x; !y.is_zero(); y = scale(x.spec().p, y)) {
    const Ordinal h = height(y);
    seq.push_back(h.is_infinity() ? tau : h);
  }
  seq.push_back(Ordinal::infinity());
  return seq;
}

struct UlmData {
  std::map<int, Mult> finite;   // f_j beyond the uniform part
  Mult every_finite = 0;        // added to f_j for every finite j
  std::map<int, Mult> omega;    // f_{w+j}
  Mult divisible_rank = 0;

  Mult finite_at(int j) const {
    auto it = finite.find(j);
    return mult_add(it == finite.end() ? 0 : it->second, every_finite);
  }
  Mult omega_at(int j) const {
    auto it = omega.find(j);
    return it == omega.end() ? 0 : it->second;
  }
  bool operator==(const UlmData&) const = default;
};

/// Ulm invariants, additive over summands. H(w+n) contributes 1 at every
/// finite index (H(w+n)/p^w H ≅ ⊕_{m>=1} Z(p^m)) and 1 at w+(n-1).
inline UlmData ulm_invariants(const GroupSpec& g) {
  UlmData u;
  for (const auto& s : g.summands) {
    switch (s.atom.kind) {
      case Atom::Kind::Cyclic: u.finite[s.atom.param - 1] = mult_add(u.finite[s.atom.param - 1], s.mult); break;
      case Atom::Kind::Pruefer: u.divisible_rank = mult_add(u.divisible_rank, s.mult); break;
      case Atom::Kind::GenPruefer:
        u.every_finite = mult_add(u.every_finite, s.mult);
        u.omega[s.atom.param - 1] = mult_add(u.omega[s.atom.param - 1], s.mult);
        break;
    }
  }
  if (g.universal) {
    u.every_finite = kAleph0;
    u.divisible_rank = kAleph0;
  }
  return u;
}

/// Invariant-factor decomposition of the truncation H^(N) of H(w+n),
/// computed from the Smith form of the relation matrix, with the images of
/// a_0..a_N.
struct Truncation {
  GroupRef group;                 // finite cyclic spec
  std::vector<Element> images;    // images of a_0..a_N
  std::vector<int> factor_exps;   // per Smith slot, 0 for trivial slots
  std::vector<Coord> slot_coord;  // coordinate of each non-trivial slot
  IntMatrix V;                    // coordinate change: row vector x -> x V
  int modulus_exp = 0;
};

inline Truncation truncate(int n, int N, i64 p) {
  if (N < 1 || n < 1) throw Error(ErrorKind::InvalidArgument, "truncation needs n, N >= 1");
  const std::size_t d = static_cast<std::size_t>(N) + 1;
  IntMatrix R(d, d);
  R(0, 0) = ipow(p, n);
  for (int m = 1; m <= N; ++m) {
    R(static_cast<std::size_t>(m), static_cast<std::size_t>(m)) = ipow(p, m);
    R(static_cast<std::size_t>(m), 0) = -1;
  }
  const int E = N + n + 1;  // one above the exponent of H^(N)
  ModSmithForm s = mod_smith(R, p, E);
  Truncation t;
  t.modulus_exp = E;
  t.V = s.V;
  t.factor_exps.resize(d, 0);
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t i = 0; i < d; ++i) {
    const int v = i < s.val.size() ? s.val[i] : E;
    if (v >= E) throw Error(ErrorKind::StabilizationFailure, "truncation is not finite");
    t.factor_exps[i] = v;
    if (v > 0) order.push_back({v, i});
  }
  std::sort(order.begin(), order.end());
  std::vector<Summand> sums;
  for (const auto& [v, i] : order) sums.push_back({Atom::cyclic(v), 1});
  t.group = make_group(GroupSpec(p, sums));
  t.slot_coord.assign(d, Coord{});
  // canonical spec merges equal exponents: copy index counts within exponent
  std::map<int, std::uint64_t> copies;
  for (const auto& [v, i] : order) {
    std::uint32_t idx = 0;
    for (const auto& sm : t.group->summands) {
      if (sm.atom.param == v) break;
      ++idx;
    }
    t.slot_coord[i] = Coord{idx, copies[v]++};
  }
  for (std::size_t g = 0; g < d; ++g) {
    std::vector<std::pair<Coord, AtomValue>> raw;
    for (std::size_t i = 0; i < d; ++i)
      if (t.factor_exps[i] > 0) raw.push_back({t.slot_coord[i], cyclic_value(s.V(g, i))});
    t.images.push_back(make_element(t.group, raw));
  }
  return t;
}

/// Image in the truncation of a GenPruefer value with support <= N.
inline Element truncation_image(const Truncation& t, const AtomValue& v) {
  Element acc(t.group);
  for (std::size_t m = 0; m < v.c.size(); ++m) {
    if (m >= t.images.size()) throw Error(ErrorKind::InvalidArgument, "support exceeds truncation");
    acc = acc + scale(v.c[m], t.images[m]);
  }
  return acc;
}

}  // namespace ppg
