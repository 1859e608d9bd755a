#pragma once

#include "ppg/hull.hpp"

namespace ppg {

struct HomogeneityVerdict {
  enum class Kind { CaseA, CaseB, No };
  Kind kind = Kind::CaseA;
  int n = 0;                       // CaseB length parameter
  std::optional<Element> a, b;     // No: same triple, separated by p^alpha
  Ordinal alpha;
};

/// Socle witnesses for No: p^(n-1) a_0 of a GenPruefer(n) copy against a
/// divisible socle element, or against p^(n'-1) a_0 of a longer copy.
inline HomogeneityVerdict classify_homogeneous(const GroupRef& m) {
  HomogeneityVerdict v;
  std::vector<std::uint32_t> gp;
  std::optional<std::uint32_t> pr;
  for (std::uint32_t s = 0; s < m->summands.size(); ++s) {
    if (m->summands[s].atom.is_gen_pruefer()) gp.push_back(s);
    if (m->summands[s].atom.is_pruefer()) pr = s;
  }
  if (gp.empty()) return v;
  const i64 p = m->p;
  auto socle_top = [&](std::uint32_t s) {
    const int n = m->summands[s].atom.param;
    return scale(ipow(p, n - 1), gen_pruefer_generator(m, {s, 0}, 0));
  };
  const int n0 = m->summands[gp.front()].atom.param;
  if (!pr && !m->universal) {
    const bool same = std::all_of(gp.begin(), gp.end(), [&](std::uint32_t s) { return m->summands[s].atom.param == n0; });
    if (same) {
      v.kind = HomogeneityVerdict::Kind::CaseB;
      v.n = n0;
      return v;
    }
  }
  v.kind = HomogeneityVerdict::Kind::No;
  v.a = socle_top(gp.front());
  v.alpha = Ordinal::omega_plus(n0);
  if (pr || m->universal) {
    const std::uint32_t ps = pr ? *pr : static_cast<std::uint32_t>(m->universal_pruefer_index());
    v.b = pruefer_generator(m, {ps, 0}, 0);
  } else {
    v.b = socle_top(gp.back());
  }
  return v;
}

/// Equal triples and differing p^alpha membership.
inline bool validate_no_witness(const GroupRef& m, const HomogeneityVerdict& v) {
  if (v.kind != HomogeneityVerdict::Kind::No || !v.a || !v.b) return false;
  return pp_type_triple(m, {*v.a}) == pp_type_triple(m, {*v.b}) && in_p_alpha(*v.a, v.alpha) != in_p_alpha(*v.b, v.alpha);
}

/// p^(w+n) M = 0 and p^w M[p] = p^(w+n-1) M[p] != 0, recomputed from the spec.
inline bool validate_case_b(const GroupSpec& m, int n) {
  const GroupSpec top = p_alpha_spec(m, Ordinal::omega_plus(n));
  if (!top.summands.empty() || top.universal) return false;
  const Mult s0 = socle_dim(p_alpha_spec(m, Ordinal::omega_plus(0)));
  const Mult s1 = socle_dim(p_alpha_spec(m, Ordinal::omega_plus(n - 1)));
  return s0 != 0 && s0 == s1;
}

class NotPureError : public Error {
 public:
  explicit NotPureError(MapVerdict v, const std::string& what = "assignment is not a partial pure isomorphism")
      : Error(ErrorKind::NotPure, what), verdict_(std::move(v)) {}
  const MapVerdict& verdict() const { return verdict_; }

 private:
  MapVerdict verdict_;
};

inline bool is_height_preserving(const GroupRef& m, const std::vector<Element>& b, const std::vector<Element>& c) {
  const TypeTriple t = pp_type_triple(m, b);
  if (t != pp_type_triple(m, c)) throw Error(ErrorKind::NotAPureIso, "assignment is not a partial pure isomorphism");
  CoeffCodec codec{ipow(m->p, t.m), b.size()};
  for (std::uint64_t code = 0; code < codec.size(); ++code) {
    const auto r = codec.decode(code);
    if (height(combination(m, r, b)) != height(combination(m, r, c))) return false;
  }
  return true;
}

namespace detail {

/// Solves Σ_s A[r][s]·z_s ≡ rhs_r (mod p^row_exp[r]) with z_s restricted to
/// factor[s]·Z; returns the z_s (mod p^E, E the largest row exponent).
inline std::optional<std::vector<i64>> solve_mixed(i64 p, const std::vector<int>& row_exp,
                                                   const std::vector<std::vector<i64>>& A,
                                                   const std::vector<i64>& factor, const std::vector<i64>& rhs) {
  const std::size_t rows = row_exp.size(), cols = factor.size();
  int E = 1;
  for (int e : row_exp) E = std::max(E, e);
  const i64 q = ipow(p, E);
  IntMatrix M(rows, cols);
  std::vector<i64> b(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const i64 lift = ipow(p, E - row_exp[r]);
    for (std::size_t c = 0; c < cols; ++c) M(r, c) = mulmod(mulmod(mod(A[r][c], q), lift, q), mod(factor[c], q), q);
    b[r] = mulmod(mod(rhs[r], q), lift, q);
  }
  auto sol = solve_mod(M, b, p, E);
  if (!sol) return std::nullopt;
  for (std::size_t c = 0; c < cols; ++c) (*sol)[c] = mulmod((*sol)[c], mod(factor[c], q), q);
  return sol;
}

/// Coordinates of a Cyclic/Pruefer group: proxies Z(p^K) for Pruefer copies.
struct SlotFrame {
  i64 p = 2;
  int K = 0;
  std::vector<Coord> coord;
  std::vector<int> exp;
  std::vector<bool> proxy;

  std::size_t size() const { return coord.size(); }
  i64 modulus(std::size_t s) const { return ipow(p, exp[s]); }

  std::vector<i64> read(const Element& x) const {
    std::vector<i64> v(size(), 0);
    for (std::size_t s = 0; s < size(); ++s)
      if (const AtomValue* a = x.at(coord[s])) v[s] = proxy[s] ? mod(a->c[0] * ipow(p, K - a->exp), modulus(s)) : a->c[0];
    return v;
  }
  Element write(const GroupRef& g, const std::map<Coord, Coord>& place, const std::vector<i64>& v) const {
    std::vector<std::pair<Coord, AtomValue>> raw;
    for (std::size_t s = 0; s < size(); ++s)
      if (mod(v[s], modulus(s)) != 0)
        raw.push_back({place.at(coord[s]), proxy[s] ? pruefer_value(mod(v[s], modulus(s)), K) : cyclic_value(mod(v[s], modulus(s)))});
    return make_element(g, raw);
  }
  /// Allowed image multiples: a map sending an order-p^e_from generator into slot `to`.
  i64 hom_factor(std::size_t from_exp, bool from_proxy, std::size_t to) const {
    if (from_proxy && !proxy[to]) return 0;
    return ipow(p, std::max(exp[to] - static_cast<int>(from_exp), 0));
  }
};

inline SlotFrame frame_of(const GroupRef& g, int K) {
  SlotFrame f;
  f.p = g->p;
  f.K = K;
  for (std::uint32_t s = 0; s < g->summands.size(); ++s) {
    const Summand& sm = g->summands[s];
    for (Mult c = 0; c < sm.mult; ++c) {
      f.coord.push_back({s, c});
      f.exp.push_back(sm.atom.is_pruefer() ? K : sm.atom.param);
      f.proxy.push_back(sm.atom.is_pruefer());
    }
  }
  return f;
}

/// Coefficients λ with Σ λ_i v_i = w in the frame.
inline std::optional<std::vector<i64>> express(const SlotFrame& f, const std::vector<std::vector<i64>>& vs,
                                               const std::vector<i64>& w) {
  std::vector<std::vector<i64>> A(f.size(), std::vector<i64>(vs.size()));
  for (std::size_t r = 0; r < f.size(); ++r)
    for (std::size_t i = 0; i < vs.size(); ++i) A[r][i] = vs[i][r];
  return solve_mixed(f.p, f.exp, A, std::vector<i64>(vs.size(), 1), w);
}

inline std::vector<i64> combine(const SlotFrame& f, const std::vector<std::vector<i64>>& vs, const std::vector<i64>& lambda) {
  std::vector<i64> out(f.size(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t s = 0; s < f.size(); ++s)
      out[s] = mod(out[s] + static_cast<i128>(lambda[i]) * vs[i][s], f.modulus(s));
  return out;
}

}  // namespace detail

/// Forward and inverse maps agreeing with the identity off the touched subsum.
/// Pruefer blocks are exact on elements of order <= p^precision.
struct AutomorphismWitness {
  GroupRef group;
  GenRuleMap forward, inverse;
  std::vector<Element> domain, image;
  int precision = 0;
};

namespace detail {

/// Automorphism of the subsum frame given by images of the standard
/// generators (columns), as Explicit rules on the ambient group.
inline GenRuleMap explicit_map(const GroupRef& m, const SlotFrame& f, const std::map<Coord, Coord>& place,
                               const std::vector<std::vector<i64>>& cols) {
  std::map<Coord, Coord> back;
  for (const auto& [a, s] : place) back[s] = a;
  GenRuleMap g{m, m, std::vector<Rule>(m->summands.size(), Explicit{})};
  for (std::size_t t = 0; t < f.size(); ++t) {
    const Coord ambient = back.at(f.coord[t]);
    auto& ex = std::get<Explicit>(g.rules[ambient.summand]);
    if (f.proxy[t]) {
      std::vector<std::pair<Coord, i64>> comb;
      for (std::size_t s = 0; s < f.size(); ++s)
        if (f.proxy[s] && cols[t][s] != 0) comb.push_back({back.at(f.coord[s]), cols[t][s]});
      ex.pruefer[ambient.copy] = comb;
    } else {
      ex.cyclic[ambient.copy] = f.write(m, back, cols[t]);
    }
  }
  return g;
}

}  // namespace detail

/// Extends b_i ↦ c_i to an automorphism of M (Cyclic and Pruefer atoms only):
/// hulls of <b> and <c> inside the touched subsum, an isomorphism between them
/// over the assignment, complements matched by exponent.
inline AutomorphismWitness extend_partial_iso(const GroupRef& m, const std::vector<Element>& b, const std::vector<Element>& c) {
  if (m->universal || m->has_kind(Atom::Kind::GenPruefer))
    throw Error(ErrorKind::Unsupported, "automorphism extension needs Cyclic and Pruefer atoms only");
  MapVerdict v = is_partial_pure_mono(m, b, m, c);
  if (!v.pure) throw NotPureError(v);
  std::vector<Element> all = b;
  all.insert(all.end(), c.begin(), c.end());
  const Subsum d = finite_subsum(m, support(all));
  std::vector<Element> bd, cd;
  for (const auto& x : b) bd.push_back(d.restrict(x));
  for (const auto& x : c) cd.push_back(d.restrict(x));
  SummandResult s1 = minimal_summand(d.group, subgroup_generated(d.group, bd));
  SummandResult s2 = minimal_summand(d.group, subgroup_generated(d.group, cd));
  if (*s1.hull != *s2.hull) throw Error(ErrorKind::NotAPureIso, "hulls of the two sides differ");
  if (s1.proxy_exp != s2.proxy_exp) throw Error(ErrorKind::NotAPureIso, "tuples have different exponents");
  const int K = s1.proxy_exp;
  const detail::SlotFrame df = detail::frame_of(d.group, K);
  const detail::SlotFrame hf = detail::frame_of(s1.hull, K);

  // φ on the hull: row by row over target coordinates
  std::vector<std::vector<i64>> x, y;
  for (const auto& e : s1.embed) x.push_back(hf.read(e));
  for (const auto& e : s2.embed) y.push_back(hf.read(e));
  std::vector<std::vector<i64>> phi(hf.size(), std::vector<i64>(hf.size(), 0));  // phi[l][l']
  for (std::size_t lt = 0; lt < hf.size(); ++lt) {
    std::vector<i64> factor(hf.size());
    for (std::size_t l = 0; l < hf.size(); ++l) factor[l] = hf.hom_factor(static_cast<std::size_t>(hf.exp[l]), hf.proxy[l], lt);
    std::vector<std::vector<i64>> A(x.size(), std::vector<i64>(hf.size()));
    std::vector<i64> rhs(x.size());
    for (std::size_t g = 0; g < x.size(); ++g) {
      for (std::size_t l = 0; l < hf.size(); ++l) A[g][l] = x[g][l];
      rhs[g] = y[g][lt];
    }
    auto sol = detail::solve_mixed(hf.p, std::vector<int>(x.size(), hf.exp[lt]), A, factor, rhs);
    if (!sol) throw Error(ErrorKind::NotAPureIso, "no hull isomorphism over the assignment");
    for (std::size_t l = 0; l < hf.size(); ++l) phi[l][lt] = mod((*sol)[l], hf.modulus(lt));
  }

  // basis B1 of D and its images
  std::vector<std::vector<i64>> b1, img;
  auto hull_basis = [&](const SummandResult& s) {
    std::vector<std::vector<i64>> out;
    for (const auto& e : s.basis) out.push_back(df.read(e));
    return out;
  };
  const auto h1 = hull_basis(s1), h2 = hull_basis(s2);
  for (std::size_t l = 0; l < hf.size(); ++l) {
    b1.push_back(h1[l]);
    img.push_back(detail::combine(df, h2, phi[l]));
  }
  auto sorted_complement = [&](const SummandResult& s) {
    std::vector<std::pair<int, std::vector<i64>>> out;
    for (std::size_t i = 0; i < s.complement.size(); ++i)
      out.push_back({s.complement_exps[i] == 0 ? K + 1 : s.complement_exps[i], df.read(s.complement[i])});
    std::stable_sort(out.begin(), out.end(), [](const auto& u, const auto& w) { return u.first < w.first; });
    return out;
  };
  const auto c1 = sorted_complement(s1), c2 = sorted_complement(s2);
  if (c1.size() != c2.size()) throw Error(ErrorKind::NotAPureIso, "complements differ");
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (c1[i].first != c2[i].first) throw Error(ErrorKind::NotAPureIso, "complement invariants differ");
    b1.push_back(c1[i].second);
    img.push_back(c2[i].second);
  }

  // forward on standard generators, then the inverse by solving F∘G = id
  std::vector<std::vector<i64>> fwd(df.size());
  for (std::size_t t = 0; t < df.size(); ++t) {
    std::vector<i64> e(df.size(), 0);
    e[t] = 1;
    auto lambda = detail::express(df, b1, e);
    if (!lambda) throw Error(ErrorKind::StabilizationFailure, "summand bases do not span the subsum");
    fwd[t] = detail::combine(df, img, *lambda);
  }
  std::vector<std::vector<i64>> inv(df.size());
  for (std::size_t t = 0; t < df.size(); ++t) {
    std::vector<i64> factor(df.size());
    for (std::size_t s = 0; s < df.size(); ++s) factor[s] = df.hom_factor(static_cast<std::size_t>(df.exp[t]), df.proxy[t], s);
    std::vector<std::vector<i64>> A(df.size(), std::vector<i64>(df.size()));
    std::vector<i64> rhs(df.size(), 0);
    rhs[t] = 1;
    for (std::size_t r = 0; r < df.size(); ++r)
      for (std::size_t s = 0; s < df.size(); ++s) A[r][s] = fwd[s][r];
    auto sol = detail::solve_mixed(df.p, df.exp, A, factor, rhs);
    if (!sol) throw Error(ErrorKind::StabilizationFailure, "constructed map is not invertible");
    inv[t] = *sol;
    for (std::size_t s = 0; s < df.size(); ++s) inv[t][s] = mod(inv[t][s], df.modulus(s));
  }

  AutomorphismWitness w;
  w.group = m;
  w.domain = b;
  w.image = c;
  w.precision = K;
  w.forward = detail::explicit_map(m, df, d.to_sub, fwd);
  w.inverse = detail::explicit_map(m, df, d.to_sub, inv);
  return w;
}

/// Checks the witness: extends the assignment, inverse on both sides for
/// generators of the touched copies, relations preserved.
inline bool verify_witness(const AutomorphismWitness& w) {
  for (std::size_t i = 0; i < w.domain.size(); ++i)
    if (apply(w.forward, w.domain[i]) != w.image[i]) return false;
  if (!relations_hold(w.forward, 3, w.precision - 1) || !relations_hold(w.inverse, 3, w.precision - 1)) return false;
  for (std::uint32_t s = 0; s < w.group->summands.size(); ++s) {
    const auto& ex = std::get<Explicit>(w.forward.rules[s]);
    std::vector<Element> probes;
    for (const auto& [c, _] : ex.cyclic) probes.push_back(cyclic_generator(w.group, {s, c}));
    for (const auto& [c, _] : ex.pruefer)
      for (int j = 0; j < w.precision; ++j) probes.push_back(pruefer_generator(w.group, {s, c}, j));
    for (const auto& x : probes)
      if (apply(w.forward, apply(w.inverse, x)) != x || apply(w.inverse, apply(w.forward, x)) != x) return false;
  }
  return true;
}

inline AutomorphismWitness transitivity_witness(const GroupRef& m, const Element& x, const Element& y) {
  if (x.is_zero() != y.is_zero() || (!x.is_zero() && full_ulm_sequence(x) != full_ulm_sequence(y)))
    throw Error(ErrorKind::UlmMismatch, "elements have different Ulm sequences");
  return extend_partial_iso(m, {x}, {y});
}

}  // namespace ppg
