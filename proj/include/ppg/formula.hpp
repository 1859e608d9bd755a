#pragma once

#include <variant>
#include <vector>

#include "ppg/height.hpp"
#include "ppg/matrix.hpp"

namespace ppg {

/// modulus | Σ coeffs·v, or Σ coeffs·v ≐ 0 when modulus == 0.
/// Moduli are arbitrary integers; on p-groups only v_p(modulus) matters.
struct DivAtom {
  i64 modulus = 0;
  std::vector<i64> coeffs;

  static DivAtom zero(std::vector<i64> c) { return {0, std::move(c)}; }
  static DivAtom ppow(i64 p, int d, std::vector<i64> c) { return {ipow(p, d), std::move(c)}; }

  bool is_zero() const { return modulus == 0; }
  int depth(i64 p) const { return vp(modulus, p); }
  std::size_t arity() const { return coeffs.size(); }

  auto operator<=>(const DivAtom&) const = default;
};

/// ∃w̄ ⋀_j (Σ_i A[j,i] v_i + Σ_k B[j,k] w_k ≐ 0)
struct Quantified {
  IntMatrix A, B;
  std::size_t arity() const { return A.cols; }
  bool operator==(const Quantified&) const = default;
};

struct Simplified {
  std::size_t n = 0;
  std::vector<DivAtom> conjuncts;
  std::size_t arity() const { return n; }
  bool operator==(const Simplified&) const = default;
};

using PpFormula = std::variant<Quantified, Simplified>;

inline std::size_t arity(const PpFormula& f) {
  return std::visit([](const auto& g) { return g.arity(); }, f);
}

namespace detail {

inline void normalize_sign(DivAtom& d) {
  if (d.modulus < 0) d.modulus = -d.modulus;
  for (i64 c : d.coeffs) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& x : d.coeffs) x = -x;
    break;
  }
}

inline bool trivially_true(const DivAtom& d) {
  if (d.modulus == 1) return true;
  return std::all_of(d.coeffs.begin(), d.coeffs.end(), [](i64 c) { return c == 0; });
}

}  // namespace detail

inline Simplified pp_simplify(const Quantified& q) {
  if (q.A.rows != q.B.rows) throw Error(ErrorKind::InvalidArgument, "A and B row counts differ");
  const std::size_t n = q.A.cols;
  Simplified out{n, {}};
  IntMatrix UA = q.A;
  std::vector<i64> diag(q.A.rows, 0);
  if (q.B.cols > 0 && q.B.rows > 0) {
    IntDiagonalForm f = diagonalize(q.B);
    UA = multiply(f.U, q.A);
    for (std::size_t i = 0; i < f.rank; ++i) diag[i] = f.D(i, i);
  }
  for (std::size_t i = 0; i < UA.rows; ++i) {
    DivAtom d{diag[i], std::vector<i64>(n)};
    for (std::size_t c = 0; c < n; ++c) d.coeffs[c] = UA(i, c);
    detail::normalize_sign(d);
    if (detail::trivially_true(d)) continue;
    if (std::find(out.conjuncts.begin(), out.conjuncts.end(), d) == out.conjuncts.end())
      out.conjuncts.push_back(std::move(d));
  }
  return out;
}

inline Simplified as_simplified(const PpFormula& f) {
  if (const auto* q = std::get_if<Quantified>(&f)) return pp_simplify(*q);
  return std::get<Simplified>(f);
}

inline void check_tuple(const GroupSpec& m, const std::vector<Element>& a, std::size_t n) {
  if (a.size() != n) throw Error(ErrorKind::ArityError, "tuple length does not match formula arity");
  for (const auto& x : a)
    if (*x.group() != m) throw Error(ErrorKind::MismatchedGroup, "tuple entry outside the group");
}

inline bool atom_holds(const GroupRef& m, const DivAtom& d, const std::vector<Element>& a) {
  Element x = combination(m, d.coeffs, a);
  if (d.is_zero()) return x.is_zero();
  return in_p_alpha(x, Ordinal::finite(d.depth(m->p)));
}

inline bool pp_eval(const GroupRef& m, const PpFormula& phi, const std::vector<Element>& a) {
  Simplified s = as_simplified(phi);
  check_tuple(*m, a, s.n);
  return std::all_of(s.conjuncts.begin(), s.conjuncts.end(), [&](const DivAtom& d) { return atom_holds(m, d, a); });
}

}  // namespace ppg
