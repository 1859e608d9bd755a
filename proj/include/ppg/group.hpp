#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ppg/arith.hpp"
#include "ppg/error.hpp"

namespace ppg {

/// Indecomposable building blocks. The enumerator order is the canonical
/// summand order: Cyclic (ascending k), GenPruefer (ascending n), Pruefer.
struct Atom {
  enum class Kind : std::uint8_t { Cyclic = 0, GenPruefer = 1, Pruefer = 2 };

  Kind kind = Kind::Cyclic;
  int param = 1;  // k for Z(p^k), n for H(w+n), 0 for Z(p^inf)

  static Atom cyclic(int k) { return {Kind::Cyclic, k}; }
  static Atom gen_pruefer(int n) { return {Kind::GenPruefer, n}; }
  static Atom pruefer() { return {Kind::Pruefer, 0}; }

  bool is_cyclic() const { return kind == Kind::Cyclic; }
  bool is_pruefer() const { return kind == Kind::Pruefer; }
  bool is_gen_pruefer() const { return kind == Kind::GenPruefer; }

  auto operator<=>(const Atom&) const = default;
};

/// Multiplicities are finite counts or the countable cardinal.
using Mult = std::uint64_t;
inline constexpr Mult kAleph0 = std::numeric_limits<Mult>::max();

inline Mult mult_add(Mult a, Mult b) {
  if (a == kAleph0 || b == kAleph0) return kAleph0;
  return a + b;
}

struct Summand {
  Atom atom;
  Mult mult = 1;
  auto operator<=>(const Summand&) const = default;
};

/// A countable p-group given as a direct sum of atoms. With `universal`
/// set the spec additionally contains ⊕_{k>=1} Z(p^k)^(aleph0) ⊕ Z(p^inf)^(aleph0),
/// whose summand indices follow the explicit ones: index S is the Pruefer
/// block and index S+k is the Z(p^k) block, S = summands.size().
struct GroupSpec {
  i64 p = 2;
  std::vector<Summand> summands;
  bool universal = false;

  GroupSpec() = default;
  GroupSpec(i64 prime, std::vector<Summand> s, bool univ = false)
      : p(prime), summands(std::move(s)), universal(univ) {
    canonicalize();
  }

  static GroupSpec universal_group(i64 prime) { return GroupSpec(prime, {}, true); }

  void canonicalize() {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be prime");
    std::sort(summands.begin(), summands.end(),
              [](const Summand& a, const Summand& b) { return a.atom < b.atom; });
    std::vector<Summand> merged;
    for (const auto& s : summands) {
      if (s.mult == 0) continue;
      if ((s.atom.is_cyclic() || s.atom.is_gen_pruefer()) && s.atom.param < 1)
        throw Error(ErrorKind::InvalidArgument, "atom parameter must be positive");
      if (!merged.empty() && merged.back().atom == s.atom)
        merged.back().mult = mult_add(merged.back().mult, s.mult);
      else
        merged.push_back(s);
    }
    summands = std::move(merged);
  }

  bool operator==(const GroupSpec&) const = default;

  std::size_t explicit_count() const { return summands.size(); }

  Atom atom_at(std::size_t idx) const {
    if (idx < summands.size()) return summands[idx].atom;
    if (!universal) throw Error(ErrorKind::InvalidArgument, "summand index out of range");
    if (idx == summands.size()) return Atom::pruefer();
    return Atom::cyclic(static_cast<int>(idx - summands.size()));
  }

  Mult mult_at(std::size_t idx) const {
    if (idx < summands.size()) return summands[idx].mult;
    if (!universal) throw Error(ErrorKind::InvalidArgument, "summand index out of range");
    return kAleph0;
  }

  bool has_summand(std::size_t idx) const { return idx < summands.size() || universal; }

  std::size_t universal_pruefer_index() const { return summands.size(); }
  std::size_t universal_cyclic_index(int k) const { return summands.size() + static_cast<std::size_t>(k); }

  bool is_finite() const {
    if (universal) return false;
    return std::all_of(summands.begin(), summands.end(), [](const Summand& s) {
      return s.atom.is_cyclic() && s.mult != kAleph0;
    });
  }

  bool has_kind(Atom::Kind k) const {
    if (universal && k != Atom::Kind::GenPruefer) return true;
    return std::any_of(summands.begin(), summands.end(),
                       [k](const Summand& s) { return s.atom.kind == k; });
  }

  /// log_p of the order, for finite specs.
  int log_order() const {
    if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "group is infinite");
    int e = 0;
    for (const auto& s : summands) e += s.atom.param * static_cast<int>(s.mult);
    return e;
  }
};

using GroupRef = std::shared_ptr<const GroupSpec>;

inline GroupRef make_group(GroupSpec spec) { return std::make_shared<const GroupSpec>(std::move(spec)); }

/// Position of one indecomposable copy inside a spec.
struct Coord {
  std::uint32_t summand = 0;
  std::uint64_t copy = 0;
  auto operator<=>(const Coord&) const = default;
};

/// Normal-form value of one atom copy (never the zero value; zero coordinates
/// are absent from an Element).
///   Cyclic(k):    c = {r},            0 < r < p^k
///   Pruefer:      c = {a}, exp = k,   the class of a/p^k, 0 < a < p^k, p ∤ a
///   GenPruefer(n): c = {c_0, c_1, ..., c_S}, 0 <= c_0 < p^n, 0 <= c_m < p^m,
///                 trailing zeros trimmed
struct AtomValue {
  std::vector<i64> c;
  int exp = 0;
  auto operator<=>(const AtomValue&) const = default;
};

namespace detail {

inline std::optional<AtomValue> normalize_cyclic(i128 r, i64 p, int k) {
  i64 v = mod(r, ipow(p, k));
  if (v == 0) return std::nullopt;
  return AtomValue{{v}, 0};
}

inline std::optional<AtomValue> normalize_pruefer(i128 a, int k, i64 p) {
  if (k <= 0) return std::nullopt;
  i64 v = mod(a, ipow(p, k));
  if (v == 0) return std::nullopt;
  while (v % p == 0) {
    v /= p;
    --k;
  }
  return AtomValue{{v}, k};
}

/// Carries c_m overflow into c_0 via p^m a_m = a_0, then reduces c_0 mod p^n.
inline std::optional<AtomValue> normalize_gen_pruefer(std::vector<i128> c, i64 p, int n) {
  if (c.empty()) return std::nullopt;
  for (std::size_t m = c.size() - 1; m >= 1; --m) {
    const i64 pm = ipow(p, static_cast<int>(m));
    i128 q = c[m] / pm;
    i128 r = c[m] % pm;
    if (r < 0) {
      r += pm;
      q -= 1;
    }
    c[m] = r;
    c[0] += q;
  }
  std::vector<i64> out(c.size());
  out[0] = mod(c[0], ipow(p, n));
  for (std::size_t m = 1; m < c.size(); ++m) out[m] = static_cast<i64>(c[m]);
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  if (out.size() == 1 && out[0] == 0) return std::nullopt;
  return AtomValue{std::move(out), 0};
}

}  // namespace detail

class Element {
 public:
  Element() = default;
  explicit Element(GroupRef g) : group_(std::move(g)) {}
  Element(GroupRef g, std::map<Coord, AtomValue> coords) : group_(std::move(g)), coords_(std::move(coords)) {}

  const GroupRef& group() const { return group_; }
  const GroupSpec& spec() const { return *group_; }
  const std::map<Coord, AtomValue>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  const AtomValue* at(Coord c) const {
    auto it = coords_.find(c);
    return it == coords_.end() ? nullptr : &it->second;
  }

  bool operator==(const Element& o) const {
    return coords_ == o.coords_ && (group_ == o.group_ || (group_ && o.group_ && *group_ == *o.group_));
  }
  /// Ordering within one group; used for enumerated subgroup storage.
  bool operator<(const Element& o) const { return coords_ < o.coords_; }

  std::map<Coord, AtomValue>& mutable_coords() { return coords_; }

 private:
  GroupRef group_;
  std::map<Coord, AtomValue> coords_;
};

inline void require_same_group(const Element& x, const Element& y) {
  if (x.group() == y.group()) return;
  if (!x.group() || !y.group() || !(*x.group() == *y.group()))
    throw Error(ErrorKind::MismatchedGroup, "elements belong to different groups");
}

inline void check_coord(const GroupSpec& g, Coord c) {
  if (!g.has_summand(c.summand)) throw Error(ErrorKind::InvalidArgument, "no such summand");
  Mult m = g.mult_at(c.summand);
  if (m != kAleph0 && c.copy >= m) throw Error(ErrorKind::InvalidArgument, "copy index exceeds multiplicity");
}

/// Normalises raw (possibly out-of-range) values for one coordinate.
inline std::optional<AtomValue> normalize_value(const GroupSpec& g, Coord c, const AtomValue& raw) {
  const Atom a = g.atom_at(c.summand);
  switch (a.kind) {
    case Atom::Kind::Cyclic:
      return detail::normalize_cyclic(raw.c.empty() ? 0 : raw.c[0], g.p, a.param);
    case Atom::Kind::Pruefer:
      return detail::normalize_pruefer(raw.c.empty() ? 0 : raw.c[0], raw.exp, g.p);
    case Atom::Kind::GenPruefer: {
      std::vector<i128> w(raw.c.begin(), raw.c.end());
      return detail::normalize_gen_pruefer(std::move(w), g.p, a.param);
    }
  }
  return std::nullopt;
}

/// Builds an element from raw coordinate values, normalising each.
inline Element make_element(const GroupRef& g, const std::vector<std::pair<Coord, AtomValue>>& raw) {
  Element e(g);
  for (const auto& [c, v] : raw) {
    check_coord(*g, c);
    if (e.at(c)) throw Error(ErrorKind::InvalidArgument, "duplicate coordinate");
    if (auto nv = normalize_value(*g, c, v)) e.mutable_coords().emplace(c, std::move(*nv));
  }
  return e;
}

inline AtomValue cyclic_value(i64 r) { return {{r}, 0}; }
inline AtomValue pruefer_value(i64 a, int k) { return {{a}, k}; }
inline AtomValue gen_pruefer_value(std::vector<i64> c) { return {std::move(c), 0}; }

/// The class of 1/p^(n+1) in a Pruefer coordinate (the generator b_n).
inline Element pruefer_generator(const GroupRef& g, Coord c, int n) {
  return make_element(g, {{c, pruefer_value(1, n + 1)}});
}

/// The generator a_m of a GenPruefer coordinate.
inline Element gen_pruefer_generator(const GroupRef& g, Coord c, int m) {
  std::vector<i64> v(static_cast<std::size_t>(m) + 1, 0);
  v[static_cast<std::size_t>(m)] = 1;
  return make_element(g, {{c, gen_pruefer_value(std::move(v))}});
}

/// Generator of a cyclic coordinate.
inline Element cyclic_generator(const GroupRef& g, Coord c) { return make_element(g, {{c, cyclic_value(1)}}); }

namespace detail {

inline std::optional<AtomValue> add_values(const GroupSpec& g, Coord c, const AtomValue& x, const AtomValue& y) {
  const Atom a = g.atom_at(c.summand);
  switch (a.kind) {
    case Atom::Kind::Cyclic:
      return normalize_cyclic(static_cast<i128>(x.c[0]) + y.c[0], g.p, a.param);
    case Atom::Kind::Pruefer: {
      const int k = std::max(x.exp, y.exp);
      i128 s = static_cast<i128>(x.c[0]) * ipow(g.p, k - x.exp) + static_cast<i128>(y.c[0]) * ipow(g.p, k - y.exp);
      return normalize_pruefer(s, k, g.p);
    }
    case Atom::Kind::GenPruefer: {
      std::vector<i128> w(std::max(x.c.size(), y.c.size()), 0);
      for (std::size_t i = 0; i < x.c.size(); ++i) w[i] += x.c[i];
      for (std::size_t i = 0; i < y.c.size(); ++i) w[i] += y.c[i];
      return normalize_gen_pruefer(std::move(w), g.p, a.param);
    }
  }
  return std::nullopt;
}

inline std::optional<AtomValue> scale_value(const GroupSpec& g, Coord c, i64 z, const AtomValue& x) {
  const Atom a = g.atom_at(c.summand);
  switch (a.kind) {
    case Atom::Kind::Cyclic: {
      const i64 q = ipow(g.p, a.param);
      return normalize_cyclic(static_cast<i128>(mod(z, q)) * x.c[0], g.p, a.param);
    }
    case Atom::Kind::Pruefer: {
      const i64 q = ipow(g.p, x.exp);
      return normalize_pruefer(static_cast<i128>(mod(z, q)) * x.c[0], x.exp, g.p);
    }
    case Atom::Kind::GenPruefer: {
      // the element is killed by p^(n + S), S its top index
      const int S = static_cast<int>(x.c.size()) - 1;
      const i64 zr = mod(z, ipow(g.p, a.param + S));
      std::vector<i128> w(x.c.size());
      for (std::size_t i = 0; i < x.c.size(); ++i) w[i] = static_cast<i128>(x.c[i]) * zr;
      return normalize_gen_pruefer(std::move(w), g.p, a.param);
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline Element operator+(const Element& x, const Element& y) {
  require_same_group(x, y);
  Element r = x;
  auto& rc = r.mutable_coords();
  for (const auto& [c, v] : y.coords()) {
    auto it = rc.find(c);
    if (it == rc.end()) {
      rc.emplace(c, v);
      continue;
    }
    if (auto s = detail::add_values(x.spec(), c, it->second, v))
      it->second = std::move(*s);
    else
      rc.erase(it);
  }
  return r;
}

inline Element scale(i64 z, const Element& x) {
  Element r(x.group());
  if (z == 0) return r;
  for (const auto& [c, v] : x.coords())
    if (auto s = detail::scale_value(x.spec(), c, z, v)) r.mutable_coords().emplace(c, std::move(*s));
  return r;
}

inline Element operator-(const Element& x) { return scale(-1, x); }
inline Element operator-(const Element& x, const Element& y) { return x + (-y); }
inline Element operator*(i64 z, const Element& x) { return scale(z, x); }

/// Sum of r_i * x_i.
inline Element combination(const GroupRef& g, const std::vector<i64>& r, const std::vector<Element>& xs) {
  Element acc(g);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (r[i] != 0) acc = acc + scale(r[i], xs[i]);
  return acc;
}

}  // namespace ppg
