#pragma once

#include <cmath>
#include <functional>

#include "ppg/rule_map.hpp"
#include "ppg/subgroup.hpp"

namespace ppg {

/// Normal forms of one GenPruefer copy with support <= N.
struct TruncationScope {
  Coord coord;
  int N = 1;
};

struct PurityScope {
  std::vector<Element> generators;          // closed under + before checking
  std::vector<TruncationScope> truncations;
  std::vector<Element> samples;             // checked one by one
  int depth = 8;
  std::uint64_t cap = scope_cap(1u << 20);
};

struct PurityCertificate {
  bool pure = true;
  std::uint64_t checked = 0;
  int depth = 0;
  std::optional<Element> witness;  // x with x ∈ p^k M differing from f(x) ∈ p^k N
  int witness_depth = 0;
  bool injectivity_failure = false;
};

namespace detail {

inline int capped_height(const Element& x, int depth) {
  Ordinal h = height(x);
  return h.is_finite() ? std::min(h.offset(), depth) : depth;
}

inline void for_each_truncation_element(const GroupRef& g, const TruncationScope& t, std::uint64_t cap,
                                        const std::function<void(const Element&)>& f) {
  const Atom a = g->atom_at(t.coord.summand);
  if (!a.is_gen_pruefer()) throw Error(ErrorKind::InvalidArgument, "truncation scope needs a GenPruefer coordinate");
  double bits = a.param;
  for (int m = 1; m <= t.N; ++m) bits += m;
  if (bits * std::log2(static_cast<double>(g->p)) > std::log2(static_cast<double>(cap)))
    throw Error(ErrorKind::ScopeTooLarge, "truncation scope exceeds cap");
  std::vector<i64> c(static_cast<std::size_t>(t.N) + 1, 0);
  std::function<void(int)> rec = [&](int m) {
    if (m > t.N) {
      f(make_element(g, {{t.coord, gen_pruefer_value(c)}}));
      return;
    }
    const i64 bound = ipow(g->p, m == 0 ? a.param : m);
    for (i64 v = 0; v < bound; ++v) {
      c[static_cast<std::size_t>(m)] = v;
      rec(m + 1);
    }
    c[static_cast<std::size_t>(m)] = 0;
  };
  rec(0);
}

}  // namespace detail

/// For every x in scope and k <= depth: x ∈ p^k M iff f(x) ∈ p^k N, and f(x) = 0 only for x = 0.
inline PurityCertificate is_pure_embedding(const GenRuleMap& f, const PurityScope& scope) {
  PurityCertificate cert;
  cert.depth = scope.depth;
  auto check = [&](const Element& x) {
    if (!cert.pure) return;
    ++cert.checked;
    const Element y = apply(f, x);
    if (x.is_zero()) return;
    if (y.is_zero()) {
      cert.pure = false;
      cert.injectivity_failure = true;
      cert.witness = x;
      return;
    }
    const int hx = detail::capped_height(x, scope.depth), hy = detail::capped_height(y, scope.depth);
    if (hx != hy) {
      cert.pure = false;
      cert.witness = x;
      cert.witness_depth = std::min(hx, hy) + 1;
    }
  };
  if (!scope.generators.empty())
    for (const auto& x : subgroup_generated(f.source, scope.generators, scope.cap).elements) check(x);
  for (const auto& t : scope.truncations) detail::for_each_truncation_element(f.source, t, scope.cap, check);
  for (const auto& x : scope.samples) check(x);
  return cert;
}

}  // namespace ppg
