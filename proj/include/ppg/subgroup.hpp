#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "ppg/height.hpp"

namespace ppg {

inline constexpr std::uint64_t kDefaultSubgroupCap = 1u << 20;

/// Finite subgroup of a spec-denoted group, kept as an enumerated sorted set.
struct FiniteSubgroup {
  GroupRef ambient;
  std::vector<Element> generators;
  std::vector<Element> elements;  // sorted, contains zero

  std::size_t size() const { return elements.size(); }
  bool contains(const Element& x) const { return std::binary_search(elements.begin(), elements.end(), x); }
  int log_order() const {
    int e = 0;
    for (std::size_t s = elements.size(); s > 1; s /= static_cast<std::size_t>(ambient->p)) ++e;
    return e;
  }
};

inline FiniteSubgroup subgroup_generated(const GroupRef& m, std::vector<Element> gens,
                                         std::uint64_t cap = scope_cap(kDefaultSubgroupCap)) {
  for (const auto& g : gens)
    if (*g.group() != *m) throw Error(ErrorKind::MismatchedGroup, "generator outside the ambient group");
  std::set<Element> seen{Element(m)};
  std::deque<Element> queue{Element(m)};
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Element y = x + g;
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw Error(ErrorKind::ScopeTooLarge, "subgroup exceeds enumeration cap");
        queue.push_back(std::move(y));
      }
    }
  }
  FiniteSubgroup out{m, std::move(gens), {}};
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

/// All elements of a finite spec (no Pruefer, no GenPruefer, finite multiplicities).
inline std::vector<Element> enumerate_finite(const GroupRef& g, std::uint64_t cap = scope_cap(kDefaultSubgroupCap)) {
  if (!g->is_finite()) throw Error(ErrorKind::InvalidArgument, "group is not finite");
  std::vector<Element> gens;
  for (std::uint32_t s = 0; s < g->summands.size(); ++s)
    for (Mult c = 0; c < g->summands[s].mult; ++c) gens.push_back(cyclic_generator(g, {s, c}));
  return subgroup_generated(g, gens, cap).elements;
}

/// Stable B ∩ p^s M for s past the last finite height in B.
inline int stabilization_index(const FiniteSubgroup& b) {
  int s = 0;
  for (const auto& x : b.elements) {
    Ordinal h = height(x);
    if (h.is_finite()) s = std::max(s, h.offset() + 1);
  }
  return s;
}

}  // namespace ppg
