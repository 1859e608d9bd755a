#pragma once

#include "ppg/rule_map.hpp"
#include "ppg/summand.hpp"

namespace ppg {

/// The finite subsum of a group spanned by a set of coordinates.
struct Subsum {
  GroupRef group;
  std::map<Coord, Coord> to_sub;  // ambient coordinate -> subsum coordinate

  Element restrict(const Element& x) const {
    std::vector<std::pair<Coord, AtomValue>> raw;
    for (const auto& [c, v] : x.coords()) raw.push_back({to_sub.at(c), v});
    return make_element(group, raw);
  }
  Element extend(const GroupRef& ambient, const Element& x) const {
    std::map<Coord, Coord> back;
    for (const auto& [a, s] : to_sub) back[s] = a;
    std::vector<std::pair<Coord, AtomValue>> raw;
    for (const auto& [c, v] : x.coords()) raw.push_back({back.at(c), v});
    return make_element(ambient, raw);
  }
};

inline Subsum finite_subsum(const GroupRef& ambient, const std::set<Coord>& coords) {
  std::map<Atom, Mult> counts;
  for (const auto& c : coords) {
    const Atom a = ambient->atom_at(c.summand);
    if (a.is_gen_pruefer()) throw Error(ErrorKind::InvalidArgument, "subsum may not contain GenPruefer atoms");
    counts[a] += 1;
  }
  std::vector<Summand> sums;
  for (const auto& [a, m] : counts) sums.push_back({a, m});
  Subsum out{make_group(GroupSpec(ambient->p, sums)), {}};
  std::map<Atom, std::uint64_t> next;
  for (const auto& c : coords) {
    const Atom a = ambient->atom_at(c.summand);
    std::uint32_t idx = 0;
    while (out.group->summands[idx].atom != a) ++idx;
    out.to_sub[c] = Coord{idx, next[a]++};
  }
  return out;
}

inline std::set<Coord> support(const std::vector<Element>& xs) {
  std::set<Coord> out;
  for (const auto& x : xs)
    for (const auto& [c, _] : x.coords()) out.insert(c);
  return out;
}

struct HullResult {
  GroupRef hull;
  std::vector<Element> generators;  // B's generators in M
  std::vector<Element> embed;       // their images in hull
  GroupRef realization;             // finite subsum D0 of the universal group
  std::vector<Element> realized;    // B's generators inside D0
  SummandResult summand;
  int stabilization = 0;
  bool triple_preserved = false;
  std::vector<std::optional<LinkFormula>> links;  // one per indecomposable summand of hull
};

/// Socle element of each indecomposable summand of a Cyclic/Pruefer spec.
inline std::vector<Element> summand_socles(const GroupRef& g) {
  std::vector<Element> out;
  for (std::uint32_t s = 0; s < g->summands.size(); ++s) {
    const Summand& sm = g->summands[s];
    for (Mult c = 0; c < sm.mult; ++c) {
      if (sm.atom.is_cyclic())
        out.push_back(scale(ipow(g->p, sm.atom.param - 1), cyclic_generator(g, {s, c})));
      else
        out.push_back(pruefer_generator(g, {s, c}, 0));
    }
  }
  return out;
}

inline HullResult hull(const GroupRef& m, const FiniteSubgroup& b) {
  HullResult r;
  r.generators = b.generators;
  r.stabilization = stabilization_index(b);
  const GenRuleMap f = universal_embed(m);
  std::vector<Element> images;
  for (const auto& g : b.generators) images.push_back(apply(f, g));
  const Subsum d0 = finite_subsum(f.target, support(images));
  r.realization = d0.group;
  for (const auto& y : images) r.realized.push_back(d0.restrict(y));
  r.summand = minimal_summand(d0.group, subgroup_generated(d0.group, r.realized));
  r.hull = r.summand.hull;
  r.embed = r.summand.embed;
  r.triple_preserved = pp_type_triple(m, r.generators) == pp_type_triple(r.hull, r.embed);
  const FiniteSubgroup image = subgroup_generated(r.hull, r.embed);
  const int bound = default_link_bound(*r.hull, image);
  for (const auto& a : summand_socles(r.hull)) r.links.push_back(check_linked(image, a, bound));
  return r;
}

/// Exclusion: no Cyclic(k) summand with k > s.
inline bool respects_stabilization(const HullResult& r) {
  for (const auto& s : r.hull->summands)
    if (s.atom.is_cyclic() && s.atom.param > r.stabilization) return false;
  return true;
}

}  // namespace ppg
