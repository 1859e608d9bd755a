#pragma once

#include <variant>

#include "ppg/group.hpp"

namespace ppg {

/// Copy c of the source summand goes to copy stride*c + offset of a target
/// summand carrying the same atom.
struct Placement {
  std::uint32_t target_summand = 0;
  std::uint64_t stride = 1, offset = 0;
  auto operator<=>(const Placement&) const = default;
};

/// GenPruefer(n) copy c into the universal group, with t = stride*c + offset:
/// a_0 ↦ 1/p^n in Pruefer copy t, a_m ↦ e_m (Z(p^m) copy t) + 1/p^(n+m).
struct GenPrueferPlacement {
  std::uint64_t stride = 1, offset = 0;
  auto operator<=>(const GenPrueferPlacement&) const = default;
};

/// Per-copy images. Cyclic copies: image of the generator. Pruefer copies:
/// x ↦ Σ u·x placed at the listed Pruefer coordinates. Unlisted copies map
/// identically (source and target must then agree on the summand).
struct Explicit {
  std::map<std::uint64_t, Element> cyclic;
  std::map<std::uint64_t, std::vector<std::pair<Coord, i64>>> pruefer;
};

using Rule = std::variant<Placement, GenPrueferPlacement, Explicit>;

struct GenRuleMap {
  GroupRef source, target;
  std::vector<Rule> rules;  // one per explicit source summand
};

namespace detail {

inline Element place_value(const GroupRef& t, Coord c, const AtomValue& v) {
  return make_element(t, {{c, v}});
}

inline Element gen_pruefer_image(const GenRuleMap& f, const GenPrueferPlacement& r, std::uint64_t copy, int n,
                                 const AtomValue& v) {
  const GroupSpec& t = *f.target;
  if (!t.universal) throw Error(ErrorKind::EmbeddingUnavailable, "GenPruefer placement needs the universal group");
  const std::uint64_t tc = r.stride * copy + r.offset;
  const Coord pr{static_cast<std::uint32_t>(t.universal_pruefer_index()), tc};
  Element acc = scale(v.c[0], place_value(f.target, pr, pruefer_value(1, n)));
  for (std::size_t m = 1; m < v.c.size(); ++m) {
    if (v.c[m] == 0) continue;
    const int mi = static_cast<int>(m);
    Element img = place_value(f.target, {static_cast<std::uint32_t>(t.universal_cyclic_index(mi)), tc}, cyclic_value(1)) +
                  place_value(f.target, pr, pruefer_value(1, n + mi));
    acc = acc + scale(v.c[m], img);
  }
  return acc;
}

}  // namespace detail

inline Element apply(const GenRuleMap& f, const Element& x) {
  if (*x.group() != *f.source) throw Error(ErrorKind::MismatchedGroup, "element outside the map's source");
  Element acc(f.target);
  for (const auto& [c, v] : x.coords()) {
    const Atom a = f.source->atom_at(c.summand);
    if (c.summand >= f.rules.size()) throw Error(ErrorKind::InvalidArgument, "no rule for source summand");
    const Rule& rule = f.rules[c.summand];
    if (const auto* pl = std::get_if<Placement>(&rule)) {
      const Coord tc{pl->target_summand, pl->stride * c.copy + pl->offset};
      if (f.target->atom_at(tc.summand) != a) throw Error(ErrorKind::InvalidArgument, "placement changes the atom");
      acc = acc + detail::place_value(f.target, tc, v);
    } else if (const auto* gp = std::get_if<GenPrueferPlacement>(&rule)) {
      acc = acc + detail::gen_pruefer_image(f, *gp, c.copy, a.param, v);
    } else {
      const auto& ex = std::get<Explicit>(rule);
      if (a.is_cyclic()) {
        auto it = ex.cyclic.find(c.copy);
        acc = acc + (it == ex.cyclic.end() ? detail::place_value(f.target, c, v) : scale(v.c[0], it->second));
      } else if (a.is_pruefer()) {
        auto it = ex.pruefer.find(c.copy);
        if (it == ex.pruefer.end()) {
          acc = acc + detail::place_value(f.target, c, v);
        } else {
          for (const auto& [tc, u] : it->second) {
            const i64 q = ipow(f.target->p, v.exp);
            acc = acc + detail::place_value(f.target, tc, pruefer_value(mulmod(mod(u, q), v.c[0], q), v.exp));
          }
        }
      } else {
        throw Error(ErrorKind::Unsupported, "explicit rules do not cover GenPruefer atoms");
      }
    }
  }
  return acc;
}

/// Checks that defining relations map to zero: p^k e ↦ 0 on cyclic copies,
/// p·b_(j+1) = b_j on Pruefer copies, p^n a_0 = 0 and p^m a_m = a_0 on
/// GenPruefer copies, for copies below copy_bound and indices <= index_bound.
inline bool relations_hold(const GenRuleMap& f, std::uint64_t copy_bound = 3, int index_bound = 6) {
  const GroupSpec& s = *f.source;
  if (f.rules.size() != s.summands.size()) return false;
  for (std::uint32_t i = 0; i < s.summands.size(); ++i) {
    const Summand& sm = s.summands[i];
    const std::uint64_t copies = sm.mult == kAleph0 ? copy_bound : std::min<std::uint64_t>(sm.mult, copy_bound);
    std::vector<std::uint64_t> check;
    for (std::uint64_t c = 0; c < copies; ++c) check.push_back(c);
    if (const auto* ex = std::get_if<Explicit>(&f.rules[i])) {
      for (const auto& [c, _] : ex->cyclic) check.push_back(c);
      for (const auto& [c, _] : ex->pruefer) check.push_back(c);
    }
    for (std::uint64_t c : check) {
      if (sm.mult != kAleph0 && c >= sm.mult) return false;
      const Coord co{i, c};
      if (sm.atom.is_cyclic()) {
        if (!scale(ipow(s.p, sm.atom.param), apply(f, cyclic_generator(f.source, co))).is_zero()) return false;
      } else if (sm.atom.is_pruefer()) {
        if (!scale(s.p, apply(f, pruefer_generator(f.source, co, 0))).is_zero()) return false;
        for (int j = 0; j < index_bound; ++j)
          if (scale(s.p, apply(f, pruefer_generator(f.source, co, j + 1))) != apply(f, pruefer_generator(f.source, co, j)))
            return false;
      } else {
        const Element a0 = apply(f, gen_pruefer_generator(f.source, co, 0));
        if (!scale(ipow(s.p, sm.atom.param), a0).is_zero()) return false;
        for (int m = 1; m <= index_bound; ++m)
          if (scale(ipow(s.p, m), apply(f, gen_pruefer_generator(f.source, co, m))) != a0) return false;
      }
    }
  }
  return true;
}

/// Template of a pure embedding into the universal group: source summand s,
/// copy c lands on target copy c*S + s where S counts source summands.
inline GenRuleMap universal_embed(const GroupRef& m) {
  if (m->universal) throw Error(ErrorKind::EmbeddingUnavailable, "source is already the universal group");
  GroupSpec u = GroupSpec::universal_group(m->p);
  GenRuleMap f{m, make_group(u), {}};
  const std::uint64_t S = m->summands.size();
  for (std::uint64_t s = 0; s < S; ++s) {
    const Atom a = m->summands[s].atom;
    switch (a.kind) {
      case Atom::Kind::Cyclic:
        f.rules.push_back(Placement{static_cast<std::uint32_t>(u.universal_cyclic_index(a.param)), S, s});
        break;
      case Atom::Kind::Pruefer:
        f.rules.push_back(Placement{static_cast<std::uint32_t>(u.universal_pruefer_index()), S, s});
        break;
      case Atom::Kind::GenPruefer:
        f.rules.push_back(GenPrueferPlacement{S, s});
        break;
    }
  }
  return f;
}

/// First source generator in the reduced part whose image is divisible.
inline std::optional<Element> reduced_part_violation(const GenRuleMap& f, int index_bound = 4) {
  auto divisible = [&](const Element& y) {
    if (y.is_zero()) return false;
    for (const auto& [c, _] : y.coords())
      if (!f.target->atom_at(c.summand).is_pruefer()) return false;
    return true;
  };
  for (std::uint32_t s = 0; s < f.source->summands.size(); ++s) {
    const Atom a = f.source->summands[s].atom;
    if (a.is_pruefer()) continue;
    const Coord c{s, 0};
    if (a.is_cyclic()) {
      for (int j = 0; j < a.param; ++j) {
        Element x = scale(ipow(f.source->p, j), cyclic_generator(f.source, c));
        if (divisible(apply(f, x))) return x;
      }
    } else {
      for (int m = 0; m <= index_bound; ++m) {
        Element x = gen_pruefer_generator(f.source, c, m);
        if (divisible(apply(f, x))) return x;
      }
    }
  }
  return std::nullopt;
}

}  // namespace ppg
