#include <gtest/gtest.h>

#include "ppg/oracle.hpp"
#include "ppg/subgroup.hpp"

using namespace ppg;
using namespace ppg::oracle;

namespace {

Quantified exists_one(i64 b, i64 a) {
  Quantified q{IntMatrix(1, 1), IntMatrix(1, 1)};
  q.A(0, 0) = a;
  q.B(0, 0) = b;
  return q;
}

}  // namespace

TEST(Oracle, PpEvalByWitnessSearch) {
  OGroup z4 = oracle_group(GroupSpec(2, {{Atom::cyclic(2), 1}}));
  // ∃w 2w = v  <=>  ∃w 2w - v = 0
  EXPECT_TRUE(oracle_pp_eval(z4, exists_one(2, -1), {{2}}));
  EXPECT_FALSE(oracle_pp_eval(z4, exists_one(4, -2), {{1}}));
  OGroup z2 = oracle_group(GroupSpec(2, {{Atom::cyclic(1), 1}}));
  EXPECT_TRUE(oracle_pp_eval(z2, exists_one(4, -2), {{1}}));
}

TEST(Oracle, HeightsByDirectSearch) {
  OGroup z8 = oracle_group(GroupSpec(2, {{Atom::cyclic(3), 1}}));
  EXPECT_EQ(oracle_height(z8, {4}), Ordinal::finite(2));
  EXPECT_EQ(oracle_height(z8, {0}), Ordinal::infinity());
  OGroup g = oracle_group(GroupSpec(2, {{Atom::cyclic(1), 1}, {Atom::cyclic(3), 1}}));
  EXPECT_EQ(oracle_height(g, {1, 2}), Ordinal::finite(0));
  EXPECT_EQ(oracle_height(g, {0, 2}), Ordinal::finite(1));
}

TEST(Oracle, AutomorphismCounts) {
  auto count = [](const GroupSpec& g) {
    OGroup o = oracle_group(g);
    std::size_t c = 0;
    bool saw_identity = false;
    oracle_automorphisms(o, [&](const std::vector<std::vector<i64>>& im) {
      ++c;
      bool id = true;
      for (std::size_t i = 0; i < im.size(); ++i)
        for (std::size_t j = 0; j < im[i].size(); ++j) id = id && im[i][j] == (i == j ? 1 : 0);
      saw_identity = saw_identity || id;
      return true;
    });
    EXPECT_TRUE(saw_identity);
    return c;
  };
  EXPECT_EQ(count(GroupSpec(2, {{Atom::cyclic(1), 2}})), 6u);
  EXPECT_EQ(count(GroupSpec(2, {{Atom::cyclic(2), 1}})), 2u);
  EXPECT_EQ(count(GroupSpec(3, {{Atom::cyclic(1), 2}})), 48u);
  EXPECT_EQ(count(GroupSpec(2, {{Atom::cyclic(1), 1}, {Atom::cyclic(2), 1}})), 8u);
}

TEST(Oracle, SummandsContainingSubgroup) {
  OGroup g = oracle_group(GroupSpec(2, {{Atom::cyclic(1), 1}, {Atom::cyclic(2), 1}}));
  auto min_order = [&](const std::vector<std::vector<i64>>& gens) {
    std::size_t best = g.order();
    for (const auto& sp : oracle_summands(g, generated(g, gens))) best = std::min(best, sp.summand.count());
    return best;
  };
  EXPECT_EQ(min_order({{1, 2}}), 2u);
  EXPECT_EQ(min_order({{0, 2}}), 4u);
  OGroup z4 = oracle_group(GroupSpec(2, {{Atom::cyclic(2), 1}}));
  auto sums = oracle_summands(z4, generated(z4, {{2}}));
  ASSERT_EQ(sums.size(), 1u);
  EXPECT_EQ(sums[0].summand.count(), 4u);
}

TEST(Oracle, SubgroupCountOfElementaryGroup) {
  // subgroups of (Z/2)^4: 1 + 15 + 35 + 15 + 1
  EXPECT_EQ(all_subgroups(oracle_group(GroupSpec(2, {{Atom::cyclic(1), 4}}))).size(), 67u);
}

TEST(Oracle, TruncationHeights) {
  for (int N = 1; N <= 3; ++N) EXPECT_EQ(oracle_truncation_height(2, 1, N, {1}), Ordinal::finite(N));
  for (int N = 1; N <= 3; ++N) EXPECT_EQ(oracle_truncation_height(2, 1, N, {0, 1}), Ordinal::finite(0));
  EXPECT_EQ(oracle_truncation_height(2, 1, 2, {0}), Ordinal::infinity());
  // normal form counts equal the truncation orders 2^(1 + N(N+1)/2)
  for (int N = 1; N <= 4; ++N)
    EXPECT_EQ(OTruncation({2, 1, N}).elements().size(), std::size_t{1} << (1 + N * (N + 1) / 2));
}

TEST(Oracle, DivisibilityMatchesHeights) {
  for (auto [p, n] : {std::pair<i64, int>{2, 1}, {2, 2}, {3, 1}}) {
    auto g = make_group(GroupSpec(p, {{Atom::cyclic(3), 1}, {Atom::gen_pruefer(n), 1}, {Atom::pruefer(), 1}}));
    const int S = p == 2 ? 3 : 2;
    std::vector<i64> c(static_cast<std::size_t>(S) + 1, 0);
    std::function<void(int)> rec = [&](int m) {
      if (m > S) {
        for (i64 r : {0, 2, 3}) {
          std::vector<std::pair<Coord, AtomValue>> raw{{{0, 0}, cyclic_value(r)}, {{1, 0}, gen_pruefer_value(c)}};
          Element x = make_element(g, raw);
          for (int k = 1; k <= 4; ++k) {
            std::vector<std::pair<Coord, AtomValue>> coords(x.coords().begin(), x.coords().end());
            EXPECT_EQ(oracle_divisible(*g, coords, k), in_p_alpha(x, Ordinal::finite(k))) << r << " k=" << k;
          }
        }
        return;
      }
      for (i64 v = 0; v < ipow(p, m == 0 ? n : m); ++v) {
        c[static_cast<std::size_t>(m)] = v;
        rec(m + 1);
      }
      c[static_cast<std::size_t>(m)] = 0;
    };
    rec(0);
  }
}

TEST(Oracle, GenPrueferFiniteUlmInvariants) {
  // socle of <a_0, p^(m-1) a_m : m <= 8> in H(w+1), heights by oracle search
  auto g = make_group(GroupSpec(2, {{Atom::gen_pruefer(1), 1}}));
  std::vector<Element> gens{gen_pruefer_generator(g, {0, 0}, 0)};
  for (int m = 1; m <= 8; ++m) gens.push_back(scale(ipow(2, m - 1), gen_pruefer_generator(g, {0, 0}, m)));
  const FiniteSubgroup s = subgroup_generated(g, gens);
  std::vector<int> count(9, 0);  // #{x in socle : x ∈ p^j M}
  for (const auto& x : s.elements) {
    if (!scale(2, x).is_zero()) continue;
    std::vector<std::pair<Coord, AtomValue>> raw(x.coords().begin(), x.coords().end());
    for (int j = 0; j <= 8; ++j) {
      if (!oracle_divisible(*g, raw, j)) break;
      ++count[static_cast<std::size_t>(j)];
    }
  }
  for (int j = 0; j <= 7; ++j) {
    const int c = count[static_cast<std::size_t>(j)], d = count[static_cast<std::size_t>(j) + 1];
    ASSERT_EQ(c % d, 0);
    if (j <= 6) {
      EXPECT_EQ(c / d, 2) << "f(" << j << ")";
    }
  }
  EXPECT_EQ(ulm_invariants(*g).finite_at(3), 1u);
}
