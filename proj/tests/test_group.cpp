#include <gtest/gtest.h>

#include "ppg/group.hpp"
#include "ppg/height.hpp"

using namespace ppg;

namespace {

GroupRef cyc(i64 p, int k) { return make_group(GroupSpec(p, {{Atom::cyclic(k), 1}})); }

}  // namespace

TEST(GroupSpec, CanonicalOrderMergesAtoms) {
  GroupSpec g(2, {{Atom::pruefer(), 1}, {Atom::cyclic(3), 1}, {Atom::gen_pruefer(1), 2}, {Atom::cyclic(3), 1}});
  ASSERT_EQ(g.summands.size(), 3u);
  EXPECT_EQ(g.summands[0].atom, Atom::cyclic(3));
  EXPECT_EQ(g.summands[0].mult, 2u);
  EXPECT_EQ(g.summands[1].atom, Atom::gen_pruefer(1));
  EXPECT_EQ(g.summands[2].atom, Atom::pruefer());
  EXPECT_THROW(GroupSpec(4, {}), Error);
}

TEST(ElementArithmetic, CyclicResidues) {
  auto g = cyc(2, 3);
  Element five = make_element(g, {{{0, 0}, cyclic_value(5)}});
  Element six = make_element(g, {{{0, 0}, cyclic_value(6)}});
  Element s = five + six;
  ASSERT_NE(s.at({0, 0}), nullptr);
  EXPECT_EQ(s.at({0, 0})->c[0], 3);
  EXPECT_TRUE((five - five).is_zero());
  EXPECT_EQ(scale(8, five), Element(g));
}

TEST(ElementArithmetic, PrueferFractions) {
  auto g = make_group(GroupSpec(2, {{Atom::pruefer(), 1}}));
  Element q = make_element(g, {{{0, 0}, pruefer_value(1, 2)}});
  Element h = q + q;
  EXPECT_EQ(h.at({0, 0})->c[0], 1);
  EXPECT_EQ(h.at({0, 0})->exp, 1);
  EXPECT_TRUE((h + h).is_zero());
  // non-canonical input is reduced: 2/8 == 1/4
  EXPECT_EQ(make_element(g, {{{0, 0}, pruefer_value(2, 3)}}), q);
}

TEST(ElementArithmetic, GenPrueferCarry) {
  // 2 a_2 + 2 a_2 = 4 a_2 = a_0 in H(w+1), p = 2
  auto g = make_group(GroupSpec(2, {{Atom::gen_pruefer(1), 1}}));
  Element x = make_element(g, {{{0, 0}, gen_pruefer_value({0, 0, 2})}});
  Element s = x + x;
  ASSERT_NE(s.at({0, 0}), nullptr);
  EXPECT_EQ(s.at({0, 0})->c, (std::vector<i64>{1}));
  EXPECT_TRUE((s + s).is_zero());
}

TEST(ElementArithmetic, MismatchedGroupThrows) {
  Element a = make_element(cyc(2, 3), {{{0, 0}, cyclic_value(1)}});
  Element b = make_element(cyc(2, 2), {{{0, 0}, cyclic_value(1)}});
  EXPECT_THROW(a + b, Error);
}

TEST(ElementArithmetic, CopyIndexChecked) {
  auto g = cyc(2, 1);
  EXPECT_THROW(make_element(g, {{{0, 1}, cyclic_value(1)}}), Error);
  auto inf = make_group(GroupSpec(2, {{Atom::cyclic(1), kAleph0}}));
  EXPECT_NO_THROW(make_element(inf, {{{0, 1000000}, cyclic_value(1)}}));
}

TEST(OrderExp, Examples) {
  auto g = cyc(2, 3);
  EXPECT_EQ(order_exp(Element(g)), 0);
  EXPECT_EQ(order_exp(make_element(g, {{{0, 0}, cyclic_value(2)}})), 2);
  auto h = make_group(GroupSpec(2, {{Atom::gen_pruefer(2), 1}}));
  EXPECT_EQ(order_exp(gen_pruefer_generator(h, {0, 0}, 0)), 2);
  EXPECT_EQ(order_exp(gen_pruefer_generator(h, {0, 0}, 3)), 5);
}

TEST(Subgroups, GenPrueferGeneratorOrder) {
  // <a_1> in H(w+1), p = 2: {0, a_1, a_0, a_1 + a_0}
  auto h = make_group(GroupSpec(2, {{Atom::gen_pruefer(1), 1}}));
  Element a1 = gen_pruefer_generator(h, {0, 0}, 1);
  Element a0 = gen_pruefer_generator(h, {0, 0}, 0);
  EXPECT_EQ(a1 + a1, a0);
  EXPECT_TRUE((a0 + a0).is_zero());
}
