#include <gtest/gtest.h>

#include "ppg/dsl.hpp"

using namespace ppg;

TEST(ParseGroup, Examples) {
  GroupSpec g = parse_group("Z(2^3)^2 + Z(2^inf)");
  EXPECT_EQ(g, GroupSpec(2, {{Atom::cyclic(3), 2}, {Atom::pruefer(), 1}}));
  EXPECT_EQ(parse_group("H(2,w+1)^aleph0"), GroupSpec(2, {{Atom::gen_pruefer(1), kAleph0}}));
  EXPECT_THROW(parse_group("Z(2^0)"), Error);
  EXPECT_THROW(parse_group("Z(4^1)"), Error);
  try {
    parse_group("Z(2^1) + Z(3^1)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MixedPrimeError);
  }
  EXPECT_EQ(parse_group("U(3)"), GroupSpec::universal_group(3));
  EXPECT_EQ(parse_group("Z(2)+Z(2^2)"), parse_group("Z(2^1) + Z(2^2)"));
  EXPECT_THROW(parse_group("Z(2^3"), Error);
}

TEST(ParseGroup, RoundTrip) {
  for (const char* text : {"Z(2^1) + Z(2^3)^2 + H(2,w+1) + H(2,w+3)^aleph0 + Z(2^inf)^4", "U(5)", "0(3)",
                           "Z(3^2)^aleph0 + U(3)"}) {
    GroupSpec g = parse_group(text);
    EXPECT_EQ(print_group(g), text);
    EXPECT_EQ(parse_group(print_group(g)), g);
  }
  // canonical order after parsing
  EXPECT_EQ(print_group(parse_group("Z(2^inf) + Z(2^3) + Z(2^1) + Z(2^3)")), "Z(2^1) + Z(2^3)^2 + Z(2^inf)");
}

TEST(ParseGroup, Torsion) {
  TorsionGroupSpec t = parse_torsion_group("Z(2^1) + Z(3^2) + Z(2^inf)");
  ASSERT_EQ(t.components.size(), 2u);
  EXPECT_EQ(t.components.at(2), GroupSpec(2, {{Atom::cyclic(1), 1}, {Atom::pruefer(), 1}}));
  EXPECT_EQ(print_torsion_group(t), "Z(2^1) + Z(2^inf) + Z(3^2)");
}

TEST(ParseElement, Forms) {
  auto z8 = make_group(parse_group("Z(2^3)"));
  EXPECT_EQ(parse_element("10", z8), make_element(z8, {{{0, 0}, cyclic_value(2)}}));
  auto g = make_group(parse_group("Z(2^1) + Z(2^2) + Z(2^inf) + H(2,w+1)"));
  Element x = parse_element("(1, 3, 3a1+a0, 3/8)", g);
  EXPECT_EQ(print_element(x), "(1, 3, a1, 3/8)");
  EXPECT_EQ(parse_element("{2.0: a1, 3.0: -5/8}", g), parse_element("(0, 0, a1, 3/8)", g));
  EXPECT_EQ(parse_element(print_element(x), g), x);
  EXPECT_THROW(parse_element("(1, 2)", g), Error);
  auto u = make_group(GroupSpec::universal_group(2));
  Element y = parse_element("{3.7: 1, 0.2: 1/2}", u);
  EXPECT_EQ(print_element(y), "{0.2: 1/2, 3.7: 1}");
  EXPECT_EQ(parse_element(print_element(y), u), y);
  EXPECT_EQ(print_tuple(parse_tuple("[2, 0, 7]", z8)), "[2, 0, 7]");
}

TEST(ParseFormula, Examples) {
  auto f = parse_formula("2^2 | x1");
  ASSERT_TRUE(std::holds_alternative<Simplified>(f));
  EXPECT_EQ(std::get<Simplified>(f).conjuncts, (std::vector<DivAtom>{DivAtom{4, {1}}}));
  auto z = parse_formula("0 = x1");
  EXPECT_EQ(std::get<Simplified>(z).conjuncts, (std::vector<DivAtom>{DivAtom::zero({1})}));
  auto q = parse_formula("E w: 2 w = x1");
  ASSERT_TRUE(std::holds_alternative<Quantified>(q));
  EXPECT_EQ(pp_simplify(std::get<Quantified>(q)).conjuncts, (std::vector<DivAtom>{DivAtom{2, {1}}}));
  EXPECT_THROW(parse_formula("2 | x3", 2), Error);
  EXPECT_THROW(parse_formula("2 | y"), Error);
}

TEST(ParseFormula, RoundTrip) {
  for (const char* text : {"2^3 | 3 x1 - x2 & 2 x1 = 0", "true", "6 | x1 + x2", "E w1, w2: -2 x1 + 4 w1 = 0 & x2 + 3 w2 = 0",
                           "E w1: true"}) {
    PpFormula f = parse_formula(text);
    EXPECT_EQ(print_formula(f), text);
    EXPECT_EQ(parse_formula(print_formula(f), arity(f)), f);
  }
  PpFormula mixed = parse_formula("E w: 2 w = x1 & 4 | x2");
  const auto& q = std::get<Quantified>(mixed);
  EXPECT_EQ(q.B.cols, 2u);
  EXPECT_EQ(pp_simplify(q).conjuncts.size(), 2u);
}

TEST(ParseGroup, TorsionComponentTriples) {
  TorsionGroupSpec t = parse_torsion_group("Z(2^1) + Z(3^2) + Z(2^3) + Z(3^inf)");
  auto g3 = make_group(t.components.at(3));
  auto alone = make_group(parse_group("Z(3^inf) + Z(3^2)"));
  EXPECT_EQ(*g3, *alone);
  for (const char* tup : {"[(3, 0)]", "[(1, 1/3), (0, 2/9)]", "[(2, 0), (3, 1/3)]"})
    EXPECT_EQ(pp_type_triple(g3, parse_tuple(tup, g3)), pp_type_triple(alone, parse_tuple(tup, alone)));
  EXPECT_THROW(parse_torsion_group("Z(2^1) + Z(4^1)"), Error);
}
