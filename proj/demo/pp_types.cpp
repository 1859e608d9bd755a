// pp-types of tuples in a finite-plus-Pruefer group, and the census of
// triples realised by single elements of bounded order.
#include <iostream>

#include "ppg/ppg.hpp"

using namespace ppg;

int main() {
  auto m = make_group(parse_group("Z(2^1) + Z(2^2) + Z(2^3) + Z(2^inf)"));
  std::cout << "M = " << print_group(*m) << "\n";

  for (const char* t : {"[(0, 0, 2, 0)]", "[(1, 2, 0, 0)]", "[(0, 0, 4, 1/2)]"}) {
    auto a = parse_tuple(t, m);
    TypeTriple tr = pp_type_triple(m, a);
    std::cout << t << ": m = " << tr.m << ", K = " << tr.stabilization() << ", heights of multiples:";
    for (int k = 0; k <= tr.m; ++k) std::cout << " " << height(scale(ipow(2, k), a[0])).str();
    std::cout << "\n";
  }

  // the quantifier in E w: 4 w = 2 x1 does not reduce to 2 | x1
  PpFormula phi = parse_formula("E w: 4 w = 2 x1", 1);
  std::cout << print_formula(phi) << "  ~>  " << print_formula(PpFormula(as_simplified(phi))) << "\n";
  auto z2 = make_group(parse_group("Z(2)"));
  auto one = parse_tuple("[1]", z2);
  std::cout << "  on 1 in Z(2): " << pp_eval(z2, phi, one) << " vs 2 | x1: " << pp_eval(z2, parse_formula("2 | x1"), one) << "\n";

  auto census = enumerate_type_witnesses(2, 1, 1, m);
  std::cout << census.size() << " triples for elements of order <= 2:\n";
  for (const auto& [t, w] : census) std::cout << "  " << print_tuple(w) << "  K = " << t.stabilization() << "\n";
}
