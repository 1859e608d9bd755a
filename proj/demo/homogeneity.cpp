// Strong homogeneity verdicts, a pure-injective hull, and an automorphism
// extending a partial pure isomorphism.
#include <iostream>

#include "ppg/ppg.hpp"

using namespace ppg;

int main() {
  for (const char* g : {"U(2)", "H(2,w+1)^3", "H(2,w+1) + Z(2^inf)", "H(2,w+1) + H(2,w+2)"}) {
    auto m = make_group(parse_group(g));
    HomogeneityVerdict v = classify_homogeneous(m);
    std::cout << g << ": " << cert::kind_name(v.kind);
    if (v.kind == HomogeneityVerdict::Kind::CaseB) std::cout << " n = " << v.n;
    if (v.a) std::cout << "  a = " << print_element(*v.a) << ", b = " << print_element(*v.b) << ", alpha = " << v.alpha.str();
    std::cout << "\n";
  }

  auto m = make_group(parse_group("Z(2^1) + Z(2^3) + Z(2^inf)"));
  auto b = parse_tuple("[(1, 2, 1/2)]", m);
  HullResult r = hull(m, subgroup_generated(m, b));
  std::cout << "hull of <" << print_element(b[0]) << "> = " << print_group(*r.hull) << ", s = " << r.stabilization
            << ", triple preserved: " << r.triple_preserved << "\n";

  auto d = make_group(parse_group("Z(2^1) + Z(2^2) + Z(2^inf)"));
  auto x = parse_tuple("[(1, 1, 1/4)]", d), y = parse_tuple("[(0, 3, 3/4)]", d);
  AutomorphismWitness w = extend_partial_iso(d, x, y);
  std::cout << "extension verified: " << verify_witness(w) << "\n";
  for (const char* z : {"(1, 0, 0)", "(0, 1, 0)", "(0, 0, 1/8)"})
    std::cout << "  " << z << " -> " << print_element(apply(w.forward, parse_element(z, d))) << "\n";
}
