// Heights in H(w+1), its truncations, and the pure embedding into the
// universal 2-group.
#include <iostream>

#include "ppg/ppg.hpp"

using namespace ppg;

int main() {
  auto h = make_group(parse_group("H(2,w+1)"));
  for (const char* x : {"a0", "a1", "a2", "a1+a2", "a3"}) {
    Element e = parse_element(x, h);
    std::cout << "h(" << x << ") = " << height(e).str() << ", Ulm sequence:";
    for (const auto& o : ulm_sequence(e)) std::cout << " " << o.str();
    std::cout << "\n";
  }

  for (int N = 1; N <= 4; ++N) std::cout << "H^(" << N << ") = " << print_group(*truncate(1, N, 2).group) << "\n";

  GenRuleMap f = universal_embed(h);
  for (int m = 0; m <= 3; ++m) {
    Element a = gen_pruefer_generator(h, {0, 0}, m);
    std::cout << "a" << m << " -> " << print_element(apply(f, a)) << "\n";
  }
  if (auto v = reduced_part_violation(f)) std::cout << "reduced-part violation at " << print_element(*v) << "\n";

  PurityScope scope;
  scope.truncations = {{{0, 0}, 3}};
  scope.depth = 7;
  PurityCertificate c = is_pure_embedding(f, scope);
  std::cout << "purity on H^(3), depth 7: " << (c.pure ? "pure" : "NOT pure") << " (" << c.checked << " elements)\n";
}
