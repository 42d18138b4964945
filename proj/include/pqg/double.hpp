#pragma once

#include <utility>
#include <vector>

#include "pqg/dual.hpp"

namespace pqg {

// The Drinfeld double of a finite instance whose partial units are all
// elements. Its basis is the normal-ordered words e_i w_j over the pairs
// whose inner grades match (col pair of e_i = row pair of w_j); the product
// moves w past g with
//   w g = g_(2) w(g_(3) - S^-1(g_(1)))
// expanded through the triple coproduct and the dual pairing, the coproduct
// acts legwise as Delta(a) Delta_dual(w), and counit, antipode and both
// invariant functionals factor through the copies. Construction verifies
// that the reverse ordering w_j e_i spans the same dimension and that the
// two change-of-order expansions are mutually inverse, that the interchange
// acts coherently on the witness module b (x) chi with
//   a . (b (x) chi) = ab (x) chi,
//   w . (b (x) chi) = b_(2) (x) w(b_(3) - S^-1(b_(1))) chi,
// and that the represented normal-ordered words stay independent there;
// violations throw InterchangeInconsistent. Every error is rethrown with a
// "double: " prefix.
struct DoubleQuantumGroupoid {
  QuantumGroupoid qg;
  std::vector<std::pair<int, int>> pairs;  // basis: (source index, dual index)
  Mat a_copy;  // column i = the double element carrying e_i
  Mat u_copy;  // column j = the double element carrying w_j
  QuantumGroupoid src;
  DualQuantumGroupoid dual;
  ModularData md;  // solved independently on the double
};

DoubleQuantumGroupoid build_double(const QuantumGroupoid& qg,
                                   const ModularData& md);
DoubleQuantumGroupoid build_double(const QuantumGroupoid& qg);

// Exact modular dictionary of the double: sigma restricted to the source
// copy is S^2 and restricted to the dual copy is the dual S^2, the modular
// element is (dual modular element) * (source modular element) with the two
// scaling contributions cancelling, and the scaling constants of the double
// are all 1.
bool check_double_modular(const DoubleQuantumGroupoid& dd);

// Star structure (aw)* = w* a* when the source carries one: verifies the
// star axioms on the double and positivity of its left functional, then
// checks the factorized sesquilinear form
//   phi_D((w_j e_i)* w_l e_k) = phi_dual(w_j* w_l) phi(S^-2(e_k) e_i*)
// over all reverse-ordered words. Returns false when the source has no
// star.
bool double_star(const DoubleQuantumGroupoid& dd);

}  // namespace pqg
