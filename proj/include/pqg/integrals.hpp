#pragma once

#include "pqg/hopf.hpp"

namespace pqg {

// Linear functional together with the graded support it lives on.
struct GradedFunctional {
  Vec covector;
  std::vector<GradeQuad> support;  // quads carrying the nonzero coordinates
  Cyc apply(const Vec& x) const;
};

// Collects the support quads of the nonzero coordinates.
GradedFunctional make_graded_functional(const PartialAlgebra& a, Vec covector);

// Faithful left invariant functional, normalized per hyperobject class.
GradedFunctional solve_left_invariant(const QuantumGroupoid& qg);

// Right invariant functional, taken as phi o S and verified.
GradedFunctional solve_right_invariant(const QuantumGroupoid& qg,
                                       const GradedFunctional& phi);

// G_{ij} = omega(e_i e_j).
Mat gram_matrix(const PartialAlgebra& a, const Vec& omega);

struct SupportReport {
  std::vector<int> objects;  // objects where the functional is supported
  int right_kernel_dim = 0;
  int left_kernel_dim = 0;
};

// Support objects of an invariant functional plus the verified kernel shape.
SupportReport support_indices(const QuantumGroupoid& qg,
                              const GradedFunctional& omega);

// The unique f over the objects with phi2 = phi(- s(f)).
Vec compare_invariant_functionals(const QuantumGroupoid& qg,
                                  const GradedFunctional& phi,
                                  const GradedFunctional& phi2);

// sigma with omega(ab) = omega(b sigma(a)), an algebra automorphism fixing
// the base units.
Mat solve_modular_automorphism(const QuantumGroupoid& qg,
                               const GradedFunctional& omega);

struct ModularElement {
  Vec delta;          // phi(S(a)) = phi(a delta) for all a
  Vec delta_inv;
  Vec delta_phi_psi;  // psi = phi(- delta_phi_psi)
  Vec mu;             // over objects, delta_phi_psi = t(mu) delta
};

ModularElement solve_modular_element(const QuantumGroupoid& qg,
                                     const GradedFunctional& phi,
                                     const GradedFunctional& psi);

// nu over the objects, constant on hyperobject classes, with
// phi o S^2 = phi(- s(nu)).
Vec solve_scaling_element(const QuantumGroupoid& qg,
                          const GradedFunctional& phi,
                          const GradedFunctional& psi, const Mat& sigma_phi,
                          const ModularElement& me);

struct ModularData {
  GradedFunctional phi, psi;
  Mat sigma_phi, sigma_psi;
  ModularElement element;
  Vec nu;
};

ModularData modular_data(const QuantumGroupoid& qg);

struct ModularIdentityReport {
  bool coprod_sigma_phi = false;  // D sigma_phi = (S^2 (x) sigma_phi) D
  bool coprod_sigma_psi = false;  // D sigma_psi = (sigma_psi (x) S^-2) D
  bool pairwise_commute = false;  // S^2, sigma_phi, sigma_psi commute
  bool coprod_s2 = false;         // D S^2 = (sigma_phi (x) sigma_psi^-1) D
  bool sigma_conjugate = false;   // sigma_psi = delta sigma_phi(-) delta^-1
  bool all() const {
    return coprod_sigma_phi && coprod_sigma_psi && pairwise_commute &&
           coprod_s2 && sigma_conjugate;
  }
};

ModularIdentityReport check_modular_identities(const QuantumGroupoid& qg,
                                               const ModularData& md);

}  // namespace pqg
