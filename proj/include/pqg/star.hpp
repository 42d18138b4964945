#pragma once

#include <array>
#include <complex>

#include "pqg/integrals.hpp"

namespace pqg {

// One joint eigenvector with its eigenvalue quadruple, ordered as
// (sigma_phi, S^2, left delta multiplication, right delta multiplication).
struct EigenLine {
  bool exact = true;
  Vec vector;                                  // filled in exact mode
  std::array<Cyc, 4> value{};                  // filled in exact mode
  std::vector<std::complex<double>> vector_f;  // filled in fallback mode
  std::array<double, 4> value_f{};             // embedded eigenvalues
};

struct StarCheckReport {
  bool star_axioms_ok = false;
  bool phi_selfadjoint = false;
  bool delta_selfadjoint = false;
  bool phi_positive = false;
  bool joint_eigenbasis_found = false;
  bool eigenvalues_positive = false;
  bool nu_trivial = false;
  bool psi_positive = false;
  std::vector<EigenLine> eigen;
  std::vector<std::string> failed_laws;
};

// Involution, anti-multiplicativity, grade flip, coproduct compatibility,
// the antipode identity S(S(a)*)* = a, functional and modular element
// self-adjointness. Failing laws are listed, nothing throws.
bool check_star_axioms(const QuantumGroupoid& qg, const ModularData& md,
                       std::vector<std::string>* failed_laws = nullptr);

// omega(e_i* e_j) must be exactly Hermitian and positive semidefinite in
// the complex embedding (eigenvalues above -1e-9 relative).
bool check_positivity(const QuantumGroupoid& qg, const GradedFunctional& omega);

// Joint eigenbasis of sigma_phi, S^2 and both delta multiplications,
// plus the flags above. Diagonalization is skipped unless phi is positive.
StarCheckReport diagonalize_structure_maps(const QuantumGroupoid& qg,
                                           const ModularData& md);

}  // namespace pqg
