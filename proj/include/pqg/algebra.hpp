#pragma once

#include "pqg/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pqg {

// Grade of a homogeneous element: quad (r,s,t,u) marks the component
// 1(r,t) * A * 1(s,u).
struct GradeQuad {
  int r = 0, s = 0, t = 0, u = 0;

  bool operator==(const GradeQuad&) const = default;

  std::pair<int, int> row_pair() const { return {r, t}; }
  std::pair<int, int> col_pair() const { return {s, u}; }
  std::pair<int, int> upper_pair() const { return {r, s}; }
  std::pair<int, int> lower_pair() const { return {t, u}; }

  // Shape of a base unit component of the total unit.
  bool unit_diagonal() const { return r == s && t == u; }
  // Shape of the counit support.
  bool counit_diagonal() const { return r == t && s == u; }
};

// Grade of a* given the grade of a: both index pairs flip.
inline GradeQuad star_flip(const GradeQuad& g) { return {g.s, g.r, g.u, g.t}; }

inline int flat(int p, int q, int dim) { return p * dim + q; }

// Finite-dimensional algebra graded over object pairs, given by structure
// constants. mult is stored flat at index i*dim+j.
struct PartialAlgebra {
  std::string name;
  int conductor = 1;
  std::vector<std::string> objects;
  std::vector<std::string> basis;
  std::vector<GradeQuad> grade;
  std::vector<SpVec> mult;
  std::optional<Mat> star;

  int dim() const { return static_cast<int>(basis.size()); }
  int nobj() const { return static_cast<int>(objects.size()); }

  const SpVec& prod(int i, int j) const { return mult[flat(i, j, dim())]; }
  void set_prod(int i, int j, SpVec v) {
    mult[flat(i, j, dim())] = sp_normalize(std::move(v));
  }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec basis_vec(int i) const;

  // Antilinear star applied to a coefficient vector.
  Vec star_apply(const Vec& x) const;

  bool grading_compatible(std::string* why = nullptr) const;
  bool associative(std::string* why = nullptr) const;
  bool star_consistent(std::string* why = nullptr) const;
};

// The total unit of A split into its graded diagonal components 1(r,t).
struct BaseUnits {
  int nobj = 0;
  int dim = 0;
  std::vector<Vec> unit;  // unit[r*nobj+t] = 1(r,t)

  const Vec& at(int r, int t) const { return unit[r * nobj + t]; }
  bool unit_nonzero(int r, int t) const;
  Vec one_lower(int t) const;  // 1_t = sum_r 1(r,t)
  Vec one_upper(int r) const;  // 1^r = sum_t 1(r,t)
  Vec total() const;
};

// Solves for the identity of the total algebra and decomposes it along the
// diagonal grades. Throws Error(NoUnit) when there is no identity or its
// support leaves the diagonal grades.
BaseUnits base_units(const PartialAlgebra& a);

struct RegularityReport {
  bool nondegenerate_partial = false;
  bool idempotent_partial = false;
  bool nondegenerate_total = false;
  bool idempotent_total = false;

  bool all() const {
    return nondegenerate_partial && idempotent_partial && nondegenerate_total &&
           idempotent_total;
  }
};

RegularityReport check_partial_regularity(const PartialAlgebra& a);

// Elements of A tensor A are dense vectors of length dim^2, entry (p,q) at
// flat(p,q,dim). The product is computed factor-wise and stays sparse.
Vec tensor_mul(const PartialAlgebra& a, const Vec& x, const Vec& y);

// (id (x) omega) and (omega (x) id) against a functional given by its basis
// values.
Vec slice_second(const PartialAlgebra& a, const Vec& x, const Vec& omega);
Vec slice_first(const PartialAlgebra& a, const Vec& x, const Vec& omega);

// The balanced sub-basis of A tensor A: pairs (i,j) with lower_pair(i) ==
// upper_pair(j), carrying the idempotent E = sum_s 1_s (x) 1^s.
struct TensorSquare {
  int dim = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> pair_at;  // flat(i,j) -> pair index or -1
  Vec e_full;

  int npairs() const { return static_cast<int>(pairs.size()); }
  bool is_balanced(const Vec& full) const;
  Vec restrict_to_pairs(const Vec& full) const;
  Vec extend(const Vec& pair_vec) const;

  // The pair basis as a PartialAlgebra in its own right, with grade
  // (i.r, i.s, j.t, j.u). Quadratic in the pair count, intended for small
  // instances and tests.
  PartialAlgebra pair_algebra(const PartialAlgebra& a) const;
};

TensorSquare tensor_square(const PartialAlgebra& a, const BaseUnits& u);

// Algebra morphism test: multiplicative and sends each base unit of a to
// the matching base unit of b. f maps coefficient vectors of a to b.
bool check_morphism(const Mat& f, const PartialAlgebra& a, const BaseUnits& ua,
                    const PartialAlgebra& b, const BaseUnits& ub,
                    std::string* why = nullptr);

// Comultiplication data: image of each basis vector in A tensor A, flat.
using DeltaMap = std::vector<Vec>;

}  // namespace pqg
