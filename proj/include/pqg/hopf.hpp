#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pqg/algebra.hpp"

namespace pqg {

// Sparse element of the triple tensor power, terms (p, q, r, coefficient).
using Triple = std::vector<std::tuple<int, int, int, Cyc>>;

Triple comult_then_first(const PartialAlgebra& a, const DeltaMap& delta,
                         int i);
Triple comult_then_second(const PartialAlgebra& a, const DeltaMap& delta,
                          int i);

struct ComultReport {
  bool balanced = false;
  bool multiplicative = false;
  bool coassociative = false;
  bool unit_compatible = false;
  std::string why;
  bool ok() const {
    return balanced && multiplicative && coassociative && unit_compatible;
  }
};

ComultReport check_comultiplication(const PartialAlgebra& a,
                                    const BaseUnits& u, const TensorSquare& ts,
                                    const DeltaMap& delta);

struct Counit {
  Vec eps;
  bool full_first_leg = false;
  bool full_second_leg = false;
};

Counit solve_counit(const PartialAlgebra& a, const BaseUnits& u,
                    const DeltaMap& delta);

// One of the four canonical maps, materialized on its graded pair bases.
struct CanMap {
  std::vector<std::pair<int, int>> dom, cod;
  Mat m;  // |cod| x |dom|
  int rank = 0;
  bool range_ok = false;   // images stay inside the codomain pairs
  bool kernel_ok = false;  // map vanishes on the complement of the domain
  bool bijective = false;
};

struct CanMaps {
  CanMap r, l, rc, lc;
  bool all_bijective() const {
    return r.bijective && l.bijective && rc.bijective && lc.bijective;
  }
};

CanMaps canonical_maps(const PartialAlgebra& a, const DeltaMap& delta);

// Source and target maps a -> sum_s eps(a 1^s) 1_s and sum_t eps(1_t a) 1^t.
Vec source_map(const PartialAlgebra& a, const BaseUnits& u, const Vec& eps,
               const Vec& x);
Vec target_map(const PartialAlgebra& a, const BaseUnits& u, const Vec& eps,
               const Vec& x);

struct Antipode {
  Mat s, sinv;
};

Antipode solve_antipode(const PartialAlgebra& a, const BaseUnits& u,
                        const DeltaMap& delta, const Vec& eps);

bool weak_bialgebra_identities(const PartialAlgebra& a, const BaseUnits& u,
                               const DeltaMap& delta, const Vec& eps,
                               std::string* why = nullptr);

struct Hyperobjects {
  std::vector<std::vector<int>> classes;  // sorted members, sorted by minimum
  std::vector<int> class_of;
  int nclasses() const { return static_cast<int>(classes.size()); }
};

Hyperobjects hyperobject_partition(const PartialAlgebra& a,
                                   const BaseUnits& u);

// A fully verified instance: algebra, comultiplication, counit, antipode,
// and hyperobject partition, with every axiom already checked.
struct QuantumGroupoid {
  PartialAlgebra alg;
  DeltaMap delta;
  BaseUnits units;
  TensorSquare ts;
  Vec eps;
  Mat S, Sinv;
  Hyperobjects hyper;

  int dim() const { return alg.dim(); }
  Vec s_apply(const Vec& x) const { return mat_apply(S, x); }
  Vec sinv_apply(const Vec& x) const { return mat_apply(Sinv, x); }
  Cyc eps_apply(const Vec& x) const;
};

QuantumGroupoid build_quantum_groupoid(const PartialAlgebra& a,
                                       const DeltaMap& delta);

}  // namespace pqg
