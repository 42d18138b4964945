#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqg/algebra.hpp"

namespace pqg {

// Finite group given by its multiplication table.
struct GroupTable {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> mult;  // mult[i][j] = index of g_i g_j

  int order() const { return static_cast<int>(labels.size()); }
  void validate() const;
  int identity() const;
  int inverse(int g) const;
};

GroupTable cyclic_group(int n);
GroupTable symmetric_group_3();

// Finite groupoid: comp[i][j] = i after j, defined iff src(i) == tgt(j).
struct Groupoid {
  std::string name;
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::vector<int> src, tgt;
  std::vector<std::vector<int>> comp;  // -1 where undefined
  std::vector<int> identity;           // per object
  std::vector<int> inverse;            // per arrow

  int nobj() const { return static_cast<int>(objects.size()); }
  int narrows() const { return static_cast<int>(arrows.size()); }
  void validate() const;
};

Groupoid pair_groupoid(int n);
Groupoid group_groupoid(const GroupTable& g);
// Z2 acting on {1,2,3} by swapping 1 and 2; arrows (x, g) from x to g(x).
Groupoid action_groupoid_z2_swap12();

// A fixture: the graded algebra together with its comultiplication. The
// comultiplication maps e_i into the tensor square, stored as flat dim^2
// coordinate vectors. Negative fixtures that never reach the coalgebra
// stage carry an empty delta.
struct ZooEntry {
  PartialAlgebra alg;
  DeltaMap delta;
};

ZooEntry make_group_algebra(const GroupTable& g, int conductor,
                            const std::string& name);
ZooEntry make_fun_groupoid(const Groupoid& g, const std::string& name);
ZooEntry make_sweedler();
ZooEntry make_upper_triangular(int n);
ZooEntry make_broken_counit();
ZooEntry make_broken_canmap();

// Renames an entry in place: new algebra name, replacement object labels,
// and a prefix glued onto every basis label.
ZooEntry relabeled(ZooEntry e, const std::string& name,
                   const std::vector<std::string>& objects,
                   const std::string& basis_prefix);

ZooEntry direct_sum(const ZooEntry& a, const ZooEntry& b,
                    const std::string& name);

const std::vector<std::string>& zoo_names();
ZooEntry zoo_get(std::string_view name);

}  // namespace pqg
