#pragma once

#include "pqg/cyclotomic.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace pqg {

using Vec = std::vector<Cyc>;

// Dense matrix over the scalar field, row major.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Cyc> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Cyc& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Cyc& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static Mat identity(int n);
  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  bool operator==(const Mat& o) const;
  bool is_zero() const;
};

Vec mat_apply(const Mat& m, const Vec& v);

int rank_dense(Mat m);
std::optional<Mat> inverse_dense(Mat m);
std::optional<Vec> solve_dense(const Mat& a, const Vec& b);

// Sparse vector, entries sorted by index with nonzero values.
using SpVec = std::vector<std::pair<int, Cyc>>;

// Sorts, merges duplicate indices and drops zeros.
SpVec sp_normalize(SpVec v);
SpVec sp_scaled(const SpVec& v, const Cyc& c);
// dst + c * src, both sorted.
SpVec sp_add_scaled(const SpVec& dst, const SpVec& src, const Cyc& c);
Cyc sp_dot_dense(const SpVec& v, const Vec& x);

// Incremental exact Gaussian elimination over the scalar field. Rows are
// reduced against the pivots seen so far; pivot rows are kept in echelon
// form with unit leading coefficient.
class SparseEliminator {
 public:
  explicit SparseEliminator(int ncols) : ncols_(ncols) {}

  // Adds the equation row * x = rhs. Returns false exactly when the row
  // makes the system inconsistent; the flag is sticky.
  bool add(SpVec row, Cyc rhs = Cyc());

  // True if the reduced row vanished, meaning it was linearly dependent on
  // the rows added before it. Inconsistency counts as dependent.
  bool add_detect_dependent(SpVec row, Cyc rhs = Cyc());

  bool consistent() const { return consistent_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  int nullity() const { return ncols_ - rank(); }

  // Particular solution with all free variables zero. Requires consistency.
  Vec solution() const;
  // Basis of the homogeneous solution space, one vector per free column.
  std::vector<Vec> nullspace() const;
  std::vector<int> free_columns() const;

 private:
  bool reduce_add(SpVec row, Cyc rhs, bool* dependent);

  struct PivotRow {
    SpVec row;
    Cyc rhs;
  };
  int ncols_;
  bool consistent_ = true;
  std::map<int, int> pivot_;
  std::vector<PivotRow> rows_;
};

int rank_sparse_exact(const std::vector<SpVec>& rows, int ncols);

// Rank of the row system modulo p. Returns nothing when an entry does not
// reduce, either because its conductor exceeds 1 or because a denominator
// vanishes mod p. A modular rank never exceeds the exact rank, so a full
// modular rank certifies full exact rank.
std::optional<int> rank_mod_p(const std::vector<SpVec>& rows, int ncols,
                              uint64_t p);

// Tries the fixed prime list; true certifies rank == min(#rows, ncols).
// False is inconclusive, callers fall back to the exact path.
bool certified_full_rank(const std::vector<SpVec>& rows, int ncols);

int rank_hybrid(const std::vector<SpVec>& rows, int ncols);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps, ascending.
std::vector<double> hermitian_eigenvalues(
    std::vector<std::vector<std::complex<double>>> a);

// Eigenvalues (ascending) with matching orthonormal eigenvectors.
struct HermitianEigensystem {
  std::vector<double> values;
  std::vector<std::vector<std::complex<double>>> vectors;
};
HermitianEigensystem hermitian_eigensystem(
    std::vector<std::vector<std::complex<double>>> a);

// Monic minimal polynomial of a square matrix, coefficients ascending.
std::vector<Cyc> minimal_polynomial(const Mat& m);

// All-rational view of a polynomial over the scalars, if it has one.
std::optional<std::vector<Rat>> rational_poly(const std::vector<Cyc>& p);

// Rational roots with multiplicity, found by the rational root bound and
// verified by exact division.
std::vector<std::pair<Rat, int>> rational_roots(std::vector<Rat> poly);

}  // namespace pqg
