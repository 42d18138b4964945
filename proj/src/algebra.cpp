#include "pqg/algebra.hpp"

#include <algorithm>
#include <cassert>

namespace pqg {

Vec PartialAlgebra::basis_vec(int i) const {
  Vec v(dim());
  v[i] = Cyc::one();
  return v;
}

Vec PartialAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec out(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      Cyc c = x[i] * y[j];
      for (const auto& [k, v] : prod(i, j)) out[k] += c * v;
    }
  }
  return out;
}

Vec PartialAlgebra::star_apply(const Vec& x) const {
  if (!star) throw Error(Errc::BadInput, "algebra has no star");
  Vec out(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    Cyc c = x[i].conj();
    for (int j = 0; j < dim(); ++j)
      if (!star->at(j, i).is_zero()) out[j] += c * star->at(j, i);
  }
  return out;
}

bool PartialAlgebra::grading_compatible(std::string* why) const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      const SpVec& p = prod(i, j);
      if (p.empty()) continue;
      if (grade[i].col_pair() != grade[j].row_pair()) {
        if (why)
          *why = "nonzero product " + basis[i] + "*" + basis[j] +
                 " across mismatched grades";
        return false;
      }
      GradeQuad expect{grade[i].r, grade[j].s, grade[i].t, grade[j].u};
      for (const auto& [k, v] : p) {
        (void)v;
        if (!(grade[k] == expect)) {
          if (why)
            *why = "product " + basis[i] + "*" + basis[j] +
                   " leaves its graded component";
          return false;
        }
      }
    }
  return true;
}

bool PartialAlgebra::associative(std::string* why) const {
  int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const SpVec& ij = prod(i, j);
      for (int l = 0; l < d; ++l) {
        SpVec left, right;
        for (const auto& [k, c] : ij) left = sp_add_scaled(left, prod(k, l), c);
        for (const auto& [m, c] : prod(j, l))
          right = sp_add_scaled(right, prod(i, m), c);
        if (left != right) {
          if (why)
            *why = "associativity fails on (" + basis[i] + "," + basis[j] +
                   "," + basis[l] + ")";
          return false;
        }
      }
    }
  return true;
}

bool PartialAlgebra::star_consistent(std::string* why) const {
  if (!star) {
    if (why) *why = "no star present";
    return false;
  }
  int d = dim();
  for (int i = 0; i < d; ++i) {
    Vec si = star_apply(basis_vec(i));
    for (int j = 0; j < d; ++j)
      if (!si[j].is_zero() && !(grade[j] == star_flip(grade[i]))) {
        if (why) *why = "star image of " + basis[i] + " breaks the grade flip";
        return false;
      }
    if (star_apply(si) != basis_vec(i)) {
      if (why) *why = "star is not involutive on " + basis[i];
      return false;
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // (e_i e_j)* with conjugated structure constants.
      Vec lhs(d);
      for (const auto& [k, c] : prod(i, j)) {
        Vec sk = star_apply(basis_vec(k));
        for (int m = 0; m < d; ++m) lhs[m] += c.conj() * sk[m];
      }
      Vec rhs = mul(star_apply(basis_vec(j)), star_apply(basis_vec(i)));
      if (lhs != rhs) {
        if (why)
          *why = "star is not anti-multiplicative on " + basis[i] + "," +
                 basis[j];
        return false;
      }
    }
  return true;
}

bool BaseUnits::unit_nonzero(int r, int t) const {
  for (const Cyc& c : at(r, t))
    if (!c.is_zero()) return true;
  return false;
}

Vec BaseUnits::one_lower(int t) const {
  Vec v(dim);
  for (int r = 0; r < nobj; ++r)
    for (int i = 0; i < dim; ++i) v[i] += at(r, t)[i];
  return v;
}

Vec BaseUnits::one_upper(int r) const {
  Vec v(dim);
  for (int t = 0; t < nobj; ++t)
    for (int i = 0; i < dim; ++i) v[i] += at(r, t)[i];
  return v;
}

Vec BaseUnits::total() const {
  Vec v(dim);
  for (const Vec& u : unit)
    for (int i = 0; i < dim; ++i) v[i] += u[i];
  return v;
}

BaseUnits base_units(const PartialAlgebra& a) {
  int d = a.dim();
  SparseEliminator el(d);
  for (int i = 0; i < d; ++i) {
    // e_i * x = e_i, one equation per output coordinate k.
    std::vector<SpVec> rows(d);
    for (int j = 0; j < d; ++j)
      for (const auto& [k, c] : a.prod(i, j)) rows[k].emplace_back(j, c);
    for (int k = 0; k < d; ++k) {
      if (!el.add(std::move(rows[k]), k == i ? Cyc::one() : Cyc()))
        throw Error(Errc::NoUnit, a.name + ": total algebra has no unit");
    }
    std::vector<SpVec> rows2(d);
    for (int j = 0; j < d; ++j)
      for (const auto& [k, c] : a.prod(j, i)) rows2[k].emplace_back(j, c);
    for (int k = 0; k < d; ++k) {
      if (!el.add(std::move(rows2[k]), k == i ? Cyc::one() : Cyc()))
        throw Error(Errc::NoUnit, a.name + ": total algebra has no unit");
    }
  }
  Vec one = el.solution();

  BaseUnits u;
  u.nobj = a.nobj();
  u.dim = d;
  u.unit.assign(static_cast<size_t>(u.nobj) * u.nobj, Vec(d));
  for (int i = 0; i < d; ++i) {
    if (one[i].is_zero()) continue;
    if (!a.grade[i].unit_diagonal())
      throw Error(Errc::NoUnit,
                  a.name + ": unit support leaves the diagonal grades");
    u.unit[a.grade[i].r * u.nobj + a.grade[i].t][i] = one[i];
  }

  // The load-bearing unit laws: 1(r,t) picks out row pair (r,t) from the
  // left, 1(s,u) picks out column pair (s,u) from the right.
  for (int r = 0; r < u.nobj; ++r)
    for (int t = 0; t < u.nobj; ++t) {
      const Vec& e = u.at(r, t);
      for (int j = 0; j < d; ++j) {
        Vec lhs = a.mul(e, a.basis_vec(j));
        bool keep = a.grade[j].row_pair() == std::make_pair(r, t);
        if (lhs != (keep ? a.basis_vec(j) : Vec(d)))
          throw Error(Errc::NoUnit,
                      a.name + ": grading inconsistent with the unit");
        Vec rhs = a.mul(a.basis_vec(j), e);
        bool keepc = a.grade[j].col_pair() == std::make_pair(r, t);
        if (rhs != (keepc ? a.basis_vec(j) : Vec(d)))
          throw Error(Errc::NoUnit,
                      a.name + ": grading inconsistent with the unit");
      }
    }
  return u;
}

namespace {

// Left nondegeneracy of the span of `set`: x in span with x*y = 0 for all
// y in span forces x = 0.
bool left_nondegenerate(const PartialAlgebra& a, const std::vector<int>& set) {
  int n = static_cast<int>(set.size());
  if (n == 0) return true;
  SparseEliminator el(n);
  for (int j : set) {
    std::vector<SpVec> rows(a.dim());
    for (int p = 0; p < n; ++p)
      for (const auto& [k, c] : a.prod(set[p], j)) rows[k].emplace_back(p, c);
    for (auto& r : rows)
      if (!r.empty()) el.add(std::move(r));
  }
  return el.rank() == n;
}

bool right_nondegenerate(const PartialAlgebra& a, const std::vector<int>& set) {
  int n = static_cast<int>(set.size());
  if (n == 0) return true;
  SparseEliminator el(n);
  for (int i : set) {
    std::vector<SpVec> rows(a.dim());
    for (int p = 0; p < n; ++p)
      for (const auto& [k, c] : a.prod(i, set[p])) rows[k].emplace_back(p, c);
    for (auto& r : rows)
      if (!r.empty()) el.add(std::move(r));
  }
  return el.rank() == n;
}

bool idempotent_span(const PartialAlgebra& a, const std::vector<int>& set) {
  int n = static_cast<int>(set.size());
  if (n == 0) return true;
  SparseEliminator el(a.dim());
  for (int i : set)
    for (int j : set) el.add(a.prod(i, j));
  return el.rank() == n;
}

}  // namespace

RegularityReport check_partial_regularity(const PartialAlgebra& a) {
  RegularityReport rep;
  std::vector<int> all(a.dim());
  for (int i = 0; i < a.dim(); ++i) all[i] = i;

  rep.nondegenerate_total =
      left_nondegenerate(a, all) && right_nondegenerate(a, all);
  rep.idempotent_total = idempotent_span(a, all);

  rep.nondegenerate_partial = true;
  rep.idempotent_partial = true;
  for (int r = 0; r < a.nobj(); ++r) {
    std::vector<int> col, row;
    for (int i = 0; i < a.dim(); ++i) {
      if (a.grade[i].u == r) col.push_back(i);
      if (a.grade[i].t == r) row.push_back(i);
    }
    rep.nondegenerate_partial = rep.nondegenerate_partial &&
                                left_nondegenerate(a, col) &&
                                right_nondegenerate(a, row);
    rep.idempotent_partial = rep.idempotent_partial && idempotent_span(a, col) &&
                             idempotent_span(a, row);
  }
  return rep;
}

Vec tensor_mul(const PartialAlgebra& a, const Vec& x, const Vec& y) {
  int d = a.dim();
  Vec out(static_cast<size_t>(d) * d);
  std::vector<int> xs, ys;
  for (int i = 0; i < d * d; ++i) {
    if (!x[i].is_zero()) xs.push_back(i);
    if (!y[i].is_zero()) ys.push_back(i);
  }
  for (int pi : xs) {
    int p = pi / d, q = pi % d;
    for (int rj : ys) {
      int r = rj / d, s = rj % d;
      const SpVec& m1 = a.prod(p, r);
      if (m1.empty()) continue;
      const SpVec& m2 = a.prod(q, s);
      if (m2.empty()) continue;
      Cyc c = x[pi] * y[rj];
      for (const auto& [m, c1] : m1) {
        Cyc cc = c * c1;
        for (const auto& [n, c2] : m2) out[flat(m, n, d)] += cc * c2;
      }
    }
  }
  return out;
}

Vec slice_second(const PartialAlgebra& a, const Vec& x, const Vec& omega) {
  int d = a.dim();
  Vec out(d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      const Cyc& v = x[flat(p, q, d)];
      if (!v.is_zero() && !omega[q].is_zero()) out[p] += v * omega[q];
    }
  return out;
}

Vec slice_first(const PartialAlgebra& a, const Vec& x, const Vec& omega) {
  int d = a.dim();
  Vec out(d);
  for (int p = 0; p < d; ++p) {
    if (omega[p].is_zero()) continue;
    for (int q = 0; q < d; ++q) {
      const Cyc& v = x[flat(p, q, d)];
      if (!v.is_zero()) out[q] += v * omega[p];
    }
  }
  return out;
}

bool TensorSquare::is_balanced(const Vec& full) const {
  for (int i = 0; i < dim * dim; ++i)
    if (!full[i].is_zero() && pair_at[i] < 0) return false;
  return true;
}

Vec TensorSquare::restrict_to_pairs(const Vec& full) const {
  if (!is_balanced(full))
    throw Error(Errc::BadInput, "tensor not supported on balanced pairs");
  Vec out(npairs());
  for (int i = 0; i < dim * dim; ++i)
    if (pair_at[i] >= 0) out[pair_at[i]] = full[i];
  return out;
}

Vec TensorSquare::extend(const Vec& pair_vec) const {
  Vec out(static_cast<size_t>(dim) * dim);
  for (int k = 0; k < npairs(); ++k)
    out[flat(pairs[k].first, pairs[k].second, dim)] = pair_vec[k];
  return out;
}

PartialAlgebra TensorSquare::pair_algebra(const PartialAlgebra& a) const {
  PartialAlgebra out;
  out.name = a.name + " (x) " + a.name;
  out.conductor = a.conductor;
  out.objects = a.objects;
  for (const auto& [i, j] : pairs) {
    out.basis.push_back(a.basis[i] + "(x)" + a.basis[j]);
    out.grade.push_back(
        {a.grade[i].r, a.grade[i].s, a.grade[j].t, a.grade[j].u});
  }
  int n = npairs();
  out.mult.assign(static_cast<size_t>(n) * n, {});
  for (int pi = 0; pi < n; ++pi)
    for (int pj = 0; pj < n; ++pj) {
      auto [i, j] = pairs[pi];
      auto [k, l] = pairs[pj];
      SpVec acc;
      for (const auto& [m, c1] : a.prod(i, k))
        for (const auto& [nn, c2] : a.prod(j, l)) {
          int idx = pair_at[flat(m, nn, dim)];
          assert(idx >= 0);
          acc.emplace_back(idx, c1 * c2);
        }
      out.set_prod(pi, pj, std::move(acc));
    }
  return out;
}

TensorSquare tensor_square(const PartialAlgebra& a, const BaseUnits& u) {
  TensorSquare ts;
  int d = a.dim();
  ts.dim = d;
  ts.pair_at.assign(static_cast<size_t>(d) * d, -1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (a.grade[i].lower_pair() == a.grade[j].upper_pair()) {
        ts.pair_at[flat(i, j, d)] = static_cast<int>(ts.pairs.size());
        ts.pairs.emplace_back(i, j);
      }
  ts.e_full.assign(static_cast<size_t>(d) * d, Cyc());
  for (int s = 0; s < a.nobj(); ++s) {
    Vec lo = u.one_lower(s), up = u.one_upper(s);
    for (int m = 0; m < d; ++m) {
      if (lo[m].is_zero()) continue;
      for (int n = 0; n < d; ++n)
        if (!up[n].is_zero()) ts.e_full[flat(m, n, d)] += lo[m] * up[n];
    }
  }
  if (!ts.is_balanced(ts.e_full))
    throw Error(Errc::BadInput, "idempotent E escapes the balanced pairs");
  return ts;
}

bool check_morphism(const Mat& f, const PartialAlgebra& a, const BaseUnits& ua,
                    const PartialAlgebra& b, const BaseUnits& ub,
                    std::string* why) {
  if (f.rows != b.dim() || f.cols != a.dim())
    throw Error(Errc::BadInput, "morphism matrix has wrong shape");
  if (a.objects != b.objects) {
    if (why) *why = "object sets differ";
    return false;
  }
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      Vec lhs(b.dim());
      for (const auto& [k, c] : a.prod(i, j))
        for (int m = 0; m < b.dim(); ++m) lhs[m] += c * f.at(m, k);
      Vec fi(b.dim()), fj(b.dim());
      for (int m = 0; m < b.dim(); ++m) {
        fi[m] = f.at(m, i);
        fj[m] = f.at(m, j);
      }
      if (lhs != b.mul(fi, fj)) {
        if (why)
          *why = "not multiplicative on " + a.basis[i] + "," + a.basis[j];
        return false;
      }
    }
  for (int r = 0; r < a.nobj(); ++r)
    for (int t = 0; t < a.nobj(); ++t) {
      Vec img = mat_apply(f, ua.at(r, t));
      if (img != ub.at(r, t)) {
        if (why)
          *why = "base unit (" + a.objects[r] + "," + a.objects[t] +
                 ") is not preserved";
        return false;
      }
    }
  return true;
}

}  // namespace pqg
