#include "pqg/hopf.hpp"

#include <map>

namespace pqg {

namespace {

std::vector<std::pair<int, Cyc>> sparse_of(const Vec& v) {
  std::vector<std::pair<int, Cyc>> out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

Vec column(const Mat& m, int j) {
  Vec v(m.rows);
  for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
  return v;
}

Cyc dot(const Vec& a, const Vec& b) {
  Cyc s;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

}  // namespace

Triple comult_then_first(const PartialAlgebra& a, const DeltaMap& delta,
                         int i) {
  int d = a.dim();
  std::map<std::tuple<int, int, int>, Cyc> acc;
  for (const auto& [pq, c] : sparse_of(delta[i])) {
    int p = pq / d, q = pq % d;
    for (const auto& [ab, c2] : sparse_of(delta[p]))
      acc[{ab / d, ab % d, q}] += c * c2;
  }
  Triple out;
  for (auto& [key, c] : acc)
    if (!c.is_zero())
      out.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key),
                       c);
  return out;
}

Triple comult_then_second(const PartialAlgebra& a, const DeltaMap& delta,
                          int i) {
  int d = a.dim();
  std::map<std::tuple<int, int, int>, Cyc> acc;
  for (const auto& [pq, c] : sparse_of(delta[i])) {
    int p = pq / d, q = pq % d;
    for (const auto& [ab, c2] : sparse_of(delta[q]))
      acc[{p, ab / d, ab % d}] += c * c2;
  }
  Triple out;
  for (auto& [key, c] : acc)
    if (!c.is_zero())
      out.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key),
                       c);
  return out;
}

ComultReport check_comultiplication(const PartialAlgebra& a,
                                    const BaseUnits& u, const TensorSquare& ts,
                                    const DeltaMap& delta) {
  int d = a.dim();
  if (static_cast<int>(delta.size()) != d)
    throw Error(Errc::BadInput, "comultiplication has wrong arity");
  for (const Vec& v : delta)
    if (static_cast<int>(v.size()) != d * d)
      throw Error(Errc::BadInput, "comultiplication image has wrong size");

  ComultReport rep;
  rep.balanced = true;
  for (int i = 0; i < d && rep.balanced; ++i)
    if (!ts.is_balanced(delta[i])) {
      rep.balanced = false;
      rep.why = "image of " + a.basis[i] + " is not balanced";
    }

  rep.multiplicative = true;
  for (int i = 0; i < d && rep.multiplicative; ++i)
    for (int j = 0; j < d && rep.multiplicative; ++j) {
      Vec lhs = tensor_mul(a, delta[i], delta[j]);
      Vec rhs(static_cast<size_t>(d) * d);
      for (const auto& [k, c] : a.prod(i, j))
        for (int m = 0; m < d * d; ++m)
          if (!delta[k][m].is_zero()) rhs[m] += c * delta[k][m];
      if (lhs != rhs) {
        rep.multiplicative = false;
        rep.why = "comultiplication is not multiplicative on " + a.basis[i] +
                  "," + a.basis[j];
      }
    }

  rep.coassociative = true;
  for (int i = 0; i < d && rep.coassociative; ++i)
    if (comult_then_first(a, delta, i) != comult_then_second(a, delta, i)) {
      rep.coassociative = false;
      rep.why = "coassociativity fails on " + a.basis[i];
    }

  rep.unit_compatible = true;
  int nobj = a.nobj();
  for (int r = 0; r < nobj && rep.unit_compatible; ++r)
    for (int s = 0; s < nobj && rep.unit_compatible; ++s) {
      Vec lhs(static_cast<size_t>(d) * d);
      const Vec& unit = u.at(r, s);
      for (int i = 0; i < d; ++i)
        if (!unit[i].is_zero())
          for (int m = 0; m < d * d; ++m)
            if (!delta[i][m].is_zero()) lhs[m] += unit[i] * delta[i][m];
      Vec rhs(static_cast<size_t>(d) * d);
      for (int t = 0; t < nobj; ++t) {
        const Vec& x = u.at(r, t);
        const Vec& y = u.at(t, s);
        for (int m = 0; m < d; ++m) {
          if (x[m].is_zero()) continue;
          for (int n = 0; n < d; ++n)
            if (!y[n].is_zero()) rhs[flat(m, n, d)] += x[m] * y[n];
        }
      }
      if (lhs != rhs) {
        rep.unit_compatible = false;
        rep.why = "base unit (" + a.objects[r] + "," + a.objects[s] +
                  ") has the wrong image";
      }
    }
  return rep;
}

Counit solve_counit(const PartialAlgebra& a, const BaseUnits& u,
                    const DeltaMap& delta) {
  int d = a.dim();
  SparseEliminator el(d);
  for (int q = 0; q < d; ++q)
    if (!a.grade[q].counit_diagonal()) el.add({{q, Cyc::one()}});
  for (int i = 0; i < d; ++i) {
    std::vector<SpVec> rows(d), cols(d);
    for (const auto& [pq, c] : sparse_of(delta[i])) {
      rows[pq / d].emplace_back(pq % d, c);
      cols[pq % d].emplace_back(pq / d, c);
    }
    for (int p = 0; p < d; ++p) {
      if (!el.add(sp_normalize(std::move(rows[p])),
                  p == i ? Cyc::one() : Cyc()))
        throw Error(Errc::NoCounit,
                    a.name + ": counit system is inconsistent");
      if (!el.add(sp_normalize(std::move(cols[p])),
                  p == i ? Cyc::one() : Cyc()))
        throw Error(Errc::NoCounit,
                    a.name + ": counit system is inconsistent");
    }
  }
  if (el.nullity() > 0)
    throw Error(Errc::NonUniqueCounit,
                a.name + ": counit solution space has dimension " +
                    std::to_string(el.nullity()));
  Counit c;
  c.eps = el.solution();

  // A vanishing slice is only legitimate for a vanishing base unit.
  for (int r = 0; r < a.nobj(); ++r) {
    bool unit_nonzero = false;
    for (const Cyc& v : u.one_lower(r)) unit_nonzero |= !v.is_zero();
    bool col_nonzero = false, row_nonzero = false;
    for (int i = 0; i < d; ++i) {
      if (c.eps[i].is_zero()) continue;
      col_nonzero |= a.grade[i].u == r;
      row_nonzero |= a.grade[i].t == r;
    }
    if (col_nonzero != unit_nonzero || row_nonzero != unit_nonzero)
      throw Error(Errc::NoCounit, a.name + ": counit vanishes on the slice of " +
                                      a.objects[r]);
  }

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (a.grade[i].col_pair() != a.grade[j].row_pair()) continue;
      Cyc lhs;
      for (const auto& [k, v] : a.prod(i, j)) lhs += v * c.eps[k];
      if (lhs != c.eps[i] * c.eps[j])
        throw Error(Errc::NoCounit, a.name + ": counit is not multiplicative on " +
                                        a.basis[i] + "," + a.basis[j]);
    }

  std::vector<SpVec> first, second;
  for (int i = 0; i < d; ++i) {
    std::vector<SpVec> rows(d), cols(d);
    for (const auto& [pq, c2] : sparse_of(delta[i])) {
      rows[pq % d].emplace_back(pq / d, c2);
      cols[pq / d].emplace_back(pq % d, c2);
    }
    for (auto& v : rows)
      if (!v.empty()) first.push_back(sp_normalize(std::move(v)));
    for (auto& v : cols)
      if (!v.empty()) second.push_back(sp_normalize(std::move(v)));
  }
  c.full_first_leg = rank_hybrid(first, d) == d;
  c.full_second_leg = rank_hybrid(second, d) == d;
  return c;
}

namespace {

struct CanSpec {
  bool (*dom)(const GradeQuad&, const GradeQuad&);
  bool (*cod)(const GradeQuad&, const GradeQuad&);
  // Image of e_i (x) e_j written into a flat vector.
  Vec (*image)(const PartialAlgebra&, const DeltaMap&, int, int);
};

Vec can_r_image(const PartialAlgebra& a, const DeltaMap& delta, int i,
                int j) {
  int d = a.dim();
  Vec out(static_cast<size_t>(d) * d);
  for (const auto& [pq, c] : sparse_of(delta[i]))
    for (const auto& [k, c2] : a.prod(pq % d, j))
      out[flat(pq / d, k, d)] += c * c2;
  return out;
}

Vec can_l_image(const PartialAlgebra& a, const DeltaMap& delta, int i,
                int j) {
  int d = a.dim();
  Vec out(static_cast<size_t>(d) * d);
  for (const auto& [pq, c] : sparse_of(delta[j]))
    for (const auto& [k, c2] : a.prod(i, pq / d))
      out[flat(k, pq % d, d)] += c * c2;
  return out;
}

Vec can_rc_image(const PartialAlgebra& a, const DeltaMap& delta, int i,
                 int j) {
  int d = a.dim();
  Vec out(static_cast<size_t>(d) * d);
  for (const auto& [pq, c] : sparse_of(delta[i]))
    for (const auto& [k, c2] : a.prod(pq / d, j))
      out[flat(pq % d, k, d)] += c * c2;
  return out;
}

Vec can_lc_image(const PartialAlgebra& a, const DeltaMap& delta, int i,
                 int j) {
  int d = a.dim();
  Vec out(static_cast<size_t>(d) * d);
  for (const auto& [pq, c] : sparse_of(delta[j]))
    for (const auto& [k, c2] : a.prod(i, pq % d))
      out[flat(k, pq / d, d)] += c * c2;
  return out;
}

CanMap build_can(const PartialAlgebra& a, const DeltaMap& delta,
                 const CanSpec& spec) {
  int d = a.dim();
  CanMap cm;
  std::vector<int> cod_index(static_cast<size_t>(d) * d, -1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (spec.dom(a.grade[i], a.grade[j])) cm.dom.emplace_back(i, j);
      if (spec.cod(a.grade[i], a.grade[j])) {
        cod_index[flat(i, j, d)] = static_cast<int>(cm.cod.size());
        cm.cod.emplace_back(i, j);
      }
    }
  cm.range_ok = true;
  cm.kernel_ok = true;
  int nd = static_cast<int>(cm.dom.size());
  int nc = static_cast<int>(cm.cod.size());
  cm.m = Mat(nc, nd);
  std::vector<SpVec> rows;
  for (int col = 0; col < nd; ++col) {
    Vec img = spec.image(a, delta, cm.dom[col].first, cm.dom[col].second);
    SpVec row;
    for (int m = 0; m < d * d; ++m) {
      if (img[m].is_zero()) continue;
      if (cod_index[m] < 0) {
        cm.range_ok = false;
        continue;
      }
      cm.m.at(cod_index[m], col) = img[m];
      row.emplace_back(cod_index[m], img[m]);
    }
    rows.push_back(std::move(row));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (spec.dom(a.grade[i], a.grade[j])) continue;
      Vec img = spec.image(a, delta, i, j);
      for (const Cyc& c : img)
        if (!c.is_zero()) cm.kernel_ok = false;
    }
  cm.rank = rank_hybrid(rows, nc);
  cm.bijective = cm.range_ok && cm.kernel_ok && nd == nc && cm.rank == nd;
  return cm;
}

}  // namespace

CanMaps canonical_maps(const PartialAlgebra& a, const DeltaMap& delta) {
  CanMaps out;
  out.r = build_can(
      a, delta,
      {[](const GradeQuad& gi, const GradeQuad& gj) { return gi.u == gj.t; },
       [](const GradeQuad& gk, const GradeQuad& gl) { return gk.t == gl.r; },
       can_r_image});
  out.l = build_can(
      a, delta,
      {[](const GradeQuad& gi, const GradeQuad& gj) { return gi.s == gj.r; },
       [](const GradeQuad& gk, const GradeQuad& gl) { return gk.u == gl.s; },
       can_l_image});
  out.rc = build_can(
      a, delta,
      {[](const GradeQuad& gi, const GradeQuad& gj) { return gi.s == gj.r; },
       [](const GradeQuad& gk, const GradeQuad& gl) { return gk.r == gl.t; },
       can_rc_image});
  out.lc = build_can(
      a, delta,
      {[](const GradeQuad& gi, const GradeQuad& gj) { return gi.u == gj.t; },
       [](const GradeQuad& gk, const GradeQuad& gl) { return gk.s == gl.u; },
       can_lc_image});
  return out;
}

Vec source_map(const PartialAlgebra& a, const BaseUnits& u, const Vec& eps,
               const Vec& x) {
  Vec out(a.dim());
  for (int s = 0; s < a.nobj(); ++s) {
    Cyc v = dot(eps, a.mul(x, u.one_upper(s)));
    if (v.is_zero()) continue;
    Vec lo = u.one_lower(s);
    for (int i = 0; i < a.dim(); ++i) out[i] += v * lo[i];
  }
  return out;
}

Vec target_map(const PartialAlgebra& a, const BaseUnits& u, const Vec& eps,
               const Vec& x) {
  Vec out(a.dim());
  for (int t = 0; t < a.nobj(); ++t) {
    Cyc v = dot(eps, a.mul(u.one_lower(t), x));
    if (v.is_zero()) continue;
    Vec up = u.one_upper(t);
    for (int i = 0; i < a.dim(); ++i) out[i] += v * up[i];
  }
  return out;
}

namespace {

// Applies one of the tilde canonical maps or its proposed inverse, built
// from S, to a flat tensor.
Vec apply_wcan(const PartialAlgebra& a, const DeltaMap& delta, const Vec& x,
               int kind, const Mat* s) {
  int d = a.dim();
  Vec out(static_cast<size_t>(d) * d);
  for (const auto& [ij, c] : sparse_of(x)) {
    int i = ij / d, j = ij % d;
    switch (kind) {
      case 0: {  // Delta(a)(1 (x) b)
        Vec img = can_r_image(a, delta, i, j);
        for (int m = 0; m < d * d; ++m)
          if (!img[m].is_zero()) out[m] += c * img[m];
        break;
      }
      case 1: {  // a_(1) (x) S(a_(2)) b
        for (const auto& [pq, c2] : sparse_of(delta[i]))
          for (const auto& [m, cs] : sparse_of(column(*s, pq % d)))
            for (const auto& [k, c3] : a.prod(m, j))
              out[flat(pq / d, k, d)] += c * c2 * cs * c3;
        break;
      }
      case 2: {  // (a (x) 1) Delta(b)
        Vec img = can_l_image(a, delta, i, j);
        for (int m = 0; m < d * d; ++m)
          if (!img[m].is_zero()) out[m] += c * img[m];
        break;
      }
      case 3: {  // a S(b_(1)) (x) b_(2)
        for (const auto& [pq, c2] : sparse_of(delta[j]))
          for (const auto& [m, cs] : sparse_of(column(*s, pq / d)))
            for (const auto& [k, c3] : a.prod(i, m))
              out[flat(k, pq % d, d)] += c * c2 * cs * c3;
        break;
      }
      case 4: {  // Deltaop(a)(1 (x) b)
        Vec img = can_rc_image(a, delta, i, j);
        for (int m = 0; m < d * d; ++m)
          if (!img[m].is_zero()) out[m] += c * img[m];
        break;
      }
      case 5: {  // a_(2) (x) Sinv(a_(1)) b
        for (const auto& [pq, c2] : sparse_of(delta[i]))
          for (const auto& [m, cs] : sparse_of(column(*s, pq / d)))
            for (const auto& [k, c3] : a.prod(m, j))
              out[flat(pq % d, k, d)] += c * c2 * cs * c3;
        break;
      }
      case 6: {  // (a (x) 1) Deltaop(b)
        Vec img = can_lc_image(a, delta, i, j);
        for (int m = 0; m < d * d; ++m)
          if (!img[m].is_zero()) out[m] += c * img[m];
        break;
      }
      case 7: {  // a Sinv(b_(2)) (x) b_(1)
        for (const auto& [pq, c2] : sparse_of(delta[j]))
          for (const auto& [m, cs] : sparse_of(column(*s, pq % d)))
            for (const auto& [k, c3] : a.prod(i, m))
              out[flat(k, pq / d, d)] += c * c2 * cs * c3;
        break;
      }
    }
  }
  return out;
}

}  // namespace

Antipode solve_antipode(const PartialAlgebra& a, const BaseUnits& u,
                        const DeltaMap& delta, const Vec& eps) {
  int d = a.dim();
  SparseEliminator el(d * d);
  for (int i = 0; i < d; ++i) {
    Vec t1 = source_map(a, u, eps, a.basis_vec(i));
    Vec t2 = target_map(a, u, eps, a.basis_vec(i));
    std::vector<SpVec> rows1(d), rows2(d);
    for (const auto& [pq, c] : sparse_of(delta[i])) {
      int p = pq / d, q = pq % d;
      for (int m = 0; m < d; ++m) {
        for (const auto& [k, cm] : a.prod(m, q))
          rows1[k].emplace_back(m * d + p, c * cm);
        for (const auto& [k, cm] : a.prod(p, m))
          rows2[k].emplace_back(m * d + q, c * cm);
      }
    }
    for (int k = 0; k < d; ++k) {
      if (!el.add(sp_normalize(std::move(rows1[k])), t1[k]))
        throw Error(Errc::NoAntipode,
                    a.name + ": antipode system is inconsistent");
      if (!el.add(sp_normalize(std::move(rows2[k])), t2[k]))
        throw Error(Errc::NoAntipode,
                    a.name + ": antipode system is inconsistent");
    }
  }
  Vec sol = el.solution();
  Antipode ant;
  ant.s = Mat(d, d);
  for (int m = 0; m < d; ++m)
    for (int p = 0; p < d; ++p) ant.s.at(m, p) = sol[m * d + p];
  auto inv = inverse_dense(ant.s);
  if (!inv)
    throw Error(Errc::AntipodeNotInvertible,
                a.name + ": solved antipode is singular");
  ant.sinv = *inv;

  std::vector<std::string> failed;
  auto scol = [&](int p) { return column(ant.s, p); };

  bool antimult = true;
  for (int i = 0; i < d && antimult; ++i)
    for (int j = 0; j < d && antimult; ++j) {
      Vec pv(d);
      for (const auto& [k, c] : a.prod(i, j)) pv[k] += c;
      if (mat_apply(ant.s, pv) != a.mul(scol(j), scol(i))) antimult = false;
    }
  if (!antimult) failed.push_back("anti-multiplicativity");

  bool units_ok = true;
  for (int r = 0; r < a.nobj(); ++r) {
    if (mat_apply(ant.s, u.one_lower(r)) != u.one_upper(r)) units_ok = false;
    if (mat_apply(ant.s, u.one_upper(r)) != u.one_lower(r)) units_ok = false;
  }
  if (!units_ok) failed.push_back("base unit images");

  bool anticomult = true;
  for (int i = 0; i < d && anticomult; ++i) {
    Vec lhs(static_cast<size_t>(d) * d);
    for (const auto& [pq, c] : sparse_of(delta[i]))
      for (const auto& [m, c1] : sparse_of(scol(pq / d)))
        for (const auto& [n, c2] : sparse_of(scol(pq % d)))
          lhs[flat(m, n, d)] += c * c1 * c2;
    Vec rhs(static_cast<size_t>(d) * d);
    for (int m = 0; m < d; ++m) {
      const Cyc& c = ant.s.at(m, i);
      if (c.is_zero()) continue;
      for (const auto& [pq, c2] : sparse_of(delta[m]))
        rhs[flat(pq % d, pq / d, d)] += c * c2;
    }
    if (lhs != rhs) anticomult = false;
  }
  if (!anticomult) failed.push_back("anti-comultiplicativity");

  bool counit_ok = true;
  for (int i = 0; i < d; ++i)
    if (dot(eps, scol(i)) != eps[i]) counit_ok = false;
  if (!counit_ok) failed.push_back("counit compatibility");

  bool weak_inv = true;
  for (int i = 0; i < d && weak_inv; ++i) {
    Vec acc1(d), acc2(d);
    for (const auto& [p, q, r, c] : comult_then_first(a, delta, i)) {
      Vec mid = a.mul(a.basis_vec(p), scol(q));
      Vec v = a.mul(mid, a.basis_vec(r));
      for (int k = 0; k < d; ++k) acc1[k] += c * v[k];
      Vec mid2 = a.mul(a.basis_vec(r), column(ant.sinv, q));
      Vec w = a.mul(mid2, a.basis_vec(p));
      for (int k = 0; k < d; ++k) acc2[k] += c * w[k];
    }
    if (acc1 != a.basis_vec(i) || acc2 != a.basis_vec(i)) weak_inv = false;
  }
  if (!weak_inv) failed.push_back("weak inverse identity");

  bool antdef2 = true;
  for (int i = 0; i < d && antdef2; ++i) {
    Vec lhs1(d), lhs2(d);
    for (const auto& [pq, c] : sparse_of(delta[i])) {
      Vec v = a.mul(a.basis_vec(pq % d), column(ant.sinv, pq / d));
      for (int k = 0; k < d; ++k) lhs1[k] += c * v[k];
      Vec w = a.mul(column(ant.sinv, pq % d), a.basis_vec(pq / d));
      for (int k = 0; k < d; ++k) lhs2[k] += c * w[k];
    }
    Vec rhs1(d), rhs2(d);
    for (int t = 0; t < a.nobj(); ++t) {
      Cyc v = dot(eps, a.mul(u.one_upper(t), a.basis_vec(i)));
      if (!v.is_zero()) {
        Vec lo = u.one_lower(t);
        for (int k = 0; k < d; ++k) rhs1[k] += v * lo[k];
      }
      Cyc w = dot(eps, a.mul(a.basis_vec(i), u.one_lower(t)));
      if (!w.is_zero()) {
        Vec up = u.one_upper(t);
        for (int k = 0; k < d; ++k) rhs2[k] += w * up[k];
      }
    }
    if (lhs1 != rhs1 || lhs2 != rhs2) antdef2 = false;
  }
  if (!antdef2) failed.push_back("inverse source/target formulas");

  // The canonical-map route: the maps assembled from S invert the four
  // canonical maps up to multiplication by E and the graded projections.
  // Each forward/inverse composite must be the projection onto the
  // codomain pairs, and each inverse/forward composite the projection onto
  // the domain pairs.
  bool canroute = true;
  for (int i = 0; i < d && canroute; ++i)
    for (int j = 0; j < d && canroute; ++j) {
      Vec x(static_cast<size_t>(d) * d);
      x[flat(i, j, d)] = Cyc::one();
      const GradeQuad& gi = a.grade[i];
      const GradeQuad& gj = a.grade[j];
      Vec zero(static_cast<size_t>(d) * d);
      auto proj = [&](bool keep) -> const Vec& { return keep ? x : zero; };
      auto go = [&](int first, const Mat* m1, int second, const Mat* m2) {
        return apply_wcan(a, delta, apply_wcan(a, delta, x, first, m1),
                          second, m2);
      };
      if (go(1, &ant.s, 0, nullptr) != proj(gi.t == gj.r)) canroute = false;
      if (go(0, nullptr, 1, &ant.s) != proj(gi.u == gj.t)) canroute = false;
      if (go(3, &ant.s, 2, nullptr) != proj(gi.u == gj.s)) canroute = false;
      if (go(2, nullptr, 3, &ant.s) != proj(gi.s == gj.r)) canroute = false;
      if (go(5, &ant.sinv, 4, nullptr) != proj(gi.r == gj.t))
        canroute = false;
      if (go(4, nullptr, 5, &ant.sinv) != proj(gi.s == gj.r))
        canroute = false;
      if (go(7, &ant.sinv, 6, nullptr) != proj(gi.s == gj.u))
        canroute = false;
      if (go(6, nullptr, 7, &ant.sinv) != proj(gi.u == gj.t))
        canroute = false;
    }
  if (!canroute) failed.push_back("canonical map inversion formulas");

  if (!failed.empty()) {
    std::string msg = a.name + ": antipode fails";
    for (const auto& f : failed) msg += " [" + f + "]";
    throw Error(Errc::AntipodeChecksFailed, msg);
  }
  return ant;
}

bool weak_bialgebra_identities(const PartialAlgebra& a, const BaseUnits& u,
                               const DeltaMap& delta, const Vec& eps,
                               std::string* why) {
  int d = a.dim();
  Vec total = u.total();
  Vec e_full(static_cast<size_t>(d) * d);
  for (int s = 0; s < a.nobj(); ++s) {
    Vec lo = u.one_lower(s), up = u.one_upper(s);
    for (int m = 0; m < d; ++m) {
      if (lo[m].is_zero()) continue;
      for (int n = 0; n < d; ++n)
        if (!up[n].is_zero()) e_full[flat(m, n, d)] += lo[m] * up[n];
    }
  }
  std::vector<Vec> left(d), right(d);
  for (int i = 0; i < d; ++i) {
    Vec ta(static_cast<size_t>(d) * d);
    for (const auto& [m, c] : sparse_of(total))
      ta[flat(m, i, d)] = c;
    left[i] = tensor_mul(a, ta, e_full);
    Vec tb(static_cast<size_t>(d) * d);
    for (const auto& [m, c] : sparse_of(total))
      tb[flat(m, i, d)] = c;
    right[i] = tensor_mul(a, e_full, tb);
  }
  // Both identities contract the first tensor leg with eps(e_x e_y) after
  // padding with one more basis factor, so on an algebra that already
  // passed non-degeneracy they hold for every third index exactly when the
  // eps-contracted discrepancy between the E-padded tensor and the
  // coproduct vanishes coefficientwise. Only a surviving discrepancy drops
  // into the triple scan below, which names the first failing triple.
  Mat em(d, d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      Cyc acc;
      for (const auto& [p, c] : a.prod(x, y)) acc += c * eps[p];
      em.at(x, y) = acc;
    }
  bool clean = true;
  for (int t = 0; t < d && clean; ++t) {
    SpVec d1, d2;
    for (int m = 0; m < d * d; ++m) {
      Cyc c1 = left[t][m] - delta[t][m];
      if (!c1.is_zero()) d1.push_back({m, c1});
      Cyc c2 = right[t][m] - delta[t][m];
      if (!c2.is_zero()) d2.push_back({m, c2});
    }
    for (int s = 0; s < d && clean; ++s) {
      Vec w1(d), w2(d);
      for (const auto& [mn, c] : d1) w1[mn % d] += c * em.at(mn / d, s);
      for (const auto& [pq, c] : d2) w2[pq % d] += c * em.at(s, pq / d);
      for (int n = 0; n < d && clean; ++n)
        if (!w1[n].is_zero() || !w2[n].is_zero()) clean = false;
    }
  }
  if (clean) return true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Vec bc(static_cast<size_t>(d) * d);
        bc[flat(j, k, d)] = Cyc::one();
        Vec lhs1 = slice_first(a, tensor_mul(a, left[i], bc), eps);
        Vec rhs1 = slice_first(a, tensor_mul(a, delta[i], bc), eps);
        if (lhs1 != rhs1) {
          if (why)
            *why = "first counit identity fails on (" + a.basis[i] + "," +
                   a.basis[j] + "," + a.basis[k] + ")";
          return false;
        }
        Vec ab(static_cast<size_t>(d) * d);
        ab[flat(i, j, d)] = Cyc::one();
        Vec lhs2 = slice_first(a, tensor_mul(a, ab, right[k]), eps);
        Vec rhs2 = slice_first(a, tensor_mul(a, ab, delta[k]), eps);
        if (lhs2 != rhs2) {
          if (why)
            *why = "second counit identity fails on (" + a.basis[i] + "," +
                   a.basis[j] + "," + a.basis[k] + ")";
          return false;
        }
      }
  return true;
}

Hyperobjects hyperobject_partition(const PartialAlgebra& a,
                                   const BaseUnits& u) {
  int n = a.nobj();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) adj[r][s] = u.unit_nonzero(r, s);
  for (int r = 0; r < n; ++r)
    if (!adj[r][r])
      throw Error(Errc::NotEquivalence,
                  a.name + ": relation is not reflexive at " + a.objects[r]);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      if (adj[r][s] != adj[s][r])
        throw Error(Errc::NotEquivalence,
                    a.name + ": relation is not symmetric");
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (adj[r][s] && adj[s][t] && !adj[r][t])
          throw Error(Errc::NotEquivalence,
                      a.name + ": relation is not transitive");
  Hyperobjects h;
  h.class_of.assign(n, -1);
  for (int r = 0; r < n; ++r) {
    if (h.class_of[r] >= 0) continue;
    std::vector<int> cls;
    for (int s = r; s < n; ++s)
      if (adj[r][s]) {
        cls.push_back(s);
        h.class_of[s] = h.nclasses();
      }
    h.classes.push_back(std::move(cls));
  }
  for (const auto& cls : h.classes) {
    Vec lo(a.dim()), up(a.dim());
    for (int s : cls) {
      Vec l = u.one_lower(s), p = u.one_upper(s);
      for (int i = 0; i < a.dim(); ++i) {
        lo[i] += l[i];
        up[i] += p[i];
      }
    }
    if (lo != up)
      throw Error(Errc::NotEquivalence,
                  a.name + ": class unit sums disagree");
  }
  return h;
}

Cyc QuantumGroupoid::eps_apply(const Vec& x) const { return dot(eps, x); }

QuantumGroupoid build_quantum_groupoid(const PartialAlgebra& a,
                                       const DeltaMap& delta) {
  std::string why;
  if (!a.grading_compatible(&why))
    throw Error(Errc::ValidationError, a.name + ": " + why);
  if (!a.associative(&why))
    throw Error(Errc::ValidationError, a.name + ": " + why);
  RegularityReport reg = check_partial_regularity(a);
  if (!reg.all())
    throw Error(Errc::ValidationError,
                a.name + ": partial regularity checks failed");
  QuantumGroupoid qg;
  qg.alg = a;
  qg.delta = delta;
  qg.units = base_units(a);
  qg.ts = tensor_square(a, qg.units);
  ComultReport cr = check_comultiplication(a, qg.units, qg.ts, delta);
  if (!cr.ok()) throw Error(Errc::ValidationError, a.name + ": " + cr.why);
  Counit c = solve_counit(a, qg.units, delta);
  qg.eps = c.eps;
  CanMaps cm = canonical_maps(a, delta);
  if (!cm.all_bijective())
    throw Error(Errc::ValidationError,
                a.name + ": a canonical map is not bijective");
  Antipode ant = solve_antipode(a, qg.units, delta, qg.eps);
  qg.S = ant.s;
  qg.Sinv = ant.sinv;
  if (!weak_bialgebra_identities(a, qg.units, delta, qg.eps, &why))
    throw Error(Errc::ValidationError, a.name + ": " + why);
  qg.hyper = hyperobject_partition(a, qg.units);
  return qg;
}

}  // namespace pqg
