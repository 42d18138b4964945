#include "pqg/integrals.hpp"

#include <algorithm>

namespace pqg {

namespace {

Cyc vdot(const Vec& a, const Vec& b) {
  Cyc s;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Vec scaled(const Vec& v, const Cyc& c) {
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[i] = v[i] * c;
  return out;
}

void add_into(Vec& dst, const Vec& src, const Cyc& c = Cyc::one(1)) {
  for (size_t i = 0; i < src.size(); ++i)
    if (!src[i].is_zero()) dst[i] += src[i] * c;
}

// (M1 (x) M2) applied to a flat tensor given by a coproduct image.
Vec apply_pair(const PartialAlgebra& a, const Vec& t, const Mat& m1,
               const Mat& m2) {
  int d = a.dim();
  Vec out(static_cast<size_t>(d) * d);
  for (int pq = 0; pq < d * d; ++pq) {
    if (t[pq].is_zero()) continue;
    int p = pq / d, q = pq % d;
    for (int m = 0; m < d; ++m) {
      if (m1.at(m, p).is_zero()) continue;
      for (int n = 0; n < d; ++n)
        if (!m2.at(n, q).is_zero())
          out[flat(m, n, d)] += t[pq] * m1.at(m, p) * m2.at(n, q);
    }
  }
  return out;
}

}  // namespace

Cyc GradedFunctional::apply(const Vec& x) const { return vdot(covector, x); }

GradedFunctional make_graded_functional(const PartialAlgebra& a,
                                        Vec covector) {
  if (static_cast<int>(covector.size()) != a.dim())
    throw Error(Errc::BadInput, "functional has the wrong dimension");
  GradedFunctional f;
  f.covector = std::move(covector);
  for (int i = 0; i < a.dim(); ++i)
    if (!f.covector[i].is_zero()) {
      const GradeQuad& g = a.grade[i];
      bool seen = false;
      for (const GradeQuad& h : f.support)
        seen |= h.r == g.r && h.s == g.s && h.t == g.t && h.u == g.u;
      if (!seen) f.support.push_back(g);
    }
  return f;
}

GradedFunctional solve_left_invariant(const QuantumGroupoid& qg) {
  const PartialAlgebra& a = qg.alg;
  int d = a.dim();
  std::vector<Vec> column_sol(a.nobj());

  for (int s = 0; s < a.nobj(); ++s) {
    std::vector<int> cols;
    std::vector<int> local(d, -1);
    for (int i = 0; i < d; ++i)
      if (a.grade[i].u == s) {
        local[i] = static_cast<int>(cols.size());
        cols.push_back(i);
      }
    if (cols.empty()) {
      column_sol[s] = Vec(d);
      continue;
    }
    SparseEliminator el(static_cast<int>(cols.size()));
    for (int i : cols)
      if (!a.grade[i].unit_diagonal()) el.add({{local[i], Cyc::one()}});
    for (int i : cols) {
      std::vector<SpVec> rows(d);
      for (int pq = 0; pq < d * d; ++pq) {
        if (qg.delta[i][pq].is_zero()) continue;
        rows[pq / d].emplace_back(local[pq % d], qg.delta[i][pq]);
      }
      Vec up = qg.units.one_upper(a.grade[i].r);
      for (int p = 0; p < d; ++p) {
        SpVec row = std::move(rows[p]);
        if (!up[p].is_zero()) row.emplace_back(local[i], -up[p]);
        if (!row.empty()) el.add(sp_normalize(std::move(row)));
      }
    }
    std::vector<Vec> basis = el.nullspace();
    if (basis.empty())
      throw Error(Errc::NoFaithfulIntegral,
                  a.name + ": column slice of " + a.objects[s] +
                      " annihilated by the invariance system");
    Vec lifted(d);
    for (size_t k = 0; k < cols.size(); ++k) lifted[cols[k]] = basis[0][k];
    column_sol[s] = std::move(lifted);
  }

  // Scale per hyperobject class: unit values 1 when the class supports it,
  // otherwise class diagonal |x|, otherwise leading coordinate 1.
  for (const std::vector<int>& cls : qg.hyper.classes) {
    bool compact = true;
    std::vector<Cyc> unit_val(a.nobj());
    for (int s : cls) {
      Cyc common;
      bool first = true, ok = true;
      for (int r : cls) {
        Cyc v = vdot(column_sol[s], qg.units.at(r, s));
        if (first) {
          common = v;
          first = false;
        } else if (v != common) {
          ok = false;
        }
      }
      if (!ok || common.is_zero()) {
        compact = false;
        break;
      }
      unit_val[s] = common;
    }
    if (compact) {
      for (int s : cls)
        column_sol[s] = scaled(column_sol[s], Cyc::one() / unit_val[s]);
      continue;
    }
    Vec combined(d);
    for (int s : cls) add_into(combined, column_sol[s]);
    Cyc diag;
    for (int r : cls) diag += vdot(combined, qg.units.at(r, r));
    Cyc factor;
    if (!diag.is_zero()) {
      factor = Cyc::rational(static_cast<long long>(cls.size())) / diag;
    } else {
      for (int i = 0; i < d && factor.is_zero(); ++i)
        if (!combined[i].is_zero()) factor = Cyc::one() / combined[i];
      if (factor.is_zero())
        throw Error(Errc::NoFaithfulIntegral,
                    a.name + ": invariant functional vanishes on a class");
    }
    for (int s : cls) column_sol[s] = scaled(column_sol[s], factor);
  }

  Vec phi(d);
  for (int s = 0; s < a.nobj(); ++s) add_into(phi, column_sol[s]);

  if (!inverse_dense(gram_matrix(a, phi)))
    throw Error(Errc::NoFaithfulIntegral,
                a.name + ": invariant functional is not faithful");

  for (int i = 0; i < d; ++i) {
    Vec lhs = slice_second(a, qg.delta[i], phi);
    Vec rhs = scaled(qg.units.one_upper(a.grade[i].r), phi[i]);
    if (lhs != rhs)
      throw Error(Errc::NoFaithfulIntegral,
                  a.name + ": left invariance verification failed");
  }
  return make_graded_functional(a, std::move(phi));
}

GradedFunctional solve_right_invariant(const QuantumGroupoid& qg,
                                       const GradedFunctional& phi) {
  const PartialAlgebra& a = qg.alg;
  int d = a.dim();
  Vec psi(d);
  for (int i = 0; i < d; ++i) {
    Cyc acc;
    for (int m = 0; m < d; ++m)
      if (!qg.S.at(m, i).is_zero()) acc += phi.covector[m] * qg.S.at(m, i);
    psi[i] = acc;
  }
  for (int i = 0; i < d; ++i) {
    Vec lhs = slice_first(a, qg.delta[i], psi);
    Vec rhs = scaled(qg.units.one_lower(a.grade[i].t), psi[i]);
    if (lhs != rhs)
      throw Error(Errc::NoFaithfulIntegral,
                  a.name + ": right invariance verification failed");
  }
  return make_graded_functional(a, std::move(psi));
}

Mat gram_matrix(const PartialAlgebra& a, const Vec& omega) {
  int d = a.dim();
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Cyc acc;
      for (const auto& [k, c] : a.prod(i, j))
        if (!omega[k].is_zero()) acc += c * omega[k];
      g.at(i, j) = acc;
    }
  return g;
}

SupportReport support_indices(const QuantumGroupoid& qg,
                              const GradedFunctional& omega) {
  const PartialAlgebra& a = qg.alg;
  int d = a.dim();
  SupportReport rep;
  std::vector<bool> in(a.nobj(), false);
  for (int i = 0; i < d; ++i)
    if (!omega.covector[i].is_zero()) in[a.grade[i].u] = true;
  for (int s = 0; s < a.nobj(); ++s)
    if (in[s]) rep.objects.push_back(s);

  Mat g = gram_matrix(a, omega.covector);
  int rank = rank_dense(g);
  rep.right_kernel_dim = d - rank;
  rep.left_kernel_dim = d - rank;

  int expect_right = 0, expect_left = 0;
  for (int i = 0; i < d; ++i) {
    if (!in[a.grade[i].u]) {
      ++expect_right;
      for (int b = 0; b < d; ++b)
        if (!g.at(b, i).is_zero())
          throw Error(Errc::KernelShapeViolation,
                      a.name + ": right kernel misses " + a.basis[i]);
    }
    if (!in[a.grade[i].t]) {
      ++expect_left;
      for (int b = 0; b < d; ++b)
        if (!g.at(i, b).is_zero())
          throw Error(Errc::KernelShapeViolation,
                      a.name + ": left kernel misses " + a.basis[i]);
    }
  }
  if (rep.right_kernel_dim != expect_right ||
      rep.left_kernel_dim != expect_left)
    throw Error(Errc::KernelShapeViolation,
                a.name + ": kernel dimensions do not match the support");
  return rep;
}

Vec compare_invariant_functionals(const QuantumGroupoid& qg,
                                  const GradedFunctional& phi,
                                  const GradedFunctional& phi2) {
  const PartialAlgebra& a = qg.alg;
  Vec f(a.nobj());
  std::vector<bool> fixed(a.nobj(), false);
  for (int i = 0; i < a.dim(); ++i) {
    int s = a.grade[i].u;
    if (phi.covector[i].is_zero()) {
      if (!phi2.covector[i].is_zero())
        throw Error(Errc::NotProportional,
                    a.name + ": functional is supported outside the "
                             "reference on " +
                        a.basis[i]);
      continue;
    }
    Cyc ratio = phi2.covector[i] / phi.covector[i];
    if (!fixed[s]) {
      f[s] = ratio;
      fixed[s] = true;
    } else if (f[s] != ratio) {
      throw Error(Errc::NotProportional,
                  a.name + ": ratio is not constant on the column of " +
                      a.basis[i]);
    }
  }
  return f;
}

Mat solve_modular_automorphism(const QuantumGroupoid& qg,
                               const GradedFunctional& omega) {
  const PartialAlgebra& a = qg.alg;
  Mat g = gram_matrix(a, omega.covector);
  auto ginv = inverse_dense(g);
  if (!ginv)
    throw Error(Errc::GramSingular,
                a.name + ": functional has a singular Gram matrix");
  Mat sigma = *ginv * g.transpose();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      Vec pv(a.dim());
      for (const auto& [k, c] : a.prod(i, j)) pv[k] += c;
      Vec lhs = mat_apply(sigma, pv);
      Vec rhs = a.mul(mat_apply(sigma, a.basis_vec(i)),
                      mat_apply(sigma, a.basis_vec(j)));
      if (lhs != rhs)
        throw Error(Errc::ValidationError,
                    a.name + ": modular map is not an automorphism");
    }
  for (int s = 0; s < a.nobj(); ++s) {
    if (mat_apply(sigma, qg.units.one_lower(s)) != qg.units.one_lower(s) ||
        mat_apply(sigma, qg.units.one_upper(s)) != qg.units.one_upper(s))
      throw Error(Errc::ValidationError,
                  a.name + ": modular automorphism moves a base unit");
  }
  return sigma;
}

ModularElement solve_modular_element(const QuantumGroupoid& qg,
                                     const GradedFunctional& phi,
                                     const GradedFunctional& psi) {
  const PartialAlgebra& a = qg.alg;
  int d = a.dim();
  Mat g = gram_matrix(a, phi.covector);
  auto ginv = inverse_dense(g);
  if (!ginv)
    throw Error(Errc::GramSingular,
                a.name + ": functional has a singular Gram matrix");

  Vec rhs(d);
  for (int i = 0; i < d; ++i)
    rhs[i] = phi.apply(qg.s_apply(a.basis_vec(i)));
  ModularElement me;
  me.delta = mat_apply(*ginv, rhs);

  Mat lmul(d, d);
  for (int j = 0; j < d; ++j) {
    Vec col = a.mul(me.delta, a.basis_vec(j));
    for (int k = 0; k < d; ++k) lmul.at(k, j) = col[k];
  }
  auto linv = inverse_dense(lmul);
  if (!linv)
    throw Error(Errc::NoModularElement,
                a.name + ": modular element is not invertible");
  me.delta_inv = mat_apply(*linv, qg.units.total());
  if (a.mul(me.delta, me.delta_inv) != qg.units.total() ||
      a.mul(me.delta_inv, me.delta) != qg.units.total())
    throw Error(Errc::NoModularElement,
                a.name + ": modular element has no two sided inverse");

  std::vector<std::string> failed;
  for (int s = 0; s < a.nobj(); ++s) {
    if (a.mul(me.delta, qg.units.one_lower(s)) !=
            a.mul(qg.units.one_lower(s), me.delta) ||
        a.mul(me.delta, qg.units.one_upper(s)) !=
            a.mul(qg.units.one_upper(s), me.delta)) {
      failed.push_back("base unit commutation");
      break;
    }
  }
  {
    Vec dd(static_cast<size_t>(d) * d);
    for (int m = 0; m < d; ++m) {
      if (me.delta[m].is_zero()) continue;
      for (int n = 0; n < d; ++n)
        if (!me.delta[n].is_zero())
          dd[flat(m, n, d)] = me.delta[m] * me.delta[n];
    }
    Vec lhs(static_cast<size_t>(d) * d);
    for (int m = 0; m < d; ++m)
      if (!me.delta[m].is_zero()) add_into(lhs, qg.delta[m], me.delta[m]);
    Vec rhs2 = tensor_mul(a, tensor_mul(a, qg.ts.e_full, dd), qg.ts.e_full);
    if (lhs != rhs2) failed.push_back("coproduct of the modular element");
  }
  if (qg.s_apply(me.delta) != me.delta_inv)
    failed.push_back("antipode of the modular element");
  for (int i = 0; i < d; ++i) {
    if (qg.eps_apply(a.mul(me.delta, a.basis_vec(i))) != qg.eps[i]) {
      failed.push_back("counit absorption");
      break;
    }
  }
  for (int i = 0; i < d; ++i) {
    Vec lhs = slice_first(a, qg.delta[i], phi.covector);
    Vec rhs2 = scaled(a.mul(me.delta, qg.units.one_lower(a.grade[i].u)),
                      phi.covector[i]);
    if (lhs != rhs2) {
      failed.push_back("invariant coproduct slice");
      break;
    }
  }
  for (int i = 0; i < d; ++i) {
    if (phi.apply(a.mul(me.delta, a.basis_vec(i))) !=
        phi.apply(qg.sinv_apply(a.basis_vec(i)))) {
      failed.push_back("inverse antipode pairing");
      break;
    }
  }
  if (!failed.empty()) {
    std::string msg = a.name + ": modular element fails";
    for (const auto& f : failed) msg += " [" + f + "]";
    throw Error(Errc::NoModularElement, msg);
  }

  me.delta_phi_psi = mat_apply(*ginv, psi.covector);
  me.mu.assign(a.nobj(), Cyc());
  std::vector<bool> fixed(a.nobj(), false);
  for (int i = 0; i < d; ++i) {
    int t = a.grade[i].r;
    if (me.delta[i].is_zero()) {
      if (!me.delta_phi_psi[i].is_zero())
        throw Error(Errc::NoModularElement,
                    a.name + ": two sided comparison does not factor");
      continue;
    }
    Cyc ratio = me.delta_phi_psi[i] / me.delta[i];
    if (!fixed[t]) {
      me.mu[t] = ratio;
      fixed[t] = true;
    } else if (me.mu[t] != ratio) {
      throw Error(Errc::NoModularElement,
                  a.name + ": two sided comparison does not factor");
    }
  }
  for (int t = 0; t < a.nobj(); ++t)
    if (!fixed[t]) me.mu[t] = Cyc::one();
  return me;
}

Vec solve_scaling_element(const QuantumGroupoid& qg,
                          const GradedFunctional& phi,
                          const GradedFunctional& psi, const Mat& sigma_phi,
                          const ModularElement& me) {
  const PartialAlgebra& a = qg.alg;
  int d = a.dim();
  Vec phis2(d);
  for (int i = 0; i < d; ++i)
    phis2[i] = phi.apply(qg.s_apply(qg.s_apply(a.basis_vec(i))));
  Vec nu = compare_invariant_functionals(
      qg, phi, make_graded_functional(a, std::move(phis2)));

  std::vector<std::string> failed;
  for (int s = 0; s < a.nobj(); ++s)
    if (nu[s].is_zero()) {
      failed.push_back("invertibility");
      break;
    }
  for (int s = 0; s < a.nobj(); ++s)
    if (nu[s] != nu[qg.hyper.classes[qg.hyper.class_of[s]][0]]) {
      failed.push_back("class constancy");
      break;
    }
  if (failed.empty()) {
    Vec snu(d), snu_inv(d);
    for (int s = 0; s < a.nobj(); ++s) {
      add_into(snu, qg.units.one_lower(s), nu[s]);
      add_into(snu_inv, qg.units.one_lower(s), Cyc::one() / nu[s]);
    }
    for (int i = 0; i < d; ++i)
      if (a.mul(snu, a.basis_vec(i)) != a.mul(a.basis_vec(i), snu)) {
        failed.push_back("centrality");
        break;
      }
    for (int i = 0; i < d; ++i) {
      Cyc lhs = psi.apply(qg.s_apply(qg.s_apply(a.basis_vec(i))));
      if (lhs != nu[a.grade[i].u] * psi.covector[i]) {
        failed.push_back("right functional scaling");
        break;
      }
    }
    if (mat_apply(sigma_phi, me.delta) != a.mul(me.delta, snu_inv))
      failed.push_back("modular element scaling");
  }
  if (!failed.empty()) {
    std::string msg = a.name + ": scaling element fails";
    for (const auto& f : failed) msg += " [" + f + "]";
    throw Error(Errc::ScalingChecksFailed, msg);
  }
  return nu;
}

ModularData modular_data(const QuantumGroupoid& qg) {
  ModularData md;
  md.phi = solve_left_invariant(qg);
  md.psi = solve_right_invariant(qg, md.phi);
  md.sigma_phi = solve_modular_automorphism(qg, md.phi);
  md.sigma_psi = solve_modular_automorphism(qg, md.psi);
  md.element = solve_modular_element(qg, md.phi, md.psi);
  md.nu = solve_scaling_element(qg, md.phi, md.psi, md.sigma_phi, md.element);
  return md;
}

ModularIdentityReport check_modular_identities(const QuantumGroupoid& qg,
                                               const ModularData& md) {
  const PartialAlgebra& a = qg.alg;
  int d = a.dim();
  Mat s2 = qg.S * qg.S;
  Mat sinv2 = qg.Sinv * qg.Sinv;
  auto sigma_psi_inv = inverse_dense(md.sigma_psi);

  ModularIdentityReport rep;
  auto comult_of = [&](const Mat& m, int i) {
    Vec out(static_cast<size_t>(d) * d);
    for (int k = 0; k < d; ++k)
      if (!m.at(k, i).is_zero()) add_into(out, qg.delta[k], m.at(k, i));
    return out;
  };

  rep.coprod_sigma_phi = true;
  for (int i = 0; i < d && rep.coprod_sigma_phi; ++i)
    if (comult_of(md.sigma_phi, i) !=
        apply_pair(a, qg.delta[i], s2, md.sigma_phi))
      rep.coprod_sigma_phi = false;

  rep.coprod_sigma_psi = true;
  for (int i = 0; i < d && rep.coprod_sigma_psi; ++i)
    if (comult_of(md.sigma_psi, i) !=
        apply_pair(a, qg.delta[i], md.sigma_psi, sinv2))
      rep.coprod_sigma_psi = false;

  rep.pairwise_commute = s2 * md.sigma_phi == md.sigma_phi * s2 &&
                         s2 * md.sigma_psi == md.sigma_psi * s2 &&
                         md.sigma_phi * md.sigma_psi ==
                             md.sigma_psi * md.sigma_phi;

  rep.coprod_s2 = sigma_psi_inv.has_value();
  for (int i = 0; i < d && rep.coprod_s2; ++i)
    if (comult_of(s2, i) !=
        apply_pair(a, qg.delta[i], md.sigma_phi, *sigma_psi_inv))
      rep.coprod_s2 = false;

  rep.sigma_conjugate = true;
  for (int j = 0; j < d && rep.sigma_conjugate; ++j) {
    Vec lhs = mat_apply(md.sigma_psi, a.basis_vec(j));
    Vec rhs = a.mul(a.mul(md.element.delta,
                          mat_apply(md.sigma_phi, a.basis_vec(j))),
                    md.element.delta_inv);
    if (lhs != rhs) rep.sigma_conjugate = false;
  }
  return rep;
}

}  // namespace pqg
