#include "pqg/dual.hpp"

#include "pqg/star.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pqg {

namespace {

// phi(e_x e_y e_z) for all triples, flat at (x*d + y)*d + z.
std::vector<Cyc> triple_values(const PartialAlgebra& a, const Mat& g) {
  const int d = a.dim();
  std::vector<Cyc> t(static_cast<size_t>(d) * d * d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      const SpVec& xy = a.prod(x, y);
      for (int z = 0; z < d; ++z) {
        Cyc v;
        for (const auto& [m, c] : xy) v = v + c * g.at(m, z);
        t[(static_cast<size_t>(x) * d + y) * d + z] = std::move(v);
      }
    }
  return t;
}

std::vector<SpVec> nonzero_terms(const DeltaMap& delta) {
  std::vector<SpVec> nz(delta.size());
  for (size_t i = 0; i < delta.size(); ++i)
    for (int f = 0; f < static_cast<int>(delta[i].size()); ++f)
      if (!delta[i][f].is_zero()) nz[i].push_back({f, delta[i][f]});
  return nz;
}

Vec mat_col(const Mat& m, int j) {
  Vec v(m.rows);
  for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
  return v;
}

Vec scaled(Vec v, const Cyc& c) {
  for (auto& x : v) x = x * c;
  return v;
}

DualQuantumGroupoid build_impl(const QuantumGroupoid& qg,
                               const ModularData& md) {
  const PartialAlgebra& a = qg.alg;
  const int d = a.dim();

  Mat g = gram_matrix(a, md.phi.covector);
  auto ginv = inverse_dense(g);
  if (!ginv) throw Error(Errc::GramSingular, "left functional gram is singular");

  std::vector<Cyc> tv = triple_values(a, g);
  auto tv_at = [&](int x, int y, int z) -> const Cyc& {
    return tv[(static_cast<size_t>(x) * d + y) * d + z];
  };
  std::vector<SpVec> dnz = nonzero_terms(qg.delta);

  // Product: w_i w_j evaluates on e_k as (w_i (x) w_j) Delta(e_k), and the
  // coordinates solve G c = values since w_m(e_k) = G(k, m).
  std::vector<Vec> pc(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec v(d);
      for (int k = 0; k < d; ++k) {
        Cyc s;
        for (const auto& [f, c] : dnz[k])
          s = s + c * g.at(f / d, i) * g.at(f % d, j);
        v[k] = std::move(s);
      }
      pc[static_cast<size_t>(i) * d + j] = mat_apply(*ginv, v);
    }

  // Cross-check: w_i phi(e_j -) = phi(b -) with b = (w_i o S (x) id)
  // Delta(e_j), so the product transports left evaluations along the
  // antipode.
  Mat sg = qg.S.transpose() * g;
  for (int j = 0; j < d; ++j) {
    Vec cj = mat_apply(*ginv, mat_col(g.transpose(), j));
    for (int i = 0; i < d; ++i) {
      Vec lhs(d);
      for (int m = 0; m < d; ++m) {
        if (cj[m].is_zero()) continue;
        const Vec& pm = pc[static_cast<size_t>(i) * d + m];
        for (int k = 0; k < d; ++k) lhs[k] = lhs[k] + cj[m] * pm[k];
      }
      Vec b(d);
      for (const auto& [f, c] : dnz[j])
        b[f % d] = b[f % d] + c * sg.at(f / d, i);
      Vec rhs = mat_apply(*ginv, mat_apply(g.transpose(), b));
      if (lhs != rhs)
        throw Error(Errc::ValidationError,
                    "product does not transport left evaluations along the "
                    "antipode");
    }
  }

  // Coproduct: solve (G (x) G) against the pairing values
  // (Delta(w_i), e_p (x) e_q) = w_i(e_q e_p), multiplication reversed.
  Mat ginvt = ginv->transpose();
  DeltaMap ddelta(d);
  for (int i = 0; i < d; ++i) {
    Mat mi(d, d);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) mi.at(p, q) = tv_at(q, p, i);
    Mat ci = (*ginv) * mi * ginvt;
    Vec flat_ci(static_cast<size_t>(d) * d);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) flat_ci[flat(p, q, d)] = ci.at(p, q);
    ddelta[i] = std::move(flat_ci);
  }
  std::vector<SpVec> ddnz = nonzero_terms(ddelta);

  // (w_p w_j)(e_k), used by the slice identities below.
  std::vector<Cyc> pv(static_cast<size_t>(d) * d * d);
  for (int p = 0; p < d; ++p)
    for (int j = 0; j < d; ++j) {
      const Vec& c = pc[static_cast<size_t>(p) * d + j];
      for (int k = 0; k < d; ++k) {
        Cyc s;
        for (int m = 0; m < d; ++m) s = s + c[m] * g.at(k, m);
        pv[(static_cast<size_t>(p) * d + j) * d + k] = std::move(s);
      }
    }
  auto pv_at = [&](int p, int j, int k) -> const Cyc& {
    return pv[(static_cast<size_t>(p) * d + j) * d + k];
  };

  // Residuals of the two defining pairings of the coproduct:
  //   (Delta(w_i)(w_j (x) 1), e_a (x) e_b) = (w_i (x) w_j)((e_b (x) 1) Delta(e_a))
  //   ((1 (x) w_j) Delta(w_i), e_a (x) e_b) = (w_j (x) w_i)(Delta(e_b)(1 (x) e_a))
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int ea = 0; ea < d; ++ea)
        for (int eb = 0; eb < d; ++eb) {
          Cyc lhs1, rhs1, lhs2, rhs2;
          for (const auto& [f, c] : ddnz[i]) {
            lhs1 = lhs1 + c * pv_at(f / d, j, ea) * g.at(eb, f % d);
            lhs2 = lhs2 + c * g.at(ea, f / d) * pv_at(j, f % d, eb);
          }
          for (const auto& [f, c] : dnz[ea])
            rhs1 = rhs1 + c * tv_at(eb, f / d, i) * g.at(f % d, j);
          for (const auto& [f, c] : dnz[eb])
            rhs2 = rhs2 + c * g.at(f / d, j) * tv_at(f % d, ea, i);
          if (!(lhs1 == rhs1) || !(lhs2 == rhs2))
            throw Error(Errc::ValidationError,
                        "coproduct does not pair with reversed multiplication");
        }

  // Slice form: Delta(w_i)(w_j (x) 1) = sum over the terms e_p (x) e_q of
  // Delta(e_j) of w_q (x) phi(- S^-1(e_p) e_i).
  for (int i = 0; i < d; ++i) {
    Vec ei = a.basis_vec(i);
    for (int j = 0; j < d; ++j) {
      Mat lhs(d, d), rhs(d, d);
      for (const auto& [f, c] : ddnz[i]) {
        const Vec& pm = pc[static_cast<size_t>(f / d) * d + j];
        for (int m = 0; m < d; ++m)
          lhs.at(m, f % d) = lhs.at(m, f % d) + c * pm[m];
      }
      for (const auto& [f, c] : dnz[j]) {
        Vec w = a.mul(mat_col(qg.Sinv, f / d), ei);
        for (int m = 0; m < d; ++m)
          rhs.at(f % d, m) = rhs.at(f % d, m) + c * w[m];
      }
      if (!(lhs == rhs))
        throw Error(Errc::ValidationError,
                    "coproduct slices disagree with the inverse antipode form");
    }
  }

  // The dual algebra: grades swap their middle legs, since w_i vanishes
  // outside 1(s,u) A 1(r,t) when e_i sits in 1(r,t) A 1(s,u).
  PartialAlgebra dalg;
  dalg.name = "dual(" + a.name + ")";
  dalg.conductor = a.conductor;
  dalg.objects = a.objects;
  dalg.basis.reserve(d);
  dalg.grade.reserve(d);
  for (int i = 0; i < d; ++i) {
    dalg.basis.push_back("w_" + a.basis[i]);
    const GradeQuad& gi = a.grade[i];
    dalg.grade.push_back({gi.r, gi.t, gi.s, gi.u});
  }
  dalg.mult.resize(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      SpVec sv;
      const Vec& c = pc[static_cast<size_t>(i) * d + j];
      for (int m = 0; m < d; ++m)
        if (!c[m].is_zero()) sv.push_back({m, c[m]});
      dalg.set_prod(i, j, std::move(sv));
    }

  if (a.star) {
    // w*(x) = conj(w(S(x)*)), antilinear in w.
    std::vector<Vec> star_s(d);
    for (int k = 0; k < d; ++k) star_s[k] = a.star_apply(mat_col(qg.S, k));
    Mat st(d, d);
    for (int i = 0; i < d; ++i) {
      Vec rhs(d);
      for (int k = 0; k < d; ++k) {
        Cyc s;
        for (int m = 0; m < d; ++m) s = s + star_s[k][m] * g.at(m, i);
        rhs[k] = s.conj();
      }
      Vec c = mat_apply(*ginv, rhs);
      for (int m = 0; m < d; ++m) st.at(m, i) = c[m];
    }
    dalg.star = std::move(st);
    std::string why;
    if (!dalg.star_consistent(&why)) throw Error(Errc::ValidationError, why);
  }

  QuantumGroupoid dqg = build_quantum_groupoid(dalg, ddelta);

  // The counit of the dual is evaluation at the source unit and the
  // antipode is precomposition with S^-1; both are unique, so the solved
  // structure has to land exactly on the transported one.
  if (dqg.eps != md.phi.covector)
    throw Error(Errc::ValidationError,
                "counit of the dual is not evaluation at the source unit");
  if (!(dqg.S == (*ginv) * qg.Sinv.transpose() * g))
    throw Error(Errc::ValidationError,
                "antipode of the dual is not precomposition with the inverse "
                "antipode");
  if (!(dqg.Sinv == (*ginv) * qg.S.transpose() * g))
    throw Error(Errc::ValidationError,
                "inverse antipode of the dual is not precomposition with the "
                "antipode");

  // Local units of the dual are the counit slices of the source ones.
  for (int s = 0; s < a.nobj(); ++s) {
    Vec pl = qg.units.one_lower(s);
    Vec vl(d), vu(d);
    for (int k = 0; k < d; ++k) {
      vl[k] = qg.eps_apply(a.mul(pl, a.basis_vec(k)));
      vu[k] = qg.eps_apply(a.mul(a.basis_vec(k), pl));
    }
    if (dqg.units.one_lower(s) != mat_apply(*ginv, vl) ||
        dqg.units.one_upper(s) != mat_apply(*ginv, vu))
      throw Error(Errc::ValidationError,
                  "local units of the dual do not match the counit slices");
  }

  // Canonical invariant functionals: the left one evaluates the source
  // counit, the right one evaluates it through psi. Both are verified
  // invariant and faithful before any modular structure is solved.
  GradedFunctional dphi = make_graded_functional(dqg.alg, qg.eps);
  for (const GradeQuad& q : dphi.support)
    if (!q.unit_diagonal())
      throw Error(Errc::NoFaithfulIntegral,
                  "canonical left functional leaves the unit diagonal");
  GradedFunctional phi0 = solve_left_invariant(dqg);
  Vec fac = compare_invariant_functionals(dqg, phi0, dphi);
  for (const Cyc& f : fac)
    if (f.is_zero())
      throw Error(Errc::NoFaithfulIntegral,
                  "canonical left functional is not faithful");

  Mat gpsi = gram_matrix(a, md.psi.covector);
  auto gpsi_inv = inverse_dense(gpsi);
  if (!gpsi_inv)
    throw Error(Errc::GramSingular, "right functional gram is singular");
  Vec psid = mat_apply(g.transpose(), mat_apply(*gpsi_inv, qg.eps));
  GradedFunctional dpsi = make_graded_functional(dqg.alg, psid);
  for (const GradeQuad& q : dpsi.support)
    if (!q.unit_diagonal())
      throw Error(Errc::NoFaithfulIntegral,
                  "canonical right functional leaves the unit diagonal");
  for (int i = 0; i < d; ++i) {
    Vec got = slice_first(dqg.alg, ddelta[i], psid);
    Vec want = scaled(dqg.units.one_lower(dqg.alg.grade[i].t), psid[i]);
    if (got != want)
      throw Error(Errc::NoFaithfulIntegral,
                  "canonical right functional is not right invariant");
  }
  if (!inverse_dense(gram_matrix(dqg.alg, psid)))
    throw Error(Errc::NoFaithfulIntegral,
                "canonical right functional is not faithful");

  Mat dsigma_phi = solve_modular_automorphism(dqg, dphi);
  Mat dsigma_psi = solve_modular_automorphism(dqg, dpsi);
  ModularElement dme = solve_modular_element(dqg, dphi, dpsi);
  Vec dnu = solve_scaling_element(dqg, dphi, dpsi, dsigma_phi, dme);
  ModularData dmd{std::move(dphi), std::move(dpsi), std::move(dsigma_phi),
                  std::move(dsigma_psi), std::move(dme), std::move(dnu)};

  if (dqg.alg.star) {
    std::vector<std::string> failed;
    if (!check_star_axioms(dqg, dmd, &failed)) {
      std::string msg = "star checks failed on the dual";
      for (const std::string& f : failed) msg += " [" + f + "]";
      throw Error(Errc::ValidationError, msg);
    }
  }

  DualQuantumGroupoid out;
  out.qg = std::move(dqg);
  out.pairing = g.transpose();
  out.primal = md;
  out.md = std::move(dmd);
  return out;
}

}  // namespace

DualQuantumGroupoid build_dual(const QuantumGroupoid& qg,
                               const ModularData& md) {
  try {
    return build_impl(qg, md);
  } catch (const Error& e) {
    throw Error(e.code, std::string("dual: ") + e.what());
  }
}

DualQuantumGroupoid build_dual(const QuantumGroupoid& qg) {
  try {
    return build_impl(qg, modular_data(qg));
  } catch (const Error& e) {
    throw Error(e.code, std::string("dual: ") + e.what());
  }
}

bool check_dual_modular(const QuantumGroupoid& qg,
                        const DualQuantumGroupoid& dual) {
  const PartialAlgebra& a = qg.alg;
  const int d = a.dim();

  // sigma of the dual corresponds to a -> S^2(a) delta^-1 under the
  // identification a -> phi(- a).
  Mat rd(d, d);
  for (int k = 0; k < d; ++k) {
    Vec w = a.mul(a.basis_vec(k), dual.primal.element.delta_inv);
    for (int m = 0; m < d; ++m) rd.at(m, k) = w[m];
  }
  if (!(dual.md.sigma_phi == rd * (qg.S * qg.S))) return false;

  // The dual modular element is eps o sigma_phi read as a covector.
  Mat g = dual.pairing.transpose();
  auto ginv = inverse_dense(g);
  if (!ginv) return false;
  Vec f = mat_apply(dual.primal.sigma_phi.transpose(), qg.eps);
  if (dual.md.element.delta != mat_apply(*ginv, f)) return false;

  // Scaling constants invert objectwise.
  if (dual.md.nu.size() != dual.primal.nu.size()) return false;
  for (size_t s = 0; s < dual.md.nu.size(); ++s)
    if (!(dual.md.nu[s] * dual.primal.nu[s] == Cyc::one())) return false;
  return true;
}

Mat biduality_iso(const QuantumGroupoid& qg) {
  ModularData md = modular_data(qg);
  DualQuantumGroupoid d1 = build_dual(qg, md);
  DualQuantumGroupoid d2 = build_dual(d1.qg, d1.md);
  const int d = qg.dim();

  auto fail = [](const char* law) {
    throw Error(Errc::BidualityFailed,
                std::string("double dual mismatch [") + law + "]");
  };
  if (d2.qg.alg.grade != qg.alg.grade) fail("grading");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (d2.qg.alg.prod(i, j) != qg.alg.prod(i, j)) fail("multiplication");
  if (d2.qg.delta != qg.delta) fail("comultiplication");
  if (d2.qg.units.unit != qg.units.unit) fail("base units");
  if (d2.qg.eps != qg.eps) fail("counit");
  if (!(d2.qg.S == qg.S)) fail("antipode");
  if (qg.alg.star &&
      (!d2.qg.alg.star || !(*d2.qg.alg.star == *qg.alg.star)))
    fail("star");
  if (d2.md.phi.covector != md.phi.covector) fail("left functional");
  if (d2.md.psi.covector != md.psi.covector) fail("right functional");

  // a -> phi_dual(- phi(- a)) sends e_k to the functional whose values on
  // the dual basis are the k-th column of the dual Gram matrix; solving
  // against the double dual pairing lands on the identity matrix.
  Mat g1 = gram_matrix(d1.qg.alg, d1.md.phi.covector);
  auto g1inv = inverse_dense(g1);
  if (!g1inv) fail("pairing");
  Mat theta(d, d);
  for (int k = 0; k < d; ++k) {
    Vec c = mat_apply(*g1inv, mat_col(g1, k));
    for (int m = 0; m < d; ++m) theta.at(m, k) = c[m];
  }
  return theta;
}

}  // namespace pqg
