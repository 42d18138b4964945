#include "pqg/double.hpp"

#include "pqg/star.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pqg {

namespace {

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

SpVec sparsify(const Vec& v) {
  SpVec out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!v[i].is_zero()) out.push_back({i, v[i]});
  return out;
}

// Working state of the construction: the matched pair bases, the triple
// coproduct of the source, and the interchange expansions in both orders.
struct Assembly {
  const QuantumGroupoid& src;
  const DualQuantumGroupoid& dl;
  int d;
  Mat g;     // pairing gram, G(p, q) = w_q(e_p)
  Mat ginv;  // inverse of g
  std::vector<SpVec> trip;           // (Delta (x) id) Delta, flat (x d + y) d + z
  std::vector<std::pair<int, int>> fwd;  // (i, j): e_i w_j
  std::vector<int> fwd_at;               // flat(i, j) -> index or -1
  std::vector<std::pair<int, int>> rev;  // (j, i): w_j e_i
  std::vector<int> rev_at;
  std::vector<SpVec> ic;   // ic[j d + k]: w_j e_k in forward coordinates
  std::vector<SpVec> icr;  // icr[i d + j]: e_i w_j in reverse coordinates
};

// phi(e_row · e_p · y) rows drawn from the matrix m: sums m(row, x) over the
// expansion of e_p y.
Cyc contract(const PartialAlgebra& a, const Mat& m, int row, int p,
             const Vec& y) {
  Cyc out;
  for (int w = 0; w < static_cast<int>(y.size()); ++w) {
    if (y[w].is_zero()) continue;
    for (const auto& [x, c] : a.prod(p, w)) out = out + y[w] * c * m.at(row, x);
  }
  return out;
}

Assembly assemble(const QuantumGroupoid& src, const DualQuantumGroupoid& dl) {
  const PartialAlgebra& a = src.alg;
  const int d = a.dim();
  Assembly as{src, dl, d, dl.pairing.transpose(), Mat(), {}, {}, {}, {}, {}, {}, {}};
  auto gi = inverse_dense(as.g);
  if (!gi) throw Error(Errc::GramSingular, "left functional gram is singular");
  as.ginv = std::move(*gi);

  std::vector<SpVec> dnz = nonzero_terms(src.delta);
  as.trip.resize(d);
  for (int k = 0; k < d; ++k)
    for (const auto& [f, c] : dnz[k])
      for (const auto& [f2, c2] : dnz[f / d])
        as.trip[k].push_back({f2 * d + f % d, c * c2});

  const std::vector<GradeQuad>& sg = a.grade;
  const std::vector<GradeQuad>& dg = dl.qg.alg.grade;
  as.fwd_at.assign(static_cast<size_t>(d) * d, -1);
  as.rev_at.assign(static_cast<size_t>(d) * d, -1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (sg[i].col_pair() == dg[j].row_pair()) {
        as.fwd_at[flat(i, j, d)] = static_cast<int>(as.fwd.size());
        as.fwd.push_back({i, j});
      }
      if (dg[j].col_pair() == sg[i].row_pair()) {
        as.rev_at[flat(j, i, d)] = static_cast<int>(as.rev.size());
        as.rev.push_back({j, i});
      }
    }
  if (as.fwd.size() != as.rev.size())
    throw Error(Errc::InterchangeInconsistent,
                "the two normal orderings span different dimensions");
  const int n = static_cast<int>(as.fwd.size());

  // Interchange forward: w_j e_k expands over the triple coproduct of e_k
  // as e_y w(e_z - S^-1(e_x)), and the functional coordinates solve against
  // the gram matrix. Words with mismatched grades are zero in the double.
  std::vector<Vec> ycache(static_cast<size_t>(d) * d);
  for (int b = 0; b < d; ++b)
    for (int j = 0; j < d; ++j)
      ycache[flat(b, j, d)] = a.mul(mat_col(src.Sinv, b), a.basis_vec(j));
  as.ic.resize(static_cast<size_t>(d) * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      Vec acc(n);
      for (const auto& [t, cT] : as.trip[k]) {
        const int x = t / (d * d), y = (t / d) % d, z = t % d;
        Vec vals(d);
        for (int p = 0; p < d; ++p)
          vals[p] = contract(a, as.g, z, p, ycache[flat(x, j, d)]);
        Vec cq = mat_apply(as.ginv, vals);
        for (int q = 0; q < d; ++q) {
          if (cq[q].is_zero()) continue;
          int pid = as.fwd_at[flat(y, q, d)];
          if (pid >= 0) acc[pid] = acc[pid] + cT * cq[q];
        }
      }
      as.ic[flat(j, k, d)] = sparsify(acc);
    }

  // Interchange reverse: e_i w_j = w(S^-1(e_z) - e_x) e_y.
  Mat gs = src.Sinv.transpose() * as.g;
  for (int b = 0; b < d; ++b)
    for (int j = 0; j < d; ++j)
      ycache[flat(b, j, d)] = a.mul(a.basis_vec(b), a.basis_vec(j));
  as.icr.resize(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec acc(n);
      for (const auto& [t, cT] : as.trip[i]) {
        const int x = t / (d * d), y = (t / d) % d, z = t % d;
        Vec vals(d);
        for (int p = 0; p < d; ++p)
          vals[p] = contract(a, gs, z, p, ycache[flat(x, j, d)]);
        Vec cq = mat_apply(as.ginv, vals);
        for (int q = 0; q < d; ++q) {
          if (cq[q].is_zero()) continue;
          int pid = as.rev_at[flat(q, y, d)];
          if (pid >= 0) acc[pid] = acc[pid] + cT * cq[q];
        }
      }
      as.icr[flat(i, j, d)] = sparsify(acc);
    }

  // The two change-of-order matrices must be mutually inverse bijections.
  Mat rf(n, n), fr(n, n);
  for (int r = 0; r < n; ++r)
    for (const auto& [pid, c] : as.ic[flat(as.rev[r].first, as.rev[r].second, d)])
      rf.at(pid, r) = c;
  for (int f = 0; f < n; ++f)
    for (const auto& [pid, c] : as.icr[flat(as.fwd[f].first, as.fwd[f].second, d)])
      fr.at(pid, f) = c;
  if (!(rf * fr == Mat::identity(n)) || !(fr * rf == Mat::identity(n)))
    throw Error(Errc::InterchangeInconsistent,
                "the two normal orderings disagree");
  return as;
}

// Action on the matched pair space: b (x) chi -> ab (x) chi for the source
// copy, b (x) chi -> b_(2) (x) w(b_(3) - S^-1(b_(1))) chi for the dual copy.
// Columns are images of the pair basis.
std::vector<Vec> act_source(const Assembly& as, int i) {
  const int n = static_cast<int>(as.fwd.size());
  std::vector<Vec> cols(n, Vec(n));
  for (int s = 0; s < n; ++s) {
    auto [b, chi] = as.fwd[s];
    for (const auto& [x, c] : as.src.alg.prod(i, b)) {
      int pid = as.fwd_at[flat(x, chi, as.d)];
      if (pid >= 0) cols[s][pid] = cols[s][pid] + c;
    }
  }
  return cols;
}

std::vector<Vec> act_dual(const Assembly& as, int j) {
  const int n = static_cast<int>(as.fwd.size());
  std::vector<Vec> cols(n, Vec(n));
  for (int s = 0; s < n; ++s) {
    auto [b, chi] = as.fwd[s];
    for (const auto& [pid, c] : as.ic[flat(j, b, as.d)]) {
      auto [m, q] = as.fwd[pid];
      for (const auto& [y, cy] : as.dl.qg.alg.prod(q, chi)) {
        int out = as.fwd_at[flat(m, y, as.d)];
        if (out >= 0) cols[s][out] = cols[s][out] + c * cy;
      }
    }
  }
  return cols;
}

DoubleQuantumGroupoid build_impl(const QuantumGroupoid& src,
                                 const ModularData& md) {
  DualQuantumGroupoid dl = build_dual(src, md);
  Assembly as = assemble(src, dl);
  const PartialAlgebra& sa = src.alg;
  const PartialAlgebra& da = dl.qg.alg;
  const int d = as.d;
  const int n = static_cast<int>(as.fwd.size());

  // The interchange must act coherently on the witness module: moving w_j
  // past e_k first and acting second agrees with acting in sequence.
  std::vector<std::vector<Vec>> pa(d), pu(d);
  for (int i = 0; i < d; ++i) pa[i] = act_source(as, i);
  for (int j = 0; j < d; ++j) pu[j] = act_dual(as, j);
  auto apply_cols = [&](const std::vector<Vec>& cols, const Vec& x) {
    Vec out(n);
    for (int s = 0; s < n; ++s) {
      if (x[s].is_zero()) continue;
      for (int r = 0; r < n; ++r) out[r] = out[r] + x[s] * cols[s][r];
    }
    return out;
  };
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int s = 0; s < n; ++s) {
        Vec lhs = apply_cols(pu[j], pa[k][s]);
        Vec rhs(n);
        for (const auto& [pid, c] : as.ic[flat(j, k, d)]) {
          auto [m, q] = as.fwd[pid];
          Vec step = apply_cols(pa[m], pu[q][s]);
          for (int r = 0; r < n; ++r) rhs[r] = rhs[r] + c * step[r];
        }
        if (lhs != rhs)
          throw Error(Errc::InterchangeInconsistent,
                      "the interchange does not act on the witness module");
      }

  // Independence of the normal-ordered words: the represented algebra has
  // full rank on the witness module.
  std::vector<SpVec> rows(n);
  for (int f = 0; f < n; ++f) {
    auto [i, j] = as.fwd[f];
    for (int s = 0; s < n; ++s) {
      Vec img = apply_cols(pa[i], pu[j][s]);
      for (int r = 0; r < n; ++r)
        if (!img[r].is_zero()) rows[f].push_back({r * n + s, img[r]});
    }
  }
  if (rank_hybrid(rows, n * n) != n)
    throw Error(Errc::ValidationError,
                "the normal-ordered words are dependent in the witness module");

  PartialAlgebra alg;
  alg.name = "double(" + sa.name + ")";
  alg.conductor = sa.conductor;
  alg.objects = sa.objects;
  alg.basis.resize(n);
  alg.grade.resize(n);
  alg.mult.assign(static_cast<size_t>(n) * n, {});
  for (int f = 0; f < n; ++f) {
    auto [i, j] = as.fwd[f];
    alg.basis[f] = sa.basis[i] + "." + da.basis[j];
    alg.grade[f] = {sa.grade[i].r, da.grade[j].s, sa.grade[i].t, da.grade[j].u};
  }
  for (int f1 = 0; f1 < n; ++f1)
    for (int f2 = 0; f2 < n; ++f2) {
      auto [i, j] = as.fwd[f1];
      auto [k, l] = as.fwd[f2];
      Vec acc(n);
      for (const auto& [pid, c] : as.ic[flat(j, k, d)]) {
        auto [m, q] = as.fwd[pid];
        for (const auto& [x, ax] : sa.prod(i, m))
          for (const auto& [y, by] : da.prod(q, l)) {
            int t = as.fwd_at[flat(x, y, d)];
            if (t >= 0) acc[t] = acc[t] + c * ax * by;
          }
      }
      alg.set_prod(f1, f2, sparsify(acc));
    }

  if (sa.star) {
    Mat st(n, n);
    for (int f = 0; f < n; ++f) {
      auto [i, j] = as.fwd[f];
      Vec dstar = da.star_apply(da.basis_vec(j));
      Vec sstar = sa.star_apply(sa.basis_vec(i));
      for (int v = 0; v < d; ++v) {
        if (dstar[v].is_zero()) continue;
        for (int m = 0; m < d; ++m) {
          if (sstar[m].is_zero()) continue;
          for (const auto& [pid, c] : as.ic[flat(v, m, d)])
            st.at(pid, f) = st.at(pid, f) + dstar[v] * sstar[m] * c;
        }
      }
    }
    alg.star = std::move(st);
    std::string why;
    if (!alg.star_consistent(&why)) throw Error(Errc::ValidationError, why);
  }

  // Coproduct: legwise product of the two coproducts, mismatched legs
  // vanishing in the double.
  std::vector<SpVec> snz = nonzero_terms(src.delta);
  std::vector<SpVec> dnz = nonzero_terms(dl.qg.delta);
  DeltaMap ddelta(n);
  for (int f = 0; f < n; ++f) {
    auto [i, j] = as.fwd[f];
    Vec t(static_cast<size_t>(n) * n);
    for (const auto& [f1, c1] : snz[i])
      for (const auto& [f2, c2] : dnz[j]) {
        int l1 = as.fwd_at[flat(f1 / d, f2 / d, d)];
        int l2 = as.fwd_at[flat(f1 % d, f2 % d, d)];
        if (l1 >= 0 && l2 >= 0)
          t[flat(l1, l2, n)] = t[flat(l1, l2, n)] + c1 * c2;
      }
    ddelta[f] = std::move(t);
  }

  QuantumGroupoid dqg = build_quantum_groupoid(alg, ddelta);

  // The solved counit and antipode must factorize through the copies.
  Vec eps(n);
  for (int f = 0; f < n; ++f)
    eps[f] = src.eps[as.fwd[f].first] * dl.qg.eps[as.fwd[f].second];
  if (dqg.eps != eps)
    throw Error(Errc::ValidationError,
                "counit of the double does not factor through the copies");
  Mat sd(n, n);
  for (int f = 0; f < n; ++f) {
    auto [i, j] = as.fwd[f];
    for (int v = 0; v < d; ++v) {
      const Cyc& cv = dl.qg.S.at(v, j);
      if (cv.is_zero()) continue;
      for (int m = 0; m < d; ++m) {
        const Cyc& cm = src.S.at(m, i);
        if (cm.is_zero()) continue;
        for (const auto& [pid, c] : as.ic[flat(v, m, d)])
          sd.at(pid, f) = sd.at(pid, f) + cv * cm * c;
      }
    }
  }
  if (!(dqg.S == sd))
    throw Error(Errc::ValidationError,
                "antipode of the double is not the reversed product of the "
                "copy antipodes");

  // Source and dual partial units coincide in the double, and agree with
  // the double's own units.
  Mat a_copy(n, d), u_copy(n, d);
  for (int i = 0; i < d; ++i) {
    const Vec& du = dl.qg.units.at(sa.grade[i].s, sa.grade[i].u);
    for (int j = 0; j < d; ++j) {
      if (du[j].is_zero()) continue;
      int pid = as.fwd_at[flat(i, j, d)];
      if (pid >= 0) a_copy.at(pid, i) = du[j];
    }
  }
  for (int j = 0; j < d; ++j) {
    const Vec& su = src.units.at(da.grade[j].r, da.grade[j].t);
    for (int i = 0; i < d; ++i) {
      if (su[i].is_zero()) continue;
      int pid = as.fwd_at[flat(i, j, d)];
      if (pid >= 0) u_copy.at(pid, j) = su[i];
    }
  }
  for (int r = 0; r < sa.nobj(); ++r)
    for (int t = 0; t < sa.nobj(); ++t) {
      Vec lhs = mat_apply(a_copy, src.units.at(r, t));
      Vec rhs = mat_apply(u_copy, dl.qg.units.at(r, t));
      if (lhs != rhs || lhs != dqg.units.at(r, t))
        throw Error(Errc::ValidationError,
                    "the source and dual partial units do not coincide in "
                    "the double");
    }

  // Invariant functionals factorize over the matched pairs.
  Vec phiv(n), psiv(n);
  for (int f = 0; f < n; ++f) {
    auto [i, j] = as.fwd[f];
    phiv[f] = md.phi.covector[i] * dl.md.phi.covector[j];
    psiv[f] = md.psi.covector[i] * dl.md.psi.covector[j];
  }
  GradedFunctional phid = make_graded_functional(alg, phiv);
  GradedFunctional phi0 = solve_left_invariant(dqg);
  Vec fac = compare_invariant_functionals(dqg, phi0, phid);
  for (const Cyc& c : fac)
    if (c.is_zero())
      throw Error(Errc::NoFaithfulIntegral,
                  "left functional of the double is not faithful");
  GradedFunctional psid = make_graded_functional(alg, psiv);
  for (int f = 0; f < n; ++f) {
    Vec want(n);
    const Vec low = dqg.units.one_lower(alg.grade[f].t);
    for (int r = 0; r < n; ++r) want[r] = psiv[f] * low[r];
    if (slice_first(alg, ddelta[f], psiv) != want)
      throw Error(Errc::NoFaithfulIntegral,
                  "right functional of the double is not right invariant");
  }
  if (!inverse_dense(gram_matrix(alg, psiv)))
    throw Error(Errc::NoFaithfulIntegral,
                "right functional of the double is not faithful");

  ModularData dmd;
  dmd.phi = std::move(phid);
  dmd.psi = std::move(psid);
  dmd.sigma_phi = solve_modular_automorphism(dqg, dmd.phi);
  dmd.sigma_psi = solve_modular_automorphism(dqg, dmd.psi);
  dmd.element = solve_modular_element(dqg, dmd.phi, dmd.psi);
  dmd.nu = solve_scaling_element(dqg, dmd.phi, dmd.psi, dmd.sigma_phi,
                                 dmd.element);

  if (dqg.alg.star) {
    std::vector<std::string> failed;
    if (!check_star_axioms(dqg, dmd, &failed)) {
      std::string msg = "star checks failed on the double";
      for (const std::string& f : failed) msg += " [" + f + "]";
      throw Error(Errc::ValidationError, msg);
    }
  }

  return {std::move(dqg), std::move(as.fwd), std::move(a_copy),
          std::move(u_copy), src,            std::move(dl),
          std::move(dmd)};
}

}  // namespace

DoubleQuantumGroupoid build_double(const QuantumGroupoid& qg,
                                   const ModularData& md) {
  try {
    return build_impl(qg, md);
  } catch (const Error& e) {
    throw Error(e.code, std::string("double: ") + e.what());
  }
}

DoubleQuantumGroupoid build_double(const QuantumGroupoid& qg) {
  try {
    return build_impl(qg, modular_data(qg));
  } catch (const Error& e) {
    throw Error(e.code, std::string("double: ") + e.what());
  }
}

bool check_double_modular(const DoubleQuantumGroupoid& dd) {
  const Mat s2 = dd.src.S * dd.src.S;
  if (!(dd.md.sigma_phi * dd.a_copy == dd.a_copy * s2)) return false;
  const Mat t2 = dd.dual.qg.S * dd.dual.qg.S;
  if (!(dd.md.sigma_phi * dd.u_copy == dd.u_copy * t2)) return false;

  // The reverse-order factorization of the left functional picks up the
  // dual scaling constant, which is inverse to the source one, so the two
  // scaling contributions cancel and the modular element is the plain
  // product of the embedded dual and source modular elements.
  Vec du = mat_apply(dd.u_copy, dd.dual.md.element.delta);
  Vec da = mat_apply(dd.a_copy, dd.dual.primal.element.delta);
  if (dd.qg.alg.mul(du, da) != dd.md.element.delta) return false;

  for (const Cyc& c : dd.md.nu)
    if (!(c == Cyc::rational(1))) return false;
  return true;
}

bool double_star(const DoubleQuantumGroupoid& dd) {
  if (!dd.src.alg.star || !dd.qg.alg.star) return false;
  if (!check_star_axioms(dd.qg, dd.md)) return false;
  if (!check_positivity(dd.qg, dd.md.phi)) return false;

  const PartialAlgebra& sa = dd.src.alg;
  const PartialAlgebra& da = dd.dual.qg.alg;
  const int d = sa.dim();
  std::vector<std::pair<int, int>> rev;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      if (da.grade[j].col_pair() == sa.grade[i].row_pair())
        rev.push_back({j, i});
  std::vector<Vec> word(rev.size());
  for (size_t r = 0; r < rev.size(); ++r)
    word[r] = dd.qg.alg.mul(mat_col(dd.u_copy, rev[r].first),
                            mat_col(dd.a_copy, rev[r].second));

  for (size_t r1 = 0; r1 < rev.size(); ++r1) {
    auto [j, i] = rev[r1];
    Vec ws = da.star_apply(da.basis_vec(j));
    Vec es = sa.star_apply(sa.basis_vec(i));
    Vec x1s = dd.qg.alg.star_apply(word[r1]);
    for (size_t r2 = 0; r2 < rev.size(); ++r2) {
      auto [l, k] = rev[r2];
      Cyc lhs = dd.md.phi.apply(dd.qg.alg.mul(x1s, word[r2]));
      Cyc rhs =
          dd.dual.md.phi.apply(da.mul(ws, da.basis_vec(l))) *
          dd.dual.primal.phi.apply(sa.mul(
              dd.src.sinv_apply(dd.src.sinv_apply(sa.basis_vec(k))), es));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

}  // namespace pqg
