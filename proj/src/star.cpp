#include "pqg/star.hpp"

#include <cmath>

namespace pqg {

namespace {

using CD = std::complex<double>;
using CMat = std::vector<std::vector<CD>>;

constexpr double kPsdTol = 1e-9;

std::vector<Vec> star_images(const PartialAlgebra& a) {
  std::vector<Vec> st(a.dim());
  for (int i = 0; i < a.dim(); ++i) st[i] = a.star_apply(a.basis_vec(i));
  return st;
}

// Leg-wise star on a flat tensor: sum c e_p (x) e_q -> sum conj(c) e_p* (x) e_q*.
Vec star_pair(const PartialAlgebra& a, const std::vector<Vec>& st,
              const Vec& t) {
  int d = a.dim();
  Vec out(static_cast<size_t>(d) * d);
  for (int pq = 0; pq < d * d; ++pq) {
    if (t[pq].is_zero()) continue;
    Cyc c = t[pq].conj();
    const Vec& sp = st[pq / d];
    const Vec& sq = st[pq % d];
    for (int m = 0; m < d; ++m) {
      if (sp[m].is_zero()) continue;
      for (int n = 0; n < d; ++n)
        if (!sq[n].is_zero()) out[flat(m, n, d)] += c * sp[m] * sq[n];
    }
  }
  return out;
}

Mat star_gram(const PartialAlgebra& a, const std::vector<Vec>& st,
              const Vec& omega) {
  int d = a.dim();
  Mat h(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Vec p = a.mul(st[i], a.basis_vec(j));
      Cyc acc;
      for (int k = 0; k < d; ++k)
        if (!p[k].is_zero() && !omega[k].is_zero()) acc += p[k] * omega[k];
      h.at(i, j) = acc;
    }
  }
  return h;
}

CMat embed_mat(const Mat& m) {
  CMat out(m.rows, std::vector<CD>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!m.at(i, j).is_zero()) out[i][j] = m.at(i, j).embed();
  return out;
}

bool psd_in_embedding(const CMat& h) {
  std::vector<double> eig = hermitian_eigenvalues(h);
  if (eig.empty()) return true;
  double radius = std::max(std::abs(eig.front()), std::abs(eig.back()));
  return eig.front() >= -kPsdTol * (1.0 + radius);
}

Mat left_mul_matrix(const PartialAlgebra& a, const Vec& x) {
  Mat m(a.dim(), a.dim());
  for (int j = 0; j < a.dim(); ++j) {
    Vec col = a.mul(x, a.basis_vec(j));
    for (int k = 0; k < a.dim(); ++k) m.at(k, j) = col[k];
  }
  return m;
}

Mat right_mul_matrix(const PartialAlgebra& a, const Vec& x) {
  Mat m(a.dim(), a.dim());
  for (int j = 0; j < a.dim(); ++j) {
    Vec col = a.mul(a.basis_vec(j), x);
    for (int k = 0; k < a.dim(); ++k) m.at(k, j) = col[k];
  }
  return m;
}

struct Block {
  std::vector<Vec> vecs;
  std::array<Rat, 4> val{};
};

// Splits every block into eigenspaces of op; false when an eigenvalue is
// not rational (callers fall back to the embedded path).
bool refine_exact(const Mat& op, int which, const std::string& opname,
                  std::vector<Block>& blocks) {
  int d = op.rows;
  std::vector<Block> next;
  for (Block& blk : blocks) {
    int k = static_cast<int>(blk.vecs.size());
    Mat bmat(d, k);
    for (int c = 0; c < k; ++c)
      for (int i = 0; i < d; ++i) bmat.at(i, c) = blk.vecs[c][i];
    Mat restr(k, k);
    for (int c = 0; c < k; ++c) {
      auto x = solve_dense(bmat, mat_apply(op, blk.vecs[c]));
      if (!x)
        throw Error(Errc::DiagonalizationFailed,
                    opname + " does not preserve a joint eigenspace");
      for (int r = 0; r < k; ++r) restr.at(r, c) = (*x)[r];
    }
    std::vector<Cyc> minpoly = minimal_polynomial(restr);
    auto rp = rational_poly(minpoly);
    if (!rp) return false;
    std::vector<std::pair<Rat, int>> roots = rational_roots(*rp);
    int found = 0;
    for (const auto& [root, mult] : roots) {
      found += mult;
      if (mult > 1)
        throw Error(Errc::DiagonalizationFailed,
                    opname + " is not diagonalizable");
    }
    if (found < static_cast<int>(minpoly.size()) - 1) return false;
    int total = 0;
    for (const auto& [root, mult] : roots) {
      SparseEliminator el(k);
      for (int r = 0; r < k; ++r) {
        SpVec row;
        for (int c = 0; c < k; ++c) {
          Cyc v = restr.at(r, c);
          if (r == c) v -= Cyc::rational(root);
          if (!v.is_zero()) row.emplace_back(c, v);
        }
        if (!row.empty()) el.add(std::move(row));
      }
      Block sub;
      sub.val = blk.val;
      sub.val[which] = root;
      for (const Vec& u : el.nullspace()) {
        Vec lifted(d);
        for (int c = 0; c < k; ++c)
          if (!u[c].is_zero())
            for (int i = 0; i < d; ++i)
              if (!blk.vecs[c][i].is_zero()) lifted[i] += u[c] * blk.vecs[c][i];
        sub.vecs.push_back(std::move(lifted));
      }
      total += static_cast<int>(sub.vecs.size());
      if (!sub.vecs.empty()) next.push_back(std::move(sub));
    }
    if (total != k)
      throw Error(Errc::DiagonalizationFailed,
                  opname + " is not diagonalizable");
  }
  blocks = std::move(next);
  return true;
}

// Lower triangular L with h = L L^H; empty when h is not positive definite.
CMat cholesky(const CMat& h) {
  int n = static_cast<int>(h.size());
  CMat l(n, std::vector<CD>(n));
  for (int j = 0; j < n; ++j) {
    double s = h[j][j].real();
    for (int k = 0; k < j; ++k) s -= std::norm(l[j][k]);
    if (s <= kPsdTol) return {};
    l[j][j] = std::sqrt(s);
    for (int i = j + 1; i < n; ++i) {
      CD v = h[i][j];
      for (int k = 0; k < j; ++k) v -= l[i][k] * std::conj(l[j][k]);
      l[i][j] = v / l[j][j];
    }
  }
  return l;
}

// Inverse of the upper triangular L^H by back substitution.
CMat upper_inverse_of_adjoint(const CMat& l) {
  int n = static_cast<int>(l.size());
  CMat u(n, std::vector<CD>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) u[i][j] = std::conj(l[j][i]);
  CMat w(n, std::vector<CD>(n));
  for (int col = 0; col < n; ++col) {
    for (int i = col; i >= 0; --i) {
      CD v = i == col ? CD(1.0) : CD(0.0);
      for (int k = i + 1; k <= col; ++k) v -= u[i][k] * w[k][col];
      w[i][col] = v / u[i][i];
    }
  }
  return w;
}

CMat cmul(const CMat& a, const CMat& b) {
  int n = static_cast<int>(a.size());
  CMat out(n, std::vector<CD>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == CD(0.0)) continue;
      for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

}  // namespace

bool check_star_axioms(const QuantumGroupoid& qg, const ModularData& md,
                       std::vector<std::string>* failed_laws) {
  const PartialAlgebra& a = qg.alg;
  std::vector<std::string> failed;
  if (!a.star) {
    failed.push_back("star missing");
  } else {
    std::string why;
    if (!a.star_consistent(&why)) failed.push_back(why);
    std::vector<Vec> st = star_images(a);
    int d = a.dim();
    for (int i = 0; i < d; ++i) {
      Vec lhs(static_cast<size_t>(d) * d);
      for (int j = 0; j < d; ++j)
        if (!st[i][j].is_zero())
          for (int pq = 0; pq < d * d; ++pq)
            if (!qg.delta[j][pq].is_zero())
              lhs[pq] += st[i][j] * qg.delta[j][pq];
      if (lhs != star_pair(a, st, qg.delta[i])) {
        failed.push_back("coproduct compatibility");
        break;
      }
    }
    for (int i = 0; i < d; ++i) {
      Vec w = a.star_apply(qg.s_apply(a.star_apply(qg.s_apply(a.basis_vec(i)))));
      if (w != a.basis_vec(i)) {
        failed.push_back("antipode star identity");
        break;
      }
    }
    for (int i = 0; i < d; ++i) {
      if (md.phi.apply(st[i]) != md.phi.covector[i].conj()) {
        failed.push_back("functional self-adjointness");
        break;
      }
    }
    if (a.star_apply(md.element.delta) != md.element.delta)
      failed.push_back("modular element self-adjointness");
  }
  if (failed_laws) *failed_laws = failed;
  return failed.empty();
}

bool check_positivity(const QuantumGroupoid& qg,
                      const GradedFunctional& omega) {
  const PartialAlgebra& a = qg.alg;
  if (!a.star) return false;
  Mat h = star_gram(a, star_images(a), omega.covector);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j <= i; ++j)
      if (h.at(j, i) != h.at(i, j).conj()) return false;
  return psd_in_embedding(embed_mat(h));
}

StarCheckReport diagonalize_structure_maps(const QuantumGroupoid& qg,
                                           const ModularData& md) {
  const PartialAlgebra& a = qg.alg;
  int d = a.dim();
  StarCheckReport rep;
  rep.star_axioms_ok = check_star_axioms(qg, md, &rep.failed_laws);
  rep.nu_trivial = true;
  for (const Cyc& c : md.nu)
    if (c != Cyc::one()) rep.nu_trivial = false;
  if (!a.star) return rep;

  std::vector<Vec> st = star_images(a);
  rep.phi_selfadjoint = true;
  for (int i = 0; i < d; ++i)
    if (md.phi.apply(st[i]) != md.phi.covector[i].conj())
      rep.phi_selfadjoint = false;
  rep.delta_selfadjoint = a.star_apply(md.element.delta) == md.element.delta;
  rep.phi_positive = check_positivity(qg, md.phi);
  rep.psi_positive = check_positivity(qg, md.psi);
  if (!rep.phi_positive) return rep;

  const std::array<Mat, 4> ops = {
      md.sigma_phi, qg.S * qg.S, left_mul_matrix(a, md.element.delta),
      right_mul_matrix(a, md.element.delta)};
  const std::array<std::string, 4> names = {
      "modular automorphism", "antipode square", "left delta multiplication",
      "right delta multiplication"};

  std::vector<Block> blocks(1);
  for (int i = 0; i < d; ++i) blocks[0].vecs.push_back(a.basis_vec(i));
  bool exact_ok = true;
  for (int m = 0; m < 4 && exact_ok; ++m)
    exact_ok = refine_exact(ops[m], m, names[m], blocks);

  if (exact_ok) {
    rep.joint_eigenbasis_found = true;
    rep.eigenvalues_positive = true;
    for (const Block& blk : blocks)
      for (const Vec& v : blk.vecs) {
        EigenLine line;
        line.vector = v;
        for (int m = 0; m < 4; ++m) {
          line.value[m] = Cyc::rational(blk.val[m]);
          line.value_f[m] = line.value[m].embed().real();
          if (!(blk.val[m] > 0)) rep.eigenvalues_positive = false;
        }
        rep.eigen.push_back(std::move(line));
      }
    return rep;
  }

  // Irrational spectrum: move to the complex embedding, where every
  // operator is self-adjoint for <a,b> = phi(a* b).
  CMat h = embed_mat(star_gram(a, st, md.phi.covector));
  CMat l = cholesky(h);
  if (l.empty())
    throw Error(Errc::DiagonalizationFailed,
                a.name + ": inner product is not positive definite");
  CMat w = upper_inverse_of_adjoint(l);
  CMat lh(d, std::vector<CD>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) lh[i][j] = std::conj(l[j][i]);

  std::array<CMat, 4> t;
  for (int m = 0; m < 4; ++m) {
    t[m] = cmul(cmul(lh, embed_mat(ops[m])), w);
    double scale = 0, skew = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        scale = std::max(scale, std::abs(t[m][i][j]));
        skew = std::max(skew, std::abs(t[m][i][j] - std::conj(t[m][j][i])));
      }
    if (skew > 1e-6 * (1.0 + scale))
      throw Error(Errc::DiagonalizationFailed,
                  names[m] + " is not self-adjoint for the functional");
  }

  const std::array<double, 4> weight = {1.0, 0.7548776662, 0.5698402910,
                                        0.3247179573};
  CMat combined(d, std::vector<CD>(d));
  for (int m = 0; m < 4; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) combined[i][j] += weight[m] * t[m][i][j];
  HermitianEigensystem es = hermitian_eigensystem(combined);

  rep.joint_eigenbasis_found = true;
  rep.eigenvalues_positive = true;
  double maxabs = 0;
  std::vector<EigenLine> lines;
  for (int idx = 0; idx < d; ++idx) {
    const std::vector<CD>& v = es.vectors[idx];
    EigenLine line;
    line.exact = false;
    line.vector_f.assign(d, CD(0.0));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) line.vector_f[i] += w[i][k] * v[k];
    for (int m = 0; m < 4; ++m) {
      CD acc = 0.0;
      for (int i = 0; i < d; ++i) {
        CD row = 0.0;
        for (int j = 0; j < d; ++j) row += t[m][i][j] * v[j];
        acc += std::conj(v[i]) * row;
      }
      line.value_f[m] = acc.real();
      maxabs = std::max(maxabs, std::abs(acc.real()));
    }
    lines.push_back(std::move(line));
  }
  for (const EigenLine& line : lines)
    for (double lambda : line.value_f)
      if (lambda <= kPsdTol * (1.0 + maxabs)) rep.eigenvalues_positive = false;
  rep.eigen = std::move(lines);
  return rep;
}

}  // namespace pqg
