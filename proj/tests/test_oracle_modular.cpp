#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqg/linalg.hpp"

#include <array>
#include <vector>

// Independent dense oracle for the modular data of two reference instances.
// Everything is computed from raw structure tables typed below, without the
// graded-core or solver modules, and the results are frozen as value tables.

using namespace pqg;

namespace {

Cyc q(long n) { return Cyc::rational(n); }

// Four dimensional instance with basis (1, g, x, gx):
//   g^2 = 1, x^2 = 0, xg = -gx,
//   D(g) = g (x) g, D(x) = x (x) 1 + g (x) x,
//   S(g) = g, S(x) = -gx, S(gx) = x.
struct Sweedler {
  static constexpr int d = 4;
  // mult[i][j] = (basis index, sign), sign 0 for a vanishing product.
  int target[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 0}, {3, 2, 0, 0}};
  int sign[4][4] = {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, -1, 0, 0}, {1, -1, 0, 0}};
  // delta[i] = list of (p, q, sign).
  std::vector<std::array<int, 3>> delta[4] = {
      {{0, 0, 1}},
      {{1, 1, 1}},
      {{2, 0, 1}, {1, 2, 1}},
      {{3, 1, 1}, {0, 3, 1}},
  };
  int s_target[4] = {0, 1, 3, 2};
  int s_sign[4] = {1, 1, -1, 1};

  Vec mul(const Vec& a, const Vec& b) const {
    Vec out(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (sign[i][j] != 0) out[target[i][j]] += q(sign[i][j]) * a[i] * b[j];
    return out;
  }
};

}  // namespace

TEST_CASE("oracle: typed tables form a Hopf algebra with the stated antipode") {
  Sweedler sw;
  // Associativity of the typed multiplication.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        Vec a(4), b(4), c(4);
        a[i] = b[j] = c[k] = Cyc::one();
        CHECK(sw.mul(sw.mul(a, b), c) == sw.mul(a, sw.mul(b, c)));
      }
  // Counit (1, 1, 0, 0) and both antipode identities m(S (x) id)D = eps,
  // m(id (x) S)D = eps, written densely.
  Vec eps{q(1), q(1), q(0), q(0)};
  for (int i = 0; i < 4; ++i) {
    Vec left(4), right(4);
    for (const auto& [p, qq, s] : sw.delta[i]) {
      Vec sp(4), vq(4), vp(4), sq(4);
      sp[sw.s_target[p]] = q(sw.s_sign[p]) * q(s);
      vq[qq] = Cyc::one();
      vp[p] = q(s);
      sq[sw.s_target[qq]] = q(sw.s_sign[qq]);
      Vec t1 = sw.mul(sp, vq);
      Vec t2 = sw.mul(vp, sq);
      for (int m = 0; m < 4; ++m) {
        left[m] += t1[m];
        right[m] += t2[m];
      }
    }
    Vec want(4);
    want[0] = eps[i];
    CHECK(left == want);
    CHECK(right == want);
  }
}

TEST_CASE("oracle: left invariance system has rank 3 and solution (0,0,0,1)") {
  Sweedler sw;
  // (id (x) phi) D(a) = phi(a) 1 gives one equation per (a, output coord).
  Mat sys(16, 4);
  for (int i = 0; i < 4; ++i) {
    for (const auto& [p, qq, s] : sw.delta[i]) sys.at(i * 4 + p, qq) += q(s);
    sys.at(i * 4 + 0, i) -= Cyc::one();
  }
  CHECK(rank_dense(sys) == 3);
  Vec phi{q(0), q(0), q(0), q(1)};
  for (int row = 0; row < 16; ++row) {
    Cyc acc;
    for (int c = 0; c < 4; ++c) acc += sys.at(row, c) * phi[c];
    CHECK(acc.is_zero());
  }
}

TEST_CASE("oracle: frozen modular data of the four dimensional instance") {
  Sweedler sw;
  Vec phi{q(0), q(0), q(0), q(1)};

  Mat g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Vec a(4), b(4);
      a[i] = b[j] = Cyc::one();
      Vec p = sw.mul(a, b);
      Cyc acc;
      for (int m = 0; m < 4; ++m) acc += phi[m] * p[m];
      g.at(i, j) = acc;
    }
  // Frozen Gram table.
  Mat gfrozen(4, 4);
  gfrozen.at(0, 3) = q(1);
  gfrozen.at(1, 2) = q(1);
  gfrozen.at(2, 1) = q(-1);
  gfrozen.at(3, 0) = q(1);
  CHECK(g == gfrozen);

  auto ginv = inverse_dense(g);
  REQUIRE(ginv.has_value());
  Mat sigma = *ginv * g.transpose();
  Mat sfrozen(4, 4);
  sfrozen.at(0, 0) = q(1);
  sfrozen.at(1, 1) = q(-1);
  sfrozen.at(2, 2) = q(-1);
  sfrozen.at(3, 3) = q(1);
  CHECK(sigma == sfrozen);
  // sigma is the unique map with phi(ab) = phi(b sigma(a)).
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Vec a(4), b(4);
      a[i] = b[j] = Cyc::one();
      Vec lhs = sw.mul(a, b);
      Vec sa = mat_apply(sigma, a);
      Vec rhs = sw.mul(b, sa);
      Cyc l, r;
      for (int m = 0; m < 4; ++m) {
        l += phi[m] * lhs[m];
        r += phi[m] * rhs[m];
      }
      CHECK(l == r);
    }

  // Modular element: G delta = (phi(S(e_i)))_i gives delta = g.
  Vec rhs(4);
  for (int i = 0; i < 4; ++i) rhs[i] = phi[sw.s_target[i]] * q(sw.s_sign[i]);
  Vec delta = mat_apply(*ginv, rhs);
  CHECK(delta == Vec{q(0), q(1), q(0), q(0)});

  // S^2 = diag(1, 1, -1, -1), so S^2(x) = -x.
  Mat s2(4, 4);
  for (int i = 0; i < 4; ++i)
    s2.at(sw.s_target[sw.s_target[i]], i) =
        q(sw.s_sign[i]) * q(sw.s_sign[sw.s_target[i]]);
  Mat s2frozen(4, 4);
  s2frozen.at(0, 0) = q(1);
  s2frozen.at(1, 1) = q(1);
  s2frozen.at(2, 2) = q(-1);
  s2frozen.at(3, 3) = q(-1);
  CHECK(s2 == s2frozen);

  // Scaling constant: phi(S^2(a)) = nu phi(a) forces nu = -1, and the
  // compatibility sigma(delta) = delta nu^{-1} holds for that value.
  Cyc nu = q(-1);
  for (int i = 0; i < 4; ++i) {
    Vec a(4);
    a[i] = Cyc::one();
    Vec s2a = mat_apply(s2, a);
    Cyc l, r;
    for (int m = 0; m < 4; ++m) {
      l += phi[m] * s2a[m];
      r += phi[m] * a[m];
    }
    CHECK(l == nu * r);
  }
  Vec sd = mat_apply(sigma, delta);
  Vec dnu(4);
  for (int m = 0; m < 4; ++m) dnu[m] = delta[m] * (Cyc::one() / nu);
  CHECK(sd == dnu);

  // psi = phi o S is right invariant for the opposite side and satisfies
  // psi o S^2 = nu psi as well.
  Vec psi = rhs;
  CHECK(psi == Vec{q(0), q(0), q(-1), q(0)});
  for (int i = 0; i < 4; ++i) {
    Vec a(4);
    a[i] = Cyc::one();
    Vec s2a = mat_apply(s2, a);
    Cyc l, r;
    for (int m = 0; m < 4; ++m) {
      l += psi[m] * s2a[m];
      r += psi[m] * a[m];
    }
    CHECK(l == nu * r);
  }

  // Coproduct exchange: D(sigma(a)) = (S^2 (x) sigma) D(a) on the basis.
  for (int i = 0; i < 4; ++i) {
    Mat lhs(4, 4), rhs2(4, 4);
    for (int m = 0; m < 4; ++m) {
      if (sigma.at(m, i).is_zero()) continue;
      for (const auto& [p, qq, s] : sw.delta[m])
        lhs.at(p, qq) += sigma.at(m, i) * q(s);
    }
    for (const auto& [p, qq, s] : sw.delta[i]) {
      Vec ep(4), eq(4);
      ep[p] = eq[qq] = Cyc::one();
      Vec a2 = mat_apply(s2, ep);
      Vec sg = mat_apply(sigma, eq);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) rhs2.at(m, n) += q(s) * a2[m] * sg[n];
    }
    CHECK(lhs == rhs2);
  }
}

TEST_CASE("oracle: frozen modular data of the rank one matrix coalgebra") {
  // Function algebra of the pair groupoid on two points: basis d11, d12,
  // d21, d22 with pointwise product and D(d_ij) = sum_k d_ik (x) d_kj.
  auto idx = [](int i, int j) { return i * 2 + j; };
  Mat sys(16, 4);
  // Left invariance: for a = d_ij the identity reads
  // sum_k phi(d_kj) d_ik = phi(d_ij) sum_t d_it.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        int row = idx(i, j) * 4 + k;
        sys.at(row, idx(k, j)) += Cyc::one();
        sys.at(row, idx(i, j)) -= Cyc::one();
      }
  CHECK(rank_dense(sys) == 2);
  Vec phi{q(1), q(1), q(1), q(1)};
  for (int row = 0; row < 16; ++row) {
    Cyc acc;
    for (int c = 0; c < 4; ++c) acc += sys.at(row, c) * phi[c];
    CHECK(acc.is_zero());
  }
  // Pointwise product makes the Gram matrix the identity, so sigma = id,
  // and phi(S(d_ij)) = phi(d_ji) = 1 gives delta = 1 and nu = 1.
  Mat g(4, 4);
  for (int i = 0; i < 4; ++i) g.at(i, i) = phi[i];
  CHECK(g == Mat::identity(4));
  Vec delta = phi;  // G delta = all ones = phi(S(e_i))
  CHECK(delta == Vec{q(1), q(1), q(1), q(1)});
}
