#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqg/linalg.hpp"

#include <random>

using namespace pqg;

namespace {

Mat random_mat(std::mt19937& rng, int r, int c, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat m(r, c);
  for (auto& v : m.a) v = Cyc::rational(d(rng));
  return m;
}

SpVec dense_row(const Mat& m, int i) {
  SpVec row;
  for (int j = 0; j < m.cols; ++j)
    if (!m.at(i, j).is_zero()) row.emplace_back(j, m.at(i, j));
  return row;
}

std::vector<SpVec> sparse_rows(const Mat& m) {
  std::vector<SpVec> rows;
  for (int i = 0; i < m.rows; ++i) rows.push_back(dense_row(m, i));
  return rows;
}

}  // namespace

TEST_CASE("dense inverse and rank") {
  Mat u(2, 2);
  u.at(0, 0) = Cyc::one();
  u.at(0, 1) = Cyc::one();
  u.at(1, 1) = Cyc::one();
  auto inv = inverse_dense(u);
  REQUIRE(inv.has_value());
  CHECK(*inv * u == Mat::identity(2));
  CHECK(u * *inv == Mat::identity(2));

  Mat r1(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r1.at(i, j) = Cyc::rational((i + 1) * (j + 2));
  CHECK(rank_dense(r1) == 1);
  CHECK(!inverse_dense(r1).has_value());
  CHECK(rank_dense(Mat::identity(5)) == 5);
}

TEST_CASE("dense solve") {
  Mat a(2, 2);
  a.at(0, 0) = Cyc::rational(2);
  a.at(0, 1) = Cyc::rational(1);
  a.at(1, 0) = Cyc::rational(1);
  a.at(1, 1) = Cyc::rational(3);
  auto x = solve_dense(a, {Cyc::rational(5), Cyc::rational(10)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Cyc::rational(1));
  CHECK((*x)[1] == Cyc::rational(3));

  Mat b(2, 1);
  b.at(0, 0) = Cyc::one();
  b.at(1, 0) = Cyc::one();
  CHECK(!solve_dense(b, {Cyc::one(), Cyc::rational(2)}).has_value());
  CHECK(solve_dense(b, {Cyc::rational(7), Cyc::rational(7)}).has_value());
}

TEST_CASE("eliminator matches dense behaviour on random systems") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    Mat a = random_mat(rng, 5, 7, -4, 4);
    SparseEliminator el(7);
    for (int i = 0; i < 5; ++i) el.add(dense_row(a, i));
    CHECK(el.rank() == rank_dense(a));

    auto ns = el.nullspace();
    CHECK(static_cast<int>(ns.size()) == 7 - el.rank());
    for (const auto& v : ns) {
      Vec im = mat_apply(a, v);
      for (const auto& c : im) CHECK(c.is_zero());
      bool nonzero = false;
      for (const auto& c : v) nonzero = nonzero || !c.is_zero();
      CHECK(nonzero);
    }
  }
}

TEST_CASE("eliminator solves consistent systems") {
  std::mt19937 rng(515);
  for (int trial = 0; trial < 40; ++trial) {
    Mat a = random_mat(rng, 6, 4, -5, 5);
    Mat xs = random_mat(rng, 4, 1, -5, 5);
    Vec x0(4);
    for (int i = 0; i < 4; ++i) x0[i] = xs.at(i, 0);
    Vec b = mat_apply(a, x0);
    SparseEliminator el(4);
    for (int i = 0; i < 6; ++i) el.add(dense_row(a, i), b[i]);
    REQUIRE(el.consistent());
    Vec sol = el.solution();
    CHECK(mat_apply(a, sol) == b);
  }
}

TEST_CASE("dependence detection") {
  SparseEliminator el(3);
  CHECK(!el.add_detect_dependent({{0, Cyc::one()}, {1, Cyc::one()}}));
  CHECK(!el.add_detect_dependent({{1, Cyc::one()}, {2, Cyc::one()}}));
  // Row equals the sum of the first two.
  CHECK(el.add_detect_dependent(
      {{0, Cyc::one()}, {1, Cyc::rational(2)}, {2, Cyc::one()}}));
  CHECK(el.rank() == 2);
}

TEST_CASE("modular rank agrees with exact rank") {
  std::mt19937 rng(90210);
  for (int trial = 0; trial < 30; ++trial) {
    Mat a = random_mat(rng, 5, 8);
    auto rows = sparse_rows(a);
    auto r = rank_mod_p(rows, 8, 1000000000000000003ull);
    REQUIRE(r.has_value());
    CHECK(*r == rank_dense(a));
  }
}

TEST_CASE("full rank certificate") {
  auto rows = sparse_rows(Mat::identity(20));
  CHECK(certified_full_rank(rows, 20));
  CHECK(rank_hybrid(rows, 20) == 20);

  // Rank deficient: certificate must stay inconclusive, hybrid stays exact.
  Mat m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = Cyc::rational(i + j);
  auto rows2 = sparse_rows(m);
  CHECK(!certified_full_rank(rows2, 4));
  CHECK(rank_hybrid(rows2, 4) == 2);

  // Cyclotomic entries cannot reduce mod p; exact path must take over.
  Mat z(2, 2);
  z.at(0, 0) = Cyc::zeta(3);
  z.at(1, 1) = Cyc::one(3);
  CHECK(!rank_mod_p(sparse_rows(z), 2, 1000000000000000003ull).has_value());
  CHECK(rank_hybrid(sparse_rows(z), 2) == 2);
}

TEST_CASE("hermitian eigenvalues") {
  using CD = std::complex<double>;
  std::vector<std::vector<CD>> a = {{CD(2), CD(1)}, {CD(1), CD(2)}};
  auto e = hermitian_eigenvalues(a);
  CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-10));

  std::vector<std::vector<CD>> h = {{CD(0), CD(0, 1)}, {CD(0, -1), CD(0)}};
  auto e2 = hermitian_eigenvalues(h);
  CHECK(e2[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(e2[1] == doctest::Approx(1.0).epsilon(1e-10));

  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 6;
    std::vector<std::vector<CD>> m(n, std::vector<CD>(n));
    for (auto& row : m)
      for (auto& v : row) v = CD(d(rng), d(rng));
    std::vector<std::vector<CD>> psd(n, std::vector<CD>(n));
    double trace = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CD acc(0);
        for (int k = 0; k < n; ++k) acc += std::conj(m[k][i]) * m[k][j];
        psd[i][j] = acc;
        if (i == j) trace += acc.real();
      }
    auto eig = hermitian_eigenvalues(psd);
    CHECK(eig.front() >= -1e-9);
    double sum = 0;
    for (double v : eig) sum += v;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-7));
  }
}

TEST_CASE("minimal polynomial") {
  Mat d(3, 3);
  d.at(0, 0) = Cyc::one();
  d.at(1, 1) = Cyc::rational(2);
  d.at(2, 2) = Cyc::rational(2);
  auto p = minimal_polynomial(d);
  // (x - 1)(x - 2) = x^2 - 3x + 2.
  REQUIRE(p.size() == 3);
  CHECK(p[0] == Cyc::rational(2));
  CHECK(p[1] == Cyc::rational(-3));
  CHECK(p[2] == Cyc::one());

  Mat nil(2, 2);
  nil.at(0, 1) = Cyc::one();
  auto pn = minimal_polynomial(nil);
  REQUIRE(pn.size() == 3);
  CHECK(pn[0].is_zero());
  CHECK(pn[1].is_zero());

  auto pid = minimal_polynomial(Mat::identity(4));
  REQUIRE(pid.size() == 2);
  CHECK(pid[0] == Cyc::rational(-1));
}

TEST_CASE("rational roots") {
  auto r = rational_roots({Rat(2), Rat(-3), Rat(1)});
  REQUIRE(r.size() == 2);
  CHECK(r[0].first == 1);
  CHECK(r[0].second == 1);
  CHECK(r[1].first == 2);

  auto none = rational_roots({Rat(-2), Rat(0), Rat(1)});
  CHECK(none.empty());

  // x^2 * (2x - 1)^2, roots 0 and 1/2 with multiplicity 2.
  auto m = rational_roots({Rat(0), Rat(0), Rat(1), Rat(-4), Rat(4)});
  REQUIRE(m.size() == 2);
  CHECK(m[0].first == 0);
  CHECK(m[0].second == 2);
  CHECK(m[1].first == Rat(1) / 2);
  CHECK(m[1].second == 2);
}
