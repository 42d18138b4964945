#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqg/dual.hpp"
#include "pqg/star.hpp"
#include "pqg/zoo.hpp"

#include <functional>
#include <string>

using namespace pqg;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  }
  return Errc::ParseError;  // sentinel: nothing was thrown
}

QuantumGroupoid build(const std::string& name) {
  ZooEntry e = zoo_get(name);
  return build_quantum_groupoid(e.alg, e.delta);
}

Cyc q(long long num, long long den = 1) { return Cyc::rational(num, den); }

const char* kAllFixtures[] = {"z2",       "p2",        "fun_z3",
                              "fun_s3",   "ag",        "sw",
                              "group_z3_c3", "group_s3", "sum_z2_z2",
                              "sum_p2_fun_z3"};

const char* kStarFixtures[] = {"z2",       "p2",        "fun_z3",
                               "fun_s3",   "ag",        "group_z3_c3",
                               "group_s3", "sum_z2_z2", "sum_p2_fun_z3"};

// Dimension of {z : ze_j = e_jz for all j} via the nullity of the
// commutator system.
int center_dim(const PartialAlgebra& a) {
  const int d = a.dim();
  SparseEliminator el(d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      SpVec row;
      for (int i = 0; i < d; ++i) {
        Cyc c;
        for (const auto& [m, v] : a.prod(i, j))
          if (m == k) c = c + v;
        for (const auto& [m, v] : a.prod(j, i))
          if (m == k) c = c - v;
        if (!c.is_zero()) row.emplace_back(i, c);
      }
      el.add(std::move(row));
    }
  return el.nullity();
}

}  // namespace

TEST_CASE("dual of the pair groupoid function algebra is the matrix algebra") {
  QuantumGroupoid qg = build("p2");
  DualQuantumGroupoid d = build_dual(qg);
  REQUIRE(d.qg.dim() == 4);
  CHECK(center_dim(d.qg.alg) == 1);

  // Basis is e_ij at index 2i+j (target i, source j); the functionals
  // compose like matrix units.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const SpVec& p = d.qg.alg.prod(2 * i + j, 2 * k + l);
          if (j != k) {
            CHECK(p.empty());
          } else {
            REQUIRE(p.size() == 1);
            CHECK(p[0].first == 2 * i + l);
            CHECK(p[0].second == q(1));
          }
        }

  // Matrix units are group-like here: the pair groupoid has one arrow
  // per pair, so comultiplication cannot spread out.
  for (int m = 0; m < 4; ++m) {
    Vec want(16);
    want[flat(m, m, 4)] = q(1);
    CHECK(d.qg.delta[m] == want);
  }

  CHECK(d.md.sigma_phi == Mat::identity(4));
  CHECK(d.md.element.delta == d.qg.units.total());
  CHECK(d.md.nu == Vec{q(1), q(1)});
  // Left functional of the dual is the trace.
  CHECK(d.md.phi.covector == Vec{q(1), q(0), q(0), q(1)});
  CHECK(d.qg.eps == Vec{q(1), q(1), q(1), q(1)});
  CHECK(check_dual_modular(qg, d));
}

TEST_CASE("dual of the order two group algebra is its function algebra") {
  QuantumGroupoid qg = build("z2");
  DualQuantumGroupoid d = build_dual(qg);
  REQUIRE(d.qg.dim() == 2);

  // Orthogonal idempotents: the characters of the group sit inside as
  // linear combinations, the point evaluations are the basis.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const SpVec& p = d.qg.alg.prod(i, j);
      if (i != j) {
        CHECK(p.empty());
      } else {
        REQUIRE(p.size() == 1);
        CHECK(p[0].first == i);
        CHECK(p[0].second == q(1));
      }
    }

  // Comultiplication is dual to the group law: the fibre of each group
  // element.
  Vec w0(4), w1(4);
  w0[flat(0, 0, 2)] = q(1);
  w0[flat(1, 1, 2)] = q(1);
  w1[flat(0, 1, 2)] = q(1);
  w1[flat(1, 0, 2)] = q(1);
  CHECK(d.qg.delta[0] == w0);
  CHECK(d.qg.delta[1] == w1);

  CHECK(d.md.element.delta == d.qg.units.total());
  CHECK(d.md.phi.covector == Vec{q(1), q(1)});
  CHECK(d.md.psi.covector == Vec{q(1), q(1)});
  CHECK(check_dual_modular(qg, d));
}

TEST_CASE("dual of the symmetric group function algebra is its group algebra") {
  QuantumGroupoid qg = build("fun_s3");
  DualQuantumGroupoid d = build_dual(qg);
  REQUIRE(d.qg.dim() == 6);
  CHECK(center_dim(d.qg.alg) == 3);

  // Point evaluations multiply like scaled group elements: because the
  // left functional weights every point by 1/6, each product is exactly
  // one basis vector with coefficient 1/6.
  bool noncommutative = false;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const SpVec& p = d.qg.alg.prod(i, j);
      REQUIRE(p.size() == 1);
      CHECK(p[0].second == q(1, 6));
      if (!(p == d.qg.alg.prod(j, i))) noncommutative = true;
    }
  CHECK(noncommutative);
  CHECK(check_dual_modular(qg, d));
}

TEST_CASE("sweedler dual has the expected modular data") {
  QuantumGroupoid qg = build("sw");
  DualQuantumGroupoid d = build_dual(qg);
  REQUIRE(d.qg.dim() == 4);

  // delta of the dual evaluates eps after the modular automorphism,
  // pulled through the antidiagonal gram matrix.
  CHECK(d.md.element.delta == Vec{q(0), q(0), q(-1), q(1)});
  // sigma of the dual is right division by delta composed with the
  // squared antipode: it swaps the basis in pairs.
  Mat sig(4, 4);
  sig.at(0, 1) = q(1);
  sig.at(1, 0) = q(1);
  sig.at(2, 3) = q(1);
  sig.at(3, 2) = q(1);
  CHECK(d.md.sigma_phi == sig);
  // The scaling constant inverts: -1 on both sides here.
  CHECK(d.md.nu == Vec{q(-1)});
  CHECK(check_dual_modular(qg, d));
  CHECK(check_modular_identities(d.qg, d.md).all());
}

TEST_CASE("dual products respect the swapped grading") {
  for (const char* name : {"p2", "sw", "ag", "fun_s3"}) {
    QuantumGroupoid qg = build(name);
    DualQuantumGroupoid d = build_dual(qg);
    const PartialAlgebra& da = d.qg.alg;

    // The dual grade swaps the two middle legs of the source grade.
    for (int i = 0; i < da.dim(); ++i) {
      const GradeQuad& s = qg.alg.grade[i];
      CHECK(da.grade[i] == GradeQuad{s.r, s.t, s.s, s.u});
    }

    // Matching inner pairs or a zero product; the outer pairs survive.
    for (int i = 0; i < da.dim(); ++i)
      for (int j = 0; j < da.dim(); ++j) {
        const GradeQuad& gi = da.grade[i];
        const GradeQuad& gj = da.grade[j];
        const SpVec& p = da.prod(i, j);
        if (gi.col_pair() != gj.row_pair()) {
          CHECK(p.empty());
        } else {
          for (const auto& [m, c] : p) {
            REQUIRE(!c.is_zero());
            CHECK(da.grade[m] == GradeQuad{gi.r, gj.s, gi.t, gj.u});
          }
        }
      }
  }
}

TEST_CASE("local units of the dual are the counit slices") {
  QuantumGroupoid qg = build("ag");
  DualQuantumGroupoid d = build_dual(qg);
  Mat g = d.pairing.transpose();
  auto ginv = inverse_dense(g);
  REQUIRE(ginv.has_value());
  for (int s = 0; s < qg.alg.nobj(); ++s) {
    Vec pl = qg.units.one_lower(s);
    Vec vl(qg.dim()), vu(qg.dim());
    for (int k = 0; k < qg.dim(); ++k) {
      vl[k] = qg.eps_apply(qg.alg.mul(pl, qg.alg.basis_vec(k)));
      vu[k] = qg.eps_apply(qg.alg.mul(qg.alg.basis_vec(k), pl));
    }
    CHECK(d.qg.units.one_lower(s) == mat_apply(*ginv, vl));
    CHECK(d.qg.units.one_upper(s) == mat_apply(*ginv, vu));
  }
}

TEST_CASE("canonical dual functionals invert the source functionals") {
  for (const char* name : {"fun_z3", "group_s3"}) {
    QuantumGroupoid qg = build(name);
    ModularData md = modular_data(qg);
    DualQuantumGroupoid d = build_dual(qg, md);

    // Left side: phi(- e_i) has coordinates e_i, so the covector of the
    // dual left functional is the source counit, and symmetrically the
    // dual counit is the source left functional.
    CHECK(d.md.phi.covector == qg.eps);
    CHECK(d.qg.eps == md.phi.covector);

    // Right side: the dual right functional sends psi(e_i -) to eps(e_i).
    Mat g = d.pairing.transpose();
    auto ginv = inverse_dense(g);
    REQUIRE(ginv.has_value());
    Mat gpsi = gram_matrix(qg.alg, md.psi.covector);
    for (int i = 0; i < qg.dim(); ++i) {
      Vec vals(qg.dim());
      for (int k = 0; k < qg.dim(); ++k) vals[k] = gpsi.at(i, k);
      Vec c = mat_apply(*ginv, vals);
      Cyc got;
      for (int m = 0; m < qg.dim(); ++m)
        got = got + c[m] * d.md.psi.covector[m];
      CHECK(got == qg.eps[i]);
    }
  }
}

TEST_CASE("modular dictionary holds across the zoo") {
  for (const char* name : kAllFixtures) {
    QuantumGroupoid qg = build(name);
    DualQuantumGroupoid d = build_dual(qg);
    CHECK(check_dual_modular(qg, d));
    CHECK(check_modular_identities(d.qg, d.md).all());
  }
}

TEST_CASE("biduality is the identity on every instance") {
  for (const char* name : kAllFixtures) {
    QuantumGroupoid qg = build(name);
    CHECK(biduality_iso(qg) == Mat::identity(qg.dim()));
  }
}

TEST_CASE("dual star preserves the inner products") {
  for (const char* name : kStarFixtures) {
    QuantumGroupoid qg = build(name);
    DualQuantumGroupoid d = build_dual(qg);
    REQUIRE(d.qg.alg.star.has_value());
    CHECK(check_positivity(d.qg, d.md.phi));

    // Plancherel: the dual pairing of point functionals reproduces the
    // source pairing of basis vectors.
    for (int i = 0; i < qg.dim(); ++i)
      for (int j = 0; j < qg.dim(); ++j) {
        Vec wi = d.qg.alg.star_apply(d.qg.alg.basis_vec(i));
        Cyc lhs = d.md.phi.apply(d.qg.alg.mul(wi, d.qg.alg.basis_vec(j)));
        Vec ei = qg.alg.star_apply(qg.alg.basis_vec(i));
        Cyc rhs = d.primal.phi.apply(qg.alg.mul(ei, qg.alg.basis_vec(j)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("singular functional grams are rejected") {
  QuantumGroupoid qg = build("p2");
  ModularData md = modular_data(qg);

  // The counit is graded but nowhere near faithful here: its gram matrix
  // drops the off-diagonal arrows.
  ModularData bad = md;
  bad.phi = make_graded_functional(qg.alg, qg.eps);
  CHECK(code_of([&] { build_dual(qg, bad); }) == Errc::GramSingular);
  try {
    build_dual(qg, bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "dual: left functional gram is singular");
  }

  ModularData bad2 = md;
  bad2.psi = make_graded_functional(qg.alg, qg.eps);
  CHECK(code_of([&] { build_dual(qg, bad2); }) == Errc::GramSingular);
}
