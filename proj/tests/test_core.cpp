#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "pqg/algebra.hpp"
#include "pqg/zoo.hpp"

using namespace pqg;

namespace {

template <typename F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  }
  REQUIRE(false);
  return Errc::BadInput;
}

int basis_index(const PartialAlgebra& a, const std::string& label) {
  for (int i = 0; i < a.dim(); ++i)
    if (a.basis[i] == label) return i;
  REQUIRE(false);
  return -1;
}

Vec rand_vec(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Vec v(n);
  for (auto& c : v) c = Cyc::rational(coeff(rng));
  return v;
}

}  // namespace

TEST_CASE("zoo instances are well formed graded algebras") {
  for (const auto& name : zoo_names()) {
    CAPTURE(name);
    ZooEntry e = zoo_get(name);
    std::string why;
    CHECK(e.alg.grading_compatible(&why));
    CHECK(why.empty());
    CHECK(e.alg.associative(&why));
    CHECK(why.empty());
    if (e.alg.star) CHECK(e.alg.star_consistent(&why));
  }
}

TEST_CASE("zoo dimensions and conductors") {
  const std::map<std::string, std::pair<int, int>> expect = {
      {"z2", {2, 1}},          {"p2", {4, 1}},
      {"fun_z2", {2, 1}},      {"fun_z3", {3, 1}},
      {"fun_s3", {6, 1}},      {"ag", {6, 1}},
      {"sw", {4, 1}},          {"group_z3_c3", {3, 3}},
      {"group_s3", {6, 1}},    {"sum_z2_z2", {4, 1}},
      {"sum_p2_fun_z3", {7, 1}}, {"upper_triangular_4", {6, 1}},
      {"broken_counit", {2, 1}}, {"broken_canmap", {2, 1}}};
  for (const auto& [name, dc] : expect) {
    ZooEntry e = zoo_get(name);
    CHECK(e.alg.dim() == dc.first);
    CHECK(e.alg.conductor == dc.second);
  }
  CHECK(zoo_get("sum_z2_z2").alg.objects ==
        std::vector<std::string>{"a", "b"});
  CHECK(zoo_get("ag").alg.objects == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("pointwise products on the pair groupoid function algebra") {
  ZooEntry p2 = zoo_get("p2");
  int e12 = basis_index(p2.alg, "e12");
  int e21 = basis_index(p2.alg, "e21");
  CHECK(p2.alg.mul(p2.alg.basis_vec(e12), p2.alg.basis_vec(e12)) ==
        p2.alg.basis_vec(e12));
  CHECK(p2.alg.mul(p2.alg.basis_vec(e12), p2.alg.basis_vec(e21)) ==
        Vec(p2.alg.dim()));
}

TEST_CASE("group algebra products") {
  ZooEntry z2 = zoo_get("z2");
  int g = basis_index(z2.alg, "g");
  int one = basis_index(z2.alg, "1");
  CHECK(z2.alg.mul(z2.alg.basis_vec(g), z2.alg.basis_vec(g)) ==
        z2.alg.basis_vec(one));

  ZooEntry s3 = zoo_get("group_s3");
  int r = basis_index(s3.alg, "r");
  int s = basis_index(s3.alg, "s");
  CHECK(s3.alg.mul(s3.alg.basis_vec(r), s3.alg.basis_vec(s)) !=
        s3.alg.mul(s3.alg.basis_vec(s), s3.alg.basis_vec(r)));
  Vec r3 = s3.alg.mul(s3.alg.basis_vec(r),
                      s3.alg.mul(s3.alg.basis_vec(r), s3.alg.basis_vec(r)));
  CHECK(r3 == s3.alg.basis_vec(basis_index(s3.alg, "e")));
}

TEST_CASE("base units decompose the total unit along diagonal grades") {
  ZooEntry p2 = zoo_get("p2");
  BaseUnits u = base_units(p2.alg);
  CHECK(u.at(0, 1) == p2.alg.basis_vec(basis_index(p2.alg, "e12")));
  CHECK(u.at(1, 0) == p2.alg.basis_vec(basis_index(p2.alg, "e21")));
  for (int r = 0; r < 2; ++r)
    for (int t = 0; t < 2; ++t) CHECK(u.unit_nonzero(r, t));

  ZooEntry z2 = zoo_get("z2");
  BaseUnits uz = base_units(z2.alg);
  CHECK(uz.total() == z2.alg.basis_vec(basis_index(z2.alg, "1")));
  CHECK(uz.total() == uz.at(0, 0));

  ZooEntry ag = zoo_get("ag");
  BaseUnits ua = base_units(ag.alg);
  // Objects 1 and 2 are connected by the swap, object 3 only to itself.
  CHECK(ua.unit_nonzero(0, 1));
  CHECK(ua.unit_nonzero(1, 0));
  CHECK(!ua.unit_nonzero(0, 2));
  CHECK(!ua.unit_nonzero(2, 1));
  CHECK(ua.unit_nonzero(2, 2));
  // The unit of a pointwise-product function algebra is the constant 1.
  Vec ones(ag.alg.dim(), Cyc::one());
  CHECK(ua.total() == ones);

  CHECK(code_of([] { base_units(zoo_get("upper_triangular_4").alg); }) ==
        Errc::NoUnit);
}

TEST_CASE("partial regularity flags") {
  for (const auto& name : {"z2", "p2", "ag", "fun_s3", "sw", "group_z3_c3"}) {
    CAPTURE(name);
    RegularityReport rep = check_partial_regularity(zoo_get(name).alg);
    CHECK(rep.all());
  }
  RegularityReport bad =
      check_partial_regularity(zoo_get("upper_triangular_4").alg);
  CHECK(!bad.nondegenerate_partial);
  CHECK(!bad.nondegenerate_total);
  CHECK(!bad.idempotent_partial);
  CHECK(!bad.idempotent_total);
}

TEST_CASE("partial non-degeneracy implies total non-degeneracy on the zoo") {
  for (const auto& name : zoo_names()) {
    CAPTURE(name);
    RegularityReport rep = check_partial_regularity(zoo_get(name).alg);
    if (rep.nondegenerate_partial) CHECK(rep.nondegenerate_total);
  }
}

TEST_CASE("balanced pair counts") {
  const std::map<std::string, int> expect = {
      {"z2", 4},  {"p2", 8},        {"fun_z3", 9},
      {"ag", 12}, {"fun_s3", 36},   {"sw", 16},
      {"sum_z2_z2", 8}, {"sum_p2_fun_z3", 17}};
  for (const auto& [name, n] : expect) {
    CAPTURE(name);
    ZooEntry e = zoo_get(name);
    BaseUnits u = base_units(e.alg);
    TensorSquare ts = tensor_square(e.alg, u);
    CHECK(ts.npairs() == n);
  }
}

TEST_CASE("the separating idempotent acts as the balanced identity") {
  for (const auto& name : {"p2", "ag", "z2", "fun_z3"}) {
    CAPTURE(name);
    ZooEntry e = zoo_get(name);
    BaseUnits u = base_units(e.alg);
    TensorSquare ts = tensor_square(e.alg, u);
    CHECK(ts.is_balanced(ts.e_full));
    CHECK(tensor_mul(e.alg, ts.e_full, ts.e_full) == ts.e_full);
    for (int k = 0; k < ts.npairs(); ++k) {
      Vec p(static_cast<size_t>(e.alg.dim()) * e.alg.dim());
      p[flat(ts.pairs[k].first, ts.pairs[k].second, e.alg.dim())] = Cyc::one();
      CHECK(tensor_mul(e.alg, ts.e_full, p) == p);
      CHECK(tensor_mul(e.alg, p, ts.e_full) == p);
    }
  }
}

TEST_CASE("tensor multiplication is associative") {
  ZooEntry p2 = zoo_get("p2");
  std::mt19937 rng(777);
  int d2 = p2.alg.dim() * p2.alg.dim();
  for (int trial = 0; trial < 10; ++trial) {
    Vec x = rand_vec(d2, rng), y = rand_vec(d2, rng), z = rand_vec(d2, rng);
    CHECK(tensor_mul(p2.alg, x, tensor_mul(p2.alg, y, z)) ==
          tensor_mul(p2.alg, tensor_mul(p2.alg, x, y), z));
  }
}

TEST_CASE("balanced restriction round trips and rejects unbalanced tensors") {
  ZooEntry p2 = zoo_get("p2");
  BaseUnits u = base_units(p2.alg);
  TensorSquare ts = tensor_square(p2.alg, u);
  std::mt19937 rng(31);
  Vec pv = rand_vec(ts.npairs(), rng);
  CHECK(ts.restrict_to_pairs(ts.extend(pv)) == pv);

  int e11 = basis_index(p2.alg, "e11");
  int e21 = basis_index(p2.alg, "e21");
  Vec bad(static_cast<size_t>(p2.alg.dim()) * p2.alg.dim());
  bad[flat(e11, e21, p2.alg.dim())] = Cyc::one();
  CHECK(!ts.is_balanced(bad));
  CHECK(code_of([&] { ts.restrict_to_pairs(bad); }) == Errc::BadInput);
}

TEST_CASE("slices against covectors") {
  ZooEntry p2 = zoo_get("p2");
  BaseUnits u = base_units(p2.alg);
  TensorSquare ts = tensor_square(p2.alg, u);
  // The identity-arrow indicator slices E down to the total unit.
  Vec eps(p2.alg.dim());
  eps[basis_index(p2.alg, "e11")] = Cyc::one();
  eps[basis_index(p2.alg, "e22")] = Cyc::one();
  CHECK(slice_second(p2.alg, ts.e_full, eps) == u.total());
  CHECK(slice_first(p2.alg, ts.e_full, eps) == u.total());

  ZooEntry z2 = zoo_get("z2");
  Vec phi(z2.alg.dim());
  phi[basis_index(z2.alg, "1")] = Cyc::one();
  int g = basis_index(z2.alg, "g");
  CHECK(slice_second(z2.alg, z2.delta[g], phi) == Vec(z2.alg.dim()));
  Vec zero(static_cast<size_t>(z2.alg.dim()) * z2.alg.dim());
  CHECK(slice_first(z2.alg, zero, phi) == Vec(z2.alg.dim()));
}

TEST_CASE("graded morphism checks") {
  ZooEntry p2 = zoo_get("p2");
  BaseUnits u = base_units(p2.alg);
  std::string why;
  CHECK(check_morphism(Mat::identity(p2.alg.dim()), p2.alg, u, p2.alg, u,
                       &why));
  CHECK(!check_morphism(Mat(p2.alg.dim(), p2.alg.dim()), p2.alg, u, p2.alg, u,
                        &why));

  // The comultiplication is a morphism into the balanced pair algebra.
  TensorSquare ts = tensor_square(p2.alg, u);
  PartialAlgebra pa = ts.pair_algebra(p2.alg);
  CHECK(pa.grading_compatible(&why));
  CHECK(pa.associative(&why));
  BaseUnits up = base_units(pa);
  Mat f(pa.dim(), p2.alg.dim());
  for (int i = 0; i < p2.alg.dim(); ++i) {
    Vec col = ts.restrict_to_pairs(p2.delta[i]);
    for (int k = 0; k < pa.dim(); ++k) f.at(k, i) = col[k];
  }
  std::string why2;
  CHECK(check_morphism(f, p2.alg, u, pa, up, &why2));
  CHECK(why2.empty());
}

TEST_CASE("direct sums stay block diagonal and detect object clashes") {
  ZooEntry s = zoo_get("sum_p2_fun_z3");
  for (int i = 0; i < 4; ++i)
    for (int j = 4; j < 7; ++j) {
      CHECK(s.alg.prod(i, j).empty());
      CHECK(s.alg.prod(j, i).empty());
    }
  for (int j = 4; j < 7; ++j) {
    CHECK(s.alg.grade[j].r >= 2);
    CHECK(s.alg.grade[j].u >= 2);
  }
  ZooEntry z2 = zoo_get("z2");
  CHECK(code_of([&] { direct_sum(z2, z2, "clash"); }) == Errc::ObjectClash);
}

TEST_CASE("group and groupoid validation rejects broken tables") {
  GroupTable t = cyclic_group(3);
  t.mult[1][1] = 1;
  CHECK(code_of([&] { t.validate(); }) == Errc::InvalidGroupTable);

  GroupTable empty;
  empty.name = "empty";
  CHECK(code_of([&] { empty.validate(); }) == Errc::InvalidGroupTable);

  Groupoid g = pair_groupoid(2);
  g.inverse[1] = 1;
  CHECK(code_of([&] { g.validate(); }) == Errc::InvalidGroupTable);
}

TEST_CASE("zoo lookup is case insensitive and deterministic") {
  ZooEntry a = zoo_get("P2");
  ZooEntry b = zoo_get("p2");
  CHECK(a.alg.basis == b.alg.basis);
  CHECK(a.alg.mult == b.alg.mult);
  CHECK(a.delta == b.delta);
  CHECK(code_of([] { zoo_get("nope"); }) == Errc::BadInput);
}

TEST_CASE("sweedler relations") {
  ZooEntry sw = zoo_get("sw");
  int g = basis_index(sw.alg, "g");
  int x = basis_index(sw.alg, "x");
  Vec gx = sw.alg.mul(sw.alg.basis_vec(g), sw.alg.basis_vec(x));
  CHECK(gx == sw.alg.basis_vec(basis_index(sw.alg, "gx")));
  Vec xg = sw.alg.mul(sw.alg.basis_vec(x), sw.alg.basis_vec(g));
  for (int i = 0; i < 4; ++i) CHECK(xg[i] == -gx[i]);
  CHECK(sw.alg.mul(sw.alg.basis_vec(x), sw.alg.basis_vec(x)) == Vec(4));
  CHECK(!sw.alg.star.has_value());
}
