#include "pqg/zoo.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>

namespace pqg {

void GroupTable::validate() const {
  int n = order();
  if (n == 0) throw Error(Errc::InvalidGroupTable, name + ": empty group");
  if (static_cast<int>(mult.size()) != n)
    throw Error(Errc::InvalidGroupTable, name + ": table has wrong height");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != n)
      throw Error(Errc::InvalidGroupTable, name + ": table has wrong width");
    for (int v : row)
      if (v < 0 || v >= n)
        throw Error(Errc::InvalidGroupTable, name + ": entry out of range");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (mult[mult[i][j]][k] != mult[i][mult[j][k]])
          throw Error(Errc::InvalidGroupTable, name + ": not associative");
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j)
      ok = ok && mult[i][j] == j && mult[j][i] == j;
    if (ok) e = i;
  }
  if (e < 0) throw Error(Errc::InvalidGroupTable, name + ": no identity");
  for (int g = 0; g < n; ++g) {
    bool has = false;
    for (int h = 0; h < n; ++h)
      has = has || (mult[g][h] == e && mult[h][g] == e);
    if (!has)
      throw Error(Errc::InvalidGroupTable,
                  name + ": " + labels[g] + " has no inverse");
  }
}

int GroupTable::identity() const {
  int n = order();
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j)
      ok = ok && mult[i][j] == j && mult[j][i] == j;
    if (ok) return i;
  }
  throw Error(Errc::InvalidGroupTable, name + ": no identity");
}

int GroupTable::inverse(int g) const {
  int e = identity();
  for (int h = 0; h < order(); ++h)
    if (mult[g][h] == e && mult[h][g] == e) return h;
  throw Error(Errc::InvalidGroupTable,
              name + ": " + labels[g] + " has no inverse");
}

GroupTable cyclic_group(int n) {
  GroupTable t;
  t.name = "Z" + std::to_string(n);
  for (int i = 0; i < n; ++i)
    t.labels.push_back(i == 0 ? "1" : i == 1 ? "g" : "g" + std::to_string(i));
  t.mult.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.mult[i][j] = (i + j) % n;
  t.validate();
  return t;
}

GroupTable symmetric_group_3() {
  // Elements as permutations of {0,1,2} in one-line notation, r = (0 1 2),
  // s = (0 1); composition fg means "apply g, then f".
  const std::array<std::array<int, 3>, 6> perm = {{{0, 1, 2},
                                                   {1, 2, 0},
                                                   {2, 0, 1},
                                                   {1, 0, 2},
                                                   {2, 1, 0},
                                                   {0, 2, 1}}};
  GroupTable t;
  t.name = "S3";
  t.labels = {"e", "r", "r2", "s", "rs", "r2s"};
  t.mult.assign(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perm[i][perm[j][x]];
      t.mult[i][j] =
          static_cast<int>(std::find(perm.begin(), perm.end(), c) -
                           perm.begin());
    }
  t.validate();
  return t;
}

void Groupoid::validate() const {
  int na = narrows();
  if (static_cast<int>(src.size()) != na ||
      static_cast<int>(tgt.size()) != na ||
      static_cast<int>(comp.size()) != na ||
      static_cast<int>(inverse.size()) != na ||
      static_cast<int>(identity.size()) != nobj())
    throw Error(Errc::InvalidGroupTable, name + ": inconsistent sizes");
  for (int a = 0; a < na; ++a) {
    if (src[a] < 0 || src[a] >= nobj() || tgt[a] < 0 || tgt[a] >= nobj())
      throw Error(Errc::InvalidGroupTable, name + ": endpoint out of range");
    if (static_cast<int>(comp[a].size()) != na)
      throw Error(Errc::InvalidGroupTable, name + ": ragged composition");
  }
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      bool composable = src[i] == tgt[j];
      if (composable != (comp[i][j] >= 0))
        throw Error(Errc::InvalidGroupTable,
                    name + ": composability does not match endpoints");
      if (composable) {
        int k = comp[i][j];
        if (k >= na || src[k] != src[j] || tgt[k] != tgt[i])
          throw Error(Errc::InvalidGroupTable,
                      name + ": composite has wrong endpoints");
      }
    }
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      if (comp[i][j] < 0) continue;
      for (int k = 0; k < na; ++k) {
        if (comp[j][k] < 0) continue;
        if (comp[comp[i][j]][k] != comp[i][comp[j][k]])
          throw Error(Errc::InvalidGroupTable, name + ": not associative");
      }
    }
  for (int o = 0; o < nobj(); ++o) {
    int e = identity[o];
    if (e < 0 || e >= na || src[e] != o || tgt[e] != o)
      throw Error(Errc::InvalidGroupTable, name + ": bad identity arrow");
    for (int a = 0; a < na; ++a) {
      if (tgt[a] == o && comp[e][a] != a)
        throw Error(Errc::InvalidGroupTable, name + ": identity fails");
      if (src[a] == o && comp[a][e] != a)
        throw Error(Errc::InvalidGroupTable, name + ": identity fails");
    }
  }
  for (int a = 0; a < na; ++a) {
    int b = inverse[a];
    if (b < 0 || b >= na || comp[b][a] != identity[src[a]] ||
        comp[a][b] != identity[tgt[a]])
      throw Error(Errc::InvalidGroupTable, name + ": bad inverse");
  }
}

Groupoid pair_groupoid(int n) {
  Groupoid g;
  g.name = "pair" + std::to_string(n);
  for (int i = 0; i < n; ++i) g.objects.push_back(std::to_string(i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.arrows.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
      g.tgt.push_back(i);
      g.src.push_back(j);
    }
  int na = n * n;
  g.comp.assign(na, std::vector<int>(na, -1));
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b)
      if (a % n == b / n) g.comp[a][b] = (a / n) * n + b % n;
  for (int i = 0; i < n; ++i) g.identity.push_back(i * n + i);
  for (int a = 0; a < na; ++a) g.inverse.push_back((a % n) * n + a / n);
  g.validate();
  return g;
}

Groupoid group_groupoid(const GroupTable& t) {
  t.validate();
  Groupoid g;
  g.name = t.name;
  g.objects = {"o"};
  g.arrows = t.labels;
  int n = t.order();
  g.src.assign(n, 0);
  g.tgt.assign(n, 0);
  g.comp = t.mult;
  g.identity = {t.identity()};
  for (int a = 0; a < n; ++a) g.inverse.push_back(t.inverse(a));
  g.validate();
  return g;
}

Groupoid action_groupoid_z2_swap12() {
  // Arrows (x, g) for g in {e, s} acting on {1,2,3}, s swapping 1 and 2.
  const std::array<std::array<int, 3>, 2> act = {{{0, 1, 2}, {1, 0, 2}}};
  Groupoid g;
  g.name = "ag";
  g.objects = {"1", "2", "3"};
  auto idx = [](int x, int gi) { return x * 2 + gi; };
  for (int x = 0; x < 3; ++x)
    for (int gi = 0; gi < 2; ++gi) {
      g.arrows.push_back(g.objects[x] + (gi == 0 ? "_e" : "_s"));
      g.src.push_back(x);
      g.tgt.push_back(act[gi][x]);
    }
  g.comp.assign(6, std::vector<int>(6, -1));
  for (int x = 0; x < 3; ++x)
    for (int gi = 0; gi < 2; ++gi)
      for (int y = 0; y < 3; ++y)
        for (int hi = 0; hi < 2; ++hi)
          if (y == act[gi][x]) g.comp[idx(y, hi)][idx(x, gi)] = idx(x, gi ^ hi);
  for (int x = 0; x < 3; ++x) g.identity.push_back(idx(x, 0));
  for (int x = 0; x < 3; ++x)
    for (int gi = 0; gi < 2; ++gi) g.inverse.push_back(idx(act[gi][x], gi));
  g.validate();
  return g;
}

ZooEntry make_group_algebra(const GroupTable& t, int conductor,
                            const std::string& name) {
  t.validate();
  ZooEntry e;
  int n = t.order();
  e.alg.name = name;
  e.alg.conductor = conductor;
  e.alg.objects = {"o"};
  e.alg.basis = t.labels;
  e.alg.grade.assign(n, GradeQuad{0, 0, 0, 0});
  e.alg.mult.assign(static_cast<size_t>(n) * n, {});
  Cyc one = Cyc::one().promoted(conductor);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      e.alg.set_prod(i, j, {{t.mult[i][j], one}});
  Mat star(n, n);
  for (int i = 0; i < n; ++i) star.at(t.inverse(i), i) = one;
  e.alg.star = star;
  for (int i = 0; i < n; ++i) {
    Vec d(static_cast<size_t>(n) * n);
    d[flat(i, i, n)] = one;
    e.delta.push_back(std::move(d));
  }
  return e;
}

ZooEntry make_fun_groupoid(const Groupoid& g, const std::string& name) {
  g.validate();
  ZooEntry e;
  int n = g.narrows();
  e.alg.name = name;
  e.alg.conductor = 1;
  e.alg.objects = g.objects;
  e.alg.basis = g.arrows;
  for (int a = 0; a < n; ++a)
    e.alg.grade.push_back({g.tgt[a], g.tgt[a], g.src[a], g.src[a]});
  e.alg.mult.assign(static_cast<size_t>(n) * n, {});
  for (int a = 0; a < n; ++a) e.alg.set_prod(a, a, {{a, Cyc::one()}});
  e.alg.star = Mat::identity(n);
  e.delta.assign(n, Vec(static_cast<size_t>(n) * n));
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      if (g.comp[b][c] >= 0) e.delta[g.comp[b][c]][flat(b, c, n)] = Cyc::one();
  return e;
}

ZooEntry make_sweedler() {
  ZooEntry e;
  e.alg.name = "sw";
  e.alg.conductor = 1;
  e.alg.objects = {"o"};
  e.alg.basis = {"1", "g", "x", "gx"};
  e.alg.grade.assign(4, GradeQuad{0, 0, 0, 0});
  e.alg.mult.assign(16, {});
  Cyc one = Cyc::one(), neg = -Cyc::one();
  auto set = [&](int i, int j, int k, Cyc c) {
    e.alg.set_prod(i, j, {{k, c}});
  };
  // 1 is the unit; g*g = 1, x*x = 0, x*g = -g*x., products in the basis
  // order 1, g, x, gx.
  for (int i = 0; i < 4; ++i) {
    set(0, i, i, one);
    if (i) set(i, 0, i, one);
  }
  set(1, 1, 0, one);
  set(1, 2, 3, one);
  set(2, 1, 3, neg);
  set(1, 3, 2, one);
  set(3, 1, 2, neg);
  // x*x, x*gx, gx*x, gx*gx all vanish.
  e.delta.assign(4, Vec(16));
  e.delta[0][flat(0, 0, 4)] = one;
  e.delta[1][flat(1, 1, 4)] = one;
  e.delta[2][flat(2, 0, 4)] = one;
  e.delta[2][flat(1, 2, 4)] = one;
  e.delta[3][flat(3, 1, 4)] = one;
  e.delta[3][flat(0, 3, 4)] = one;
  return e;
}

ZooEntry make_upper_triangular(int n) {
  ZooEntry e;
  e.alg.name = "upper_triangular_" + std::to_string(n);
  e.alg.conductor = 1;
  for (int i = 0; i < n; ++i) e.alg.objects.push_back(std::to_string(i + 1));
  std::vector<std::vector<int>> at(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      at[i][j] = static_cast<int>(e.alg.basis.size());
      e.alg.basis.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
      e.alg.grade.push_back({i, j, i, j});
    }
  int d = e.alg.dim();
  e.alg.mult.assign(static_cast<size_t>(d) * d, {});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        e.alg.set_prod(at[i][j], at[j][k], {{at[i][k], Cyc::one()}});
  return e;
}

ZooEntry make_broken_counit() {
  GroupTable z2 = cyclic_group(2);
  ZooEntry e = make_group_algebra(z2, 1, "broken_counit");
  e.alg.star.reset();
  // Send both basis vectors to 1 (x) 1; still coassociative and
  // multiplicative, but no functional can restore either leg.
  e.delta[1] = e.delta[0];
  return e;
}

ZooEntry make_broken_canmap() {
  ZooEntry e;
  e.alg.name = "broken_canmap";
  e.alg.conductor = 1;
  e.alg.objects = {"o"};
  e.alg.basis = {"e", "z"};
  e.alg.grade.assign(2, GradeQuad{0, 0, 0, 0});
  e.alg.mult.assign(4, {});
  Cyc one = Cyc::one();
  e.alg.set_prod(0, 0, {{0, one}});
  e.alg.set_prod(0, 1, {{1, one}});
  e.alg.set_prod(1, 0, {{1, one}});
  e.alg.set_prod(1, 1, {{1, one}});
  e.delta.assign(2, Vec(4));
  e.delta[0][flat(0, 0, 2)] = one;
  e.delta[1][flat(1, 1, 2)] = one;
  return e;
}

ZooEntry relabeled(ZooEntry e, const std::string& name,
                   const std::vector<std::string>& objects,
                   const std::string& basis_prefix) {
  if (objects.size() != e.alg.objects.size())
    throw Error(Errc::BadInput, "relabeling must keep the object count");
  e.alg.name = name;
  e.alg.objects = objects;
  for (auto& b : e.alg.basis) b = basis_prefix + b;
  return e;
}

ZooEntry direct_sum(const ZooEntry& a, const ZooEntry& b,
                    const std::string& name) {
  for (const auto& oa : a.alg.objects)
    for (const auto& ob : b.alg.objects)
      if (oa == ob)
        throw Error(Errc::ObjectClash,
                    "object " + oa + " appears in both summands");
  int cond = std::lcm(a.alg.conductor, b.alg.conductor);
  auto lift = [cond](const Cyc& c) { return c.promoted(cond); };
  ZooEntry e;
  e.alg.name = name;
  e.alg.conductor = cond;
  e.alg.objects = a.alg.objects;
  e.alg.objects.insert(e.alg.objects.end(), b.alg.objects.begin(),
                       b.alg.objects.end());
  e.alg.basis = a.alg.basis;
  e.alg.basis.insert(e.alg.basis.end(), b.alg.basis.begin(),
                     b.alg.basis.end());
  int da = a.alg.dim(), db = b.alg.dim(), d = da + db;
  int shift = a.alg.nobj();
  e.alg.grade = a.alg.grade;
  for (const GradeQuad& q : b.alg.grade)
    e.alg.grade.push_back(
        {q.r + shift, q.s + shift, q.t + shift, q.u + shift});
  e.alg.mult.assign(static_cast<size_t>(d) * d, {});
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      SpVec p;
      for (const auto& [k, c] : a.alg.prod(i, j)) p.emplace_back(k, lift(c));
      e.alg.set_prod(i, j, std::move(p));
    }
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      SpVec p;
      for (const auto& [k, c] : b.alg.prod(i, j))
        p.emplace_back(da + k, lift(c));
      e.alg.set_prod(da + i, da + j, std::move(p));
    }
  if (a.alg.star && b.alg.star) {
    Mat star(d, d);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) star.at(i, j) = lift(a.alg.star->at(i, j));
    for (int i = 0; i < db; ++i)
      for (int j = 0; j < db; ++j)
        star.at(da + i, da + j) = lift(b.alg.star->at(i, j));
    e.alg.star = star;
  }
  if (!a.delta.empty() && !b.delta.empty()) {
    e.delta.assign(d, Vec(static_cast<size_t>(d) * d));
    for (int i = 0; i < da; ++i)
      for (int p = 0; p < da; ++p)
        for (int q = 0; q < da; ++q) {
          const Cyc& c = a.delta[i][flat(p, q, da)];
          if (!c.is_zero()) e.delta[i][flat(p, q, d)] = lift(c);
        }
    for (int i = 0; i < db; ++i)
      for (int p = 0; p < db; ++p)
        for (int q = 0; q < db; ++q) {
          const Cyc& c = b.delta[i][flat(p, q, db)];
          if (!c.is_zero()) e.delta[da + i][flat(da + p, da + q, d)] = lift(c);
        }
  }
  return e;
}

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = {
      "z2",          "p2",
      "fun_z2",      "fun_z3",
      "fun_s3",      "ag",
      "sw",          "group_z3_c3",
      "group_s3",    "sum_z2_z2",
      "sum_p2_fun_z3", "upper_triangular_4",
      "broken_counit", "broken_canmap"};
  return names;
}

ZooEntry zoo_get(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (key == "z2") return make_group_algebra(cyclic_group(2), 1, "z2");
  if (key == "p2") return make_fun_groupoid(pair_groupoid(2), "p2");
  if (key == "fun_z2")
    return make_fun_groupoid(group_groupoid(cyclic_group(2)), "fun_z2");
  if (key == "fun_z3")
    return make_fun_groupoid(group_groupoid(cyclic_group(3)), "fun_z3");
  if (key == "fun_s3")
    return make_fun_groupoid(group_groupoid(symmetric_group_3()), "fun_s3");
  if (key == "ag") return make_fun_groupoid(action_groupoid_z2_swap12(), "ag");
  if (key == "sw") return make_sweedler();
  if (key == "group_z3_c3")
    return make_group_algebra(cyclic_group(3), 3, "group_z3_c3");
  if (key == "group_s3")
    return make_group_algebra(symmetric_group_3(), 1, "group_s3");
  if (key == "sum_z2_z2") {
    ZooEntry z2 = zoo_get("z2");
    return direct_sum(relabeled(z2, "z2a", {"a"}, "a_"),
                      relabeled(z2, "z2b", {"b"}, "b_"), "sum_z2_z2");
  }
  if (key == "sum_p2_fun_z3")
    return direct_sum(zoo_get("p2"), zoo_get("fun_z3"), "sum_p2_fun_z3");
  if (key == "upper_triangular_4") return make_upper_triangular(4);
  if (key == "broken_counit") return make_broken_counit();
  if (key == "broken_canmap") return make_broken_canmap();
  throw Error(Errc::BadInput, "unknown zoo instance '" + std::string(name) + "'");
}

}  // namespace pqg
