#include "pqg/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace pqg {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Cyc::one();
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols != o.rows) throw Error(Errc::BadInput, "matrix shape mismatch");
  Mat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Cyc& v = at(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < o.cols; ++j) {
        const Cyc& w = o.at(k, j);
        if (!w.is_zero()) r.at(i, j) += v * w;
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows != o.rows || cols != o.cols)
    throw Error(Errc::BadInput, "matrix shape mismatch");
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows != o.rows || cols != o.cols)
    throw Error(Errc::BadInput, "matrix shape mismatch");
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const Cyc& v : a)
    if (!v.is_zero()) return false;
  return true;
}

Vec mat_apply(const Mat& m, const Vec& v) {
  if (static_cast<int>(v.size()) != m.cols)
    throw Error(Errc::BadInput, "matrix apply shape mismatch");
  Vec r(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!m.at(i, j).is_zero()) r[i] += m.at(i, j) * v[j];
  return r;
}

SpVec sp_normalize(SpVec v) {
  std::sort(v.begin(), v.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  SpVec out;
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& e) { return e.second.is_zero(); }),
            out.end());
  return out;
}

SpVec sp_scaled(const SpVec& v, const Cyc& c) {
  if (c.is_zero()) return {};
  SpVec out;
  out.reserve(v.size());
  for (const auto& e : v) out.emplace_back(e.first, e.second * c);
  return out;
}

SpVec sp_add_scaled(const SpVec& dst, const SpVec& src, const Cyc& c) {
  if (c.is_zero()) return dst;
  SpVec out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j >= src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i >= dst.size() || src[j].first < dst[i].first) {
      Cyc v = src[j].second * c;
      if (!v.is_zero()) out.emplace_back(src[j].first, std::move(v));
      ++j;
    } else {
      Cyc v = dst[i].second + src[j].second * c;
      if (!v.is_zero()) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

Cyc sp_dot_dense(const SpVec& v, const Vec& x) {
  Cyc acc;
  for (const auto& [idx, val] : v) acc += val * x[idx];
  return acc;
}

bool SparseEliminator::add(SpVec row, Cyc rhs) {
  bool dep;
  return reduce_add(std::move(row), std::move(rhs), &dep);
}

bool SparseEliminator::add_detect_dependent(SpVec row, Cyc rhs) {
  bool dep;
  reduce_add(std::move(row), std::move(rhs), &dep);
  return dep;
}

bool SparseEliminator::reduce_add(SpVec row, Cyc rhs, bool* dependent) {
  row = sp_normalize(std::move(row));
  while (true) {
    if (row.empty()) {
      *dependent = true;
      if (!rhs.is_zero()) {
        consistent_ = false;
        return false;
      }
      return true;
    }
    auto it = pivot_.find(row[0].first);
    if (it == pivot_.end()) break;
    const PivotRow& pr = rows_[it->second];
    Cyc f = row[0].second;
    row = sp_add_scaled(row, pr.row, -f);
    rhs -= f * pr.rhs;
  }
  *dependent = false;
  Cyc lead = row[0].second;
  if (lead != Cyc::one()) {
    Cyc inv = lead.inverse();
    for (auto& e : row) e.second *= inv;
    rhs *= inv;
  }
  pivot_[row[0].first] = static_cast<int>(rows_.size());
  rows_.push_back({std::move(row), std::move(rhs)});
  return true;
}

Vec SparseEliminator::solution() const {
  if (!consistent_)
    throw Error(Errc::BadInput, "solution of inconsistent system");
  Vec x(ncols_);
  for (auto it = pivot_.rbegin(); it != pivot_.rend(); ++it) {
    const PivotRow& pr = rows_[it->second];
    Cyc acc = pr.rhs;
    for (size_t k = 1; k < pr.row.size(); ++k)
      acc -= pr.row[k].second * x[pr.row[k].first];
    x[it->first] = std::move(acc);
  }
  return x;
}

std::vector<int> SparseEliminator::free_columns() const {
  std::vector<int> free_cols;
  for (int c = 0; c < ncols_; ++c)
    if (!pivot_.count(c)) free_cols.push_back(c);
  return free_cols;
}

std::vector<Vec> SparseEliminator::nullspace() const {
  std::vector<Vec> basis;
  for (int f : free_columns()) {
    Vec x(ncols_);
    x[f] = Cyc::one();
    for (auto it = pivot_.rbegin(); it != pivot_.rend(); ++it) {
      const PivotRow& pr = rows_[it->second];
      Cyc acc;
      for (size_t k = 1; k < pr.row.size(); ++k)
        acc -= pr.row[k].second * x[pr.row[k].first];
      x[it->first] = std::move(acc);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

int rank_dense(Mat m) {
  SparseEliminator el(m.cols);
  for (int i = 0; i < m.rows; ++i) {
    SpVec row;
    for (int j = 0; j < m.cols; ++j)
      if (!m.at(i, j).is_zero()) row.emplace_back(j, m.at(i, j));
    el.add(std::move(row));
  }
  return el.rank();
}

std::optional<Vec> solve_dense(const Mat& a, const Vec& b) {
  if (static_cast<int>(b.size()) != a.rows)
    throw Error(Errc::BadInput, "solve shape mismatch");
  SparseEliminator el(a.cols);
  for (int i = 0; i < a.rows; ++i) {
    SpVec row;
    for (int j = 0; j < a.cols; ++j)
      if (!a.at(i, j).is_zero()) row.emplace_back(j, a.at(i, j));
    el.add(std::move(row), b[i]);
  }
  if (!el.consistent()) return std::nullopt;
  return el.solution();
}

std::optional<Mat> inverse_dense(Mat m) {
  if (m.rows != m.cols) throw Error(Errc::BadInput, "inverse of non-square");
  int n = m.rows;
  Mat inv = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m.at(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Cyc d = m.at(col, col).inverse();
    for (int j = 0; j < n; ++j) {
      m.at(col, j) *= d;
      inv.at(col, j) *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m.at(r, col).is_zero()) continue;
      Cyc f = m.at(r, col);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) -= f * m.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

int rank_sparse_exact(const std::vector<SpVec>& rows, int ncols) {
  SparseEliminator el(ncols);
  for (const auto& r : rows) el.add(r);
  return el.rank();
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::optional<uint64_t> reduce_mod(const Cyc& v, uint64_t p) {
  if (v.conductor() != 1) return std::nullopt;
  const Rat& r = v.rational_part();
  auto num = numerator(r);
  auto den = denominator(r);
  uint64_t dm = (den % p).convert_to<uint64_t>();
  if (dm == 0) return std::nullopt;
  bool neg = num < 0;
  if (neg) num = -num;
  uint64_t nm = (num % p).convert_to<uint64_t>();
  if (neg && nm) nm = p - nm;
  return mulmod(nm, powmod(dm, p - 2, p), p);
}

constexpr uint64_t kPrimes[] = {2305843009213693951ull, 1000000000000000003ull,
                                999999999999999989ull};

}  // namespace

std::optional<int> rank_mod_p(const std::vector<SpVec>& rows, int /*ncols*/,
                              uint64_t p) {
  using MRow = std::vector<std::pair<int, uint64_t>>;
  std::map<int, MRow> pivots;
  int rank = 0;
  for (const auto& src : rows) {
    MRow row;
    row.reserve(src.size());
    for (const auto& [idx, val] : src) {
      auto m = reduce_mod(val, p);
      if (!m) return std::nullopt;
      if (*m) row.emplace_back(idx, *m);
    }
    while (!row.empty()) {
      auto it = pivots.find(row[0].first);
      if (it == pivots.end()) {
        uint64_t inv = powmod(row[0].second, p - 2, p);
        for (auto& e : row) e.second = mulmod(e.second, inv, p);
        pivots.emplace(row[0].first, std::move(row));
        ++rank;
        break;
      }
      const MRow& pr = it->second;
      uint64_t f = p - row[0].second;
      MRow out;
      out.reserve(row.size() + pr.size());
      size_t i = 0, j = 0;
      while (i < row.size() || j < pr.size()) {
        if (j >= pr.size() ||
            (i < row.size() && row[i].first < pr[j].first)) {
          out.push_back(row[i++]);
        } else if (i >= row.size() || pr[j].first < row[i].first) {
          uint64_t v = mulmod(pr[j].second, f, p);
          if (v) out.emplace_back(pr[j].first, v);
          ++j;
        } else {
          uint64_t v = (row[i].second + mulmod(pr[j].second, f, p)) % p;
          if (v) out.emplace_back(row[i].first, v);
          ++i;
          ++j;
        }
      }
      row = std::move(out);
    }
  }
  return rank;
}

bool certified_full_rank(const std::vector<SpVec>& rows, int ncols) {
  int target = std::min(static_cast<int>(rows.size()), ncols);
  for (uint64_t p : kPrimes) {
    auto r = rank_mod_p(rows, ncols, p);
    if (r && *r == target) return true;
  }
  return false;
}

int rank_hybrid(const std::vector<SpVec>& rows, int ncols) {
  int target = std::min(static_cast<int>(rows.size()), ncols);
  if (target > 64 && certified_full_rank(rows, ncols)) return target;
  return rank_sparse_exact(rows, ncols);
}

HermitianEigensystem hermitian_eigensystem(
    std::vector<std::vector<std::complex<double>>> a) {
  using CD = std::complex<double>;
  int n = static_cast<int>(a.size());
  std::vector<std::vector<CD>> v(n, std::vector<CD>(n));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 80; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a[p][q]);
    double diag = 0;
    for (int p = 0; p < n; ++p) diag += std::norm(a[p][p]);
    if (off <= 1e-28 * (1.0 + diag)) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double b = std::abs(a[p][q]);
        if (b < 1e-300) continue;
        CD w = a[p][q] / b;
        double alpha = a[p][p].real(), gamma = a[q][q].real();
        double tau = (alpha - gamma) / (2 * b);
        double t = tau >= 0 ? 1.0 / (tau + std::sqrt(1 + tau * tau))
                            : -1.0 / (-tau + std::sqrt(1 + tau * tau));
        double c = 1.0 / std::sqrt(1 + t * t);
        double s = t * c;
        CD upp = c, upq = -s * w, uqp = s * std::conj(w), uqq = c;
        for (int k = 0; k < n; ++k) {
          CD tp = a[k][p], tq = a[k][q];
          a[k][p] = tp * upp + tq * uqp;
          a[k][q] = tp * upq + tq * uqq;
        }
        for (int k = 0; k < n; ++k) {
          CD tp = a[p][k], tq = a[q][k];
          a[p][k] = std::conj(upp) * tp + std::conj(uqp) * tq;
          a[q][k] = std::conj(upq) * tp + std::conj(uqq) * tq;
        }
        for (int k = 0; k < n; ++k) {
          CD tp = v[k][p], tq = v[k][q];
          v[k][p] = tp * upp + tq * uqp;
          v[k][q] = tp * upq + tq * uqq;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return a[x][x].real() < a[y][y].real();
  });
  HermitianEigensystem es;
  es.values.resize(n);
  es.vectors.assign(n, std::vector<CD>(n));
  for (int i = 0; i < n; ++i) {
    es.values[i] = a[order[i]][order[i]].real();
    for (int k = 0; k < n; ++k) es.vectors[i][k] = v[k][order[i]];
  }
  return es;
}

std::vector<double> hermitian_eigenvalues(
    std::vector<std::vector<std::complex<double>>> a) {
  return hermitian_eigensystem(std::move(a)).values;
}

std::vector<Cyc> minimal_polynomial(const Mat& m) {
  if (m.rows != m.cols)
    throw Error(Errc::BadInput, "minimal polynomial of non-square");
  int d = m.rows;
  std::vector<Mat> powers{Mat::identity(d)};
  for (int k = 1; k <= d; ++k) {
    powers.push_back(powers.back() * m);
    SparseEliminator el(k);
    bool ok = true;
    for (int i = 0; i < d && ok; ++i)
      for (int j = 0; j < d && ok; ++j) {
        SpVec row;
        for (int t = 0; t < k; ++t)
          if (!powers[t].at(i, j).is_zero())
            row.emplace_back(t, powers[t].at(i, j));
        ok = el.add(std::move(row), powers[k].at(i, j));
      }
    if (!ok) continue;
    Vec c = el.solution();
    std::vector<Cyc> poly(k + 1);
    for (int t = 0; t < k; ++t) poly[t] = -c[t];
    poly[k] = Cyc::one();
    return poly;
  }
  throw Error(Errc::BadInput, "no annihilating polynomial found");
}

std::optional<std::vector<Rat>> rational_poly(const std::vector<Cyc>& p) {
  std::vector<Rat> out;
  out.reserve(p.size());
  for (const Cyc& c : p) {
    if (!c.is_rational()) return std::nullopt;
    out.push_back(c.rational_part());
  }
  return out;
}

namespace {

using BInt = boost::multiprecision::cpp_int;

std::vector<BInt> divisors_capped(BInt n) {
  if (n < 0) n = -n;
  std::vector<BInt> out;
  if (n == 0 || n > BInt("1000000000000")) return out;
  for (BInt i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      out.push_back(i);
      out.push_back(n / i);
    }
  }
  return out;
}

Rat eval_poly(const std::vector<Rat>& p, const Rat& x) {
  Rat acc;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// Exact synthetic division by (x - r); remainder must vanish.
std::vector<Rat> deflate(const std::vector<Rat>& p, const Rat& r) {
  std::vector<Rat> q(p.size() - 1);
  Rat carry;
  for (size_t i = p.size(); i-- > 1;) {
    carry = p[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

}  // namespace

std::vector<std::pair<Rat, int>> rational_roots(std::vector<Rat> poly) {
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  std::vector<std::pair<Rat, int>> roots;
  if (poly.size() <= 1) return roots;

  int zero_mult = 0;
  while (poly.size() > 1 && poly[0] == 0) {
    ++zero_mult;
    poly.erase(poly.begin());
  }
  if (zero_mult) roots.emplace_back(Rat(0), zero_mult);
  if (poly.size() <= 1) return roots;

  BInt scale = 1;
  for (const Rat& c : poly) scale = lcm(scale, denominator(c));
  std::vector<BInt> ip;
  ip.reserve(poly.size());
  for (const Rat& c : poly)
    ip.push_back(numerator(c) * (scale / denominator(c)));

  auto ps = divisors_capped(ip.front());
  auto qs = divisors_capped(ip.back());
  std::vector<Rat> candidates;
  for (const BInt& p : ps)
    for (const BInt& q : qs) {
      Rat r(p, q);
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  for (const Rat& r : candidates) {
    int mult = 0;
    while (poly.size() > 1 && eval_poly(poly, r) == 0) {
      poly = deflate(poly, r);
      ++mult;
    }
    if (mult) roots.emplace_back(r, mult);
  }
  return roots;
}

}  // namespace pqg
