#include "pqg/cyclotomic.hpp"

#include <cassert>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace pqg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ConductorMismatch: return "ConductorMismatch";
    case Errc::BadScalar: return "BadScalar";
    case Errc::BadInput: return "BadInput";
    case Errc::NoUnit: return "NoUnit";
    case Errc::NoCounit: return "NoCounit";
    case Errc::NonUniqueCounit: return "NonUniqueCounit";
    case Errc::NoAntipode: return "NoAntipode";
    case Errc::AntipodeNotInvertible: return "AntipodeNotInvertible";
    case Errc::AntipodeChecksFailed: return "AntipodeChecksFailed";
    case Errc::NotEquivalence: return "NotEquivalence";
    case Errc::NoFaithfulIntegral: return "NoFaithfulIntegral";
    case Errc::KernelShapeViolation: return "KernelShapeViolation";
    case Errc::NotProportional: return "NotProportional";
    case Errc::GramSingular: return "GramSingular";
    case Errc::NoModularElement: return "NoModularElement";
    case Errc::ScalingChecksFailed: return "ScalingChecksFailed";
    case Errc::DiagonalizationFailed: return "DiagonalizationFailed";
    case Errc::BidualityFailed: return "BidualityFailed";
    case Errc::InterchangeInconsistent: return "InterchangeInconsistent";
    case Errc::ConversionFailed: return "ConversionFailed";
    case Errc::InvalidGroupTable: return "InvalidGroupTable";
    case Errc::ObjectClash: return "ObjectClash";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

namespace {

// Dense polynomial over Q, coefficient of x^i at index i.
using Poly = std::vector<Rat>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int euler_phi(int n) {
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

// Long division by a monic divisor; the division must be exact.
Poly divide_monic(Poly num, const Poly& den) {
  assert(!den.empty() && den.back() == 1);
  int dd = static_cast<int>(den.size()) - 1;
  int nd = static_cast<int>(num.size()) - 1;
  Poly q(std::max(nd - dd + 1, 0));
  for (int k = nd - dd; k >= 0; --k) {
    Rat c = num[k + dd];
    if (c == 0) continue;
    q[k] = c;
    for (int i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
  }
  trim(num);
  assert(num.empty());
  return q;
}

const Poly& cyclotomic_poly(int n) {
  static std::map<int, Poly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide_monic(std::move(p), cyclotomic_poly(d));
  return cache.emplace(n, std::move(p)).first->second;
}

// Per-conductor reduction data. pow[k] holds the coordinates of z^k over the
// power basis for every k in [0, n); since z^n = 1 this covers all powers.
struct Table {
  int d = 0;
  std::vector<Poly> pow;
};

const Table& table_for(int n) {
  static std::map<int, Table> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Table t;
  t.d = euler_phi(n);
  const Poly& phi = cyclotomic_poly(n);
  t.pow.resize(n);
  Poly cur(t.d, Rat(0));
  cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    t.pow[k] = cur;
    // Multiply by z: shift up, then fold z^d via the minimal polynomial.
    Rat top = cur[t.d - 1];
    for (int i = t.d - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < t.d; ++i) cur[i] -= top * phi[i];
  }
  return cache.emplace(n, std::move(t)).first->second;
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

// General polynomial division over Q, divisor nonzero but not necessarily
// monic. Returns {quotient, remainder}.
std::pair<Poly, Poly> divmod(Poly num, const Poly& den) {
  assert(!den.empty() && den.back() != 0);
  int dd = static_cast<int>(den.size()) - 1;
  int nd = static_cast<int>(num.size()) - 1;
  Poly q(std::max(nd - dd + 1, 0));
  for (int k = nd - dd; k >= 0; --k) {
    Rat c = num[k + dd] / den[dd];
    if (c == 0) continue;
    q[k] = c;
    for (int i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
  }
  trim(num);
  return {std::move(q), std::move(num)};
}

}  // namespace

int Cyc::degree(int n) {
  if (n < 1) throw Error(Errc::BadInput, "conductor must be positive");
  return euler_phi(n);
}

Cyc Cyc::zero(int n) {
  degree(n);
  return Cyc(n, std::vector<Rat>(table_for(n).d));
}

Cyc Cyc::one(int n) {
  Cyc v = zero(n);
  v.c_[0] = 1;
  return v;
}

Cyc Cyc::rational(Rat v) {
  Cyc r = zero(1);
  r.c_[0] = std::move(v);
  return r;
}

Cyc Cyc::rational(long long num, long long den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
  return rational(Rat(num) / den);
}

Cyc Cyc::zeta(int n, long long k) {
  degree(n);
  long long e = k % n;
  if (e < 0) e += n;
  return Cyc(n, table_for(n).pow[static_cast<int>(e)]);
}

Cyc Cyc::from_coeffs(int n, std::vector<Rat> c) {
  if (static_cast<int>(c.size()) != degree(n))
    throw Error(Errc::BadInput, "coefficient vector has wrong length");
  return Cyc(n, std::move(c));
}

bool Cyc::is_zero() const {
  for (const Rat& v : c_)
    if (v != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Cyc Cyc::promoted(int n) const {
  if (n_ == n) return *this;
  if (n_ != 1)
    throw Error(Errc::ConductorMismatch, "cannot promote conductor " +
                                             std::to_string(n_) + " to " +
                                             std::to_string(n));
  Cyc r = zero(n);
  r.c_[0] = c_[0];
  return r;
}

namespace {

// Brings two operands to a common conductor, promoting rationals.
void align(Cyc& a, Cyc& b) {
  if (a.conductor() == b.conductor()) return;
  if (a.conductor() == 1)
    a = a.promoted(b.conductor());
  else if (b.conductor() == 1)
    b = b.promoted(a.conductor());
  else
    throw Error(Errc::ConductorMismatch,
                "mixed conductors " + std::to_string(a.conductor()) + " and " +
                    std::to_string(b.conductor()));
}

}  // namespace

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (Rat& v : r.c_) v = -v;
  return r;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  Cyc rhs = o;
  align(*this, rhs);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
  Cyc rhs = o;
  align(*this, rhs);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

Cyc& Cyc::operator*=(const Cyc& o) {
  Cyc rhs = o;
  align(*this, rhs);
  const Table& t = table_for(n_);
  std::vector<Rat> acc(t.d, Rat(0));
  for (int i = 0; i < t.d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < t.d; ++j) {
      if (rhs.c_[j] == 0) continue;
      Rat c = c_[i] * rhs.c_[j];
      int e = i + j;
      if (e < t.d) {
        acc[e] += c;
      } else {
        const Poly& r = t.pow[e % n_];
        for (int k = 0; k < t.d; ++k)
          if (r[k] != 0) acc[k] += c * r[k];
      }
    }
  }
  c_ = std::move(acc);
  return *this;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (n_ == 1) return rational(Rat(1) / c_[0]);

  // Extended Euclid in Q[x] against the minimal polynomial of z. Since that
  // polynomial is irreducible the gcd is a nonzero constant.
  Poly r0 = cyclotomic_poly(n_);
  Poly r1 = c_;
  trim(r1);
  Poly s0, s1{Rat(1)};
  while (r1.size() > 1) {
    auto [q, rem] = divmod(std::move(r0), r1);
    Poly s2 = s0;
    s2.resize(std::max(s2.size(), q.size() + s1.size()), Rat(0));
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  assert(!r1.empty());
  Rat lead = r1[0];
  const Table& t = table_for(n_);
  std::vector<Rat> out(t.d, Rat(0));
  for (size_t k = 0; k < s1.size(); ++k) {
    if (s1[k] == 0) continue;
    Rat c = s1[k] / lead;
    const Poly& row = t.pow[k % n_];
    for (int i = 0; i < t.d; ++i)
      if (row[i] != 0) out[i] += c * row[i];
  }
  return Cyc(n_, std::move(out));
}

Cyc& Cyc::operator/=(const Cyc& o) {
  Cyc rhs = o;
  align(*this, rhs);
  return *this *= rhs.inverse();
}

bool Cyc::operator==(const Cyc& o) const {
  Cyc a = *this, b = o;
  align(a, b);
  return a.c_ == b.c_;
}

Cyc Cyc::conj() const {
  const Table& t = table_for(n_);
  std::vector<Rat> out(t.d, Rat(0));
  for (int k = 0; k < t.d; ++k) {
    if (c_[k] == 0) continue;
    const Poly& row = t.pow[(n_ - k) % n_];
    for (int i = 0; i < t.d; ++i)
      if (row[i] != 0) out[i] += c_[k] * row[i];
  }
  return Cyc(n_, std::move(out));
}

std::complex<double> Cyc::embed() const {
  const double pi = 3.14159265358979323846264338327950288;
  std::complex<double> z = std::polar(1.0, 2.0 * pi / n_);
  std::complex<double> acc(0.0, 0.0);
  for (size_t i = c_.size(); i-- > 0;)
    acc = acc * z + std::complex<double>(c_[i].convert_to<double>(), 0.0);
  return acc;
}

std::string Cyc::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t k = 0; k < c_.size(); ++k) {
    const Rat& a = c_[k];
    if (a == 0) continue;
    bool neg = a < 0;
    Rat mag = neg ? Rat(-a) : a;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string zpart;
    if (k == 1)
      zpart = "z";
    else if (k > 1)
      zpart = "z^" + std::to_string(k);
    if (zpart.empty())
      out += rat_str(mag);
    else if (mag == 1)
      out += zpart;
    else
      out += rat_str(mag) + "*" + zpart;
  }
  return out;
}

namespace {

struct ScalarLexer {
  std::string_view s;
  size_t p = 0;

  void skip_ws() {
    while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
  }
  bool eof() {
    skip_ws();
    return p >= s.size();
  }
  char peek() {
    skip_ws();
    return p < s.size() ? s[p] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (p < s.size() && s[p] == c) {
      ++p;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw Error(Errc::BadScalar, "bad scalar '" + std::string(s) + "' at offset " +
                                     std::to_string(p) + ": " + why);
  }
  long long integer() {
    skip_ws();
    size_t start = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == start) fail("expected digits");
    if (p - start > 18) fail("integer literal too long");
    long long v = 0;
    for (size_t i = start; i < p; ++i) v = v * 10 + (s[i] - '0');
    return v;
  }
};

}  // namespace

Cyc Cyc::parse(std::string_view text, int n) {
  degree(n);
  ScalarLexer lx{text};
  Cyc acc = zero(n);
  bool first = true;
  while (true) {
    if (lx.eof()) {
      if (first) lx.fail("empty scalar");
      break;
    }
    bool neg = false;
    if (lx.eat('-'))
      neg = true;
    else if (lx.eat('+')) {
      if (first) lx.fail("unexpected leading +");
    } else if (!first) {
      lx.fail("expected + or - between terms");
    }
    if (lx.eof()) lx.fail("dangling sign");

    Rat coeff(1);
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      long long num = lx.integer();
      long long den = 1;
      if (lx.eat('/')) {
        den = lx.integer();
        if (den == 0) lx.fail("zero denominator");
      }
      coeff = Rat(num) / den;
      have_coeff = true;
    }
    bool have_z = false;
    long long expo = 1;
    if (have_coeff ? lx.eat('*') : lx.peek() == 'z') {
      if (!lx.eat('z')) lx.fail("expected z after *");
      have_z = true;
      if (lx.eat('^')) expo = lx.integer();
    }
    if (!have_coeff && !have_z) lx.fail("expected term");

    Cyc term = have_z ? zeta(n, expo) : one(n);
    if (have_coeff) term *= rational(coeff);
    if (neg) term = -term;
    acc += term;
    first = false;
  }
  return acc;
}

}  // namespace pqg
