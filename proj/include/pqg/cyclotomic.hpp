#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pqg {

using Rat = boost::multiprecision::cpp_rational;

enum class Errc {
  DivisionByZero,
  ConductorMismatch,
  BadScalar,
  BadInput,
  NoUnit,
  NoCounit,
  NonUniqueCounit,
  NoAntipode,
  AntipodeNotInvertible,
  AntipodeChecksFailed,
  NotEquivalence,
  NoFaithfulIntegral,
  KernelShapeViolation,
  NotProportional,
  GramSingular,
  NoModularElement,
  ScalingChecksFailed,
  DiagonalizationFailed,
  BidualityFailed,
  InterchangeInconsistent,
  ConversionFailed,
  InvalidGroupTable,
  ObjectClash,
  ParseError,
  ValidationError,
};

const char* errc_name(Errc c);

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// Element of the cyclotomic field Q(zeta_n), stored as exact rational
// coordinates over the power basis 1, z, ..., z^{phi(n)-1}, where z is a
// fixed primitive n-th root of unity. The representation is canonical, so
// operator== is coefficient comparison. Conductor 1 models plain rationals
// and promotes silently when mixed with any other conductor; two distinct
// conductors above 1 never mix and raise ConductorMismatch instead.
class Cyc {
 public:
  Cyc() : n_(1), c_(1) {}

  static Cyc zero(int n = 1);
  static Cyc one(int n = 1);
  static Cyc rational(Rat v);
  static Cyc rational(long long num, long long den = 1);
  static Cyc zeta(int n, long long k = 1);
  static Cyc from_coeffs(int n, std::vector<Rat> c);

  // Euler phi, the degree of Q(zeta_n) over Q.
  static int degree(int n);

  int conductor() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const { return c_[0]; }

  Cyc promoted(int n) const;

  Cyc operator-() const;
  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator/=(const Cyc& o);

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  Cyc inverse() const;

  // Complex conjugation, the field automorphism z -> z^(n-1).
  Cyc conj() const;

  // Numerical evaluation at z = exp(2*pi*i/n).
  std::complex<double> embed() const;

  std::string str() const;

  // Parses the textual scalar format produced by str(): a signed sum of
  // terms, each a rational p or p/q, a power z^k, or a product p/q*z^k.
  // Exponents are reduced mod n. Throws Error(BadScalar) on malformed input.
  static Cyc parse(std::string_view text, int n);

 private:
  Cyc(int n, std::vector<Rat> c) : n_(n), c_(std::move(c)) {}

  int n_;
  std::vector<Rat> c_;
};

}  // namespace pqg
