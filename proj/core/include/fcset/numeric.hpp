#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace fcs {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonicalized rational from numerator and denominator (mpq_class alone
/// does not reduce on construction).
inline Rat rat_of(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}
inline Rat rat_of(long num, long den) { return rat_of(Int(num), Int(den)); }

/// Arbitrary-precision real number (MPFR value type with explicit precision).
/// Arithmetic results carry the larger precision of the two operands.
class Real {
 public:
  explicit Real(long prec_bits = 64);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real of(long v, long prec_bits);
  static Real of(double v, long prec_bits);
  static Real of(const Rat& v, long prec_bits);

  long precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Truncation of v*2^k to an integer.
  Int scaled_trunc(long k) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// True when |v| < 2^e.
  bool abs_less_exp2(long e) const;

  Real operator-() const;
  Real abs() const;
  Real sqrt() const;

  friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
  Real& operator+=(const Real& b);
  Real& operator-=(const Real& b);

  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }

  /// cos and sin of 2*pi*k/n at the given precision.
  static std::pair<Real, Real> cos_sin_2pi(long k, long n, long prec_bits);

  std::string str(int digits = 20) const;

 private:
  using mpfr_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real bin(const Real& a, const Real& b, mpfr_fn fn);
  mpfr_t v_;
};

/// Complex number over Real.
struct Complex {
  Real re, im;

  explicit Complex(long prec_bits = 64) : re(prec_bits), im(prec_bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Real abs2() const { return re * re + im * im; }
  Real abs() const { return abs2().sqrt(); }
  bool abs_less_exp2(long e) const;
};

}  // namespace fcs
