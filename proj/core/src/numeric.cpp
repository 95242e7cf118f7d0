#include "fcset/numeric.hpp"

#include <stdexcept>
#include <vector>

namespace fcs {

Real::Real(long prec_bits) {
  if (prec_bits < MPFR_PREC_MIN) prec_bits = MPFR_PREC_MIN;
  mpfr_init2(v_, prec_bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::of(long v, long prec_bits) {
  Real r(prec_bits);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::of(double v, long prec_bits) {
  Real r(prec_bits);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::of(const Rat& v, long prec_bits) {
  Real r(prec_bits);
  mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
  return r;
}

Int Real::scaled_trunc(long k) const {
  Real t(*this);
  mpfr_mul_2si(t.v_, t.v_, k, MPFR_RNDN);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDZ);
  return z;
}

bool Real::abs_less_exp2(long e) const {
  if (mpfr_zero_p(v_)) return true;
  return mpfr_get_exp(v_) <= e;  // |v| < 2^exp(v)
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real Real::abs() const {
  Real r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

Real Real::sqrt() const {
  Real r(precision());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

Real Real::bin(const Real& a, const Real& b, mpfr_fn fn) {
  Real r(std::max(a.precision(), b.precision()));
  fn(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& b) {
  if (b.precision() > precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& b) {
  if (b.precision() > precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}

std::pair<Real, Real> Real::cos_sin_2pi(long k, long n, long prec_bits) {
  if (n <= 0) throw std::invalid_argument("cos_sin_2pi: n must be positive");
  long prec = prec_bits + 16;
  Real angle(prec), c(prec_bits), s(prec_bits);
  mpfr_const_pi(angle.v_, MPFR_RNDN);
  mpfr_mul_si(angle.v_, angle.v_, 2 * (k % n), MPFR_RNDN);
  mpfr_div_si(angle.v_, angle.v_, n, MPFR_RNDN);
  mpfr_sin_cos(s.v_, c.v_, angle.v_, MPFR_RNDN);
  return {c, s};
}

std::string Real::str(int digits) const {
  std::vector<char> buf(digits + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

bool Complex::abs_less_exp2(long e) const {
  return re.abs_less_exp2(e - 1) && im.abs_less_exp2(e - 1);
}

}  // namespace fcs
