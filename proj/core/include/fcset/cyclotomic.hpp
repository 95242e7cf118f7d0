#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcset/config.hpp"
#include "fcset/numeric.hpp"

namespace fcs {

/// An element of a cyclotomic field Q[zeta_N], stored as rational coordinates
/// in the power basis {zeta_N^k : 0 <= k < phi(N)} reduced modulo the N-th
/// cyclotomic polynomial.
///
/// Values are kept in canonical form: the conductor is the smallest M | N
/// whose field contains the value (with M = 1 or M not congruent to 2 mod 4),
/// so equality is plain coordinate comparison. Instances are immutable and
/// safe to share between threads.
class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1, Rat(0)) {}
  Cyclotomic(const Rat& r) : conductor_(1), coeffs_(1, r) {}
  Cyclotomic(long v) : conductor_(1), coeffs_(1, Rat(v)) {}

  /// zeta_n^k; n need not be a canonical conductor (n = 2 mod 4 is folded).
  static Cyclotomic zeta(long n, long k = 1);
  /// Value from power-basis coordinates in conductor n (size phi(n)); reduces
  /// to canonical form.
  static Cyclotomic from_coeffs(long n, std::vector<Rat> coeffs);
  /// e^{2 pi i h} for rational h.
  static Cyclotomic root_of_unity(const Rat& h);

  long conductor() const { return conductor_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return conductor_ == 1; }
  /// Requires is_rational().
  const Rat& rational() const;
  bool is_rational_integer() const;

  /// True iff the value lies in Z[zeta_N], i.e. all power-basis coordinates
  /// are integers.
  bool is_algebraic_integer() const;
  bool is_real() const;
  bool is_root_of_unity() const;
  /// For a root of unity, the exponent h in [0,1) with value = e^{2 pi i h}.
  Rat root_of_unity_log() const;

  /// Image under sigma_ell : zeta_N -> zeta_N^ell; ell must be coprime to the
  /// conductor. sigma_{-1} is complex conjugation.
  Cyclotomic galois(long ell) const;
  Cyclotomic conj() const { return galois(-1); }
  /// x * conj(x); exact and totally real.
  Cyclotomic abs_squared() const { return *this * conj(); }

  Cyclotomic pow(long k) const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  /// Exact division; throws on zero divisor.
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  /// Total order (conductor, then coordinates); used for deterministic maps.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b);

  /// Literal form "c0 + c1*z + ..." with rational c_k as "a/b"; `z` denotes
  /// zeta of the value's conductor.
  std::string str() const;

  /// Numeric image under zeta_N -> e^{2 pi i / N}, with error < 2^(1-bits).
  Complex embed(long precision_bits) const;

 private:
  Cyclotomic(long n, std::vector<Rat> c) : conductor_(n), coeffs_(std::move(c)) {}
  void normalize();
  std::vector<Rat> lifted_to(long m) const;

  long conductor_;
  std::vector<Rat> coeffs_;
};

inline Cyclotomic galois_apply(const Cyclotomic& x, long ell) { return x.galois(ell); }
inline bool is_algebraic_integer(const Cyclotomic& x) { return x.is_algebraic_integer(); }
inline bool is_rational(const Cyclotomic& x) { return x.is_rational(); }
inline bool is_real(const Cyclotomic& x) { return x.is_real(); }
inline bool is_root_of_unity(const Cyclotomic& x) { return x.is_root_of_unity(); }
inline Cyclotomic abs_squared(const Cyclotomic& x) { return x.abs_squared(); }
inline Complex embed(const Cyclotomic& x, long precision_bits) {
  return x.embed(precision_bits);
}

long euler_phi(long n);
/// Smallest valid cyclotomic conductor for Q[zeta_n] (folds n = 2 mod 4).
long canonical_conductor(long n);
/// lcm of two canonical conductors (canonical again).
long conductor_lcm(long a, long b);

/// Sign of a - b for totally real a, b: exact equality first, then embedding
/// at escalating precision. Throws PreconditionError for non-real input and
/// ReconstructionError when the sign cannot be certified at the precision cap.
int compare_real(const Cyclotomic& a, const Cyclotomic& b,
                 const RunConfig& cfg = default_config());

/// Find x in Q[zeta_conductor] with coordinate denominators <= denom_bound and
/// |embed(x) - approx| < 2^(-precision/2). Callers must verify the candidate
/// against a defining identity before use. Returns nullopt when no candidate
/// is found or two verified candidates disagree.
std::optional<Cyclotomic> reconstruct(const Complex& approx, long conductor,
                                      const Int& denom_bound,
                                      const RunConfig& cfg = default_config());

/// Parse the literal form produced by Cyclotomic::str (conductor supplied by
/// the surrounding context). Throws ParseError on malformed input.
Cyclotomic parse_cyclotomic(const std::string& text, long conductor);

}  // namespace fcs
