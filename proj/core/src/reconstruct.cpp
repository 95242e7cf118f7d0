#include <algorithm>
#include <cmath>
#include <vector>

#include "fcset/cyclotomic.hpp"
#include "fcset/errors.hpp"

namespace fcs {

namespace {

// Convergents p/q of the continued fraction of r with q <= bound.
std::vector<Rat> cf_convergents(const Rat& r, const Int& bound) {
  std::vector<Rat> out;
  Int p0 = 1, q0 = 0;
  Int p1, q1;
  mpz_fdiv_q(p1.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  q1 = 1;
  out.emplace_back(p1);
  Rat rest = r - Rat(p1);
  while (rest != 0) {
    rest = 1 / rest;
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num().get_mpz_t(), rest.get_den().get_mpz_t());
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > bound) break;
    Rat conv(p2, q2);
    conv.canonicalize();
    out.push_back(conv);
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    rest -= Rat(a);
  }
  return out;
}

struct Scan {
  const Complex& approx;
  long tol_exp;
  long prec;
  double zr, zi;
  std::vector<Cyclotomic> found;

  bool verify_and_add(const Cyclotomic& cand) {
    Complex d = cand.embed(prec) - approx;
    if (!d.abs_less_exp2(tol_exp)) return false;
    if (std::find(found.begin(), found.end(), cand) == found.end()) found.push_back(cand);
    return true;
  }
};

// One real linear constraint: enumerate all coordinates except pivot, solve the
// pivot, keep near-integer hits. Double precision scan; hits verified exactly.
void scan_real_basis(Scan& s, const std::vector<Cyclotomic>& basis, long d_max,
                     long coord_cap, long budget) {
  size_t m = basis.size();
  std::vector<double> be(m);
  for (size_t j = 0; j < m; ++j) be[j] = basis[j].embed(64).re.to_double();
  size_t pivot = 0;
  for (size_t j = 1; j < m; ++j)
    if (std::fabs(be[j]) > std::fabs(be[pivot])) pivot = j;
  if (std::fabs(be[pivot]) < 1e-12) return;

  double scale = 1.0 + std::fabs(s.zr);
  double slack = 1e-6 * scale;
  std::vector<long> free_idx;
  for (size_t j = 0; j < m; ++j)
    if (j != pivot) free_idx.push_back((long)j);

  long q = coord_cap;
  while (q > 1 && std::pow(2.0 * q + 1, (double)free_idx.size()) > (double)budget) --q;

  std::vector<long> b(m, 0);
  for (long den = 1; den <= d_max; ++den) {
    double target = s.zr * den;
    // odometer over the free coordinates in [-q, q]
    std::vector<long> t(free_idx.size(), -q);
    bool done = free_idx.empty();
    for (;;) {
      double acc = 0;
      if (!free_idx.empty())
        for (size_t i = 0; i < free_idx.size(); ++i) acc += t[i] * be[free_idx[i]];
      double rest = (target - acc) / be[pivot];
      double rounded = std::nearbyint(rest);
      if (std::fabs(rest - rounded) * std::fabs(be[pivot]) < slack &&
          std::fabs(rounded) < 1e15) {
        for (size_t i = 0; i < free_idx.size(); ++i) b[free_idx[i]] = t[i];
        b[pivot] = (long)rounded;
        Cyclotomic cand(Rat(0));
        for (size_t j = 0; j < m; ++j)
          if (b[j] != 0) cand += Cyclotomic(rat_of(b[j], den)) * basis[j];
        s.verify_and_add(cand);
      }
      if (done) break;
      size_t i = 0;
      while (i < t.size() && ++t[i] > q) t[i++] = -q;
      if (i == t.size()) break;
    }
  }
}

// Two real constraints (Re and Im): enumerate all but two coordinates, solve a
// 2x2 system for the pivot pair.
void scan_complex_basis(Scan& s, const std::vector<Cyclotomic>& basis, long d_max,
                        long coord_cap, long budget) {
  size_t m = basis.size();
  if (m < 2) return;
  std::vector<double> ber(m), bei(m);
  for (size_t j = 0; j < m; ++j) {
    Complex e = basis[j].embed(64);
    ber[j] = e.re.to_double();
    bei[j] = e.im.to_double();
  }
  size_t p1 = 0, p2 = 1;
  double best = -1;
  for (size_t a = 0; a < m; ++a)
    for (size_t c = a + 1; c < m; ++c) {
      double det = ber[a] * bei[c] - ber[c] * bei[a];
      if (std::fabs(det) > best) {
        best = std::fabs(det);
        p1 = a;
        p2 = c;
      }
    }
  if (best < 1e-12) return;
  double det = ber[p1] * bei[p2] - ber[p2] * bei[p1];

  std::vector<long> free_idx;
  for (size_t j = 0; j < m; ++j)
    if (j != p1 && j != p2) free_idx.push_back((long)j);

  long q = coord_cap;
  while (q > 1 && std::pow(2.0 * q + 1, (double)free_idx.size()) > (double)budget) --q;

  double scale = 1.0 + std::hypot(s.zr, s.zi);
  double slack = 1e-6 * scale;
  std::vector<long> b(m, 0);
  for (long den = 1; den <= d_max; ++den) {
    double tr = s.zr * den, ti = s.zi * den;
    std::vector<long> t(free_idx.size(), -q);
    bool no_free = free_idx.empty();
    for (;;) {
      double ar = tr, ai = ti;
      for (size_t i = 0; i < free_idx.size(); ++i) {
        ar -= t[i] * ber[free_idx[i]];
        ai -= t[i] * bei[free_idx[i]];
      }
      double x1 = (ar * bei[p2] - ber[p2] * ai) / det;
      double x2 = (ber[p1] * ai - ar * bei[p1]) / det;
      double r1 = std::nearbyint(x1), r2 = std::nearbyint(x2);
      if (std::fabs(x1 - r1) < slack && std::fabs(x2 - r2) < slack &&
          std::fabs(r1) < 1e15 && std::fabs(r2) < 1e15) {
        for (size_t i = 0; i < free_idx.size(); ++i) b[free_idx[i]] = t[i];
        b[p1] = (long)r1;
        b[p2] = (long)r2;
        Cyclotomic cand(Rat(0));
        for (size_t j = 0; j < m; ++j)
          if (b[j] != 0) cand += Cyclotomic(rat_of(b[j], den)) * basis[j];
        s.verify_and_add(cand);
      }
      if (no_free) break;
      size_t i = 0;
      while (i < t.size() && ++t[i] > q) t[i++] = -q;
      if (i == t.size()) break;
    }
  }
}

}  // namespace

std::optional<Cyclotomic> reconstruct(const Complex& approx, long conductor,
                                      const Int& denom_bound, const RunConfig& cfg) {
  long n = canonical_conductor(conductor);
  long phi = euler_phi(n);
  Scan scan{approx, -(cfg.precision_bits / 2), cfg.precision_bits,
            approx.re.to_double(), approx.im.to_double(), {}};
  bool looks_real = approx.im.abs_less_exp2(scan.tol_exp);

  // Rational candidates via continued fractions.
  if (looks_real) {
    Int num = approx.re.scaled_trunc(cfg.precision_bits);
    Rat r(num, Int(1) << (unsigned)cfg.precision_bits);
    r.canonicalize();
    for (const Rat& conv : cf_convergents(r, denom_bound)) {
      if (scan.verify_and_add(Cyclotomic(conv))) break;
    }
  }

  long d_max = (long)std::min<double>(64.0, denom_bound.get_d());
  if (scan.found.empty() && n > 1) {
    if (looks_real && phi >= 4) {
      // Basis of the maximal real subfield: powers of zeta + 1/zeta.
      Cyclotomic theta = Cyclotomic::zeta(n, 1) + Cyclotomic::zeta(n, n - 1);
      std::vector<Cyclotomic> basis;
      Cyclotomic p(1);
      for (long j = 0; j < phi / 2; ++j) {
        basis.push_back(p);
        p *= theta;
      }
      scan_real_basis(scan, basis, d_max, 24, 4000000);
    }
    if (scan.found.empty()) {
      std::vector<Cyclotomic> basis;
      for (long k = 0; k < phi; ++k) basis.push_back(Cyclotomic::zeta(n, k));
      scan_complex_basis(scan, basis, d_max, 16, 4000000);
    }
  }

  if (scan.found.size() != 1) return std::nullopt;  // none, or ambiguous
  return scan.found[0];
}

}  // namespace fcs
