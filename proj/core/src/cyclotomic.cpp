#include "fcset/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "fcset/errors.hpp"

namespace fcs {

namespace {

std::vector<long> divisors_of(long n) {
  std::vector<long> ds;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

bool valid_conductor(long n) { return n == 1 || (n > 2 && n % 4 != 2); }

// Integer polynomials, ascending coefficients.
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

void ztrim(ZPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division of a by monic b.
ZPoly zdiv_exact_monic(ZPoly a, const ZPoly& b) {
  ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Int(0));
  for (long j = (long)a.size() - 1; j >= (long)b.size() - 1; --j) {
    Int c = a[j];
    if (c == 0) continue;
    q[j - (b.size() - 1)] = c;
    for (size_t k = 0; k < b.size(); ++k) a[j - (b.size() - 1) + k] -= c * b[k];
  }
  ztrim(a);
  if (!(a.size() == 1 && a[0] == 0)) throw Error("internal: inexact polynomial division");
  return q;
}

struct Table {
  long n = 1;
  long phi = 1;
  ZPoly cyclo;  // Phi_n, monic, degree phi
};

const Table& table_for(long n) {
  static std::map<long, Table> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up.
  std::function<const Table&(long)> build = [&](long m) -> const Table& {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    ZPoly num(m + 1, Int(0));
    num[0] = -1;
    num[m] = 1;
    for (long d : divisors_of(m)) {
      if (d == m) continue;
      num = zdiv_exact_monic(std::move(num), build(d).cyclo);
    }
    Table t;
    t.n = m;
    t.cyclo = std::move(num);
    t.phi = (long)t.cyclo.size() - 1;
    return cache.emplace(m, std::move(t)).first->second;
  };
  return build(n);
}

// In-place reduction modulo Phi_n (synthetic division by the monic Phi).
void reduce_mod_phi(QPoly& c, const Table& t) {
  for (long j = (long)c.size() - 1; j >= t.phi; --j) {
    if (c[j] != 0) {
      Rat lead = c[j];
      for (long k = 0; k < t.phi; ++k) c[j - t.phi + k] -= lead * Rat(t.cyclo[k]);
    }
    c.pop_back();
  }
  c.resize(t.phi, Rat(0));
}

QPoly qpoly_div(QPoly a, const QPoly& b, QPoly* rem) {
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
  Rat inv_lead = 1 / b.back();
  for (long j = (long)a.size() - 1; j >= (long)b.size() - 1; --j) {
    Rat c = a[j] * inv_lead;
    if (c == 0) continue;
    q[j - (b.size() - 1)] = c;
    for (size_t k = 0; k < b.size(); ++k) a[j - (b.size() - 1) + k] -= c * b[k];
  }
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  if (rem) *rem = std::move(a);
  return q;
}

bool qpoly_is_zero(const QPoly& p) {
  return std::all_of(p.begin(), p.end(), [](const Rat& c) { return c == 0; });
}

// Inverse of f modulo the (irreducible) Phi via the extended Euclid scheme.
QPoly qpoly_invmod(QPoly f, const Table& t) {
  QPoly r0(t.cyclo.size());
  for (size_t k = 0; k < t.cyclo.size(); ++k) r0[k] = Rat(t.cyclo[k]);
  QPoly r1 = std::move(f);
  while (r1.size() > 1 && r1.back() == 0) r1.pop_back();
  QPoly s0 = {Rat(0)}, s1 = {Rat(1)};
  while (!qpoly_is_zero(r1)) {
    QPoly rem;
    QPoly q = qpoly_div(std::move(r0), r1, &rem);
    r0 = std::move(r1);
    r1 = std::move(rem);
    // s_{k+1} = s_{k-1} - q * s_k
    QPoly qs(q.size() + s1.size() - 1, Rat(0));
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
    QPoly s2(std::max(s0.size(), qs.size()), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant multiple of gcd = 1.
  if (r0.size() != 1 || r0[0] == 0) throw Error("division by zero");
  Rat inv = 1 / r0[0];
  for (auto& c : s0) c *= inv;
  reduce_mod_phi(s0, t);
  return s0;
}

// Solve B a = c exactly; returns nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_exact(std::vector<std::vector<Rat>> B,
                                            std::vector<Rat> c, long cols) {
  long rows = (long)B.size();
  std::vector<long> pivot_col_of_row(rows, -1);
  long r = 0;
  for (long col = 0; col < cols && r < rows; ++col) {
    long pr = -1;
    for (long i = r; i < rows; ++i)
      if (B[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(B[pr], B[r]);
    std::swap(c[pr], c[r]);
    Rat inv = 1 / B[r][col];
    for (long k = col; k < cols; ++k) B[r][k] *= inv;
    c[r] *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || B[i][col] == 0) continue;
      Rat f = B[i][col];
      for (long k = col; k < cols; ++k) B[i][k] -= f * B[r][k];
      c[i] -= f * c[r];
    }
    pivot_col_of_row[r] = col;
    ++r;
  }
  for (long i = r; i < rows; ++i)
    if (c[i] != 0) return std::nullopt;
  std::vector<Rat> a(cols, Rat(0));
  for (long i = 0; i < r; ++i) a[pivot_col_of_row[i]] = c[i];
  // Free columns (if any) are taken as zero; verify the solution.
  for (long i = 0; i < r; ++i) {
    Rat acc(0);
    for (long k = 0; k < cols; ++k)
      if (k != pivot_col_of_row[i] && B[i][k] != 0) acc += B[i][k] * a[k];
    if (acc != 0) return std::nullopt;
  }
  return a;
}

long mod_pos(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

long euler_phi(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

long canonical_conductor(long n) {
  if (n <= 2) return 1;
  if (n % 4 == 2) return n / 2;
  return n;
}

long conductor_lcm(long a, long b) { return std::lcm(a, b); }

Cyclotomic Cyclotomic::zeta(long n, long k) {
  if (n <= 0) throw PreconditionError("zeta: order must be positive");
  k = mod_pos(k, n);
  if (n % 4 == 2) {
    // zeta_{2m}^k = (-1)^k zeta_m^{k(m+1)/2} for odd m.
    long m = n / 2;
    Cyclotomic z = zeta(m, mod_pos(k * ((m + 1) / 2), m));
    return (k % 2 == 0) ? z : -z;
  }
  if (n <= 2) return Cyclotomic(Rat(k == 0 ? 1 : -1));
  const Table& t = table_for(n);
  QPoly c(k + 1, Rat(0));
  c[k] = 1;
  reduce_mod_phi(c, t);
  Cyclotomic r(n, std::move(c));
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::from_coeffs(long n, std::vector<Rat> coeffs) {
  if (!valid_conductor(n))
    throw PreconditionError("from_coeffs: not a canonical conductor: " + std::to_string(n));
  if (n == 1) {
    if (coeffs.size() != 1) throw PreconditionError("from_coeffs: bad coefficient count");
    return Cyclotomic(coeffs[0]);
  }
  const Table& t = table_for(n);
  if ((long)coeffs.size() != t.phi)
    throw PreconditionError("from_coeffs: expected phi(n) coefficients");
  Cyclotomic r(n, std::move(coeffs));
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::root_of_unity(const Rat& h) {
  Rat hh = h;
  hh.canonicalize();
  Int den = hh.get_den();
  Int num = hh.get_num() % den;
  if (num < 0) num += den;
  if (!den.fits_slong_p()) throw PreconditionError("root_of_unity: denominator too large");
  return zeta(den.get_si(), num.get_si());
}

bool Cyclotomic::is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }

const Rat& Cyclotomic::rational() const {
  if (conductor_ != 1) throw PreconditionError("rational(): value is irrational");
  return coeffs_[0];
}

bool Cyclotomic::is_rational_integer() const {
  return conductor_ == 1 && coeffs_[0].get_den() == 1;
}

bool Cyclotomic::is_algebraic_integer() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rat& c) { return c.get_den() == 1; });
}

bool Cyclotomic::is_real() const { return conductor_ == 1 || *this == conj(); }

bool Cyclotomic::is_root_of_unity() const {
  if (is_zero()) return false;
  long order_cap = std::lcm(2L, conductor_);
  return pow(order_cap) == Cyclotomic(1);
}

Rat Cyclotomic::root_of_unity_log() const {
  long cap = std::lcm(2L, conductor_);
  if (is_zero()) throw PreconditionError("root_of_unity_log: zero input");
  long order = 0;
  Cyclotomic p(1);
  for (long j = 1; j <= cap; ++j) {
    p *= *this;
    if (p == Cyclotomic(1)) {
      order = j;
      break;
    }
  }
  if (order == 0) throw PreconditionError("root_of_unity_log: not a root of unity");
  for (long s = 0; s < order; ++s) {
    if (*this == zeta(order, s)) {
      Rat h(s, order);
      h.canonicalize();
      return h;
    }
  }
  throw Error("internal: root of unity of known order not matched");
}

std::vector<Rat> Cyclotomic::lifted_to(long m) const {
  if (m == conductor_) return coeffs_;
  if (m % conductor_ != 0) throw Error("internal: lift target not a multiple");
  const Table& t = table_for(m);
  long stride = m / conductor_;
  QPoly out((size_t)m, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) out[k * stride] += coeffs_[k];
  reduce_mod_phi(out, t);
  return out;
}

void Cyclotomic::normalize() {
  if (conductor_ == 1) return;
  bool rational_only = true;
  for (size_t k = 1; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) {
      rational_only = false;
      break;
    }
  if (rational_only) {
    coeffs_.resize(1);
    conductor_ = 1;
    return;
  }
  std::vector<long> cands;
  for (long d : divisors_of(conductor_))
    if (d != conductor_ && valid_conductor(d) && d > 1) cands.push_back(d);
  std::sort(cands.begin(), cands.end(), [](long a, long b) {
    long pa = euler_phi(a), pb = euler_phi(b);
    return pa != pb ? pa < pb : a < b;
  });
  const Table& t = table_for(conductor_);
  for (long d : cands) {
    long pd = euler_phi(d);
    // Columns: coordinates of zeta_n^{j * n/d} in the conductor-n basis.
    std::vector<std::vector<Rat>> B((size_t)t.phi, std::vector<Rat>((size_t)pd, Rat(0)));
    for (long j = 0; j < pd; ++j) {
      QPoly col((size_t)(j * (conductor_ / d)) + 1, Rat(0));
      col.back() = 1;
      reduce_mod_phi(col, t);
      for (long i = 0; i < t.phi; ++i) B[i][j] = col[i];
    }
    auto sol = solve_exact(std::move(B), coeffs_, pd);
    if (sol) {
      conductor_ = d;
      coeffs_ = std::move(*sol);
      normalize();  // recurse in case an even smaller field works
      return;
    }
  }
}

Cyclotomic Cyclotomic::galois(long ell) const {
  if (conductor_ == 1) return *this;
  long m = mod_pos(ell, conductor_);
  if (std::gcd(m, conductor_) != 1)
    throw PreconditionError("galois: exponent not coprime to conductor");
  if (m == 1) return *this;
  const Table& t = table_for(conductor_);
  QPoly out((size_t)conductor_, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) out[(k * m) % conductor_] += coeffs_[k];
  reduce_mod_phi(out, t);
  Cyclotomic r(conductor_, std::move(out));
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::pow(long k) const {
  if (k < 0) return (Cyclotomic(1) / *this).pow(-k);
  Cyclotomic acc(1), base = *this;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  long l = conductor_lcm(a.conductor_, b.conductor_);
  std::vector<Rat> ca = a.lifted_to(l), cb = b.lifted_to(l);
  for (size_t k = 0; k < ca.size(); ++k) ca[k] += cb[k];
  Cyclotomic r(l, std::move(ca));
  r.normalize();
  return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  long l = conductor_lcm(a.conductor_, b.conductor_);
  if (l == 1) return Cyclotomic(a.coeffs_[0] * b.coeffs_[0]);
  std::vector<Rat> ca = a.lifted_to(l), cb = b.lifted_to(l);
  QPoly prod(ca.size() + cb.size() - 1, Rat(0));
  for (size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    for (size_t j = 0; j < cb.size(); ++j)
      if (cb[j] != 0) prod[i + j] += ca[i] * cb[j];
  }
  reduce_mod_phi(prod, table_for(l));
  Cyclotomic r(l, std::move(prod));
  r.normalize();
  return r;
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
  if (b.is_zero()) throw Error("division by zero");
  if (b.conductor_ == 1) {
    Cyclotomic r = a;
    for (auto& c : r.coeffs_) c /= b.coeffs_[0];
    r.normalize();
    return r;
  }
  long l = conductor_lcm(a.conductor_, b.conductor_);
  QPoly inv = qpoly_invmod(b.lifted_to(l), table_for(l));
  Cyclotomic binv(l, std::move(inv));
  binv.normalize();
  return a * binv;
}

bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_;
  for (size_t k = 0; k < a.coeffs_.size(); ++k) {
    int c = cmp(a.coeffs_[k], b.coeffs_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string Cyclotomic::str() const {
  std::ostringstream out;
  bool first = true;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    Rat c = coeffs_[k];
    bool neg = c < 0;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (neg) c = -c;
    out << c.get_num().get_str() << "/" << c.get_den().get_str();
    if (k >= 1) out << "*z";
    if (k >= 2) out << "^" << k;
  }
  if (first) out << "0/1";
  return out.str();
}

Complex Cyclotomic::embed(long precision_bits) const {
  long prec = precision_bits + 64;
  Complex acc(prec);
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    auto [c, s] = Real::cos_sin_2pi((long)k, conductor_, prec);
    Real w = Real::of(coeffs_[k], prec);
    acc.re += w * c;
    acc.im += w * s;
  }
  return acc;
}

int compare_real(const Cyclotomic& a, const Cyclotomic& b, const RunConfig& cfg) {
  if (a == b) return 0;
  Cyclotomic d = a - b;
  if (!d.is_real()) throw PreconditionError("compare_real: difference is not real");
  if (d.is_rational()) return sgn(d.rational());
  for (long prec = cfg.precision_bits; prec <= cfg.precision_bits * cfg.precision_cap_factor;
       prec *= 2) {
    Real e = d.embed(prec).re;
    if (!e.abs_less_exp2(-(prec / 2))) return e.sign();
  }
  throw ReconstructionError("compare_real: sign not certified at precision cap");
}

Cyclotomic parse_cyclotomic(const std::string& text, long conductor) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(msg, 0, (int)pos + 1);
  };
  auto parse_int = [&]() -> Int {
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && isdigit((unsigned char)text[pos])) ++pos;
    if (pos == start || (pos == start + 1 && !isdigit((unsigned char)text[start])))
      fail("expected integer");
    return Int(text.substr(start, pos - start));
  };

  Cyclotomic acc(Rat(0));
  bool first = true;
  skip_ws();
  while (pos < text.size()) {
    int sign = 1;
    if (!first) {
      if (text[pos] == '+') {
        ++pos;
      } else if (text[pos] == '-') {
        sign = -1;
        ++pos;
      } else {
        fail("expected '+' or '-'");
      }
      skip_ws();
    } else if (text[pos] == '-') {
      sign = -1;
      ++pos;
      skip_ws();
    }
    // term: rational [* z [^ k]] | z [^ k]
    Rat coeff(1);
    bool have_coeff = false;
    if (pos < text.size() && (isdigit((unsigned char)text[pos]) || text[pos] == '-')) {
      Int num = parse_int();
      Int den = 1;
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = parse_int();
        if (den <= 0) fail("denominator must be positive");
      }
      coeff = Rat(num, den);
      coeff.canonicalize();
      have_coeff = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      } else if (pos < text.size() && text[pos] == 'z') {
        fail("expected '*' before z");
      }
    }
    long expo = 0;
    if (pos < text.size() && text[pos] == 'z') {
      ++pos;
      expo = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        Int e = parse_int();
        if (e < 0 || !e.fits_slong_p()) fail("bad exponent");
        expo = e.get_si();
      }
    } else if (!have_coeff) {
      fail("expected term");
    }
    if (sign < 0) coeff = -coeff;
    acc += Cyclotomic(coeff) * Cyclotomic::zeta(conductor, expo);
    first = false;
    skip_ws();
  }
  if (first) throw ParseError("empty cyclotomic literal", 0, 1);
  return acc;
}

}  // namespace fcs
