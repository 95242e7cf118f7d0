#include "fcset/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fcset/errors.hpp"

namespace fcs {

namespace {

std::string idx3(const FusionData& f, int p, int q, int r) {
  std::ostringstream out;
  out << "N(" << f.labels[p] << "," << f.labels[q] << ";" << f.labels[r] << ")";
  return out.str();
}

// One PF iteration pass at the given precision; returns v with v[0] = 1.
std::vector<Real> pf_vector(const FusionData& f, long prec) {
  int rank = f.rank();
  // A = sum_p N(p); strictly positive for valid fusion data.
  std::vector<long> a((size_t)rank * rank, 0);
  for (int p = 0; p < rank; ++p)
    for (int q = 0; q < rank; ++q)
      for (int r = 0; r < rank; ++r) a[(size_t)q * rank + r] += f.n(p, q, r);

  std::vector<Real> v(rank, Real::of(1L, prec));
  long max_iter = 64 * prec;  // linear convergence; generous cap
  for (long iter = 0; iter < max_iter; ++iter) {
    std::vector<Real> w(rank, Real(prec));
    for (int q = 0; q < rank; ++q)
      for (int r = 0; r < rank; ++r)
        if (a[(size_t)q * rank + r] != 0)
          w[q] += Real::of(a[(size_t)q * rank + r], prec) * v[r];
    // normalize to w[0] = 1
    for (int q = rank - 1; q >= 0; --q) w[q] = w[q] / w[0];
    bool settled = true;
    for (int q = 0; q < rank && settled; ++q)
      settled = (w[q] - v[q]).abs_less_exp2(-(prec / 2 + 8));
    v = std::move(w);
    if (settled) return v;
  }
  return v;
}

}  // namespace

int FusionData::conjugate(int p) const {
  for (int r = 0; r < rank(); ++r)
    if (n(p, r, 0) == 1) return r;
  throw IdentityError("no charge conjugate for primary " + labels[p]);
}

long FusionData::weight_conductor() const {
  Int l = 1;
  for (const Rat& h : weights) l = lcm(l, h.get_den());
  if (!l.fits_slong_p()) throw PreconditionError("weight conductor too large");
  return l.get_si();
}

FusionData FusionData::make(std::vector<std::string> labels, std::vector<Rat> weights) {
  FusionData f;
  f.labels = std::move(labels);
  f.weights = std::move(weights);
  f.fusion.assign((size_t)f.rank() * f.rank() * f.rank(), 0);
  return f;
}

std::vector<ValidationIssue> validate(const FusionData& f) {
  std::vector<ValidationIssue> issues;
  int rank = f.rank();
  if (rank < 1 || (int)f.weights.size() != rank ||
      f.fusion.size() != (size_t)rank * rank * rank) {
    issues.push_back({"range", "inconsistent rank/weights/fusion sizes"});
    return issues;
  }
  for (int m : f.fusion)
    if (m < 0) {
      issues.push_back({"range", "negative fusion multiplicity"});
      return issues;
    }
  for (int q = 0; q < rank; ++q)
    for (int r = 0; r < rank; ++r)
      if (f.n(0, q, r) != (q == r ? 1 : 0)) {
        issues.push_back({"vacuum", "N(0) is not the identity matrix at " + idx3(f, 0, q, r)});
        goto vacuum_done;
      }
vacuum_done:
  for (int p = 0; p < rank; ++p)
    for (int q = p + 1; q < rank; ++q)
      for (int r = 0; r < rank; ++r)
        if (f.n(p, q, r) != f.n(q, p, r))
          issues.push_back({"symmetry", idx3(f, p, q, r) + " != " + idx3(f, q, p, r)});
  // associativity: sum_s N_pq^s N_sr^t = sum_s N_qr^s N_ps^t
  for (int p = 0; p < rank && issues.empty(); ++p)
    for (int q = 0; q < rank; ++q)
      for (int r = 0; r < rank; ++r)
        for (int t = 0; t < rank; ++t) {
          long lhs = 0, rhs = 0;
          for (int s = 0; s < rank; ++s) {
            lhs += (long)f.n(p, q, s) * f.n(s, r, t);
            rhs += (long)f.n(q, r, s) * f.n(p, s, t);
          }
          if (lhs != rhs) {
            issues.push_back({"associativity",
                              "fails at (" + f.labels[p] + "," + f.labels[q] + "," +
                                  f.labels[r] + "," + f.labels[t] + ")"});
            goto assoc_done;
          }
        }
assoc_done:
  for (int p = 0; p < rank; ++p) {
    int count = 0, conj = -1;
    for (int q = 0; q < rank; ++q) {
      int m = f.n(p, q, 0);
      if (m == 1) {
        ++count;
        conj = q;
      } else if (m != 0) {
        issues.push_back({"conjugation", idx3(f, p, q, 0) + " = " + std::to_string(m)});
      }
    }
    if (count != 1)
      issues.push_back({"conjugation",
                        "primary " + f.labels[p] + " has " + std::to_string(count) +
                            " conjugates"});
    else if (f.n(p, conj, 0) != 1)
      issues.push_back({"conjugation", "asymmetric conjugation at " + f.labels[p]});
  }
  if (!f.weights.empty() && f.weights[0] != 0)
    issues.push_back({"weights", "h_0 must be 0"});
  return issues;
}

std::vector<Cyclotomic> quantum_dims(const FusionData& f, const RunConfig& cfg) {
  cfg.check();
  int rank = f.rank();
  long n0 = canonical_conductor(f.weight_conductor());
  std::string last_failure = "no attempt";

  for (long cond_factor : {1L, cfg.conductor_multiplier}) {
    long n = canonical_conductor(n0 * cond_factor);
    for (long prec = cfg.precision_bits;
         prec <= cfg.precision_bits * cfg.precision_cap_factor; prec *= 2) {
      RunConfig local = cfg;
      local.precision_bits = prec;
      std::vector<Real> v = pf_vector(f, prec);
      std::vector<Cyclotomic> d(rank);
      bool ok = true;
      for (int p = 0; p < rank && ok; ++p) {
        auto cand = reconstruct(Complex(v[p], Real(prec)), n, Int(cfg.denom_bound), local);
        if (!cand) {
          last_failure = "no candidate for d_" + f.labels[p];
          ok = false;
        } else {
          d[p] = *cand;
        }
      }
      // Mandatory exact verification of the eigenvector property.
      if (ok && d[0] != Cyclotomic(1)) {
        last_failure = "d_0 != 1";
        ok = false;
      }
      for (int p = 0; p < rank && ok; ++p)
        for (int q = 0; q < rank && ok; ++q) {
          Cyclotomic lhs(Rat(0));
          for (int r = 0; r < rank; ++r)
            if (f.n(p, q, r) != 0) lhs += Cyclotomic(Rat(f.n(p, q, r))) * d[r];
          if (lhs != d[p] * d[q]) {
            last_failure = "eigenvector identity fails at (" + f.labels[p] + "," +
                           f.labels[q] + ")";
            ok = false;
          }
        }
      for (int p = 0; p < rank && ok; ++p)
        if (compare_real(d[p], Cyclotomic(0), local) <= 0) {
          last_failure = "non-positive dimension d_" + f.labels[p];
          ok = false;
        }
      if (ok) return d;
    }
  }
  throw ReconstructionError("quantum_dims: " + last_failure +
                            " after precision/conductor escalation");
}

ModularData build_modular_data(const FusionData& f,
                               const std::optional<SMatrixInput>& smatrix,
                               const RunConfig& cfg) {
  auto issues = validate(f);
  if (!issues.empty())
    throw PreconditionError("build_modular_data: invalid fusion data: " +
                            issues.front().axiom + ": " + issues.front().detail);
  ModularData m;
  m.base = f;
  m.conductor = f.weight_conductor();
  int rank = f.rank();
  m.omega.reserve(rank);
  for (int p = 0; p < rank; ++p) m.omega.push_back(Cyclotomic::root_of_unity(f.weights[p]));
  m.qdims = quantum_dims(f, cfg);
  m.global_dim = Cyclotomic(0);
  for (const auto& d : m.qdims) m.global_dim += d * d;

  m.rho.assign(rank, std::vector<Cyclotomic>(rank));
  m.s2.resize(rank);
  if (smatrix) {
    const auto& S = smatrix->entries;
    if ((int)S.size() != rank)
      throw PreconditionError("smatrix rank mismatch");
    // Unitarity, exact: sum_p S_ap conj(S_bp) = delta_ab.
    for (int a = 0; a < rank; ++a)
      for (int b = a; b < rank; ++b) {
        Cyclotomic acc(0);
        for (int p = 0; p < rank; ++p) acc += S[a][p] * S[b][p].conj();
        if (acc != Cyclotomic(a == b ? 1 : 0))
          throw IdentityError("explicit S-matrix is not unitary");
      }
    for (int p = 0; p < rank; ++p) {
      m.s2[p] = S[0][p] * S[0][p];
      if (!S[0][p].is_real() || compare_real(S[0][p], Cyclotomic(0), cfg) <= 0)
        throw IdentityError("S_{0p} must be real and positive");
    }
    for (int w = 0; w < rank; ++w)
      for (int q = 0; q < rank; ++q) m.rho[w][q] = S[q][w] / S[0][w];
    // d_q = S_{0q}/S_{00} must reproduce the certified quantum dimensions.
    for (int q = 0; q < rank; ++q)
      if (S[0][q] / S[0][0] != m.qdims[q])
        throw IdentityError("explicit S-matrix disagrees with quantum dimensions");
    // Reconstruction formula becomes a check: S_pq/S_00 from fusion + weights.
    for (int p = 0; p < rank; ++p)
      for (int q = 0; q < rank; ++q) {
        Cyclotomic acc(0);
        for (int r = 0; r < rank; ++r)
          if (f.n(p, q, r) != 0)
            acc += Cyclotomic(Rat(f.n(p, q, r))) * m.qdims[r] * m.omega[p] * m.omega[q] /
                   m.omega[r];
        if (acc != S[p][q] / S[0][0])
          throw IdentityError("explicit S-matrix fails the weight reconstruction identity at (" +
                              f.labels[p] + "," + f.labels[q] + ")");
      }
  } else {
    // S_pq / S_00, exactly, from fusion rules and weights.
    std::vector<std::vector<Cyclotomic>> t(rank, std::vector<Cyclotomic>(rank));
    for (int p = 0; p < rank; ++p)
      for (int q = p; q < rank; ++q) {
        Cyclotomic acc(0);
        for (int r = 0; r < rank; ++r)
          if (f.n(p, q, r) != 0)
            acc += Cyclotomic(Rat(f.n(p, q, r))) * m.qdims[r] * m.omega[p] * m.omega[q] /
                   m.omega[r];
        t[p][q] = acc;
        t[q][p] = acc;
      }
    for (int q = 0; q < rank; ++q) {
      if (t[0][q] != m.qdims[q])
        throw IdentityError("vacuum row of reconstructed S disagrees with dimensions");
      m.s2[q] = m.qdims[q] * m.qdims[q] / m.global_dim;
    }
    for (int w = 0; w < rank; ++w)
      for (int q = 0; q < rank; ++q) m.rho[w][q] = t[q][w] / m.qdims[w];
  }

  // sum_p S_{0p}^2 = 1 (unitarity of the vacuum row).
  Cyclotomic s2sum(0);
  for (const auto& v : m.s2) s2sum += v;
  if (s2sum != Cyclotomic(1)) throw IdentityError("sum of S_{0p}^2 is not 1");

  // The rank irreps must be pairwise distinct.
  for (int a = 0; a < rank; ++a)
    for (int b = a + 1; b < rank; ++b)
      if (m.rho[a] == m.rho[b])
        throw IdentityError("duplicate irreps: primaries " + f.labels[a] + " and " +
                            f.labels[b] + " (not modular data of a rational model)");

  for (int w = 0; w < rank; ++w) {
    if (m.rho[w][0] != Cyclotomic(1)) throw IdentityError("rho_w(0) != 1");
    for (int q = 0; q < rank; ++q) {
      if (!m.rho[w][q].is_algebraic_integer())
        throw IdentityError("rho entry is not an algebraic integer at (" + f.labels[w] +
                            "," + f.labels[q] + ")");
      // |rho_w(q)| <= d_q
      if (compare_real(m.rho[w][q].abs_squared(), m.qdims[q] * m.qdims[q], cfg) > 0)
        throw IdentityError("|rho_w(q)| exceeds d_q at (" + f.labels[w] + "," +
                            f.labels[q] + ")");
    }
  }

  // Exact irrep property: sum_r N_pq^r rho_w(r) = rho_w(p) rho_w(q).
  for (int w = 0; w < rank; ++w)
    for (int p = 0; p < rank; ++p)
      for (int q = p; q < rank; ++q) {
        Cyclotomic acc(0);
        for (int r = 0; r < rank; ++r)
          if (f.n(p, q, r) != 0) acc += Cyclotomic(Rat(f.n(p, q, r))) * m.rho[w][r];
        if (acc != m.rho[w][p] * m.rho[w][q])
          throw IdentityError("irrep identity fails at (w=" + f.labels[w] + ",p=" +
                              f.labels[p] + ",q=" + f.labels[q] + ")");
      }
  return m;
}

bool verlinde_check(const ModularData& m) {
  int rank = m.rank();
  for (int p = 0; p < rank; ++p)
    for (int q = p; q < rank; ++q)
      for (int r = 0; r < rank; ++r) {
        Cyclotomic acc(0);
        for (int w = 0; w < rank; ++w)
          acc += m.s2[w] * m.rho[w][p] * m.rho[w][q] * m.rho[w][r].conj();
        if (acc != Cyclotomic(Rat(m.n(p, q, r)))) return false;
      }
  return true;
}

bool omch_check(const ModularData& m) {
  int rank = m.rank();
  for (int p = 0; p < rank; ++p)
    for (int q = 0; q < rank; ++q) {
      bool saturated = m.rho[p][q].abs_squared() == m.qdims[q] * m.qdims[q];
      Cyclotomic ratio = saturated ? m.rho[p][q] / m.qdims[q] : Cyclotomic(0);
      for (int r = 0; r < rank; ++r) {
        if (m.n(p, q, r) == 0) continue;
        bool phase = saturated && (m.omega[p] * m.omega[q] / m.omega[r]) == ratio;
        // A saturated pair fuses only into primaries carrying the fixed phase;
        // conversely a unit-modulus phase equation forces the saturation.
        if (saturated != phase) return false;
      }
    }
  return true;
}

}  // namespace fcs
