#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcset/cyclotomic.hpp"

namespace fcs {

/// Fusion-ring data: primary labels, conformal weights h_p, and the rank^3
/// tensor of fusion multiplicities N_{pq}^r. Index 0 is the vacuum.
struct FusionData {
  std::vector<std::string> labels;
  std::vector<Rat> weights;
  std::vector<int> fusion;  // flattened, [(p*rank + q)*rank + r]

  int rank() const { return (int)labels.size(); }
  int n(int p, int q, int r) const {
    return fusion[((size_t)p * rank() + q) * rank() + r];
  }
  void set_n(int p, int q, int r, int m) {
    fusion[((size_t)p * rank() + q) * rank() + r] = m;
  }
  /// Charge conjugate: the unique r with N_{pr}^0 = 1. Requires valid data.
  int conjugate(int p) const;
  /// lcm of the denominators of the conformal weights.
  long weight_conductor() const;

  static FusionData make(std::vector<std::string> labels, std::vector<Rat> weights);
};

struct ValidationIssue {
  std::string axiom;  // vacuum | symmetry | associativity | conjugation | weights | range
  std::string detail;
};

/// Axiom check; an empty result means the data is a valid fusion ring.
std::vector<ValidationIssue> validate(const FusionData& f);

/// Exact quantum dimensions: the common Perron-Frobenius eigenvector with
/// d_0 = 1, certified by the exact identity sum_r N_{pq}^r d_r = d_p d_q.
/// Numeric candidates come from PF iteration and are reconstructed in the
/// weight-conductor field, escalating precision then conductor on failure.
std::vector<Cyclotomic> quantum_dims(const FusionData& f,
                                     const RunConfig& cfg = default_config());

/// Optional explicit S-matrix (entries S_{pq} as exact cyclotomic numbers).
struct SMatrixInput {
  long conductor = 1;
  std::vector<std::vector<Cyclotomic>> entries;
};

/// Fusion data enriched with the exact table of Verlinde-algebra irreps.
struct ModularData {
  FusionData base;
  long conductor = 1;                         // from the weights
  std::vector<std::vector<Cyclotomic>> rho;   // rho[w][q] = S_{qw} / S_{0w}
  std::vector<Cyclotomic> qdims;              // d_q = rho[0][q]
  std::vector<Cyclotomic> s2;                 // s2[p] = S_{0p}^2
  Cyclotomic global_dim;                      // sum_p d_p^2
  std::vector<Cyclotomic> omega;              // e^{2 pi i h_p}

  int rank() const { return base.rank(); }
  int n(int p, int q, int r) const { return base.n(p, q, r); }
  /// |S_{pq}|^2, exact: abs_squared(rho[q][p]) * s2[q].
  Cyclotomic s_abs2(int p, int q) const { return rho[q][p].abs_squared() * s2[q]; }
};

/// Builds and fully verifies the exact rho table. With an explicit S-matrix
/// the table is read off S and the reconstruction formula becomes a check.
/// Throws PreconditionError (invalid input), IdentityError (verification
/// failure, duplicate irreps) or ReconstructionError.
ModularData build_modular_data(const FusionData& f,
                               const std::optional<SMatrixInput>& smatrix = std::nullopt,
                               const RunConfig& cfg = default_config());

/// Exact Verlinde formula check over all triples.
bool verlinde_check(const ModularData& m);

inline const Cyclotomic& omega_of(const ModularData& m, int p) { return m.omega[p]; }

/// Whenever |rho_p(q)| = d_q, fusion N_{pq}^r > 0 must happen exactly when
/// omega_p omega_q / omega_r = rho_p(q)/d_q. Checked over all triples.
bool omch_check(const ModularData& m);

}  // namespace fcs
