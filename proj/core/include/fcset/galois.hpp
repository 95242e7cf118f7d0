#pragma once

#include <map>

#include "fcset/center.hpp"
#include "fcset/report.hpp"

namespace fcs {

/// Action of the Galois group of Q[zeta_N] (N = conductor from the weights)
/// on the primaries: sigma_ell permutes the irreps, with signs from its
/// effect on the quantum dimensions. Construction verifies exactly that the
/// permutation map is a homomorphism, that sigma_{-1} is charge conjugation,
/// the sign law for dimensions and the level-N congruence for weights.
struct GaloisAction {
  long conductor = 1;  // from the weights
  long modulus = 1;    // working modulus (== conductor unless rho needed a larger field)
  std::vector<long> units;                 // units mod `modulus`, ascending
  std::map<long, std::vector<int>> perm;   // ell -> permutation of primaries
  std::map<long, std::vector<int>> sign;   // ell -> epsilon_ell(p) in {+1,-1}
  Report diagnostics;                      // weight-congruence findings

  const std::vector<int>& perm_of(long ell) const;
  const std::vector<int>& sign_of(long ell) const;
};

GaloisAction galois_action(const ModularData& m);

/// Theta_ell = {p : sigma_ell(d_p) = +/- d_p} and its index-two-or-equal
/// positive part; both verified fusion closed with multiplicative signs.
struct ThetaSets {
  FCSet theta;
  FCSet theta_plus;
};

ThetaSets theta_sets(const ModularData& m, const GaloisAction& ga, long ell);

/// The four equivalent integrality statements, evaluated for every unit and
/// required to agree; plus membership in L_int ([[g-perp]] integral) and
/// L_int+ (all dimensions integral).
struct IntMembership {
  bool in_l_int = false;
  bool in_l_int_plus = false;
  Report equivalents;
};

IntMembership int_lattice_membership(const FCSet& g, const ModularData& m,
                                     const GaloisAction& ga);

/// Dimension-ratio laws on blocks for g inside Theta_ell: the Galois ratio is
/// constant on blocks, the squared ratio matches the block-extent ratio, and
/// integral-dimension blocks have rational dimension ratios.
Report dimratio_check(const FCSet& g, const ModularData& m, const GaloisAction& ga,
                      long ell, const RunConfig& cfg = default_config());

/// Monic polynomial prod_{p in C} (x - 1/s2[p]) with exact coefficients
/// (ascending order, degree = |C|).
std::vector<Cyclotomic> spectrum_poly(const std::vector<int>& class_members,
                                      const ModularData& m);

/// The spectrum conjecture (P_{ell C} = P_C for g inside Theta_ell), the
/// companion identity sigma_ell(P_C) = P_{pi(ell) C}, the rescaling law when
/// the dual lies in Theta_ell, and integrality of coefficients over L_int.
Report conjecture_spect(const FCSet& g, const ModularData& m, const GaloisAction& ga);

/// Class/block mapping laws of the Galois permutations: classes map to
/// classes with sigma-transformed extents, overlaps are invariant, and the
/// center action intertwines as ell(zC) = z^ell (ell C).
Report galois_partition_checks(const FCSet& g, const ModularData& m,
                               const GaloisAction& ga);

}  // namespace fcs
