#include "fcset/galois.hpp"

#include <algorithm>
#include <numeric>

#include "fcset/errors.hpp"

namespace fcs {

namespace {

long mod_pos(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

const std::vector<int>& GaloisAction::perm_of(long ell) const {
  if (modulus <= 1) return perm.at(1);
  auto it = perm.find(mod_pos(ell, modulus));
  if (it == perm.end()) throw PreconditionError("perm_of: not a unit mod the conductor");
  return it->second;
}

const std::vector<int>& GaloisAction::sign_of(long ell) const {
  if (modulus <= 1) return sign.at(1);
  auto it = sign.find(mod_pos(ell, modulus));
  if (it == sign.end()) throw PreconditionError("sign_of: not a unit mod the conductor");
  return it->second;
}

GaloisAction galois_action(const ModularData& m) {
  GaloisAction ga;
  ga.conductor = m.base.weight_conductor();
  long mod = ga.conductor;
  for (const auto& row : m.rho)
    for (const auto& v : row) mod = std::lcm(mod, v.conductor());
  ga.modulus = mod;
  int rank = m.rank();

  if (mod <= 1) {
    ga.units = {1};
  } else {
    for (long ell = 1; ell < mod; ++ell)
      if (std::gcd(ell, mod) == 1) ga.units.push_back(ell);
  }

  for (long ell : ga.units) {
    std::vector<int> perm(rank, -1), sgn(rank, 0);
    for (int p = 0; p < rank; ++p) {
      std::vector<Cyclotomic> mapped;
      mapped.reserve(rank);
      for (int q = 0; q < rank; ++q) mapped.push_back(m.rho[p][q].galois(ell));
      int target = -1;
      for (int w = 0; w < rank; ++w)
        if (m.rho[w] == mapped) {
          target = w;
          break;
        }
      if (target < 0)
        throw IdentityError("galois image of an irrep is not an irrep (corrupt data)");
      perm[p] = target;
    }
    // epsilon_ell(p): sigma_ell(d_p) = eps * d_{pi p} / d_{pi 0}
    for (int p = 0; p < rank; ++p) {
      Cyclotomic eps = m.qdims[p].galois(ell) * m.qdims[perm[0]] / m.qdims[perm[p]];
      if (eps == Cyclotomic(1))
        sgn[p] = 1;
      else if (eps == Cyclotomic(-1))
        sgn[p] = -1;
      else
        throw IdentityError("dimension sign law failed (corrupt data)");
    }
    ga.perm[ell] = std::move(perm);
    ga.sign[ell] = std::move(sgn);
  }

  // pi is a homomorphism.
  for (long a : ga.units)
    for (long b : ga.units) {
      const auto &pa = ga.perm[a], &pb = ga.perm[b];
      const auto& pab = ga.perm[mod <= 1 ? 1 : mod_pos(a * b, mod)];
      for (int p = 0; p < rank; ++p)
        if (pa[pb[p]] != pab[p])
          throw IdentityError("galois permutations are not a homomorphism");
    }

  // sigma_{-1} is charge conjugation.
  {
    const auto& pm1 = ga.perm[mod <= 1 ? 1 : mod - 1];
    for (int p = 0; p < rank; ++p)
      if (pm1[p] != m.base.conjugate(p))
        throw IdentityError("sigma_{-1} is not charge conjugation");
  }

  // Level-N congruence: h_{pi p} - h_{pi 0} = ell^2 h_p (mod 1). A violation
  // is a data diagnostic, not a hard error.
  for (long ell : ga.units) {
    const auto& perm = ga.perm[ell];
    bool ok = true;
    for (int p = 0; p < rank; ++p) {
      Rat delta = m.base.weights[perm[p]] - m.base.weights[perm[0]] -
                  Rat(ell * ell) * m.base.weights[p];
      if (delta.get_den() != 1) ok = false;
    }
    ga.diagnostics.check("weight_congruence", ok).set("ell", ell);
  }
  return ga;
}

ThetaSets theta_sets(const ModularData& m, const GaloisAction& ga, long ell) {
  int rank = m.rank();
  ThetaSets ts{FCSet(rank), FCSet(rank)};
  std::vector<int> theta_sign(rank, 0);
  for (int p = 0; p < rank; ++p) {
    Cyclotomic img = m.qdims[p].galois(ell);
    if (img == m.qdims[p]) {
      ts.theta.set(p);
      ts.theta_plus.set(p);
      theta_sign[p] = 1;
    } else if (img == -m.qdims[p]) {
      ts.theta.set(p);
      theta_sign[p] = -1;
    }
  }
  if (!is_fc(ts.theta, m) || !is_fc(ts.theta_plus, m))
    throw IdentityError("theta sets are not fusion closed (corrupt data)");
  // Sign multiplicativity on fusion triples inside Theta.
  const auto& eps = ga.sign_of(ell);
  for (int p : ts.theta.members()) {
    if (eps[p] != theta_sign[p])
      throw IdentityError("theta sign disagrees with the dimension sign law");
    for (int q : ts.theta.members())
      for (int r = 0; r < rank; ++r)
        if (m.n(p, q, r) > 0 && theta_sign[r] != theta_sign[p] * theta_sign[q])
          throw IdentityError("theta signs are not multiplicative");
  }
  return ts;
}

IntMembership int_lattice_membership(const FCSet& g, const ModularData& m,
                                     const GaloisAction& ga) {
  IntMembership out;
  ClassPartition cl = classes_of(g, m);
  Center ctr = center_of(cl, m);
  const Cyclotomic& dual_extent = cl.extents[cl.trivial_class];

  bool all_ell = true;
  for (long ell : ga.units) {
    ThetaSets ts = theta_sets(m, ga, ell);
    bool a = ts.theta.contains(g);
    bool b = true;
    for (int alpha : g.members()) {
      Cyclotomic d2 = m.qdims[alpha] * m.qdims[alpha];
      if (d2.galois(ell) != d2) b = false;
    }
    bool c = dual_extent.galois(ell) == dual_extent;
    // d) the image class of the trivial class is central
    const auto& perm = ga.perm_of(ell);
    std::vector<int> image;
    for (int p : cl.classes[cl.trivial_class]) image.push_back(perm[p]);
    std::sort(image.begin(), image.end());
    int img_cls = cl.class_of[image.front()];
    bool d = cl.classes[img_cls] == image && ctr.pos_of_class(img_cls) >= 0;
    if (a != b || b != c || c != d)
      throw IdentityError("integrality equivalences disagree (corrupt data)");
    out.equivalents.check("intspread_equivalents", a)
        .set("ell", ell)
        .set("contained_in_theta", a ? "yes" : "no");
    all_ell = all_ell && a;
  }
  out.in_l_int = dual_extent.is_rational_integer();
  if (out.in_l_int != all_ell)
    throw IdentityError("integral dual extent must match theta containment for all ell");
  out.in_l_int_plus = true;
  for (int alpha : g.members())
    if (!m.qdims[alpha].is_rational_integer()) out.in_l_int_plus = false;
  return out;
}

Report dimratio_check(const FCSet& g, const ModularData& m, const GaloisAction& ga,
                      long ell, const RunConfig& cfg) {
  ThetaSets ts = theta_sets(m, ga, ell);
  if (!ts.theta.contains(g))
    throw PreconditionError("dimratio_check: g is not contained in Theta_ell");
  Report rep;
  ClassPartition bl = blocks_of(g, m);
  const auto& perm = ga.perm_of(ell);

  bool const_ratio = true, sq_ratio = true;
  for (int b = 0; b < bl.num_classes(); ++b) {
    const auto& mem = bl.classes[b];
    Cyclotomic ratio = m.qdims[mem.front()].galois(ell) / m.qdims[mem.front()];
    for (int p : mem)
      if (m.qdims[p].galois(ell) / m.qdims[p] != ratio) const_ratio = false;
    // image block and the squared dimension-ratio law
    std::vector<int> image;
    for (int p : mem) image.push_back(perm[p]);
    std::sort(image.begin(), image.end());
    int ib = bl.class_of[image.front()];
    if (bl.classes[ib] != image) {
      sq_ratio = false;
      continue;
    }
    for (int p : mem) {
      Cyclotomic lhs = m.qdims[perm[p]] * m.qdims[perm[p]] /
                       (m.qdims[p] * m.qdims[p]);
      if (lhs * bl.extents[ib] != bl.extents[b]) sq_ratio = false;
    }
  }
  rep.check("dimratio_constant_on_blocks", const_ratio).set("ell", ell);
  rep.check("dimratio_squared_extent_law", sq_ratio).set("ell", ell);

  bool integral = true;
  for (int alpha : g.members())
    if (!m.qdims[alpha].is_rational_integer()) integral = false;
  if (integral) {
    bool rational_multiples = true;
    for (int b = 0; b < bl.num_classes(); ++b) {
      const auto& mem = bl.classes[b];
      Cyclotomic dmin = m.qdims[mem.front()];
      for (int p : mem)
        if (compare_real(m.qdims[p], dmin, cfg) < 0) dmin = m.qdims[p];
      for (int p : mem)
        if (!(m.qdims[p] / dmin).is_rational()) rational_multiples = false;
    }
    rep.check("integer_block_rational_multiples", rational_multiples).set("ell", ell);
  }
  return rep;
}

std::vector<Cyclotomic> spectrum_poly(const std::vector<int>& class_members,
                                      const ModularData& m) {
  std::vector<Cyclotomic> poly = {Cyclotomic(1)};
  for (int p : class_members) {
    Cyclotomic root = Cyclotomic(1) / m.s2[p];
    std::vector<Cyclotomic> next(poly.size() + 1, Cyclotomic(0));
    for (size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * root;
    }
    poly = std::move(next);
  }
  return poly;
}

Report conjecture_spect(const FCSet& g, const ModularData& m, const GaloisAction& ga) {
  Report rep;
  ClassPartition cl = classes_of(g, m);
  FCSet dual = dual_set(g, m);
  std::vector<std::vector<Cyclotomic>> polys;
  polys.reserve(cl.num_classes());
  for (const auto& mem : cl.classes) polys.push_back(spectrum_poly(mem, m));

  bool integral_g = cl.extents[cl.trivial_class].is_rational_integer();
  if (integral_g) {
    bool coeffs_integral = true;
    for (const auto& poly : polys)
      for (const auto& coeff : poly)
        if (!coeff.is_rational_integer()) coeffs_integral = false;
    rep.check("spect_integer_coefficients", coeffs_integral);
  }

  for (long ell : ga.units) {
    const auto& perm = ga.perm_of(ell);
    // class-level permutation
    std::vector<int> cperm(cl.num_classes(), -1);
    bool classes_map = true;
    for (int c = 0; c < cl.num_classes(); ++c) {
      std::vector<int> image;
      for (int p : cl.classes[c]) image.push_back(perm[p]);
      std::sort(image.begin(), image.end());
      int ic = cl.class_of[image.front()];
      if (cl.classes[ic] != image) classes_map = false;
      cperm[c] = ic;
    }
    if (!classes_map)
      throw IdentityError("galois image of a class is not a class");

    bool companion = true;
    for (int c = 0; c < cl.num_classes(); ++c) {
      std::vector<Cyclotomic> mapped;
      mapped.reserve(polys[c].size());
      for (const auto& coeff : polys[c]) mapped.push_back(coeff.galois(ell));
      if (mapped != polys[cperm[c]]) companion = false;
    }
    rep.check("spect_companion_sigma", companion).set("ell", ell);

    ThetaSets ts = theta_sets(m, ga, ell);
    if (ts.theta.contains(g)) {
      for (int c = 0; c < cl.num_classes(); ++c) {
        bool same = polys[cperm[c]] == polys[c];
        auto& rec = rep.check("spect_conjecture", same).set("ell", ell).set("class", c);
        if (!same) {
          FCSet witness(m.rank());
          for (int p : cl.classes[c]) witness.set(p);
          rec.set("class_set", set_label(witness, m));
        }
      }
    }
    if (ts.theta.contains(dual)) {
      bool rescale_ok = true;
      for (int c = 0; c < cl.num_classes(); ++c) {
        Cyclotomic r = cl.extents[cperm[c]] / cl.extents[c];
        size_t deg = polys[c].size() - 1;
        Cyclotomic scale(1);
        // compare top-down: coeff'_j = coeff_j * r^{deg - j}
        for (size_t j = deg + 1; j-- > 0;) {
          if (polys[cperm[c]][j] != polys[c][j] * scale) rescale_ok = false;
          scale *= r;
        }
      }
      rep.check("spect_rescaling_law", rescale_ok).set("ell", ell);
    }
  }
  return rep;
}

Report galois_partition_checks(const FCSet& g, const ModularData& m,
                               const GaloisAction& ga) {
  Report rep;
  OverlapTable ot = overlaps(g, m);
  const ClassPartition& cl = ot.classes;
  const ClassPartition& bl = ot.blocks;
  Center ctr = center_of(cl, m);

  for (long ell : ga.units) {
    const auto& perm = ga.perm_of(ell);
    auto part_perm = [&](const ClassPartition& part, bool& ok) {
      std::vector<int> cp(part.num_classes(), -1);
      for (int c = 0; c < part.num_classes(); ++c) {
        std::vector<int> image;
        for (int p : part.classes[c]) image.push_back(perm[p]);
        std::sort(image.begin(), image.end());
        int ic = part.class_of[image.front()];
        if (part.classes[ic] != image) ok = false;
        cp[c] = ic;
      }
      return cp;
    };
    bool classes_map = true, blocks_map = true;
    std::vector<int> cperm = part_perm(cl, classes_map);
    std::vector<int> bperm = part_perm(bl, blocks_map);
    rep.check("galois_classes_to_classes", classes_map).set("ell", ell);
    rep.check("galois_blocks_to_blocks", blocks_map).set("ell", ell);
    if (!classes_map || !blocks_map) continue;

    bool ext_law = true;
    for (int c = 0; c < cl.num_classes(); ++c)
      if (cl.extents[cperm[c]] != cl.extents[c].galois(ell)) ext_law = false;
    for (int b = 0; b < bl.num_classes(); ++b)
      if (bl.extents[bperm[b]] != bl.extents[b].galois(ell)) ext_law = false;
    rep.check("galois_extent_law", ext_law).set("ell", ell);

    bool ov_inv = true;
    for (int b = 0; b < bl.num_classes(); ++b)
      for (int c = 0; c < cl.num_classes(); ++c) {
        if (ot.ov[b][cperm[c]] != ot.ov[b][c]) ov_inv = false;
        if (ot.ov[bperm[b]][c] != ot.ov[b][c]) ov_inv = false;
      }
    rep.check("galois_overlap_invariance", ov_inv).set("ell", ell);

    // ell(zC) = z^ell (ell C) for central z
    bool intertwine = true;
    for (int zpos = 0; zpos < ctr.order(); ++zpos) {
      // z^ell in the center group
      int zell = ctr.identity_pos;
      for (long k = 0; k < mod_pos(ell, ga.modulus == 1 ? 1 : ga.modulus); ++k)
        zell = ctr.mult[zell][zpos];
      for (int c = 0; c < cl.num_classes(); ++c)
        if (cperm[ctr.action[zpos][c]] != ctr.action[zell][cperm[c]]) intertwine = false;
    }
    rep.check("galois_center_intertwine", intertwine).set("ell", ell);
  }

  // Self-conjugacy of the FC set (sigma_{-1} fixes g).
  bool self_conj = true;
  for (int alpha : g.members())
    if (!g.test(m.base.conjugate(alpha))) self_conj = false;
  rep.check("self_conjugate", self_conj);
  return rep;
}

}  // namespace fcs
