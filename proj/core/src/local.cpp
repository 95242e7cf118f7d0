#include "fcset/local.hpp"

#include <algorithm>
#include <numeric>

#include "fcset/errors.hpp"

namespace fcs {

namespace {

bool weight_is_integer(const Rat& h) { return h.get_den() == 1; }

bool weight_is_half_integer(const Rat& h) { return h.get_den() == 1 || h.get_den() == 2; }

long to_long_exact(const Cyclotomic& v, const char* what) {
  if (!v.is_rational_integer()) throw IdentityError(std::string(what) + ": not an integer");
  return (long)v.rational().get_num().get_si();
}

}  // namespace

bool is_local(const FCSet& g, const ModularData& m) {
  bool containment = dual_set(g, m).contains(g);
  bool weight_criterion = true;
  auto mem = g.members();
  for (int a : mem)
    for (int b : mem)
      for (int c : mem)
        if (m.n(a, b, c) > 0 && m.omega[c] != m.omega[a] * m.omega[b])
          weight_criterion = false;
  if (containment != weight_criterion)
    throw IdentityError("locality criteria disagree (corrupt data)");
  return containment;
}

bool is_twister(const FCSet& g, const ModularData& m) {
  if (!is_fc(g, m)) throw PreconditionError("is_twister: not an FC set");
  for (int a : g.members())
    if (!weight_is_integer(m.base.weights[a])) return false;
  return true;
}

FCSet twister_core(const FCSet& g, const ModularData& m) {
  if (!is_local(g, m)) throw PreconditionError("twister_core: g is not local");
  for (int a : g.members())
    if (!weight_is_half_integer(m.base.weights[a]))
      throw IdentityError("local set with non-half-integral weight (corrupt data)");
  FCSet core(m.rank());
  for (int a : g.members())
    if (m.omega[a] == Cyclotomic(1)) core.set(a);
  if (!is_twister(core, m)) throw IdentityError("twister core is not a twister");
  return core;
}

int ramond_class(const FCSet& g, const ModularData& m) {
  if (!is_local(g, m)) throw PreconditionError("ramond_class: g is not local");
  ClassPartition cl = classes_of(g, m);
  int found = -1;
  for (int c = 0; c < cl.num_classes(); ++c) {
    bool match = true;
    for (size_t i = 0; i < cl.members.size() && match; ++i)
      match = cl.charvals[c][i] == m.omega[cl.members[i]] * m.qdims[cl.members[i]];
    if (match) {
      found = c;
      break;
    }
  }
  if (found < 0) throw IdentityError("no Ramond class (corrupt data)");
  Center ctr = center_of(cl, m);
  int pos = ctr.pos_of_class(found);
  if (pos < 0) throw IdentityError("Ramond class is not central");
  if (ctr.mult[pos][pos] != ctr.identity_pos)
    throw IdentityError("Ramond class squared is not the trivial class");
  // Blocks inside R have weight differences in Z.
  ClassPartition bl = blocks_of(g, m);
  for (int b = 0; b < bl.num_classes(); ++b) {
    const auto& mem = bl.classes[b];
    if (cl.class_of[mem.front()] != found) continue;
    bool inside = std::all_of(mem.begin(), mem.end(),
                              [&](int p) { return cl.class_of[p] == found; });
    if (!inside) continue;
    for (size_t i = 1; i < mem.size(); ++i)
      if (Rat(m.base.weights[mem[i]] - m.base.weights[mem[0]]).get_den() != 1)
        throw IdentityError("Ramond block with non-integer weight differences");
  }
  return found;
}

DeconstructionReport deconstruct(const FCSet& g, const ModularData& m) {
  DeconstructionReport rep;
  rep.g = g;
  rep.local = is_local(g, m);
  if (!rep.local) throw PreconditionError("deconstruct: g is not local");
  rep.twister = is_twister(g, m);
  rep.core = twister_core(g, m);
  rep.ramond = ramond_class(g, m);

  ClassPartition cl = classes_of(g, m);
  Center ctr = center_of(cl, m);
  OverlapTable ot = overlaps(g, m);
  const ClassPartition& bl = ot.blocks;

  rep.twist_group_order = cl.extents[cl.trivial_class];
  rep.order_is_integer = rep.twist_group_order.is_rational_integer();
  rep.checks.check("twister_iff_trivial_ramond",
                   rep.twister == (rep.ramond == cl.trivial_class));

  // Each block lies inside a single class (locality).
  std::vector<int> class_of_block(bl.num_classes(), -1);
  bool blocks_in_classes = true;
  for (int b = 0; b < bl.num_classes(); ++b) {
    const auto& mem = bl.classes[b];
    int c = cl.class_of[mem.front()];
    for (int p : mem)
      if (cl.class_of[p] != c) blocks_in_classes = false;
    class_of_block[b] = c;
  }
  rep.checks.check("blocks_inside_classes", blocks_in_classes);
  if (!blocks_in_classes) throw IdentityError("locality block containment failed");

  for (int c = 0; c < cl.num_classes(); ++c) {
    Sector s;
    s.class_members = cl.classes[c];
    s.extent = cl.extents[c];
    for (int b = 0; b < bl.num_classes(); ++b)
      if (class_of_block[b] == c) {
        s.blocks_inside.push_back(bl.classes[b]);
        s.block_overlaps.push_back(ot.ov[b][c]);
      }
    rep.sectors.push_back(std::move(s));
  }
  rep.boson_block_count = (long)rep.sectors[cl.trivial_class].blocks_inside.size();
  rep.fermion_block_count = (long)rep.sectors[rep.ramond].blocks_inside.size();
  if (rep.ramond != cl.trivial_class)
    rep.checks.check("boson_fermion_balance",
                     rep.boson_block_count == rep.fermion_block_count);

  // Block count both ways: |Bl_C| = sum_{b in C} <b, gperp> = sum_{b in gperp} <b, C>.
  bool blockcount = true;
  for (int c = 0; c < cl.num_classes(); ++c) {
    long direct = (long)rep.sectors[c].blocks_inside.size();
    long via_triv = 0, via_dual = 0;
    for (int b = 0; b < bl.num_classes(); ++b) {
      if (class_of_block[b] == c) via_triv += ot.ov[b][cl.trivial_class];
      if (class_of_block[b] == cl.trivial_class) via_dual += ot.ov[b][c];
    }
    if (direct != via_triv || direct != via_dual) blockcount = false;
  }
  rep.checks.check("blockcount_both_ways", blockcount);

  // Weight quantization: for a block inside the central class z, the order n
  // of zR quantizes weight differences to (1/n) Z.
  bool quantization = true;
  int rpos = ctr.pos_of_class(rep.ramond);
  for (int b = 0; b < bl.num_classes(); ++b) {
    int zpos = ctr.pos_of_class(class_of_block[b]);
    if (zpos < 0) continue;  // only central classes are covered by the lemma
    int n = ctr.element_order(ctr.mult[zpos][rpos]);
    const auto& mem = bl.classes[b];
    for (size_t i = 1; i < mem.size(); ++i) {
      Rat delta = (m.base.weights[mem[i]] - m.base.weights[mem[0]]) * Rat(n);
      if (delta.get_den() != 1) quantization = false;
    }
  }
  rep.checks.check("weight_quantization", quantization);

  // <b, RC> >= 1 for blocks b inside the class C.
  bool ramond_lower = true;
  for (int b = 0; b < bl.num_classes(); ++b) {
    int c = class_of_block[b];
    int rc = ctr.action[rpos][c];
    if (ot.ov[b][rc] < 1) ramond_lower = false;
  }
  rep.checks.check("ramond_overlap_lower_bound", ramond_lower);
  return rep;
}

Report char_ring_checks(const FCSet& g, const ModularData& m) {
  Report rep;
  ClassPartition cl = classes_of(g, m);
  Center ctr = center_of(cl, m);
  const Cyclotomic& dual_extent = cl.extents[cl.trivial_class];
  if (!dual_extent.is_rational_integer())
    throw PreconditionError("char_ring_checks: g is not in L_int");
  long n = to_long_exact(dual_extent, "dual extent");

  // (1) every class extent is a rational integer dividing [[g-perp]]
  bool extents_divide = true;
  std::vector<long> ext_vals(cl.num_classes(), 0);
  for (int c = 0; c < cl.num_classes(); ++c) {
    if (!cl.extents[c].is_rational_integer()) {
      extents_divide = false;
      rep.check("extent_integer", false).set("class", c).set("value", cl.extents[c].str());
      continue;
    }
    ext_vals[c] = to_long_exact(cl.extents[c], "class extent");
    if (n % ext_vals[c] != 0) extents_divide = false;
  }
  rep.check("extents_divide_dual_extent", extents_divide).set("dual_extent", n);

  // (2) alpha vanishes somewhere iff d_alpha > 1
  bool vanishing = true;
  for (size_t i = 0; i < cl.members.size(); ++i) {
    bool zero_somewhere = false;
    for (int c = 0; c < cl.num_classes(); ++c)
      if (cl.charvals[c][i].is_zero()) zero_somewhere = true;
    bool dim_above_one = m.qdims[cl.members[i]] != Cyclotomic(1);
    if (zero_somewhere != dim_above_one) {
      vanishing = false;
      rep.check("vanishing_iff_dim_above_one", false)
          .set("alpha", m.base.labels[cl.members[i]]);
    }
  }
  if (vanishing) rep.check("vanishing_iff_dim_above_one", true);

  // (3) |Z(g)|^2 d_alpha^2 divides [[g-perp]]^2
  bool ito = true;
  long zsq = (long)ctr.order() * ctr.order();
  for (int alpha : g.members()) {
    Cyclotomic d2 = m.qdims[alpha] * m.qdims[alpha];
    if (!d2.is_rational_integer()) {
      ito = false;
      continue;
    }
    long dv = to_long_exact(d2, "squared dimension");
    if ((n * n) % (zsq * dv) != 0) ito = false;
  }
  rep.check("center_squared_divisibility", ito).set("center_order", (long)ctr.order());

  // (4) gcd(d_alpha^2, n/[[C]]) = 1 forces |alpha(C)| in {0, d_alpha}
  bool coprime_dichotomy = true;
  for (size_t i = 0; i < cl.members.size(); ++i) {
    Cyclotomic d2 = m.qdims[cl.members[i]] * m.qdims[cl.members[i]];
    if (!d2.is_rational_integer()) continue;
    long dv = to_long_exact(d2, "squared dimension");
    for (int c = 0; c < cl.num_classes(); ++c) {
      if (ext_vals[c] == 0 || n % ext_vals[c] != 0) continue;
      if (std::gcd(dv, n / ext_vals[c]) != 1) continue;
      const Cyclotomic& val = cl.charvals[c][i];
      if (!val.is_zero() && val.abs_squared() != d2) {
        coprime_dichotomy = false;
        rep.check("coprime_dichotomy", false)
            .set("alpha", m.base.labels[cl.members[i]])
            .set("class", c);
      }
    }
  }
  if (coprime_dichotomy) rep.check("coprime_dichotomy", true);

  // Theorem check: local implies all dimensions are rational integers.
  if (is_local(g, m)) {
    bool integral = true;
    for (int alpha : g.members())
      if (!m.qdims[alpha].is_rational_integer()) integral = false;
    rep.check("local_integer_dims", integral);
  }
  return rep;
}

}  // namespace fcs
