#include "fcset/center.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "fcset/errors.hpp"

namespace fcs {

namespace {

long to_long(const Cyclotomic& v, const char* what) {
  if (!v.is_rational_integer()) throw IdentityError(std::string(what) + ": not an integer");
  return (long)v.rational().get_num().get_si();
}

bool is_prime_power(long v) {
  if (v < 2) return false;
  for (long p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      while (v % p == 0) v /= p;
      return v == 1;
    }
  }
  return true;  // v itself prime
}

bool is_prime(long v) {
  if (v < 2) return false;
  for (long p = 2; p * p <= v; ++p)
    if (v % p == 0) return false;
  return true;
}

}  // namespace

int Center::pos_of_class(int cls) const {
  auto it = std::find(central.begin(), central.end(), cls);
  return it == central.end() ? -1 : (int)(it - central.begin());
}

int Center::inverse(int pos) const {
  for (int j = 0; j < order(); ++j)
    if (mult[pos][j] == identity_pos) return j;
  throw IdentityError("center element without inverse");
}

int Center::element_order(int pos) const {
  int acc = pos, n = 1;
  while (acc != identity_pos) {
    acc = mult[acc][pos];
    ++n;
    if (n > order()) throw IdentityError("center order overflow");
  }
  return n;
}

Cyclotomic central_character(const ClassPartition& p, int cls, int member_pos,
                             const ModularData& m) {
  return p.extents[p.trivial_class] / p.extents[cls] * p.charvals[cls][member_pos] /
         m.qdims[p.members[member_pos]];
}

Center center_of(const ClassPartition& p, const ModularData& m) {
  Center c;
  c.parent = p;
  size_t ng = p.members.size();
  for (int cls = 0; cls < p.num_classes(); ++cls) {
    bool by_extent = p.extents[cls] == p.extents[p.trivial_class];
    bool by_modulus = true;
    for (size_t i = 0; i < ng && by_modulus; ++i) {
      const Cyclotomic& d = m.qdims[p.members[i]];
      by_modulus = p.charvals[cls][i].abs_squared() == d * d;
    }
    if (by_extent != by_modulus)
      throw IdentityError("centrality criteria disagree (corrupt data)");
    if (by_extent) c.central.push_back(cls);
  }
  c.identity_pos = c.pos_of_class(p.trivial_class);
  if (c.identity_pos < 0) throw IdentityError("trivial class is not central");

  for (int pos = 0; pos < c.order(); ++pos) {
    std::vector<Cyclotomic> row;
    row.reserve(ng);
    for (size_t i = 0; i < ng; ++i) {
      Cyclotomic w = central_character(p, c.central[pos], (int)i, m);
      if (!w.is_root_of_unity())
        throw IdentityError("central character is not a root of unity");
      row.push_back(std::move(w));
    }
    c.char_table.push_back(std::move(row));
  }

  // Action: z * C is the class whose character row equals varpi_z . alpha(C).
  for (int pos = 0; pos < c.order(); ++pos) {
    std::vector<int> perm(p.num_classes(), -1);
    for (int cls = 0; cls < p.num_classes(); ++cls) {
      std::vector<Cyclotomic> target;
      target.reserve(ng);
      for (size_t i = 0; i < ng; ++i)
        target.push_back(c.char_table[pos][i] * p.charvals[cls][i]);
      int found = -1;
      for (int d = 0; d < p.num_classes(); ++d)
        if (p.charvals[d] == target) {
          found = d;
          break;
        }
      if (found < 0) throw IdentityError("no matching class for a central product");
      if (p.extents[found] != p.extents[cls])
        throw IdentityError("central product changed the extent");
      perm[cls] = found;
    }
    c.action.push_back(std::move(perm));
  }

  // Multiplication table and the group axioms.
  c.mult.assign(c.order(), std::vector<int>(c.order(), -1));
  for (int a = 0; a < c.order(); ++a)
    for (int b = 0; b < c.order(); ++b) {
      int prod_class = c.action[a][c.central[b]];
      int pos = c.pos_of_class(prod_class);
      if (pos < 0) throw IdentityError("central product left the center");
      c.mult[a][b] = pos;
    }
  for (int a = 0; a < c.order(); ++a) {
    if (c.mult[a][c.identity_pos] != a || c.mult[c.identity_pos][a] != a)
      throw IdentityError("trivial class is not the center identity");
    bool has_inverse = false;
    for (int b = 0; b < c.order(); ++b) {
      if (c.mult[a][b] != c.mult[b][a]) throw IdentityError("center is not commutative");
      if (c.mult[a][b] == c.identity_pos) has_inverse = true;
    }
    if (!has_inverse) throw IdentityError("center element without inverse");
  }
  for (int a = 0; a < c.order(); ++a)
    for (int b = 0; b < c.order(); ++b)
      for (int d = 0; d < c.order(); ++d)
        if (c.mult[c.mult[a][b]][d] != c.mult[a][c.mult[b][d]])
          throw IdentityError("center multiplication is not associative");

  // varpi_{z1 z2} = varpi_{z1} varpi_{z2} pointwise.
  for (int a = 0; a < c.order(); ++a)
    for (int b = 0; b < c.order(); ++b)
      for (size_t i = 0; i < ng; ++i)
        if (c.char_table[c.mult[a][b]][i] != c.char_table[a][i] * c.char_table[b][i])
          throw IdentityError("central characters are not multiplicative");

  // The action is a group action permuting the classes.
  for (int a = 0; a < c.order(); ++a) {
    std::vector<bool> hit(p.num_classes(), false);
    for (int cls = 0; cls < p.num_classes(); ++cls) {
      if (hit[c.action[a][cls]]) throw IdentityError("center action is not a permutation");
      hit[c.action[a][cls]] = true;
    }
    for (int b = 0; b < c.order(); ++b)
      for (int cls = 0; cls < p.num_classes(); ++cls)
        if (c.action[a][c.action[b][cls]] != c.action[c.mult[a][b]][cls])
          throw IdentityError("center action is not compatible with the product");
  }
  return c;
}

Report conjecture_algint(const ClassPartition& p, const ModularData& m) {
  Report rep;
  bool all_ok = true;
  for (int cls = 0; cls < p.num_classes(); ++cls) {
    Cyclotomic ratio = p.extents[p.trivial_class] / p.extents[cls];
    if (!ratio.is_algebraic_integer()) {
      all_ok = false;
      rep.check("lagrange_ratio", false)
          .set("class", cls)
          .set("value", ratio.str());
    }
    for (size_t i = 0; i < p.members.size(); ++i) {
      Cyclotomic w = central_character(p, cls, (int)i, m);
      if (!w.is_algebraic_integer()) {
        all_ok = false;
        rep.check("algint", false)
            .set("class", cls)
            .set("alpha", m.base.labels[p.members[i]])
            .set("value", w.str());
      }
    }
  }
  if (all_ok) rep.check("algint", true).set("classes", p.num_classes());
  return rep;
}

std::vector<Subgroup> subgroups_of(const Center& c) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  std::vector<int> triv = {c.identity_pos};
  seen.insert(triv);
  frontier.push_back(triv);
  while (!frontier.empty()) {
    std::vector<int> s = frontier.back();
    frontier.pop_back();
    for (int e = 0; e < c.order(); ++e) {
      if (std::binary_search(s.begin(), s.end(), e)) continue;
      std::set<int> close(s.begin(), s.end());
      close.insert(e);
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<int> cur(close.begin(), close.end());
        for (int a : cur)
          for (int b : cur)
            if (close.insert(c.mult[a][b]).second) grew = true;
      }
      std::vector<int> next(close.begin(), close.end());
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  std::vector<Subgroup> out;
  for (const auto& s : seen) out.push_back({s});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.pos.size() != b.pos.size() ? a.pos.size() < b.pos.size() : a.pos < b.pos;
  });
  return out;
}

bool is_subgroup(const Center& c, const Subgroup& z) {
  if (!std::binary_search(z.pos.begin(), z.pos.end(), c.identity_pos)) return false;
  for (int a : z.pos)
    for (int b : z.pos)
      if (!std::binary_search(z.pos.begin(), z.pos.end(), c.mult[a][b])) return false;
  return true;
}

FCSet central_quotient(const FCSet& g, const Center& c, const Subgroup& z,
                       const ModularData& m) {
  if (!is_subgroup(c, z)) throw PreconditionError("central_quotient: not a subgroup");
  const ClassPartition& p = c.parent;
  FCSet quot(m.rank());
  for (size_t i = 0; i < p.members.size(); ++i) {
    bool fixed = true;
    for (int pos : z.pos)
      if (p.charvals[c.central[pos]][i] != m.qdims[p.members[i]]) {
        fixed = false;
        break;
      }
    if (fixed) quot.set(p.members[i]);
  }
  if (!is_fc(quot, m)) throw IdentityError("central quotient is not fusion closed");
  // dual(g/Z) must be the union of the classes in Z.
  FCSet expected_dual(m.rank());
  for (int pos : z.pos)
    for (int p2 : p.classes[c.central[pos]]) expected_dual.set(p2);
  if (dual_set(quot, m) != expected_dual)
    throw IdentityError("central quotient dual mismatch");
  return quot;
}

QuotientStructure quotient_structure(const FCSet& g, const Center& c, const Subgroup& z,
                                     const ModularData& m) {
  const ClassPartition& p = c.parent;
  QuotientStructure qs;
  qs.g = g;
  qs.z = z;
  qs.quotient = central_quotient(g, c, z, m);
  size_t ng = p.members.size();
  long zorder = z.order();

  // Group the elements of g by their character vector over Z.
  std::map<std::vector<Cyclotomic>, FCSet> by_xi;
  for (size_t i = 0; i < ng; ++i) {
    std::vector<Cyclotomic> key;
    key.reserve(z.pos.size());
    for (int pos : z.pos) key.push_back(c.char_table[pos][i]);
    auto it = by_xi.try_emplace(key, FCSet(m.rank())).first;
    it->second.set(p.members[i]);
  }
  std::vector<Cyclotomic> principal(z.pos.size(), Cyclotomic(1));
  qs.checks.check("xi_count", (long)by_xi.size() == zorder).set("found", (long)by_xi.size());
  auto main_it = by_xi.find(principal);
  qs.checks.check("principal_block_is_quotient",
                  main_it != by_xi.end() && main_it->second == qs.quotient);
  qs.xi.push_back(principal);
  qs.g_xi.push_back(qs.quotient);
  for (auto& [key, setv] : by_xi) {
    if (key == principal) continue;
    qs.xi.push_back(key);
    qs.g_xi.push_back(setv);
  }

  // Each g_xi is a block of g/Z, and is central in the dual of the quotient.
  ClassPartition qblocks = classes_of(dual_set(qs.quotient, m), m);
  Center qcenter = center_of(qblocks, m);
  std::vector<int> gxi_block(qs.g_xi.size(), -1);
  bool blocks_ok = true, central_ok = true;
  for (size_t k = 0; k < qs.g_xi.size(); ++k) {
    auto mem = qs.g_xi[k].members();
    int cls = qblocks.class_of[mem.front()];
    if (qblocks.classes[cls] != mem) blocks_ok = false;
    gxi_block[k] = cls;
    if (qcenter.pos_of_class(cls) < 0) central_ok = false;
  }
  qs.checks.check("gxi_are_blocks", blocks_ok);
  qs.checks.check("gxi_are_central", central_ok);

  // Fixed-point counting: |Z| |g_xi| = sum_z conj(xi(z)) |Fix(z)|.
  bool fix_ok = true;
  for (size_t k = 0; k < qs.g_xi.size(); ++k) {
    Cyclotomic acc(0);
    for (size_t zi = 0; zi < z.pos.size(); ++zi) {
      long fix = 0;
      for (int cls = 0; cls < p.num_classes(); ++cls)
        if (c.action[z.pos[zi]][cls] == cls) ++fix;
      acc += qs.xi[k][zi].conj() * Cyclotomic(Rat(fix));
    }
    if (acc != Cyclotomic(Rat(zorder * qs.g_xi[k].count()))) fix_ok = false;
  }
  qs.checks.check("fixed_point_cardinality", fix_ok);

  // [[g_xi]] = |Z| [[g]].
  bool ext_ok = true;
  Cyclotomic ext_g = extent_of_subset(g, m);
  for (const auto& setv : qs.g_xi)
    if (extent_of_subset(setv, m) != Cyclotomic(Rat(zorder)) * ext_g) ext_ok = false;
  qs.checks.check("gxi_extent", ext_ok);

  // g_xi g_eta = g_{xi eta} under the block product.
  bool prod_ok = true;
  for (size_t a = 0; a < qs.g_xi.size() && prod_ok; ++a)
    for (size_t b = a; b < qs.g_xi.size() && prod_ok; ++b) {
      std::vector<Cyclotomic> xy(z.pos.size());
      for (size_t zi = 0; zi < z.pos.size(); ++zi) xy[zi] = qs.xi[a][zi] * qs.xi[b][zi];
      auto it = std::find(qs.xi.begin(), qs.xi.end(), xy);
      if (it == qs.xi.end()) {
        prod_ok = false;
        break;
      }
      size_t target = (size_t)(it - qs.xi.begin());
      int pa = qcenter.pos_of_class(gxi_block[a]);
      int pb = qcenter.pos_of_class(gxi_block[b]);
      if (pa < 0 || pb < 0 ||
          qcenter.central[qcenter.mult[pa][pb]] != gxi_block[target])
        prod_ok = false;
    }
  qs.checks.check("gxi_product", prod_ok);

  // Every (g/Z)-class is a Z-orbit union ZC with [[C]] = [Z : Z_C] [[ZC]],
  // and the overlaps follow the stabilizer pattern.
  ClassPartition qclasses = classes_of(qs.quotient, m);
  OverlapTable qov = overlaps(qs.quotient, m);
  bool orbit_ok = true, stab_ext_ok = true, ovgxi_ok = true;
  for (int k = 0; k < qclasses.num_classes(); ++k) {
    int c0 = p.class_of[qclasses.classes[k].front()];
    std::set<int> orbit;
    std::vector<int> stab;
    for (int pos : z.pos) {
      int img = c.action[pos][c0];
      orbit.insert(img);
      if (img == c0) stab.push_back(pos);
    }
    std::vector<int> joined;
    for (int cls : orbit)
      joined.insert(joined.end(), p.classes[cls].begin(), p.classes[cls].end());
    std::sort(joined.begin(), joined.end());
    if (joined != qclasses.classes[k]) orbit_ok = false;
    long index = zorder / (long)stab.size();
    if (p.extents[c0] != Cyclotomic(Rat(index)) * qclasses.extents[k]) stab_ext_ok = false;
    // <g_xi, ZC> = 1 iff xi is trivial on the stabilizer of C.
    for (size_t kxi = 0; kxi < qs.g_xi.size(); ++kxi) {
      int b = qov.blocks.class_of[qs.g_xi[kxi].members().front()];
      bool trivial_on_stab = true;
      for (int pos : stab) {
        size_t zi = std::find(z.pos.begin(), z.pos.end(), pos) - z.pos.begin();
        if (qs.xi[kxi][zi] != Cyclotomic(1)) trivial_on_stab = false;
      }
      if (qov.ov[b][k] != (trivial_on_stab ? 1 : 0)) ovgxi_ok = false;
    }
  }
  qs.checks.check("class_orbits", orbit_ok);
  qs.checks.check("stabilizer_extent", stab_ext_ok);
  qs.checks.check("ovgxi", ovgxi_ok);
  return qs;
}

std::vector<FCSet> central_extensions(const FCSet& g, const ModularData& m,
                                      const std::vector<int>& invariant_factors) {
  // Element-order multiset of A (determines the abelian isomorphism type).
  std::vector<long> a_orders;
  {
    std::vector<int> idx(invariant_factors.size(), 0);
    for (;;) {
      long ord = 1;
      for (size_t i = 0; i < invariant_factors.size(); ++i) {
        long f = invariant_factors[i];
        long v = idx[i];
        ord = std::lcm(ord, f / std::gcd((long)v, f));
      }
      a_orders.push_back(ord);
      size_t i = 0;
      while (i < idx.size() && ++idx[i] >= invariant_factors[i]) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  std::sort(a_orders.begin(), a_orders.end());

  ClassPartition pd = classes_of(dual_set(g, m), m);
  Center cd = center_of(pd, m);
  std::vector<FCSet> out;
  for (const Subgroup& z : subgroups_of(cd)) {
    std::vector<long> orders;
    for (int pos : z.pos) orders.push_back(cd.element_order(pos));
    std::sort(orders.begin(), orders.end());
    if (orders != a_orders) continue;
    FCSet ext = dual_set(central_quotient(dual_set(g, m), cd, z, m), m);
    if (std::find(out.begin(), out.end(), ext) == out.end()) out.push_back(ext);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FCSet maximal_central_extension(const FCSet& g, const ModularData& m) {
  ClassPartition pd = classes_of(dual_set(g, m), m);
  Center cd = center_of(pd, m);
  Subgroup full;
  for (int pos = 0; pos < cd.order(); ++pos) full.pos.push_back(pos);
  return dual_set(central_quotient(dual_set(g, m), cd, full, m), m);
}

bool is_abelian(const FCSet& g, const ModularData& m) {
  ClassPartition p = classes_of(g, m);
  Center c = center_of(p, m);
  bool all_central = c.order() == p.num_classes();
  bool all_dim_one = true;
  for (int a : g.members())
    if (m.qdims[a] != Cyclotomic(1)) all_dim_one = false;
  if (all_central != all_dim_one)
    throw IdentityError("abelian characterizations disagree (corrupt data)");
  return all_central;
}

namespace {

bool nilpotent_search(const FCSet& g, const ModularData& m,
                      std::map<FCSet, std::optional<std::vector<FCSet>>>& memo,
                      std::vector<FCSet>& chain) {
  auto it = memo.find(g);
  if (it != memo.end()) {
    if (!it->second) return false;
    chain = *it->second;
    return true;
  }
  if (g.count() == 1) {
    chain = {g};
    memo[g] = chain;
    return true;
  }
  ClassPartition p = classes_of(g, m);
  Center c = center_of(p, m);
  for (const Subgroup& z : subgroups_of(c)) {
    if (z.order() == 1) continue;
    FCSet quot = central_quotient(g, c, z, m);
    if (quot == g) continue;
    std::vector<FCSet> sub;
    if (nilpotent_search(quot, m, memo, sub)) {
      sub.push_back(g);
      memo[g] = sub;
      chain = std::move(sub);
      return true;
    }
  }
  memo[g] = std::nullopt;
  return false;
}

}  // namespace

ChainResult is_nilpotent(const FCSet& g, const ModularData& m) {
  std::map<FCSet, std::optional<std::vector<FCSet>>> memo;
  ChainResult res;
  res.value = nilpotent_search(g, m, memo, res.chain);
  if (res.value) {
    // Lemma sanity: a nilpotent set has rational integer [[g-perp]].
    ClassPartition p = classes_of(g, m);
    to_long(p.extents[p.trivial_class], "nilpotent dual extent");
  }
  if (!res.value) res.chain.clear();
  return res;
}

SolvabilityResult is_solvable(const FCSet& g, const FCLattice& lat, const ModularData& m) {
  SolvabilityResult out;
  std::vector<Cyclotomic> ext(lat.sets.size());
  for (size_t i = 0; i < lat.sets.size(); ++i) ext[i] = extent_of_subset(lat.sets[i], m);
  int target = lat.index_of(g);
  if (target < 0) throw PreconditionError("is_solvable: set not in the lattice");

  {
    Cyclotomic e = extent_of_subset(g, m);
    if (e.is_rational_integer()) out.extent_g_odd = (e.rational().get_num() % 2) != 0;
    ClassPartition p = classes_of(g, m);
    const Cyclotomic& ep = p.extents[p.trivial_class];
    if (ep.is_rational_integer()) out.extent_gperp_odd = (ep.rational().get_num() % 2) != 0;
  }

  for (bool prime_only : {false, true}) {
    std::map<int, std::optional<std::vector<int>>> memo;
    std::function<bool(int, std::vector<int>&)> search = [&](int gi,
                                                             std::vector<int>& chain) {
      auto it = memo.find(gi);
      if (it != memo.end()) {
        if (!it->second) return false;
        chain = *it->second;
        return true;
      }
      if (lat.sets[gi].count() == 1) {
        chain = {gi};
        memo[gi] = chain;
        return true;
      }
      for (size_t hi = 0; hi < lat.sets.size(); ++hi) {
        if ((int)hi == gi || !lat.sets[gi].contains(lat.sets[hi])) continue;
        Cyclotomic ratio = ext[hi] / ext[gi];
        if (!ratio.is_rational_integer()) continue;
        long rv = (long)ratio.rational().get_num().get_si();
        bool step_ok = prime_only ? is_prime(rv) : is_prime_power(rv);
        if (!step_ok) continue;
        std::vector<int> sub;
        if (search((int)hi, sub)) {
          sub.push_back(gi);
          memo[gi] = sub;
          chain = std::move(sub);
          return true;
        }
      }
      memo[gi] = std::nullopt;
      return false;
    };
    std::vector<int> chain;
    bool ok = search(target, chain);
    ChainResult& slot = prime_only ? out.supersolvable : out.solvable;
    slot.value = ok;
    for (int i : chain) slot.chain.push_back(lat.sets[i]);
  }
  return out;
}

}  // namespace fcs
