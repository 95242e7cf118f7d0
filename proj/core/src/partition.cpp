#include "fcset/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fcset/errors.hpp"

namespace fcs {

namespace {

// Union-find for the fusion characterization of blocks.
struct DSU {
  std::vector<int> up;
  explicit DSU(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace

Cyclotomic extent_of_subset(const std::vector<int>& members, const ModularData& m) {
  Cyclotomic acc(0);
  for (int p : members) acc += m.s2[p];
  return Cyclotomic(1) / acc;
}

Cyclotomic extent_of_subset(const FCSet& set, const ModularData& m) {
  return extent_of_subset(set.members(), m);
}

ClassPartition classes_of(const FCSet& g, const ModularData& m) {
  ClassPartition part;
  part.fcset = g;
  part.members = g.members();
  int rank = m.rank();

  std::map<std::vector<Cyclotomic>, std::vector<int>> groups;
  for (int p = 0; p < rank; ++p) {
    std::vector<Cyclotomic> key;
    key.reserve(part.members.size());
    for (int a : part.members) key.push_back(m.rho[p][a]);
    groups[std::move(key)].push_back(p);
  }
  std::vector<std::pair<int, std::vector<int>>> ordered;
  for (auto& [key, ps] : groups) ordered.emplace_back(ps.front(), ps);
  std::sort(ordered.begin(), ordered.end());

  part.class_of.assign(rank, -1);
  for (auto& [rep, ps] : ordered) {
    int idx = (int)part.classes.size();
    for (int p : ps) part.class_of[p] = idx;
    std::vector<Cyclotomic> vals;
    vals.reserve(part.members.size());
    for (int a : part.members) vals.push_back(m.rho[rep][a]);
    part.charvals.push_back(std::move(vals));
    part.extents.push_back(extent_of_subset(ps, m));
    part.classes.push_back(std::move(ps));
  }
  part.trivial_class = part.class_of[0];

  if (part.num_classes() != (int)part.members.size())
    throw IdentityError("class count differs from |g| (corrupt modular data)");
  Cyclotomic inv_sum(0);
  for (const auto& e : part.extents) inv_sum += Cyclotomic(1) / e;
  if (inv_sum != Cyclotomic(1)) throw IdentityError("extent sum rule failed");
  // Orthogonality of rows and columns.
  size_t ng = part.members.size();
  for (size_t i = 0; i < ng; ++i)
    for (size_t j = i; j < ng; ++j) {
      Cyclotomic acc(0);
      for (int c = 0; c < part.num_classes(); ++c)
        acc += part.charvals[c][i] * part.charvals[c][j].conj() / part.extents[c];
      if (acc != Cyclotomic(i == j ? 1 : 0))
        throw IdentityError("first orthogonality relation failed");
    }
  for (int c1 = 0; c1 < part.num_classes(); ++c1)
    for (int c2 = c1; c2 < part.num_classes(); ++c2) {
      Cyclotomic acc(0);
      for (size_t i = 0; i < ng; ++i)
        acc += part.charvals[c1][i] * part.charvals[c2][i].conj();
      if (acc != (c1 == c2 ? part.extents[c1] : Cyclotomic(0)))
        throw IdentityError("second orthogonality relation failed");
    }
  for (size_t i = 0; i < ng; ++i)
    if (part.charvals[part.trivial_class][i] != m.qdims[part.members[i]])
      throw IdentityError("trivial class character is not the dimension vector");
  return part;
}

ClassPartition blocks_of(const FCSet& g, const ModularData& m) {
  ClassPartition blocks = classes_of(dual_set(g, m), m);
  // Independent characterization: p ~ q iff N_{alpha p}^q > 0 for some alpha in g.
  int rank = m.rank();
  DSU dsu(rank);
  for (int a : g.members())
    for (int p = 0; p < rank; ++p)
      for (int q = 0; q < rank; ++q)
        if (m.n(a, p, q) > 0) dsu.unite(p, q);
  for (int p = 0; p < rank; ++p)
    for (int q = p + 1; q < rank; ++q) {
      bool same_fusion = dsu.find(p) == dsu.find(q);
      bool same_block = blocks.class_of[p] == blocks.class_of[q];
      if (same_fusion != same_block)
        throw IdentityError("block characterizations disagree (corrupt data)");
    }
  return blocks;
}

int rho_minor_rank(const std::vector<int>& rows, const std::vector<int>& cols,
                   const ModularData& m) {
  std::vector<std::vector<Cyclotomic>> a;
  a.reserve(rows.size());
  for (int p : rows) {
    std::vector<Cyclotomic> row;
    row.reserve(cols.size());
    for (int q : cols) row.push_back(m.rho[q][p]);
    a.push_back(std::move(row));
  }
  int rank = 0;
  size_t nr = a.size(), nc = cols.size();
  for (size_t col = 0, row = 0; col < nc && row < nr; ++col) {
    size_t pivot = row;
    while (pivot < nr && a[pivot][col].is_zero()) ++pivot;
    if (pivot == nr) continue;
    std::swap(a[pivot], a[row]);
    for (size_t i = row + 1; i < nr; ++i) {
      if (a[i][col].is_zero()) continue;
      Cyclotomic f = a[i][col] / a[row][col];
      for (size_t k = col; k < nc; ++k) a[i][k] -= f * a[row][k];
    }
    ++row;
    ++rank;
  }
  return rank;
}

OverlapTable overlaps(const FCSet& g, const ModularData& m) {
  OverlapTable t{classes_of(g, m), blocks_of(g, m), {}};
  int nb = t.blocks.num_classes(), nc = t.classes.num_classes();
  t.ov.assign(nb, std::vector<long>(nc, 0));
  for (int b = 0; b < nb; ++b)
    for (int c = 0; c < nc; ++c) {
      // (i) exact sum of |S_pq|^2 over the block x class rectangle
      Cyclotomic sum(0);
      for (int p : t.blocks.classes[b])
        for (int q : t.classes.classes[c]) sum += m.s_abs2(p, q);
      if (!sum.is_rational_integer())
        throw IdentityError("overlap sum is not a rational integer");
      long ov1 = (long)sum.rational().get_num().get_si();

      // (ii) multiplicity from restricted traces: (1/[C]) sum_a conj(a(C)) Tr N_b(a)
      Cyclotomic tr_sum(0);
      for (size_t i = 0; i < t.classes.members.size(); ++i) {
        int alpha = t.classes.members[i];
        long trace = 0;
        for (int p : t.blocks.classes[b]) trace += m.n(alpha, p, p);
        if (trace != 0)
          tr_sum += t.classes.charvals[c][i].conj() * Cyclotomic(Rat(trace));
      }
      Cyclotomic ov2 = tr_sum / t.classes.extents[c];
      if (ov2 != Cyclotomic(Rat(ov1)))
        throw IdentityError("overlap cross-check failed: trace route disagrees");

      // (iii) rank of the S-minor
      int ov3 = rho_minor_rank(t.blocks.classes[b], t.classes.classes[c], m);
      if ((long)ov3 != ov1)
        throw IdentityError("overlap cross-check failed: rank route disagrees");
      t.ov[b][c] = ov1;
    }
  return t;
}

Report verify_partition_identities(const FCSet& g, const ModularData& m,
                                   const RunConfig& cfg) {
  Report rep;
  ClassPartition cl = classes_of(g, m);
  OverlapTable ot = overlaps(g, m);
  const ClassPartition& bl = ot.blocks;
  size_t ng = cl.members.size();
  int rank = m.rank();

  rep.check("classno", cl.num_classes() == (int)ng);

  Cyclotomic inv_sum(0);
  for (const auto& e : cl.extents) inv_sum += Cyclotomic(1) / e;
  rep.check("extsumrule", inv_sum == Cyclotomic(1));

  bool ortho1 = true, ortho2 = true;
  for (size_t i = 0; i < ng && ortho1; ++i)
    for (size_t j = i; j < ng && ortho1; ++j) {
      Cyclotomic acc(0);
      for (int c = 0; c < cl.num_classes(); ++c)
        acc += cl.charvals[c][i] * cl.charvals[c][j].conj() / cl.extents[c];
      ortho1 = acc == Cyclotomic(i == j ? 1 : 0);
    }
  rep.check("ortho1", ortho1);
  for (int c1 = 0; c1 < cl.num_classes() && ortho2; ++c1)
    for (int c2 = c1; c2 < cl.num_classes() && ortho2; ++c2) {
      Cyclotomic acc(0);
      for (size_t i = 0; i < ng; ++i) acc += cl.charvals[c1][i] * cl.charvals[c2][i].conj();
      ortho2 = acc == (c1 == c2 ? cl.extents[c1] : Cyclotomic(0));
    }
  rep.check("ortho2", ortho2);

  // |C| = (1/[C]) sum_alpha conj(alpha(C)) Tr N(alpha)
  bool classsize = true;
  for (int c = 0; c < cl.num_classes() && classsize; ++c) {
    Cyclotomic acc(0);
    for (size_t i = 0; i < ng; ++i) {
      long trace = 0;
      for (int p = 0; p < rank; ++p) trace += m.n(cl.members[i], p, p);
      if (trace != 0) acc += cl.charvals[c][i].conj() * Cyclotomic(Rat(trace));
    }
    classsize = acc / cl.extents[c] == Cyclotomic(Rat((long)cl.classes[c].size()));
  }
  rep.check("classsize", classsize);

  // Characteristic function of each class evaluates to the indicator.
  bool charfun = true;
  for (int c = 0; c < cl.num_classes() && charfun; ++c)
    for (int p = 0; p < rank && charfun; ++p) {
      Cyclotomic acc(0);
      for (size_t i = 0; i < ng; ++i)
        acc += cl.charvals[c][i].conj() * m.rho[p][cl.members[i]];
      charfun = acc / cl.extents[c] == Cyclotomic(cl.class_of[p] == c ? 1 : 0);
    }
  rep.check("classcharfun", charfun);

  // sum_{w in C} S_pw conj(S_wq) = (1/[C]) sum_alpha conj(alpha(C)) N_{alpha p}^q
  bool wmat = true;
  for (int c = 0; c < cl.num_classes() && wmat; ++c)
    for (int p = 0; p < rank && wmat; ++p)
      for (int q = 0; q < rank && wmat; ++q) {
        Cyclotomic lhs(0);
        for (int w : cl.classes[c])
          lhs += m.rho[w][p] * m.rho[w][q].conj() * m.s2[w];
        Cyclotomic rhs(0);
        for (size_t i = 0; i < ng; ++i) {
          int mult = m.n(cl.members[i], p, q);
          if (mult != 0) rhs += cl.charvals[c][i].conj() * Cyclotomic(Rat(mult));
        }
        wmat = lhs == rhs / cl.extents[c];
      }
  rep.check("wmatelms", wmat);

  // Product rule: p in the trivial class, N_pq^r > 0 => q, r in the same class.
  bool prod_rule = true;
  for (int p : cl.classes[cl.trivial_class])
    for (int q = 0; q < rank && prod_rule; ++q)
      for (int r = 0; r < rank && prod_rule; ++r)
        if (m.n(p, q, r) > 0) prod_rule = cl.class_of[q] == cl.class_of[r];
  rep.check("product_rule", prod_rule);

  // [[g-perp]] = sum_{alpha in g} d_alpha^2
  Cyclotomic dsum(0);
  for (int a : cl.members) dsum += m.qdims[a] * m.qdims[a];
  rep.check("spread", cl.extents[cl.trivial_class] == dsum);

  // [[g]] [[g-perp]] = global dimension
  Cyclotomic ext_g = extent_of_subset(cl.members, m);
  rep.check("recip", ext_g * cl.extents[cl.trivial_class] == m.global_dim);

  // Bounds (real comparisons with exact fallback at equality).
  bool extbound = true, sizebound1 = true, sizebound2 = true;
  Cyclotomic triv_prod =
      Cyclotomic(Rat((long)cl.classes[cl.trivial_class].size())) * cl.extents[cl.trivial_class];
  for (int c = 0; c < cl.num_classes(); ++c) {
    if (compare_real(cl.extents[c], cl.extents[cl.trivial_class], cfg) > 0) extbound = false;
    if (compare_real(Cyclotomic(Rat((long)cl.classes[c].size())), ext_g, cfg) > 0)
      sizebound1 = false;
    Cyclotomic prod = Cyclotomic(Rat((long)cl.classes[c].size())) * cl.extents[c];
    if (compare_real(prod, triv_prod, cfg) > 0) sizebound2 = false;
  }
  for (int b = 0; b < bl.num_classes(); ++b) {
    if (compare_real(bl.extents[b], ext_g, cfg) > 0) extbound = false;
    if (compare_real(Cyclotomic(Rat((long)bl.classes[b].size())),
                     cl.extents[cl.trivial_class], cfg) > 0)
      sizebound1 = false;
  }
  rep.check("extbound", extbound);
  rep.check("sizebound1", sizebound1);
  rep.check("sizebound2", sizebound2);

  // Overlap row/column sums and the trivial overlaps.
  bool blocksize = true, clsize = true, trivial_ov = true, ovbound = true;
  int g_as_block = bl.class_of[0];
  for (int b = 0; b < bl.num_classes(); ++b) {
    long sum = 0;
    for (int c = 0; c < cl.num_classes(); ++c) sum += ot.ov[b][c];
    if (sum != (long)bl.classes[b].size()) blocksize = false;
    if (ot.ov[b][cl.trivial_class] != 1) trivial_ov = false;
  }
  for (int c = 0; c < cl.num_classes(); ++c) {
    long sum = 0;
    for (int b = 0; b < bl.num_classes(); ++b) sum += ot.ov[b][c];
    if (sum != (long)cl.classes[c].size()) clsize = false;
    if (ot.ov[g_as_block][c] != 1) trivial_ov = false;
  }
  for (int b = 0; b < bl.num_classes() && ovbound; ++b)
    for (int c = 0; c < cl.num_classes() && ovbound; ++c) {
      Cyclotomic bound1 = cl.extents[cl.trivial_class] / cl.extents[c];
      Cyclotomic bound2 = ext_g / bl.extents[b];
      Cyclotomic v(Rat(ot.ov[b][c]));
      ovbound = compare_real(v, bound1, cfg) <= 0 && compare_real(v, bound2, cfg) <= 0;
    }
  rep.check("blocksize", blocksize);
  rep.check("clsize", clsize);
  rep.check("trivoverlap", trivial_ov);
  rep.check("ovbound", ovbound);
  rep.check("overlap_crosscheck", true);  // overlaps() throws when routes disagree

  // The multiset of extents is stable under every Galois automorphism.
  bool galois_stable = true;
  std::vector<Cyclotomic> sorted_ext = cl.extents;
  std::sort(sorted_ext.begin(), sorted_ext.end());
  for (long ell = 2; ell < m.conductor && galois_stable; ++ell) {
    if (std::gcd(ell, m.conductor) != 1) continue;
    std::vector<Cyclotomic> mapped;
    mapped.reserve(sorted_ext.size());
    for (const auto& e : sorted_ext) mapped.push_back(e.galois(ell));
    std::sort(mapped.begin(), mapped.end());
    galois_stable = mapped == sorted_ext;
  }
  rep.check("extent_multiset_galois_stable", galois_stable);
  return rep;
}

Report verify_reciprocity(const FCLattice& lat, const ModularData& m) {
  Report rep;
  std::vector<OverlapTable> tables;
  tables.reserve(lat.sets.size());
  for (const auto& s : lat.sets) tables.push_back(overlaps(s, m));
  for (size_t gi = 0; gi < lat.sets.size(); ++gi)
    for (size_t hi = 0; hi < lat.sets.size(); ++hi) {
      if (gi == hi || !lat.sets[hi].contains(lat.sets[gi])) continue;
      const OverlapTable &tg = tables[gi], &th = tables[hi];
      bool ok = true;
      for (int b = 0; b < th.blocks.num_classes() && ok; ++b)
        for (int c = 0; c < tg.classes.num_classes() && ok; ++c) {
          long lhs = 0;  // g-blocks inside the h-block b
          for (int b2 = 0; b2 < tg.blocks.num_classes(); ++b2) {
            int rep_p = tg.blocks.classes[b2].front();
            if (th.blocks.class_of[rep_p] == b) lhs += tg.ov[b2][c];
          }
          long rhs = 0;  // h-classes inside the g-class c
          for (int c2 = 0; c2 < th.classes.num_classes(); ++c2) {
            int rep_q = th.classes.classes[c2].front();
            if (tg.classes.class_of[rep_q] == c) rhs += th.ov[b][c2];
          }
          ok = lhs == rhs;
        }
      rep.check("reciprocity", ok)
          .set("g", set_label(lat.sets[gi], m))
          .set("h", set_label(lat.sets[hi], m));
    }
  return rep;
}

}  // namespace fcs
