#include "fcset/fcsets.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "fcset/errors.hpp"

namespace fcs {

bool is_fc(const Bitset& subset, const ModularData& m) {
  if (!subset.test(0)) throw PreconditionError("is_fc: subset must contain the vacuum");
  auto mem = subset.members();
  for (int a : mem)
    for (int b : mem) {
      if (b < a) continue;
      for (int r = 0; r < m.rank(); ++r)
        if (m.n(a, b, r) > 0 && !subset.test(r)) return false;
    }
  return true;
}

FCSet closure(Bitset subset, const ModularData& m) {
  if (subset.universe() == 0) subset = Bitset(m.rank());
  subset.set(0);
  std::vector<int> have = subset.members();
  std::deque<int> work(have.begin(), have.end());
  while (!work.empty()) {
    int a = work.front();
    work.pop_front();
    for (size_t i = 0; i < have.size(); ++i) {
      int b = have[i];
      for (int r = 0; r < m.rank(); ++r)
        if (m.n(a, b, r) > 0 && !subset.test(r)) {
          subset.set(r);
          have.push_back(r);
          work.push_back(r);
        }
    }
  }
  return subset;
}

FCSet dual_set(const FCSet& g, const ModularData& m) {
  FCSet d(m.rank());
  auto mem = g.members();
  for (int p = 0; p < m.rank(); ++p) {
    bool in = true;
    for (int a : mem)
      if (m.rho[p][a] != m.qdims[a]) {
        in = false;
        break;
      }
    if (in) d.set(p);
  }
  if (!is_fc(d, m)) throw IdentityError("dual of an FC set failed the closure check");
  // Double dual must restore g; anything else indicates corrupt modular data.
  auto dmem = d.members();
  FCSet dd(m.rank());
  for (int p = 0; p < m.rank(); ++p) {
    bool in = true;
    for (int a : dmem)
      if (m.rho[p][a] != m.qdims[a]) {
        in = false;
        break;
      }
    if (in) dd.set(p);
  }
  if (dd != g) throw IdentityError("dual involution failed: dual(dual(g)) != g");
  return d;
}

FCLattice enumerate_fcsets(const ModularData& m, const RunConfig& cfg) {
  cfg.check();
  std::set<FCSet> seen;
  std::deque<FCSet> frontier;
  FCSet bottom = closure(Bitset(m.rank()), m);
  seen.insert(bottom);
  frontier.push_back(bottom);
  while (!frontier.empty()) {
    FCSet g = frontier.front();
    frontier.pop_front();
    for (int p = 0; p < m.rank(); ++p) {
      if (g.test(p)) continue;
      Bitset ext = g;
      ext.set(p);
      FCSet c = closure(ext, m);
      if (seen.insert(c).second) {
        if ((long)seen.size() > cfg.enumeration_budget)
          throw PreconditionError("enumerate_fcsets: enumeration budget exceeded");
        frontier.push_back(c);
      }
    }
  }
  FCLattice lat;
  lat.sets.assign(seen.begin(), seen.end());
  std::sort(lat.sets.begin(), lat.sets.end(), [](const FCSet& a, const FCSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  // Hasse covers: g < h with nothing strictly between.
  int n = (int)lat.sets.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const FCSet &g = lat.sets[i], &h = lat.sets[j];
      if (g.count() >= h.count() || !h.contains(g)) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k) {
        if (k == i || k == j) continue;
        const FCSet& x = lat.sets[k];
        if (x.contains(g) && h.contains(x) && x != g && x != h &&
            x.count() > g.count() && x.count() < h.count())
          cover = false;
      }
      if (cover) lat.hasse.push_back({i, j});
    }
  return lat;
}

int FCLattice::index_of(const FCSet& g) const {
  for (int i = 0; i < (int)sets.size(); ++i)
    if (sets[i] == g) return i;
  return -1;
}

int FCLattice::bottom() const { return 0; }
int FCLattice::top() const { return (int)sets.size() - 1; }

FCSet join(const FCSet& g, const FCSet& h, const ModularData& m) {
  return dual_set(dual_set(g, m) & dual_set(h, m), m);
}

LatticeProps lattice_props(const FCLattice& lat, const ModularData& m) {
  int n = (int)lat.sets.size();
  // Precompute meet/join index tables.
  std::vector<std::vector<int>> mt(n, std::vector<int>(n)), jt(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int mi = lat.index_of(lat.sets[i] & lat.sets[j]);
      int ji = lat.index_of(join(lat.sets[i], lat.sets[j], m));
      if (mi < 0 || ji < 0) throw IdentityError("lattice not closed under meet/join");
      mt[i][j] = mt[j][i] = mi;
      jt[i][j] = jt[j][i] = ji;
    }
  LatticeProps props;
  for (int x = 0; x < n && props.is_modular; ++x)
    for (int a = 0; a < n && props.is_modular; ++a)
      for (int b = 0; b < n; ++b) {
        if (!lat.sets[b].contains(lat.sets[x])) continue;  // requires x <= b
        if (jt[x][mt[a][b]] != mt[jt[x][a]][b]) {
          props.is_modular = false;
          props.modular_witness = {x, a, b};
          break;
        }
      }
  for (int x = 0; x < n && props.is_distributive; ++x)
    for (int y = 0; y < n && props.is_distributive; ++y)
      for (int z = 0; z < n; ++z) {
        if (mt[x][jt[y][z]] != jt[mt[x][y]][mt[x][z]]) {
          props.is_distributive = false;
          props.distributive_witness = {x, y, z};
          break;
        }
      }
  return props;
}

bool arguesian_check(const FCLattice& lat, const ModularData& m,
                     std::optional<std::array<int, 6>>* witness) {
  int n = (int)lat.sets.size();
  std::vector<std::vector<int>> mt(n, std::vector<int>(n)), jt(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      mt[i][j] = mt[j][i] = lat.index_of(lat.sets[i] & lat.sets[j]);
      jt[i][j] = jt[j][i] = lat.index_of(join(lat.sets[i], lat.sets[j], m));
    }
  auto leq = [&](int a, int b) { return lat.sets[b].contains(lat.sets[a]); };
  // (a0 v b0) ^ (a1 v b1) ^ (a2 v b2) <= ((c v a1) ^ a0) v ((c v b1) ^ b0)
  // with c = c01 ^ (c02 v c12), c_ij = (a_i v a_j) ^ (b_i v b_j).
  for (int a0 = 0; a0 < n; ++a0)
    for (int a1 = 0; a1 < n; ++a1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b0 = 0; b0 < n; ++b0)
          for (int b1 = 0; b1 < n; ++b1)
            for (int b2 = 0; b2 < n; ++b2) {
              int lhs = mt[jt[a0][b0]][mt[jt[a1][b1]][jt[a2][b2]]];
              int c01 = mt[jt[a0][a1]][jt[b0][b1]];
              int c02 = mt[jt[a0][a2]][jt[b0][b2]];
              int c12 = mt[jt[a1][a2]][jt[b1][b2]];
              int c = mt[c01][jt[c02][c12]];
              int rhs = jt[mt[jt[c][a1]][a0]][mt[jt[c][b1]][b0]];
              if (!leq(lhs, rhs)) {
                if (witness) *witness = {a0, a1, a2, b0, b1, b2};
                return false;
              }
            }
  return true;
}

std::string set_label(const FCSet& g, const ModularData& m) {
  std::string out = "{";
  bool first = true;
  for (int p : g.members()) {
    if (!first) out += ",";
    first = false;
    out += m.base.labels[p];
  }
  return out + "}";
}

}  // namespace fcs
