#include "fcset/drinfeld.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <random>

#include "fcset/errors.hpp"

namespace fcs {

namespace {

void check_group(const GroupTable& g) {
  int n = (int)g.size();
  if (n < 1) throw PreconditionError("group table is empty");
  for (const auto& row : g) {
    if ((int)row.size() != n) throw PreconditionError("group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw PreconditionError("group table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (g[a][0] != a || g[0][a] != a)
      throw PreconditionError("group identity must be element 0");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g[g[a][b]][c] != g[a][g[b][c]])
          throw PreconditionError("group table is not associative");
  for (int a = 0; a < n; ++a) {
    bool inv = false;
    for (int b = 0; b < n; ++b)
      if (g[a][b] == 0) inv = true;
    if (!inv) throw PreconditionError("group element without inverse");
  }
}

int inverse_of(const GroupTable& g, int a) {
  for (int b = 0; b < (int)g.size(); ++b)
    if (g[a][b] == 0) return b;
  throw PreconditionError("group element without inverse");
}

long element_order(const GroupTable& g, int a) {
  long n = 1;
  int acc = a;
  while (acc != 0) {
    acc = g[acc][a];
    ++n;
  }
  return n;
}

}  // namespace

GroupTable cyclic_group_table(int n) {
  GroupTable t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

GroupTable symmetric_group_table(int n) {
  if (n < 1 || n > 5) throw PreconditionError("symmetric_group_table: n out of range");
  std::vector<std::vector<int>> perms;
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<int> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // identity must come first; std::next_permutation starts from sorted = identity
  int m = (int)perms.size();
  GroupTable t(m, std::vector<int>(m));
  auto index_of = [&](const std::vector<int>& q) {
    return (int)(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> comp(n);
      for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
      t[a][b] = index_of(comp);
    }
  return t;
}

long CharacterTable::degree(int irrep) const {
  const Cyclotomic& v = chars[irrep][class_of[0]];
  if (!v.is_rational_integer()) throw IdentityError("character degree is not an integer");
  return (long)v.rational().get_num().get_si();
}

CharacterTable character_table(const GroupTable& g, const RunConfig& cfg) {
  check_group(g);
  int n = (int)g.size();
  CharacterTable ct;
  ct.class_of.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (ct.class_of[a] >= 0) continue;
    std::vector<int> cls;
    for (int x = 0; x < n; ++x) {
      int conj = g[g[x][a]][inverse_of(g, x)];
      if (ct.class_of[conj] < 0) {
        ct.class_of[conj] = (int)ct.classes.size();
        cls.push_back(conj);
      }
    }
    std::sort(cls.begin(), cls.end());
    ct.classes.push_back(cls);
  }
  // re-sort classes by min element (identity class first) and fix class_of
  std::sort(ct.classes.begin(), ct.classes.end());
  for (int c = 0; c < (int)ct.classes.size(); ++c)
    for (int x : ct.classes[c]) ct.class_of[x] = c;
  int k = (int)ct.classes.size();

  ct.exponent = 1;
  for (int a = 0; a < n; ++a) ct.exponent = std::lcm(ct.exponent, element_order(g, a));

  // Class-algebra structure constants: K_i K_j = sum_k c_ijk K_k.
  std::vector<std::vector<std::vector<long>>> c(
      k, std::vector<std::vector<long>>(k, std::vector<long>(k, 0)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int x : ct.classes[i])
        for (int y : ct.classes[j]) {
          int z = g[x][y];
          if (z == ct.classes[ct.class_of[z]].front()) ++c[i][j][ct.class_of[z]];
        }

  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    // Generic integer combination of the class matrices.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    std::uniform_int_distribution<int> dist(1, 23);
    for (int i = 0; i < k; ++i) {
      int t = dist(rng);
      for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) m(l, j) += t * (double)c[i][j][l];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) continue;
    auto evals = solver.eigenvalues();
    bool separated = true;
    for (int a = 0; a < k && separated; ++a)
      for (int b = a + 1; b < k; ++b)
        if (std::abs(evals(a) - evals(b)) < 1e-6) {
          separated = false;
          break;
        }
    if (!separated) continue;

    auto evecs = solver.eigenvectors();
    std::vector<std::vector<Cyclotomic>> rows;
    bool ok = true;
    for (int col = 0; col < k && ok; ++col) {
      Eigen::VectorXcd v = evecs.col(col);
      int best = 0;
      for (int i = 1; i < k; ++i)
        if (std::abs(v(i)) > std::abs(v(best))) best = i;
      // omega_i = eigenvalue of the i-th class matrix on this eigenvector
      // (M_i v)_best / v_best with (M_i)_{l j} = c_{i j l}
      std::vector<std::complex<double>> omega(k);
      for (int i = 0; i < k; ++i) {
        std::complex<double> acc = 0;
        for (int j = 0; j < k; ++j)
          if (c[i][j][best] != 0) acc += (double)c[i][j][best] * v(j);
        omega[i] = acc / v(best);
      }
      double inv_deg_sq = 0;
      for (int i = 0; i < k; ++i)
        inv_deg_sq += std::norm(omega[i]) / (double)ct.classes[i].size();
      double deg_d = std::sqrt((double)n / inv_deg_sq);
      long deg = std::lround(deg_d);
      if (deg < 1 || std::abs(deg_d - (double)deg) > 1e-6) {
        ok = false;
        break;
      }
      std::vector<Cyclotomic> row(k);
      for (int i = 0; i < k && ok; ++i) {
        std::complex<double> val = omega[i] * (double)deg / (double)ct.classes[i].size();
        Complex approx(Real::of(val.real(), 64), Real::of(val.imag(), 64));
        RunConfig local = cfg;
        local.precision_bits = 48;  // candidates at double accuracy, verified exactly below
        auto cand = reconstruct(approx, ct.exponent, Int(1), local);
        if (!cand) {
          ok = false;
          break;
        }
        row[i] = *cand;
      }
      if (ok) rows.push_back(std::move(row));
    }
    if (!ok || (int)rows.size() != k) continue;

    // Deterministic order: trivial character first, then by (degree, values).
    std::vector<Cyclotomic> trivial(k, Cyclotomic(1));
    std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
      if (a == trivial) return b != trivial;
      if (b == trivial) return false;
      if (a[0] != b[0]) return a[0] < b[0];
      return a < b;
    });
    if (rows.front() != trivial) continue;

    // Exact certification: full orthogonality of the candidate table.
    bool certified = true;
    for (int a = 0; a < k && certified; ++a)
      for (int b = a; b < k && certified; ++b) {
        Cyclotomic acc(0);
        for (int i = 0; i < k; ++i)
          acc += Cyclotomic(Rat((long)ct.classes[i].size())) * rows[a][i] *
                 rows[b][i].conj();
        certified = acc == Cyclotomic(a == b ? n : 0);
      }
    for (const auto& row : rows)
      for (const auto& val : row)
        if (!val.is_algebraic_integer()) certified = false;
    if (!certified) continue;

    ct.chars = std::move(rows);
    return ct;
  }
  throw ReconstructionError("character_table: eigensolve failed to certify");
}

ModelFile drinfeld_double_data(const GroupTable& g, const std::string& name,
                               const RunConfig& cfg) {
  check_group(g);
  int n = (int)g.size();
  if (n > 12) throw PreconditionError("drinfeld_double_data: group order above the cap (12)");

  CharacterTable gt = character_table(g, cfg);
  int nclasses = (int)gt.classes.size();

  // Centralizers with their own tables and characters.
  struct Cent {
    std::vector<int> elems;            // as elements of G, sorted
    std::vector<int> index_in;         // G element -> local index (-1 outside)
    CharacterTable chars;
  };
  std::vector<Cent> cents(nclasses);
  for (int ci = 0; ci < nclasses; ++ci) {
    int a = gt.classes[ci].front();
    Cent& c = cents[ci];
    c.index_in.assign(n, -1);
    for (int x = 0; x < n; ++x)
      if (g[x][a] == g[a][x]) {
        c.index_in[x] = (int)c.elems.size();
        c.elems.push_back(x);
      }
    GroupTable sub((int)c.elems.size(), std::vector<int>((int)c.elems.size()));
    for (size_t i = 0; i < c.elems.size(); ++i)
      for (size_t j = 0; j < c.elems.size(); ++j)
        sub[i][j] = c.index_in[g[c.elems[i]][c.elems[j]]];
    c.chars = character_table(sub, cfg);
  }

  // Primaries: (class, irrep of centralizer), vacuum first.
  struct Primary {
    int cls;
    int irrep;
  };
  std::vector<Primary> prims;
  for (int ci = 0; ci < nclasses; ++ci)
    for (int x = 0; x < (int)cents[ci].chars.chars.size(); ++x)
      prims.push_back({ci, x});
  int rank = (int)prims.size();
  if (rank > 40)
    throw PreconditionError("drinfeld_double_data: double rank too large for exact checks");

  auto chi = [&](const Primary& p, int elem_in_g) -> const Cyclotomic& {
    const Cent& c = cents[p.cls];
    return c.chars.chars[p.irrep][c.chars.class_of[c.index_in[elem_in_g]]];
  };

  // S matrix of the double.
  std::vector<std::vector<Cyclotomic>> s(rank, std::vector<Cyclotomic>(rank));
  for (int p = 0; p < rank; ++p)
    for (int q = p; q < rank; ++q) {
      int a = gt.classes[prims[p].cls].front();
      int b = gt.classes[prims[q].cls].front();
      Cyclotomic acc(0);
      for (int x = 0; x < n; ++x) {
        int xi = inverse_of(g, x);
        int bx = g[g[x][b]][xi];  // x b x^-1
        if (cents[prims[p].cls].index_in[bx] < 0) continue;
        int ax = g[g[xi][a]][x];  // x^-1 a x
        acc += chi(prims[p], bx).conj() * chi(prims[q], ax).conj();
      }
      Cyclotomic norm(rat_of(1, (long)cents[prims[p].cls].elems.size() *
                                    (long)cents[prims[q].cls].elems.size()));
      s[p][q] = acc * norm;
      s[q][p] = s[p][q];
    }

  // Twists: omega_(a,chi) = chi(a)/chi(1); weights are the logs.
  std::vector<Rat> weights(rank);
  for (int p = 0; p < rank; ++p) {
    int a = gt.classes[prims[p].cls].front();
    Cyclotomic tw = chi(prims[p], a) / chi(prims[p], 0);
    if (!tw.is_root_of_unity())
      throw IdentityError("double twist is not a root of unity");
    weights[p] = tw.root_of_unity_log();
  }

  // Fusion from the exact Verlinde sum; must give non-negative integers.
  FusionData f = FusionData::make({}, {});
  f.labels.resize(rank);
  for (int p = 0; p < rank; ++p)
    f.labels[p] = "p" + std::to_string(prims[p].cls) + "_" + std::to_string(prims[p].irrep);
  f.weights = weights;
  f.fusion.assign((size_t)rank * rank * rank, 0);
  for (int p = 0; p < rank; ++p)
    for (int q = p; q < rank; ++q)
      for (int r = 0; r < rank; ++r) {
        Cyclotomic acc(0);
        for (int w = 0; w < rank; ++w)
          acc += s[p][w] * s[q][w] * s[r][w].conj() / s[0][w];
        if (!acc.is_rational_integer())
          throw IdentityError("Verlinde output is not integral (construction bug)");
        long mult = (long)acc.rational().get_num().get_si();
        if (mult < 0) throw IdentityError("Verlinde output is negative (construction bug)");
        f.set_n(p, q, r, (int)mult);
        f.set_n(q, p, r, (int)mult);
      }

  auto issues = validate(f);
  if (!issues.empty())
    throw IdentityError("drinfeld double output failed validation: " +
                        issues.front().axiom + ": " + issues.front().detail);

  long conductor = 1;
  for (const auto& row : s)
    for (const auto& v : row) conductor = std::lcm(conductor, v.conductor());
  for (const auto& w : weights) conductor = std::lcm(conductor, (long)w.get_den().get_si());
  return from_fusion_data(name, f, SMatrixInput{conductor, s});
}

}  // namespace fcs
