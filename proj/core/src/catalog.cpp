#include "fcset/catalog.hpp"

#include "fcset/errors.hpp"

namespace fcs {

namespace {

ModelFile abelian_anyons(int n) {
  // Z_n fusion with quadratic weights: h_j = j^2/n (n odd), j^2/2n (n even),
  // reduced mod 1. These satisfy the modular consistency conditions.
  ModelFile mf;
  mf.name = "z" + std::to_string(n) + "_anyon";
  for (int j = 0; j < n; ++j) mf.labels.push_back(std::to_string(j));
  long den = (n % 2 == 0) ? 2L * n : n;
  for (long j = 0; j < n; ++j) {
    Rat h = rat_of(j * j % den, den);
    mf.weights.push_back(h);
  }
  for (int i = 1; i < n; ++i)
    for (int j = i; j < n; ++j) mf.fusion.push_back({i, j, (i + j) % n, 1});
  return mf;
}

ModelFile trivial_model() {
  ModelFile mf;
  mf.name = "trivial";
  mf.labels = {"0"};
  mf.weights = {Rat(0)};
  return mf;
}

ModelFile fibonacci_model() {
  ModelFile mf;
  mf.name = "fibonacci";
  mf.labels = {"0", "tau"};
  mf.weights = {Rat(0), rat_of(2, 5)};
  mf.fusion = {{1, 1, 0, 1}, {1, 1, 1, 1}};
  return mf;
}

ModelFile ising_model() {
  ModelFile mf;
  mf.name = "ising";
  mf.labels = {"0", "eps", "sigma"};
  mf.weights = {Rat(0), rat_of(1, 2), rat_of(1, 16)};
  mf.fusion = {{1, 1, 0, 1}, {1, 2, 2, 1}, {2, 2, 0, 1}, {2, 2, 1, 1}};
  return mf;
}

ModelFile toric_model() {
  // Drinfeld double of Z2: labels 1, e, m, f with the fermion weight 1/2.
  ModelFile mf;
  mf.name = "toric";
  mf.labels = {"1", "e", "m", "f"};
  mf.weights = {Rat(0), Rat(0), Rat(0), rat_of(1, 2)};
  mf.fusion = {{1, 1, 0, 1}, {1, 2, 3, 1}, {1, 3, 2, 1},
               {2, 2, 0, 1}, {2, 3, 1, 1}, {3, 3, 0, 1}};
  return mf;
}

ModelFile so16_model() {
  // SO(16) level 1: Klein four-group fusion, spinor weights 1.
  ModelFile mf;
  mf.name = "so16_lvl1";
  mf.labels = {"o", "v", "s", "c"};
  mf.weights = {Rat(0), rat_of(1, 2), Rat(1), Rat(1)};
  mf.fusion = {{1, 1, 0, 1}, {1, 2, 3, 1}, {1, 3, 2, 1},
               {2, 2, 0, 1}, {2, 3, 1, 1}, {3, 3, 0, 1}};
  return mf;
}

}  // namespace

std::vector<ModelFile> builtin_catalog() {
  std::vector<ModelFile> out;
  out.push_back(trivial_model());
  out.push_back(fibonacci_model());
  out.push_back(ising_model());
  out.push_back(toric_model());
  out.push_back(so16_model());
  for (int n = 2; n <= 5; ++n) out.push_back(abelian_anyons(n));
  out.push_back(drinfeld_double_data(symmetric_group_table(3), "d_s3"));
  return out;
}

ModelFile catalog_model(const std::string& name) {
  for (auto& mf : builtin_catalog())
    if (mf.name == name) return mf;
  throw PreconditionError("unknown catalog model '" + name + "'");
}

}  // namespace fcs
