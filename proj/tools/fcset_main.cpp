#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fcset/catalog.hpp"
#include "fcset/center.hpp"
#include "fcset/galois.hpp"
#include "fcset/local.hpp"
#include "fcset/model_io.hpp"

namespace {

using namespace fcs;

RunConfig g_cfg;

long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  return v ? std::atol(v) : fallback;
}

void apply_env_overrides() {
  g_cfg.precision_bits = env_long("FCSET_PRECISION_BITS", g_cfg.precision_bits);
  g_cfg.denom_bound = env_long("FCSET_DENOM_BOUND", g_cfg.denom_bound);
  g_cfg.enumeration_budget = env_long("FCSET_BUDGET", g_cfg.enumeration_budget);
  g_cfg.seed = (std::uint64_t)env_long("FCSET_SEED", (long)g_cfg.seed);
  if (const char* v = std::getenv("FCSET_FORMAT"))
    g_cfg.format = std::string(v) == "records" ? OutputFormat::Records : OutputFormat::Text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path, 0, 0);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct LoadedModel {
  ModelFile file;
  FusionData fusion;
  ModularData modular;
};

LoadedModel load_model(const std::string& path) {
  LoadedModel lm;
  lm.file = parse_model(slurp(path));
  lm.fusion = to_fusion_data(lm.file);
  auto issues = validate(lm.fusion);
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << "model fails validation:";
    for (const auto& i : issues) msg << " [" << i.axiom << "] " << i.detail << ";";
    throw ParseError(msg.str(), 0, 0);
  }
  lm.modular = build_modular_data(lm.fusion, lm.file.smatrix, g_cfg);
  return lm;
}

FCSet resolve_set(const std::string& spec, const ModularData& m) {
  FCSet s(m.rank());
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    int idx = -1;
    for (int p = 0; p < m.rank(); ++p)
      if (m.base.labels[p] == tok) idx = p;
    if (idx < 0) {
      try {
        size_t used = 0;
        long v = std::stol(tok, &used);
        if (used == tok.size() && v >= 0 && v < m.rank()) idx = (int)v;
      } catch (...) {
      }
    }
    if (idx < 0) throw PreconditionError("unknown primary label '" + tok + "'");
    s.set(idx);
  }
  s.set(0);
  return s;
}

void emit(const Report& rep) { std::cout << rep.render(g_cfg.format); }

int run_validate(const std::string& path) {
  ModelFile mf = parse_model(slurp(path));
  FusionData f = to_fusion_data(mf);
  auto issues = validate(f);
  Report rep;
  for (const auto& i : issues)
    rep.add().set("axiom", i.axiom).set("detail", i.detail).pass(false);
  if (issues.empty()) rep.check("fusion_axioms", true).set("model", mf.name);
  emit(rep);
  return issues.empty() ? 0 : 1;
}

int run_info(const std::string& path) {
  LoadedModel lm = load_model(path);
  const ModularData& m = lm.modular;
  Report rep;
  rep.add()
      .set("model", lm.file.name)
      .set("rank", (long)m.rank())
      .set("conductor", m.conductor)
      .set("global_dim", m.global_dim.str());
  for (int p = 0; p < m.rank(); ++p)
    rep.add()
        .set("primary", m.base.labels[p])
        .set("h", m.base.weights[p].get_num().get_str() + "/" +
                      m.base.weights[p].get_den().get_str())
        .set("d", m.qdims[p].str());
  emit(rep);
  return 0;
}

int run_fcsets(const std::string& path, const std::string& lattice_out, bool arguesian) {
  LoadedModel lm = load_model(path);
  const ModularData& m = lm.modular;
  FCLattice lat = enumerate_fcsets(m, g_cfg);
  LatticeProps props = lattice_props(lat, m);
  Report rep;
  rep.add().set("model", lm.file.name).set("fcsets", (long)lat.sets.size());
  for (const auto& s : lat.sets) {
    ClassPartition cl = classes_of(s, m);
    rep.add()
        .set("set", set_label(s, m))
        .set("size", (long)s.count())
        .set("dual", set_label(dual_set(s, m), m))
        .set("dual_extent", cl.extents[cl.trivial_class].str());
  }
  auto& r = rep.add()
                .set("modular", props.is_modular ? "yes" : "no")
                .set("distributive", props.is_distributive ? "yes" : "no");
  if (props.distributive_witness) {
    const auto& w = *props.distributive_witness;
    r.set("distributive_witness", set_label(lat.sets[w[0]], m) + "|" +
                                      set_label(lat.sets[w[1]], m) + "|" +
                                      set_label(lat.sets[w[2]], m));
  }
  if (arguesian) {
    std::optional<std::array<int, 6>> witness;
    rep.add().set("arguesian", arguesian_check(lat, m, &witness) ? "yes" : "no");
  }
  emit(rep);
  if (!lattice_out.empty()) {
    std::ofstream out(lattice_out, std::ios::binary);
    out << "digraph fcsets {\n";
    for (size_t i = 0; i < lat.sets.size(); ++i)
      out << "  n" << i << " [label=\"" << set_label(lat.sets[i], m) << "\"];\n";
    for (const auto& [lo, hi] : lat.hasse) out << "  n" << lo << " -> n" << hi << ";\n";
    out << "}\n";
  }
  return 0;
}

int run_classes(const std::string& path, const std::string& set_spec) {
  LoadedModel lm = load_model(path);
  const ModularData& m = lm.modular;
  FCSet g = resolve_set(set_spec, m);
  if (!is_fc(g, m)) throw PreconditionError("--set does not name a fusion-closed set");
  OverlapTable ot = overlaps(g, m);
  Report rep;
  rep.add().set("model", lm.file.name).set("set", set_label(g, m));
  for (int c = 0; c < ot.classes.num_classes(); ++c) {
    FCSet cs(m.rank());
    for (int p : ot.classes.classes[c]) cs.set(p);
    rep.add()
        .set("class", (long)c)
        .set("members", set_label(cs, m))
        .set("extent", ot.classes.extents[c].str())
        .set("central",
             ot.classes.extents[c] == ot.classes.extents[ot.classes.trivial_class] ? "yes"
                                                                                   : "no");
  }
  for (int b = 0; b < ot.blocks.num_classes(); ++b) {
    FCSet bs(m.rank());
    for (int p : ot.blocks.classes[b]) bs.set(p);
    std::string ov;
    for (int c = 0; c < ot.classes.num_classes(); ++c) {
      if (!ov.empty()) ov += ",";
      ov += std::to_string(ot.ov[b][c]);
    }
    rep.add()
        .set("block", (long)b)
        .set("members", set_label(bs, m))
        .set("extent", ot.blocks.extents[b].str())
        .set("overlaps", ov);
  }
  Report ids = verify_partition_identities(g, m, g_cfg);
  rep.merge(ids);
  emit(rep);
  return ids.all_pass() ? 0 : 2;
}

int run_deconstruct(const std::string& path, const std::string& set_spec) {
  LoadedModel lm = load_model(path);
  const ModularData& m = lm.modular;
  FCSet g = resolve_set(set_spec, m);
  if (!is_fc(g, m)) throw PreconditionError("--twister does not name a fusion-closed set");
  DeconstructionReport dr = deconstruct(g, m);  // throws PreconditionError if not local
  Report rep;
  rep.add()
      .set("model", lm.file.name)
      .set("set", set_label(g, m))
      .set("local", dr.local ? "yes" : "no")
      .set("twister", dr.twister ? "yes" : "no")
      .set("twist_group_order", dr.twist_group_order.str())
      .set("order_integral", dr.order_is_integer ? "yes" : "no")
      .set("core", set_label(dr.core, m))
      .set("boson_blocks", dr.boson_block_count)
      .set("fermion_blocks", dr.fermion_block_count);
  ClassPartition cl = classes_of(g, m);
  for (size_t c = 0; c < dr.sectors.size(); ++c) {
    const Sector& s = dr.sectors[c];
    FCSet cs(m.rank());
    for (int p : s.class_members) cs.set(p);
    std::string blocks;
    for (const auto& b : s.blocks_inside) {
      FCSet bs(m.rank());
      for (int p : b) bs.set(p);
      if (!blocks.empty()) blocks += " ";
      blocks += set_label(bs, m);
    }
    rep.add()
        .set("sector", (long)c)
        .set("kind", (int)c == cl.trivial_class ? "untwisted"
                     : (int)c == dr.ramond      ? "ramond"
                                                : "twisted")
        .set("members", set_label(cs, m))
        .set("extent", s.extent.str())
        .set("blocks", blocks);
  }
  rep.merge(dr.checks);
  emit(rep);
  return dr.checks.all_pass() ? 0 : 2;
}

int run_galois(const std::string& path, long ell) {
  LoadedModel lm = load_model(path);
  const ModularData& m = lm.modular;
  GaloisAction ga = galois_action(m);
  Report rep;
  rep.add()
      .set("model", lm.file.name)
      .set("conductor", ga.conductor)
      .set("modulus", ga.modulus)
      .set("units", (long)ga.units.size());
  for (long u : ga.units) {
    if (ell != 0 && u != ((ell % ga.modulus) + ga.modulus) % ga.modulus) continue;
    const auto& perm = ga.perm_of(u);
    const auto& sgn = ga.sign_of(u);
    std::string ps, ss;
    for (int p = 0; p < m.rank(); ++p) {
      if (!ps.empty()) ps += ",";
      ps += m.base.labels[perm[p]];
      if (!ss.empty()) ss += ",";
      ss += sgn[p] > 0 ? "+" : "-";
    }
    ThetaSets ts = theta_sets(m, ga, u);
    rep.add()
        .set("ell", u)
        .set("perm", ps)
        .set("sign", ss)
        .set("theta", set_label(ts.theta, m))
        .set("theta_plus", set_label(ts.theta_plus, m));
  }
  rep.merge(ga.diagnostics);
  emit(rep);
  return ga.diagnostics.all_pass() ? 0 : 2;
}

int run_conjectures(const std::string& path, const std::string& suites) {
  LoadedModel lm = load_model(path);
  const ModularData& m = lm.modular;
  FCLattice lat = enumerate_fcsets(m, g_cfg);
  GaloisAction ga = galois_action(m);
  bool do_algint = suites.find("algint") != std::string::npos;
  bool do_spect = suites.find("spect") != std::string::npos;
  bool do_lagrange = suites.find("lagrange") != std::string::npos;
  bool do_charring = suites.find("charring") != std::string::npos;
  Report rep;
  for (const auto& g : lat.sets) {
    std::string label = set_label(g, m);
    if (do_algint) {
      Report r = conjecture_algint(classes_of(g, m), m);
      rep.check("conj_algint", r.all_pass()).set("model", lm.file.name).set("g", label);
      for (const auto& rec : r.records)
        if (!rec.passed()) rep.records.push_back(rec);
    }
    if (do_spect) {
      Report r = conjecture_spect(g, m, ga);
      rep.check("conj_spect", r.all_pass()).set("model", lm.file.name).set("g", label);
      for (const auto& rec : r.records)
        if (!rec.passed()) rep.records.push_back(rec);
    }
    if (do_charring) {
      ClassPartition cl = classes_of(g, m);
      if (cl.extents[cl.trivial_class].is_rational_integer()) {
        Report r = char_ring_checks(g, m);
        rep.check("conj_charring", r.all_pass()).set("model", lm.file.name).set("g", label);
        for (const auto& rec : r.records)
          if (!rec.passed()) rep.records.push_back(rec);
      }
    }
  }
  if (do_lagrange) {
    for (size_t gi = 0; gi < lat.sets.size(); ++gi)
      for (size_t hi = 0; hi < lat.sets.size(); ++hi) {
        if (gi == hi || !lat.sets[gi].contains(lat.sets[hi])) continue;
        ClassPartition pg = classes_of(lat.sets[gi], m);
        ClassPartition ph = classes_of(lat.sets[hi], m);
        Cyclotomic ratio =
            pg.extents[pg.trivial_class] / ph.extents[ph.trivial_class];
        rep.check("conj_lagrange", ratio.is_algebraic_integer())
            .set("model", lm.file.name)
            .set("h", set_label(lat.sets[hi], m))
            .set("g", set_label(lat.sets[gi], m))
            .set("ratio", ratio.str());
      }
  }
  emit(rep);
  return rep.all_pass() ? 0 : 2;
}

int run_catalog(const std::string& emit_dir) {
  Report rep;
  for (const auto& mf : builtin_catalog()) {
    rep.add().set("model", mf.name).set("rank", (long)mf.labels.size());
    if (!emit_dir.empty()) {
      std::filesystem::create_directories(emit_dir);
      std::ofstream out(std::filesystem::path(emit_dir) / (mf.name + ".model"),
                        std::ios::binary);
      out << write_model(mf);
    }
  }
  emit(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact structure theory of fusion rings: FC sets, classes, centers, "
               "Galois action and orbifold deconstruction"};
  app.require_subcommand(1);
  apply_env_overrides();
  std::string fmt;
  app.add_option("--precision-bits", g_cfg.precision_bits, "working precision (>= 64)");
  app.add_option("--denom-bound", g_cfg.denom_bound, "reconstruction denominator bound");
  app.add_option("--budget", g_cfg.enumeration_budget, "FC-set enumeration budget");
  app.add_option("--seed", g_cfg.seed, "seed for deterministic generic combinations");
  app.add_option("--format", fmt, "output format: text | records")
      ->check(CLI::IsMember({"text", "records"}));

  std::string file, set_spec, lattice_out, emit_dir, suites = "algint,spect,lagrange,charring";
  long ell = 0;
  bool arguesian = false;

  auto* c_validate = app.add_subcommand("validate", "check the fusion-ring axioms");
  c_validate->add_option("file", file)->required();
  auto* c_info = app.add_subcommand("info", "primaries, weights and exact dimensions");
  c_info->add_option("file", file)->required();
  auto* c_fcsets = app.add_subcommand("fcsets", "enumerate the lattice of FC sets");
  c_fcsets->add_option("file", file)->required();
  c_fcsets->add_option("--lattice-out", lattice_out, "write the Hasse diagram (DOT)");
  c_fcsets->add_flag("--arguesian", arguesian, "also test the Arguesian law (O(n^6))");
  auto* c_classes = app.add_subcommand("classes", "classes, blocks and overlaps of a set");
  c_classes->add_option("file", file)->required();
  c_classes->add_option("--set", set_spec, "comma-separated labels")->required();
  auto* c_dec = app.add_subcommand("deconstruct", "orbifold deconstruction of a local set");
  c_dec->add_option("file", file)->required();
  c_dec->add_option("--twister", set_spec, "comma-separated labels")->required();
  auto* c_galois = app.add_subcommand("galois", "Galois permutations, signs and theta sets");
  c_galois->add_option("file", file)->required();
  c_galois->add_option("--ell", ell, "restrict to one unit");
  auto* c_conj = app.add_subcommand("conjectures", "run the conjecture test harness");
  c_conj->add_option("file", file)->required();
  c_conj->add_option("--suite", suites, "algint,spect,lagrange,charring");
  auto* c_catalog = app.add_subcommand("catalog", "list or emit the bundled models");
  c_catalog->add_option("--emit", emit_dir, "write .model files into a directory");

  CLI11_PARSE(app, argc, argv);
  if (!fmt.empty())
    g_cfg.format = fmt == "records" ? fcs::OutputFormat::Records : fcs::OutputFormat::Text;

  try {
    g_cfg.check();
    if (c_validate->parsed()) return run_validate(file);
    if (c_info->parsed()) return run_info(file);
    if (c_fcsets->parsed()) return run_fcsets(file, lattice_out, arguesian);
    if (c_classes->parsed()) return run_classes(file, set_spec);
    if (c_dec->parsed()) return run_deconstruct(file, set_spec);
    if (c_galois->parsed()) return run_galois(file, ell);
    if (c_conj->parsed()) return run_conjectures(file, suites);
    if (c_catalog->parsed()) return run_catalog(emit_dir);
  } catch (const fcs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fcs::ReconstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fcs::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fcs::IdentityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fcs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
