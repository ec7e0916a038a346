#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qg/pipeline.hpp"

namespace {

using namespace qg;

std::string blocks_str(const std::vector<int>& blocks) {
  std::string s;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    s += (i ? " " : "") + std::to_string(blocks[i]);
  return s;
}

void print_header(const QuantumGroup& g) {
  std::printf("name: %s  dim: %d  blocks: %s\n",
              g.name.empty() ? "(unnamed)" : g.name.c_str(), g.dim,
              blocks_str(g.blocks).c_str());
}

int cmd_validate(const QuantumGroup& g, double tol, bool as_json) {
  const ValidationReport rep = validate_cqg(g, tol);
  if (as_json) {
    json j;
    j["name"] = g.name;
    j["tol"] = fmt17(tol);
    j["pass"] = rep.pass;
    json checks;
    for (const auto& c : rep.checks) checks[c.axiom] = fmt17(c.residual);
    j["residuals"] = std::move(checks);
    j["cancellation_ranks"] = json::array({rep.rank1, rep.rank2});
    j["expected_rank"] = rep.expected_rank;
    j["violations"] = rep.violations();
    std::cout << j.dump(2) << "\n";
  } else {
    print_header(g);
    for (const auto& c : rep.checks)
      std::printf("  %-16s %-10.3g %s\n", c.axiom.c_str(), c.residual,
                  c.pass ? "ok" : "FAIL");
    std::printf("  cancellation ranks: %d %d (expected %d)\n", rep.rank1, rep.rank2,
                rep.expected_rank);
    for (const auto& v : rep.violations()) std::printf("  violation: %s\n", v.c_str());
    std::printf("%s\n", rep.pass ? "pass" : "fail");
  }
  return rep.pass ? 0 : 1;
}

int cmd_haar(const QuantumGroup& g, double tol, bool as_json) {
  const HaarResult res = haar_state(g, tol);
  const GnsSpace gns = gns_construct(g, res.h, tol);
  const double trac = traciality_residual(g, res.h);
  const bool pass = res.nullspace_dim == 1 && res.invariance_residual < tol &&
                    gns.min_gram_eig > tol;
  if (as_json) {
    json j;
    j["name"] = g.name;
    j["tol"] = fmt17(tol);
    j["coefficients"] = complex_vec_to_json(res.h.coeffs);
    j["nullspace_dim"] = res.nullspace_dim;
    j["invariance_residual"] = fmt17(res.invariance_residual);
    j["traciality_residual"] = fmt17(trac);
    j["min_gram_eig"] = fmt17(gns.min_gram_eig);
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    print_header(g);
    for (int i = 0; i < g.dim; ++i)
      std::printf("  h(e_%d) = %s + %s i\n", i, fmt17(res.h.coeffs(i).real()).c_str(),
                  fmt17(res.h.coeffs(i).imag()).c_str());
    std::printf("  nullspace dim: %d\n", res.nullspace_dim);
    std::printf("  invariance residual: %.3g\n", res.invariance_residual);
    std::printf("  traciality residual: %.3g\n", trac);
    std::printf("  min gram eigenvalue: %.3g\n", gns.min_gram_eig);
    std::printf("%s\n", pass ? "pass" : "fail");
  }
  return pass ? 0 : 1;
}

json classes_to_json(const std::vector<IrrepClass>& classes) {
  json out = json::array();
  for (const auto& cl : classes) {
    json c;
    c["id"] = cl.id;
    c["d"] = cl.rep.d;
    c["multiplicity"] = cl.mult;
    c["M"] = fmt17(cl.M);
    c["f_deviation"] = fmt17(max_abs(cl.F - Mat::Identity(cl.rep.d, cl.rep.d)));
    c["conjugate"] = cl.conj_class;
    c["character"] = complex_vec_to_json(cl.chi.coeffs);
    out.push_back(std::move(c));
  }
  return out;
}

void print_classes(const std::vector<IrrepClass>& classes) {
  std::printf("  %-4s %-4s %-6s %-8s %-10s %s\n", "id", "d", "mult", "M", "|F - I|",
              "conj");
  for (const auto& cl : classes)
    std::printf("  %-4d %-4d %-6d %-8.4g %-10.3g %d\n", cl.id, cl.rep.d, cl.mult, cl.M,
                max_abs(cl.F - Mat::Identity(cl.rep.d, cl.rep.d)), cl.conj_class);
}

int cmd_decompose(const QuantumGroup& g, double tol, std::uint64_t seed, bool as_json) {
  const PipelineState st = run_stages(g, tol, seed);
  int sum_d2 = 0;
  for (const auto& cl : st.dec.classes) sum_d2 += cl.rep.d * cl.rep.d;
  const bool pass = sum_d2 == g.dim;
  if (as_json) {
    json j;
    j["name"] = g.name;
    j["tol"] = fmt17(tol);
    j["seed"] = seed;
    j["classes"] = classes_to_json(st.dec.classes);
    j["sum_d_squared"] = sum_d2;
    j["fourier_side"] = st.dec.side == HaSide::XA ? "xa" : "ax";
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    print_header(g);
    print_classes(st.dec.classes);
    std::printf("  sum of squared dims: %d\n", sum_d2);
    std::printf("%s\n", pass ? "pass" : "fail");
  }
  return pass ? 0 : 1;
}

int cmd_orthogonality(const QuantumGroup& g, double tol, std::uint64_t seed,
                      bool as_json) {
  const PipelineState st = run_stages(g, tol, seed);
  const OrthogonalityReport rep = orthogonality_check(g, st.dec.classes, st.haar.h, tol);
  if (as_json) {
    json j;
    j["name"] = g.name;
    j["tol"] = fmt17(tol);
    j["seed"] = seed;
    j["family1"] = fmt17(rep.fam1);
    j["family2"] = fmt17(rep.fam2);
    j["family3"] = fmt17(rep.fam3);
    j["family4"] = fmt17(rep.fam4);
    j["pass"] = rep.pass;
    std::cout << j.dump(2) << "\n";
  } else {
    print_header(g);
    std::printf("  family 1 (h(u_mk u_nl^*)): %.3g\n", rep.fam1);
    std::printf("  family 2 (h(u_km^* u_ln)): %.3g\n", rep.fam2);
    std::printf("  family 3 (h(a u_nl)):      %.3g\n", rep.fam3);
    std::printf("  family 4 (h(u_nl^* a^*)):  %.3g\n", rep.fam4);
    std::printf("%s\n", rep.pass ? "pass" : "fail");
  }
  return rep.pass ? 0 : 1;
}

int cmd_report(const QuantumGroup& g, double tol, std::uint64_t seed, bool as_json) {
  const Report rep = run_pipeline(g, tol, seed);
  if (as_json) {
    std::cout << report_to_json(rep).dump(2) << "\n";
  } else {
    print_header(g);
    std::printf("validation: %s  ranks %d/%d of %d\n",
                rep.validation.pass ? "ok" : "FAIL", rep.validation.rank1,
                rep.validation.rank2, rep.validation.expected_rank);
    std::printf("haar: nullspace %d  invariance %.3g  traciality %.3g  gram %.3g\n",
                rep.haar_nullspace_dim, rep.invariance_residual, rep.traciality,
                rep.min_gram_eig);
    std::printf("regular: defining %.3g  unitary %.3g  corep %.3g  rank %d\n",
                rep.regular.defining, rep.regular.unitarity, rep.regular.corep,
                rep.regular.density_rank);
    print_classes(rep.classes);
    std::printf("fourier side: %s\n", rep.side == HaSide::XA ? "xa" : "ax");
    std::printf("orthogonality: %.3g %.3g %.3g %.3g\n", rep.orthogonality.fam1,
                rep.orthogonality.fam2, rep.orthogonality.fam3, rep.orthogonality.fam4);
    std::printf("cstar blocks: %s  dims %s\n", rep.cstar.pass ? "ok" : "FAIL",
                blocks_str(rep.cstar.block_dims).c_str());
    std::printf("commutant: %d vs %d\n", rep.commutant.dim_intertwiner,
                rep.commutant.dim_commutant);
    std::printf("intertwiner equation: residual %.3g  sigma_min %.3g\n",
                rep.intertwiner_residual, rep.s_min_singular);
    std::printf("%s\n", rep.pass ? "pass" : "fail");
  }
  return rep.pass ? 0 : 1;
}

int cmd_example(const std::string& name, const std::string& cayley_file,
                const std::string& kind, const std::string& emit, bool list,
                double tol) {
  if (list) {
    for (const auto& n : list_builtins()) std::printf("%s\n", n.c_str());
    return 0;
  }
  QuantumGroup g;
  if (!cayley_file.empty()) {
    const CayleyTable t = read_cayley(cayley_file);
    const std::string label = name.empty() ? "cayley" + std::to_string(t.n) : name;
    g = kind == "group" ? group_algebra(t, "cstar_" + label).g
                        : function_algebra(t, label);
  } else if (!name.empty()) {
    g = make_builtin(name);
  } else {
    throw ParseError("example: need a builtin name or --cayley FILE");
  }
  const ValidationReport rep = validate_cqg(g, tol);
  if (!rep.pass) throw Error("ConstructionInconsistent", "example fails validation");
  if (!emit.empty()) {
    write_quantum_group(g, emit);
    std::printf("wrote %s (dim %d, blocks %s)\n", emit.c_str(), g.dim,
                blocks_str(g.blocks).c_str());
  } else {
    print_header(g);
    std::printf("pass\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional compact quantum groups: Haar state, GNS space, "
               "regular representation, Peter-Weyl decomposition"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  if (const char* env = std::getenv("QG_TOL")) {
    try {
      tol = std::stod(env);
    } catch (const std::exception&) {
      std::fprintf(stderr, "bad QG_TOL value: %s\n", env);
      return 2;
    }
  }
  std::uint64_t seed = kDefaultSeed;
  bool as_json = false;
  std::string file, name, cayley_file, emit;
  std::string kind = "function";
  bool list = false;

  auto add_common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--tol", tol, "residual tolerance");
    sub->add_flag("--json", as_json, "emit JSON");
    if (with_seed) sub->add_option("--seed", seed, "RNG seed for the decomposition");
  };

  CLI::App* validate = app.add_subcommand("validate", "check the axioms of a file");
  validate->add_option("file", file)->required();
  add_common(validate, false);

  CLI::App* haar = app.add_subcommand("haar", "compute the Haar state");
  haar->add_option("file", file)->required();
  add_common(haar, false);

  CLI::App* decompose =
      app.add_subcommand("decompose", "decompose the regular representation");
  decompose->add_option("file", file)->required();
  add_common(decompose, true);

  CLI::App* orth = app.add_subcommand("orthogonality", "check orthogonality relations");
  orth->add_option("file", file)->required();
  add_common(orth, true);

  CLI::App* report = app.add_subcommand("report", "run the full pipeline");
  report->add_option("file", file)->required();
  add_common(report, true);

  CLI::App* example = app.add_subcommand("example", "built-in quantum groups");
  example->add_option("name", name, "builtin name (see --list)");
  example->add_option("--emit", emit, "write the quantum-group file here");
  example->add_option("--cayley", cayley_file, "build from a Cayley-table file");
  example->add_option("--kind", kind, "function or group algebra of the table")
      ->check(CLI::IsMember({"function", "group"}));
  example->add_flag("--list", list, "list builtin names");
  example->add_option("--tol", tol, "residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (example->parsed()) return cmd_example(name, cayley_file, kind, emit, list, tol);
    const qg::QuantumGroup g = qg::read_quantum_group(file);
    if (validate->parsed()) return cmd_validate(g, tol, as_json);
    if (haar->parsed()) return cmd_haar(g, tol, as_json);
    if (decompose->parsed()) return cmd_decompose(g, tol, seed, as_json);
    if (orth->parsed()) return cmd_orthogonality(g, tol, seed, as_json);
    if (report->parsed()) return cmd_report(g, tol, seed, as_json);
  } catch (const qg::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const qg::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", e.code.c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
