#pragma once

#include <limits>

#include "qg/io.hpp"

namespace qg {

struct PeterWeylReport {
  std::vector<int> p_ranks;       // rank of each central projection, class order
  std::vector<int> row_ranks;     // rank of the row projections (one value per class)
  double rank_residual = 0.0;     // distance of projector traces to integers
  double subspace_sum_residual = 0.0;  // sum of H_h(u^alpha) projections vs identity
  bool pass = false;
};

inline PeterWeylReport peter_weyl_report(const QuantumGroup& g, const GnsSpace& gns,
                                         const CStarG& cs, const Decomposition& dec,
                                         double tol = kDefaultTol) {
  PeterWeylReport pw;
  const int d = g.dim;
  Mat sum = Mat::Zero(d, d);
  for (std::size_t a = 0; a < dec.classes.size(); ++a) {
    const double tr = cs.p[a].trace().real();
    pw.p_ranks.push_back(static_cast<int>(std::lround(tr)));
    pw.rank_residual = std::max(pw.rank_residual, std::abs(tr - std::lround(tr)));
    int rr = 0;
    for (const Mat& pk : cs.p_rows[a]) {
      const double trk = pk.trace().real();
      rr = static_cast<int>(std::lround(trk));
      pw.rank_residual = std::max(pw.rank_residual, std::abs(trk - std::lround(trk)));
    }
    pw.row_ranks.push_back(rr);
    sum += subspace_projection(gns, dec.classes[a].rep);
  }
  pw.subspace_sum_residual = max_abs(sum - Mat::Identity(d, d));
  pw.pass = pw.rank_residual < std::max(tol, 1e-8) &&
            pw.subspace_sum_residual < std::max(tol, 1e-8);
  int total = 0;
  for (std::size_t a = 0; a < dec.classes.size(); ++a) {
    const int da = dec.classes[a].rep.d;
    pw.pass = pw.pass && pw.p_ranks[a] == da * da && pw.row_ranks[a] == da;
    total += pw.p_ranks[a];
  }
  pw.pass = pw.pass && total == d;
  return pw;
}

struct PipelineState {
  HaarResult haar;
  GnsSpace gns;
  RegularRep vr;
  Decomposition dec;
};

inline PipelineState run_stages(const QuantumGroup& g, double tol = kDefaultTol,
                                std::uint64_t seed = kDefaultSeed) {
  PipelineState st;
  st.haar = haar_state(g, tol);
  st.gns = gns_construct(g, st.haar.h, tol);
  st.vr = build_regular(st.gns, g, tol);
  st.dec = decompose_regular(g, st.gns, st.vr, tol, seed);
  choose_fourier_side(g, st.gns, st.vr, st.haar.h, st.dec);
  return st;
}

struct Report {
  std::string name;
  int dim = 0;
  std::vector<int> blocks;
  double tol = kDefaultTol;
  std::uint64_t seed = kDefaultSeed;

  ValidationReport validation;
  Vec haar_coeffs;
  int haar_nullspace_dim = 0;
  double invariance_residual = 0.0;
  double traciality = 0.0;
  double counit_residual = 0.0;

  double min_gram_eig = 0.0;
  double gns_pairing_residual = 0.0;
  double gns_hom_residual = 0.0;
  double gns_star_residual = 0.0;
  double gns_cyclic_residual = 0.0;

  RegularChecks regular;
  std::vector<IrrepClass> classes;
  int sum_d_squared = 0;
  HaSide side = HaSide::XA;
  double side_residual_xa = 0.0;
  double side_residual_ax = 0.0;

  OrthogonalityReport orthogonality;
  CStarG cstar;
  CommutantReport commutant;
  PeterWeylReport peter_weyl;

  double intertwiner_residual = 0.0;
  double s_min_singular = 0.0;
  double p_row_commutant_residual = 0.0;
  bool restrictions_equivalent = true;

  bool pass = false;
};

inline Report run_pipeline(const QuantumGroup& g, double tol = kDefaultTol,
                           std::uint64_t seed = kDefaultSeed) {
  Report rep;
  rep.name = g.name;
  rep.dim = g.dim;
  rep.blocks = g.blocks;
  rep.tol = tol;
  rep.seed = seed;
  rep.counit_residual = g.counit_residual;

  rep.validation = validate_cqg(g, tol);
  const PipelineState st = run_stages(g, tol, seed);
  rep.haar_coeffs = st.haar.h.coeffs;
  rep.haar_nullspace_dim = st.haar.nullspace_dim;
  rep.invariance_residual = st.haar.invariance_residual;
  rep.traciality = traciality_residual(g, st.haar.h);
  rep.min_gram_eig = st.gns.min_gram_eig;

  const int d = g.dim;
  for (int i = 0; i < d; ++i) {
    const Vec a = Vec::Unit(d, i);
    rep.gns_cyclic_residual =
        std::max(rep.gns_cyclic_residual,
                 (st.gns.pi[i] * st.gns.xi - kappa(st.gns, a)).cwiseAbs().maxCoeff());
    rep.gns_star_residual =
        std::max(rep.gns_star_residual,
                 max_abs(pi_of(st.gns, star_vec(g, a)) - Mat(st.gns.pi[i].adjoint())));
    for (int j = 0; j < d; ++j) {
      const Vec b = Vec::Unit(d, j);
      rep.gns_hom_residual =
          std::max(rep.gns_hom_residual,
                   max_abs(st.gns.pi[i] * st.gns.pi[j] -
                           pi_of(st.gns, mul_vec(g, a, b))));
      const cplx lhs = (st.gns.pi[j] * st.gns.xi).dot(st.gns.pi[i] * st.gns.xi);
      const cplx rhs = eval(st.haar.h, {mul_vec(g, star_vec(g, b), a)});
      rep.gns_pairing_residual = std::max(rep.gns_pairing_residual, std::abs(lhs - rhs));
    }
  }

  rep.regular = regular_checks(g, st.gns, st.vr);
  rep.classes = st.dec.classes;
  for (const auto& cl : rep.classes) rep.sum_d_squared += cl.rep.d * cl.rep.d;
  rep.side = st.dec.side;
  rep.side_residual_xa = st.dec.side_residual_xa;
  rep.side_residual_ax = st.dec.side_residual_ax;

  rep.orthogonality = orthogonality_check(g, st.dec.classes, st.haar.h, tol);
  rep.cstar = cstar_blocks(g, st.gns, st.vr, st.dec, st.haar.h, tol);
  rep.commutant = commutant_check(g, st.vr, rep.cstar, st.dec, tol);
  rep.peter_weyl = peter_weyl_report(g, st.gns, rep.cstar, st.dec, tol);

  rep.s_min_singular = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < st.dec.classes.size(); ++a)
    for (int k0 = 0; k0 < st.dec.classes[a].rep.d; ++k0) {
      const IntertwinerS s = explicit_intertwiner_S(g, st.gns, st.vr, rep.cstar,
                                                    st.dec, static_cast<int>(a), k0);
      rep.intertwiner_residual = std::max(rep.intertwiner_residual, s.relation_residual);
      rep.s_min_singular = std::min(rep.s_min_singular, s.smin);
      rep.p_row_commutant_residual =
          std::max(rep.p_row_commutant_residual, s.p_row_commutant_residual);
      rep.restrictions_equivalent = rep.restrictions_equivalent && s.restriction_equivalent;
    }

  const double soft = std::max(tol, 1e-8);
  rep.pass = rep.validation.pass && rep.haar_nullspace_dim == 1 &&
             rep.invariance_residual < tol && rep.traciality < soft &&
             rep.min_gram_eig > tol && rep.gns_pairing_residual < soft &&
             rep.gns_hom_residual < soft && rep.gns_star_residual < soft &&
             rep.gns_cyclic_residual < soft && rep.regular.defining < tol &&
             rep.regular.unitarity < tol && rep.regular.corep < tol &&
             rep.regular.translation < tol && rep.regular.density_rank == g.dim &&
             rep.sum_d_squared == g.dim && rep.orthogonality.pass && rep.cstar.pass &&
             rep.commutant.pass && rep.peter_weyl.pass && rep.intertwiner_residual < tol &&
             rep.s_min_singular > tol && rep.p_row_commutant_residual < soft &&
             rep.restrictions_equivalent;
  return rep;
}

inline json complex_vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

inline json report_to_json(const Report& rep) {
  json j;
  j["name"] = rep.name;
  j["dim"] = rep.dim;
  j["blocks"] = rep.blocks;
  j["tol"] = fmt17(rep.tol);
  j["seed"] = rep.seed;
  j["pass"] = rep.pass;

  json val;
  val["pass"] = rep.validation.pass;
  json checks;
  for (const auto& c : rep.validation.checks) checks[c.axiom] = fmt17(c.residual);
  val["residuals"] = std::move(checks);
  val["cancellation_ranks"] = json::array({rep.validation.rank1, rep.validation.rank2});
  val["expected_rank"] = rep.validation.expected_rank;
  val["violations"] = rep.validation.violations();
  j["validation"] = std::move(val);

  json haar;
  haar["coefficients"] = complex_vec_to_json(rep.haar_coeffs);
  haar["nullspace_dim"] = rep.haar_nullspace_dim;
  haar["invariance_residual"] = fmt17(rep.invariance_residual);
  haar["traciality_residual"] = fmt17(rep.traciality);
  haar["counit_residual"] = fmt17(rep.counit_residual);
  j["haar"] = std::move(haar);

  json gns;
  gns["min_gram_eig"] = fmt17(rep.min_gram_eig);
  gns["pairing_residual"] = fmt17(rep.gns_pairing_residual);
  gns["hom_residual"] = fmt17(rep.gns_hom_residual);
  gns["star_residual"] = fmt17(rep.gns_star_residual);
  gns["cyclic_residual"] = fmt17(rep.gns_cyclic_residual);
  j["gns"] = std::move(gns);

  json reg;
  reg["defining_residual"] = fmt17(rep.regular.defining);
  reg["unitarity_residual"] = fmt17(rep.regular.unitarity);
  reg["corep_residual"] = fmt17(rep.regular.corep);
  reg["translation_residual"] = fmt17(rep.regular.translation);
  reg["density_rank"] = rep.regular.density_rank;
  j["regular"] = std::move(reg);

  json classes = json::array();
  for (const auto& cl : rep.classes) {
    json c;
    c["id"] = cl.id;
    c["d"] = cl.rep.d;
    c["multiplicity"] = cl.mult;
    c["M"] = fmt17(cl.M);
    c["f_deviation"] = fmt17(max_abs(cl.F - Mat::Identity(cl.rep.d, cl.rep.d)));
    c["conjugate"] = cl.conj_class;
    c["character"] = complex_vec_to_json(cl.chi.coeffs);
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  j["sum_d_squared"] = rep.sum_d_squared;
  j["fourier_side"] = rep.side == HaSide::XA ? "xa" : "ax";
  j["fourier_side_residuals"] =
      json{{"xa", fmt17(rep.side_residual_xa)}, {"ax", fmt17(rep.side_residual_ax)}};

  json orth;
  orth["family1"] = fmt17(rep.orthogonality.fam1);
  orth["family2"] = fmt17(rep.orthogonality.fam2);
  orth["family3"] = fmt17(rep.orthogonality.fam3);
  orth["family4"] = fmt17(rep.orthogonality.fam4);
  orth["pass"] = rep.orthogonality.pass;
  j["orthogonality"] = std::move(orth);

  json cs;
  cs["sum_p_residual"] = fmt17(rep.cstar.sum_p_residual);
  cs["centrality_residual"] = fmt17(rep.cstar.centrality_residual);
  cs["projection_residual"] = fmt17(rep.cstar.projection_residual);
  cs["e_relation_residual"] = fmt17(rep.cstar.e_relation_residual);
  cs["e_action_residual"] = fmt17(rep.cstar.e_action_residual);
  cs["p_row_sum_residual"] = fmt17(rep.cstar.p_row_sum_residual);
  cs["p_row_orth_residual"] = fmt17(rep.cstar.p_row_orth_residual);
  cs["block_dims"] = rep.cstar.block_dims;
  cs["pass"] = rep.cstar.pass;
  j["cstar"] = std::move(cs);

  json comm;
  comm["dim_intertwiner"] = rep.commutant.dim_intertwiner;
  comm["dim_commutant"] = rep.commutant.dim_commutant;
  comm["intertwiner_in_commutant"] = fmt17(rep.commutant.containment_iv_in_comm);
  comm["commutant_in_intertwiner"] = fmt17(rep.commutant.containment_comm_in_iv);
  comm["pass"] = rep.commutant.pass;
  j["commutant"] = std::move(comm);

  json pw;
  pw["p_ranks"] = rep.peter_weyl.p_ranks;
  pw["row_ranks"] = rep.peter_weyl.row_ranks;
  pw["rank_residual"] = fmt17(rep.peter_weyl.rank_residual);
  pw["subspace_sum_residual"] = fmt17(rep.peter_weyl.subspace_sum_residual);
  pw["pass"] = rep.peter_weyl.pass;
  j["peter_weyl"] = std::move(pw);

  json itw;
  itw["residual"] = fmt17(rep.intertwiner_residual);
  itw["s_min_singular"] = fmt17(rep.s_min_singular);
  itw["p_row_commutant_residual"] = fmt17(rep.p_row_commutant_residual);
  itw["restrictions_equivalent"] = rep.restrictions_equivalent;
  j["intertwiner"] = std::move(itw);

  return j;
}

}  // namespace qg
