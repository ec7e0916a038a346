#include <catch2/catch_amalgamated.hpp>

#include "qg/pipeline.hpp"

using namespace qg;

namespace {

// 1x1 corepresentations of a cyclic function algebra: the group characters.
CoRep cyclic_character(const QuantumGroup& g, int k) {
  const int n = g.dim;
  Vec chi(n);
  for (int m = 0; m < n; ++m)
    chi(m) = std::polar(1.0, 2.0 * M_PI * k * m / n);
  return make_corep(1, {{AlgebraElement{chi}}});
}

// A corepresentation of C(Gamma) from an ordinary matrix representation.
CoRep from_classical(const QuantumGroup& g, const std::vector<Mat>& mats) {
  const int d = static_cast<int>(mats.front().rows());
  std::vector<std::vector<AlgebraElement>> e(d, std::vector<AlgebraElement>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec c(g.dim);
      for (int m = 0; m < g.dim; ++m) c(m) = mats[m](i, j);
      e[i][j] = {c};
    }
  return make_corep(d, std::move(e));
}

CoRep direct_sum(const QuantumGroup& g, const CoRep& u, const CoRep& w) {
  const int d = u.d + w.d;
  std::vector<std::vector<AlgebraElement>> e(
      d, std::vector<AlgebraElement>(d, AlgebraElement{Vec::Zero(g.dim)}));
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j) e[i][j] = u.entries[i][j];
  for (int i = 0; i < w.d; ++i)
    for (int j = 0; j < w.d; ++j) e[u.d + i][u.d + j] = w.entries[i][j];
  return make_corep(d, std::move(e));
}

}  // namespace

TEST_CASE("cyclic characters are one-dimensional unitary corepresentations") {
  const QuantumGroup g = make_builtin("z4");
  for (int k = 0; k < 4; ++k) {
    const CoRep u = cyclic_character(g, k);
    const CoRepCheck chk = is_corep(g, u);
    INFO(k);
    CHECK(chk.ok);
    CHECK(chk.corep_residual < 1e-12);
    CHECK(chk.unitarity_residual < 1e-12);
    CHECK(is_irreducible(g, u));
  }
}

TEST_CASE("intertwiners between characters detect equality only") {
  const QuantumGroup g = make_builtin("z4");
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const auto basis = intertwiner_space(g, cyclic_character(g, k),
                                           cyclic_character(g, l));
      INFO(k << " " << l);
      CHECK(basis.size() == (k == l ? 1u : 0u));
    }
  const auto eq = equivalence(g, cyclic_character(g, 1), cyclic_character(g, 1));
  REQUIRE(eq.has_value());
  CHECK(std::abs((*eq)(0, 0) - cplx(1.0)) < 1e-12);
  CHECK_FALSE(equivalence(g, cyclic_character(g, 1), cyclic_character(g, 3)));
}

TEST_CASE("classical representation of the symmetric group transports to a corep") {
  const CayleyTable t = s3_table();
  const QuantumGroup g = function_algebra(t, "s3");
  const auto irreps = classical_irreps(t);
  REQUIRE(irreps.size() == 3);
  const auto& two = irreps.back();
  REQUIRE(two.d == 2);
  const CoRep u = from_classical(g, two.mats);
  const CoRepCheck chk = is_corep(g, u);
  CHECK(chk.ok);
  CHECK(chk.corep_residual < 1e-12);
  CHECK(chk.unitarity_residual < 1e-10);
  CHECK(is_irreducible(g, u));

  const FMatrix fm = f_matrix(g, u);
  CHECK(max_abs(fm.F - Mat::Identity(2, 2)) < 1e-10);
  CHECK(std::abs(fm.M - 2.0) < 1e-10);

  // real character, so the contragredient is equivalent to u itself
  const CoRep ubar = contragredient(g, u);
  CHECK(equivalence(g, ubar, u).has_value());
}

TEST_CASE("contragredient is an involution") {
  const CayleyTable t = s3_table();
  const QuantumGroup g = function_algebra(t, "s3");
  const CoRep u = from_classical(g, classical_irreps(t).back().mats);
  const CoRep uu = contragredient(g, contragredient(g, u));
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j)
      CHECK((uu.entries[i][j].coeffs - u.entries[i][j].coeffs).cwiseAbs().maxCoeff() <
            1e-14);
}

TEST_CASE("inverse-transpose applied twice returns a unitary corep") {
  const QuantumGroup g = kac_paljutkin();
  const PipelineState st = run_stages(g);
  const CoRep& u = st.dec.classes.back().rep;
  REQUIRE(u.d == 2);
  const CoRep ucc = corep_inverse_transpose(g, corep_inverse_transpose(g, u));
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j)
      CHECK((ucc.entries[i][j].coeffs - u.entries[i][j].coeffs).cwiseAbs().maxCoeff() <
            1e-10);
}

TEST_CASE("characters add over direct sums and reducibility is detected") {
  const QuantumGroup g = make_builtin("z3");
  const CoRep u0 = cyclic_character(g, 0), u1 = cyclic_character(g, 1);
  const CoRep s = direct_sum(g, u0, u1);
  CHECK(is_corep(g, s).ok);
  CHECK_FALSE(is_irreducible(g, s));
  CHECK(intertwiner_space(g, s, s).size() == 2);
  const Vec want = u0.entries[0][0].coeffs + u1.entries[0][0].coeffs;
  CHECK((character(g, s).coeffs - want).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(f_matrix(g, s), Error);
}

TEST_CASE("equivalence of permuted direct summands is the permutation") {
  const QuantumGroup g = make_builtin("z3");
  const CoRep a = direct_sum(g, cyclic_character(g, 0), cyclic_character(g, 1));
  const CoRep b = direct_sum(g, cyclic_character(g, 1), cyclic_character(g, 0));
  const auto eq = equivalence(g, a, b);
  REQUIRE(eq.has_value());
  Mat perm(2, 2);
  perm << 0, 1, 1, 0;
  CHECK(max_abs(*eq - perm) < 1e-10);
}

TEST_CASE("intertwiner bases are orthonormal") {
  const QuantumGroup g = make_builtin("z3");
  const CoRep s = direct_sum(g, cyclic_character(g, 0), cyclic_character(g, 1));
  const auto basis = intertwiner_space(g, s, s);
  REQUIRE(basis.size() == 2);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const cplx ip = (basis[a].adjoint() * basis[b]).trace();
      CHECK(std::abs(ip - cplx(a == b ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("subspace projections of characters are rank one and orthogonal") {
  const QuantumGroup g = make_builtin("z3");
  const HaarResult res = haar_state(g);
  const GnsSpace gns = gns_construct(g, res.h);
  const Mat p0 = subspace_projection(gns, trivial_corep(g));
  CHECK((p0 * gns.xi - gns.xi).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(p0.trace().real() - 1.0) < 1e-12);
  const Mat p1 = subspace_projection(gns, cyclic_character(g, 1));
  CHECK(std::abs(p1.trace().real() - 1.0) < 1e-12);
  CHECK((p1 * gns.xi).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(max_abs(p0 * p1) < 1e-12);
}

TEST_CASE("normalized basis functionals on a cyclic algebra reduce to the counit") {
  const QuantumGroup g = make_builtin("z3");
  std::vector<IrrepClass> classes;
  for (int k = 0; k < 3; ++k) {
    IrrepClass cl;
    cl.id = k;
    cl.rep = cyclic_character(g, k);
    cl.F = Mat::Identity(1, 1);
    cl.M = 1.0;
    cl.chi = character(g, cl.rep);
    cl.a_elem = star(g, cl.chi);
    classes.push_back(std::move(cl));
  }
  const auto [f1, fm1] = woronowicz_functionals(g, classes);
  CHECK((f1.coeffs - g.counit.coeffs).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((fm1.coeffs - g.counit.coeffs).cwiseAbs().maxCoeff() < 1e-12);

  const HaarResult res = haar_state(g);
  const OrthogonalityReport rep = orthogonality_check(g, classes, res.h);
  CHECK(rep.pass);
  CHECK(rep.fam1 < 1e-12);
  CHECK(rep.fam2 < 1e-12);
  CHECK(rep.fam3 < 1e-12);
  CHECK(rep.fam4 < 1e-12);
}

TEST_CASE("incomplete class lists are rejected") {
  const QuantumGroup g = make_builtin("z3");
  std::vector<IrrepClass> classes;
  IrrepClass cl;
  cl.rep = cyclic_character(g, 0);
  cl.F = Mat::Identity(1, 1);
  cl.M = 1.0;
  classes.push_back(std::move(cl));
  CHECK_THROWS_AS(woronowicz_functionals(g, classes), Error);
}
