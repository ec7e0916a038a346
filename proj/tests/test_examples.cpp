#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qg/examples.hpp"
#include "qg/pipeline.hpp"

using namespace qg;

namespace {

// dihedral group of order 8: r^k -> k, s r^k -> 4 + k
CayleyTable d4_table() {
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      t[a][b] = (a + b) % 4;
      t[a][4 + b] = 4 + ((b - a) % 4 + 4) % 4;
      t[4 + a][b] = 4 + (a + b) % 4;
      t[4 + a][4 + b] = ((b - a) % 4 + 4) % 4;
    }
  return make_cayley(t);
}

Mat flip_coproduct(const QuantumGroup& g, int m) {
  const int d = g.dim;
  Mat diff(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      diff(k, l) = g.delta(k * d + l, m) - g.delta(l * d + k, m);
  return diff;
}

}  // namespace

TEST_CASE("cayley table constructors expose identity and inverses") {
  for (int n = 2; n <= 6; ++n) {
    const CayleyTable t = cyclic_table(n);
    CHECK(t.n == n);
    CHECK(t.identity == 0);
    for (int a = 0; a < n; ++a) {
      CHECK(t.table[a][t.inverse[a]] == t.identity);
      CHECK(t.inverse[a] == (n - a) % n);
    }
  }
  const CayleyTable s3 = s3_table();
  CHECK(s3.n == 6);
  CHECK(s3.identity == 0);
  bool abelian = true;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) abelian = abelian && s3.table[a][b] == s3.table[b][a];
  CHECK_FALSE(abelian);
}

TEST_CASE("defective multiplication tables are rejected") {
  CHECK_THROWS_AS(make_cayley({{0, 1}, {1}}), Error);
  CHECK_THROWS_AS(make_cayley({{0, 5}, {1, 0}}), Error);
  CHECK_THROWS_AS(make_cayley({{0, 0}, {1, 1}}), Error);
  // subtraction mod 3 is a Latin square without an identity row
  CHECK_THROWS_AS(make_cayley({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}), Error);
  // an order-5 loop: Latin with identity 0, but (1*1)*2 != 1*(1*2)
  const std::vector<std::vector<int>> loop = {{0, 1, 2, 3, 4},
                                              {1, 0, 3, 4, 2},
                                              {2, 4, 0, 1, 3},
                                              {3, 2, 4, 0, 1},
                                              {4, 3, 1, 2, 0}};
  try {
    make_cayley(loop);
    FAIL("expected a rejection");
  } catch (const Error& e) {
    CHECK(e.code == "InvalidTable");
  }
}

TEST_CASE("classical irreducibles of z4 are the discrete Fourier characters") {
  const auto irreps = classical_irreps(cyclic_table(4));
  REQUIRE(irreps.size() == 4);
  std::vector<Vec> oracle;
  for (int k = 0; k < 4; ++k) {
    Vec chi(4);
    for (int m = 0; m < 4; ++m) chi(m) = std::polar(1.0, 2.0 * M_PI * k * m / 4.0);
    oracle.push_back(chi);
  }
  std::sort(oracle.begin(), oracle.end(), detail::chi_less);
  for (int a = 0; a < 4; ++a) {
    CHECK(irreps[a].d == 1);
    CHECK((irreps[a].chi - oracle[a]).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("classical irreducibles of s3 match the hand-built character table") {
  const CayleyTable t = s3_table();
  const auto irreps = classical_irreps(t);
  REQUIRE(irreps.size() == 3);
  CHECK(irreps[0].d == 1);
  CHECK(irreps[1].d == 1);
  CHECK(irreps[2].d == 2);
  // permutations in lexicographic order: sign character, then trivial, then 2-dim
  Vec sign(6), triv(6), two(6);
  sign << 1, -1, -1, 1, 1, -1;
  triv << 1, 1, 1, 1, 1, 1;
  two << 2, 0, 0, -1, -1, 0;
  CHECK((irreps[0].chi - sign).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((irreps[1].chi - triv).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((irreps[2].chi - two).cwiseAbs().maxCoeff() < 1e-8);

  for (const auto& ir : irreps) {
    double hom = 0.0, uni = 0.0;
    for (int a = 0; a < t.n; ++a) {
      uni = std::max(uni, max_abs(ir.mats[a] * ir.mats[a].adjoint() -
                                  Mat::Identity(ir.d, ir.d)));
      for (int b = 0; b < t.n; ++b)
        hom = std::max(hom, max_abs(ir.mats[a] * ir.mats[b] - ir.mats[t.table[a][b]]));
    }
    CHECK(hom < 1e-10);
    CHECK(uni < 1e-10);
    cplx norm2 = 0.0;
    for (int a = 0; a < t.n; ++a) norm2 += ir.chi(a) * std::conj(ir.chi(a));
    CHECK(std::abs(norm2 - cplx(t.n)) < 1e-8);
  }
}

TEST_CASE("character rows of the dihedral group are orthonormal") {
  const CayleyTable t = d4_table();
  const CharacterTable ct = classical_character_oracle(t);
  REQUIRE(ct.dims == std::vector<int>({1, 1, 1, 1, 2}));
  for (std::size_t a = 0; a < ct.dims.size(); ++a)
    for (std::size_t b = 0; b < ct.dims.size(); ++b) {
      cplx ip = 0.0;
      for (int gidx = 0; gidx < t.n; ++gidx)
        ip += ct.chars(static_cast<Eigen::Index>(a), gidx) *
              std::conj(ct.chars(static_cast<Eigen::Index>(b), gidx));
      ip /= static_cast<double>(t.n);
      CHECK(std::abs(ip - (a == b ? cplx(1.0) : cplx(0.0))) < 1e-10);
    }
}

TEST_CASE("function algebras are coproducts of indicator columns") {
  const CayleyTable t = s3_table();
  const QuantumGroup g = function_algebra(t, "s3");
  CHECK(g.blocks == std::vector<int>(6, 1));
  for (int m = 0; m < t.n; ++m) {
    double ones = 0.0;
    for (int r = 0; r < t.n * t.n; ++r) {
      const cplx v = g.delta(r, m);
      CHECK((v == cplx(0.0) || v == cplx(1.0)));
      ones += v.real();
    }
    CHECK(ones == static_cast<double>(t.n));
  }
  CHECK(validate_cqg(g).pass);
}

TEST_CASE("group algebras are grouplike in the wedderburn basis") {
  for (const CayleyTable& t : {cyclic_table(3), s3_table(), d4_table()}) {
    const GroupAlgebra ga = group_algebra(t, "test");
    const int n = t.n;
    CHECK(validate_cqg(ga.g, 1e-10).pass);
    std::vector<int> dims;
    for (const auto& ir : classical_irreps(t)) dims.push_back(ir.d);
    CHECK(ga.g.blocks == dims);
    CHECK((ga.lambda.col(t.identity) - ga.g.unit_vector).cwiseAbs().maxCoeff() < 1e-12);
    for (int gidx = 0; gidx < n; ++gidx) {
      const Vec lg = ga.lambda.col(gidx);
      CHECK((Vec(ga.g.delta * lg) - kronvec(lg, lg)).cwiseAbs().maxCoeff() < 1e-10);
      for (int hidx = 0; hidx < n; ++hidx) {
        const Vec prod = mul_vec(ga.g, lg, ga.lambda.col(hidx));
        CHECK((prod - ga.lambda.col(t.table[gidx][hidx])).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("the eight-dimensional example has the advertised structure") {
  const QuantumGroup g = kac_paljutkin();
  CHECK(g.dim == 8);
  CHECK(g.blocks == std::vector<int>({1, 1, 1, 1, 2}));
  CHECK(validate_cqg(g, 1e-10).pass);

  for (int r = 0; r < 64; ++r)
    for (int m = 0; m < 8; ++m) {
      const cplx v = g.delta(r, m);
      CHECK(v.imag() == 0.0);
      const double a = std::abs(v.real());
      CHECK((a == 0.0 || a == 0.25 || a == 1.0));
    }

  // the matrix block keeps the algebra noncommutative
  const Vec a01 = Vec::Unit(8, 5), a10 = Vec::Unit(8, 6);
  CHECK((mul_vec(g, a01, a10) - mul_vec(g, a10, a01)).cwiseAbs().maxCoeff() == 1.0);

  double cocomm = 0.0;
  for (int m = 0; m < 8; ++m) cocomm = std::max(cocomm, max_abs(flip_coproduct(g, m)));
  CHECK(cocomm > 0.4);
}

TEST_CASE("commutativity and cocommutativity separate the builtin families") {
  const QuantumGroup fs3 = make_builtin("s3");
  double comm = 0.0, cocomm = 0.0;
  for (int i = 0; i < fs3.dim; ++i) {
    cocomm = std::max(cocomm, max_abs(flip_coproduct(fs3, i)));
    for (int j = 0; j < fs3.dim; ++j)
      comm = std::max(comm, (mul_vec(fs3, Vec::Unit(6, i), Vec::Unit(6, j)) -
                             mul_vec(fs3, Vec::Unit(6, j), Vec::Unit(6, i)))
                                .cwiseAbs()
                                .maxCoeff());
  }
  CHECK(comm == 0.0);
  CHECK(cocomm > 0.4);

  const QuantumGroup cs3 = make_builtin("cstar_s3");
  comm = 0.0;
  cocomm = 0.0;
  for (int i = 0; i < cs3.dim; ++i) {
    cocomm = std::max(cocomm, max_abs(flip_coproduct(cs3, i)));
    for (int j = 0; j < cs3.dim; ++j)
      comm = std::max(comm, (mul_vec(cs3, Vec::Unit(6, i), Vec::Unit(6, j)) -
                             mul_vec(cs3, Vec::Unit(6, j), Vec::Unit(6, i)))
                                .cwiseAbs()
                                .maxCoeff());
  }
  CHECK(comm > 0.4);
  CHECK(cocomm < 1e-12);
}

TEST_CASE("every builtin validates and unknown names are rejected") {
  const auto names = list_builtins();
  CHECK(names.size() == 9);
  for (const std::string& name : names) {
    const QuantumGroup g = make_builtin(name);
    INFO(name);
    CHECK(g.name == name);
    CHECK(validate_cqg(g).pass);
  }
  try {
    make_builtin("so_not_a_group");
    FAIL("expected a rejection");
  } catch (const Error& e) {
    CHECK(e.code == "NotFound");
  }
}
