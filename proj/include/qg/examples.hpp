#pragma once

#include <array>
#include <string>

#include "qg/regular.hpp"

namespace qg {

struct CayleyTable {
  int n = 0;
  std::vector<std::vector<int>> table;  // table[a][b] = a * b
  int identity = -1;
  std::vector<int> inverse;
};

inline CayleyTable make_cayley(std::vector<std::vector<int>> table) {
  CayleyTable t;
  t.n = static_cast<int>(table.size());
  if (t.n == 0) throw Error("InvalidTable", "empty table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != t.n)
      throw Error("InvalidTable", "table is not square");
    for (int v : row)
      if (v < 0 || v >= t.n) throw Error("InvalidTable", "entry out of range");
  }
  for (int a = 0; a < t.n; ++a) {
    std::vector<bool> row(t.n, false), col(t.n, false);
    for (int b = 0; b < t.n; ++b) {
      if (row[table[a][b]]) throw Error("InvalidTable", "repeated entry in a row");
      row[table[a][b]] = true;
      if (col[table[b][a]]) throw Error("InvalidTable", "repeated entry in a column");
      col[table[b][a]] = true;
    }
  }
  for (int a = 0; a < t.n; ++a)
    for (int b = 0; b < t.n; ++b)
      for (int c = 0; c < t.n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error("InvalidTable", "not associative");
  for (int e = 0; e < t.n; ++e) {
    bool ok = true;
    for (int a = 0; a < t.n; ++a)
      ok = ok && table[e][a] == a && table[a][e] == a;
    if (ok) {
      t.identity = e;
      break;
    }
  }
  if (t.identity < 0) throw Error("InvalidTable", "no identity element");
  t.inverse.assign(t.n, -1);
  for (int a = 0; a < t.n; ++a)
    for (int b = 0; b < t.n; ++b)
      if (table[a][b] == t.identity) t.inverse[a] = b;
  for (int a = 0; a < t.n; ++a)
    if (t.inverse[a] < 0) throw Error("InvalidTable", "missing inverse");
  t.table = std::move(table);
  return t;
}

inline CayleyTable cyclic_table(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return make_cayley(std::move(table));
}

// Permutations of {0,1,2} in lexicographic order, composed left-to-right:
// (a*b)(x) = a(b(x)).
inline CayleyTable s3_table() {
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  auto find = [&](const std::array<int, 3>& p) {
    for (int t = 0; t < 6; ++t)
      if (perms[t] == p) return t;
    return -1;
  };
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      table[a][b] = find(c);
    }
  return make_cayley(std::move(table));
}

// The commutative algebra of functions on a finite group, coproduct dual to
// the multiplication: Delta(e_m) = sum_{ab=m} e_a (x) e_b.
inline QuantumGroup function_algebra(const CayleyTable& t, std::string name) {
  const int n = t.n;
  Mat delta = Mat::Zero(n * n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) delta(a * n + b, t.table[a][b]) = 1.0;
  return make_quantum_group(std::vector<int>(n, 1), delta, std::move(name));
}

struct ClassicalIrrep {
  int d = 0;
  std::vector<Mat> mats;  // one unitary per group element
  Vec chi;                // chi(g) = tr mats[g]
};

namespace detail {

inline std::vector<Mat> matrix_commutant(const std::vector<Mat>& reps) {
  const int d = static_cast<int>(reps.front().rows());
  Mat A = Mat::Zero(static_cast<Eigen::Index>(reps.size()) * d * d, d * d);
  for (std::size_t m = 0; m < reps.size(); ++m) {
    const Mat& U = reps[m];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Eigen::Index row = (static_cast<Eigen::Index>(m) * d + i) * d + j;
        for (int k = 0; k < d; ++k) {
          A(row, i * d + k) += U(k, j);  // (XU)(i,j)
          A(row, k * d + j) -= U(i, k);  // (UX)(i,j)
        }
      }
  }
  std::vector<Mat> out;
  for (const Vec& x : nullspace(A)) {
    Mat X(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) X(i, j) = x(i * d + j);
    out.push_back(std::move(X));
  }
  return out;
}

inline bool chi_less(const Vec& a, const Vec& b) {
  for (int m = 0; m < a.size(); ++m) {
    const double ar = std::round(a(m).real() * 1e9) / 1e9;
    const double br = std::round(b(m).real() * 1e9) / 1e9;
    if (ar != br) return ar < br;
    const double ai = std::round(a(m).imag() * 1e9) / 1e9;
    const double bi = std::round(b(m).imag() * 1e9) / 1e9;
    if (ai != bi) return ai < bi;
  }
  return false;
}

}  // namespace detail

// Irreducible unitary representations of a finite group, found by splitting
// the left translation representation along its commutant (the right
// translations).
inline std::vector<ClassicalIrrep> classical_irreps(const CayleyTable& t,
                                                    std::uint64_t seed = 7) {
  const int n = t.n;
  std::vector<Mat> trans(n, Mat::Zero(n, n));
  for (int gidx = 0; gidx < n; ++gidx)
    for (int h = 0; h < n; ++h) trans[gidx](t.table[gidx][h], h) = 1.0;
  std::vector<Mat> com(n, Mat::Zero(n, n));
  for (int gidx = 0; gidx < n; ++gidx)
    for (int h = 0; h < n; ++h) com[gidx](t.table[h][gidx], h) = 1.0;

  Rng rng(seed);
  std::deque<Mat> queue;  // isometries onto invariant subspaces
  for (const Mat& W : detail::eigencluster_isometries(detail::random_hermitian(com, rng)))
    queue.push_back(W);

  std::vector<ClassicalIrrep> irreps;
  int iterations = 0;
  while (!queue.empty()) {
    if (++iterations > 10 * n)
      throw Error("IrreducibilitySplitFailure", "refinement exceeded iteration cap");
    const Mat W = queue.front();
    queue.pop_front();
    std::vector<Mat> sub(n);
    for (int gidx = 0; gidx < n; ++gidx) sub[gidx] = W.adjoint() * trans[gidx] * W;
    const auto self = detail::matrix_commutant(sub);
    if (self.size() != 1) {
      for (const Mat& Q : detail::eigencluster_isometries(
               detail::random_hermitian(self, rng)))
        queue.push_back(W * Q);
      continue;
    }
    ClassicalIrrep ir;
    ir.d = static_cast<int>(W.cols());
    ir.mats = std::move(sub);
    ir.chi = Vec(n);
    for (int gidx = 0; gidx < n; ++gidx) ir.chi(gidx) = ir.mats[gidx].trace();
    bool known = false;
    for (const auto& other : irreps)
      known = known || (other.d == ir.d && (other.chi - ir.chi).cwiseAbs().maxCoeff() < 1e-6);
    if (!known) irreps.push_back(std::move(ir));
  }

  int sum_d2 = 0;
  for (const auto& ir : irreps) sum_d2 += ir.d * ir.d;
  if (sum_d2 != n)
    throw Error("IrreducibilitySplitFailure", "sum of squared dimensions != order");
  std::sort(irreps.begin(), irreps.end(),
            [](const ClassicalIrrep& a, const ClassicalIrrep& b) {
              if (a.d != b.d) return a.d < b.d;
              return detail::chi_less(a.chi, b.chi);
            });
  return irreps;
}

struct CharacterTable {
  std::vector<int> dims;
  Mat chars;  // chars(class, g)
};

inline CharacterTable classical_character_oracle(const CayleyTable& t,
                                                 std::uint64_t seed = 7) {
  const auto irreps = classical_irreps(t, seed);
  CharacterTable ct;
  ct.chars = Mat(static_cast<Eigen::Index>(irreps.size()), t.n);
  for (std::size_t a = 0; a < irreps.size(); ++a) {
    ct.dims.push_back(irreps[a].d);
    ct.chars.row(static_cast<Eigen::Index>(a)) = irreps[a].chi.transpose();
  }
  return ct;
}

struct GroupAlgebra {
  QuantumGroup g;
  Mat lambda;  // column g = coordinates of the group element lambda_g
  CayleyTable table;
};

// The group C*-algebra in its Wedderburn matrix-unit basis, coproduct
// determined by Delta(lambda_g) = lambda_g (x) lambda_g.
inline GroupAlgebra group_algebra(const CayleyTable& t, std::string name) {
  const auto irreps = classical_irreps(t);
  const int n = t.n;
  std::vector<int> blocks;
  for (const auto& ir : irreps) blocks.push_back(ir.d);
  Mat lambda(n, n);
  for (int gidx = 0; gidx < n; ++gidx) {
    int m = 0;
    for (const auto& ir : irreps)
      for (int i = 0; i < ir.d; ++i)
        for (int j = 0; j < ir.d; ++j) lambda(m++, gidx) = ir.mats[gidx](i, j);
  }
  const Mat lambda_inv = lambda.inverse();
  Mat delta = Mat::Zero(n * n, n);
  for (int m = 0; m < n; ++m)
    for (int gidx = 0; gidx < n; ++gidx) {
      const cplx c = lambda_inv(gidx, m);
      if (std::abs(c) < 1e-14) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          delta(k * n + l, m) += c * lambda(k, gidx) * lambda(l, gidx);
    }
  GroupAlgebra ga{make_quantum_group(blocks, delta, std::move(name)), lambda, t};
  return ga;
}

// The eight-dimensional quantum group C^4 (+) M_2: the Klein four-group part
// carries an ordinary XOR coproduct corrected by rank-one projections built
// from xi = (1,-1,-1,-1)/2, and the matrix block is moved by two Pauli frames.
inline QuantumGroup kac_paljutkin() {
  const int d = 8;
  const cplx im(0.0, 1.0);
  std::array<Mat, 4> pauli;
  for (auto& m : pauli) m = Mat::Zero(2, 2);
  pauli[0] << 1, 0, 0, 1;
  pauli[1] << 0, 1, 1, 0;
  pauli[2] << 0, -im, im, 0;
  pauli[3] << 1, 0, 0, -1;
  const std::array<Mat, 4> v = {pauli[0], pauli[1], pauli[2], pauli[3]};
  const std::array<Mat, 4> w = {pauli[0], pauli[3], pauli[2], pauli[1]};
  Vec xi(4);
  xi << 0.5, -0.5, -0.5, -0.5;
  const auto aidx = [](int k, int l) { return 4 + 2 * k + l; };

  Mat delta = Mat::Zero(d * d, d);
  const Mat id2 = Mat::Identity(2, 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) delta(j * d + (i ^ j), i) = 1.0;
    const Mat Vi = kron(v[i], id2);
    const Mat P = Vi * (xi * xi.adjoint()) * Vi.adjoint();
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m)
          for (int n = 0; n < 2; ++n)
            delta(aidx(k, m) * d + aidx(l, n), i) = P(k * 2 + l, m * 2 + n);
  }
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      Mat E = Mat::Zero(2, 2);
      E(k, l) = 1.0;
      for (int j = 0; j < 4; ++j) {
        const Mat B = v[j] * E * v[j].adjoint();
        const Mat C = w[j] * E * w[j].adjoint();
        for (int m = 0; m < 2; ++m)
          for (int n = 0; n < 2; ++n) {
            delta(j * d + aidx(m, n), aidx(k, l)) = B(m, n);
            delta(aidx(m, n) * d + j, aidx(k, l)) = C(m, n);
          }
      }
    }
  return make_quantum_group({1, 1, 1, 1, 2}, delta, "kac_paljutkin");
}

inline std::vector<std::string> list_builtins() {
  return {"z2", "z3", "z4", "z5", "z6", "s3", "cstar_z3", "cstar_s3", "kac_paljutkin"};
}

inline QuantumGroup make_builtin(const std::string& name) {
  if (name.size() == 2 && name[0] == 'z' && name[1] >= '2' && name[1] <= '9')
    return function_algebra(cyclic_table(name[1] - '0'), name);
  if (name == "s3") return function_algebra(s3_table(), name);
  if (name == "cstar_z3") return group_algebra(cyclic_table(3), name).g;
  if (name == "cstar_s3") return group_algebra(s3_table(), name).g;
  if (name == "kac_paljutkin") return kac_paljutkin();
  throw Error("NotFound", "unknown builtin: " + name);
}

}  // namespace qg
