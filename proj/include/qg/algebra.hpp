#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <utility>

#include "qg/linalg.hpp"

namespace qg {

struct AlgebraElement {
  Vec coeffs;
};

// Linear functional; evaluation is the plain (unconjugated) pairing with the
// coefficient vector of the argument.
struct Functional {
  Vec coeffs;
};

inline cplx eval(const Functional& f, const AlgebraElement& a) {
  return (f.coeffs.array() * a.coeffs.array()).sum();
}

// Finite-dimensional C*-algebra in multi-matrix form with a comultiplication
// tensor.  Basis: matrix units block-by-block, row-major.  delta is dim^2 x dim,
// column j = coefficients of Delta(e_j) in the Kronecker-ordered basis of A (x) A.
struct QuantumGroup {
  int dim = 0;
  std::vector<int> blocks;
  std::string name;
  Mat delta;

  // derived structure
  int N = 0;                                   // sum of block sizes
  std::vector<std::array<int, 3>> basis_index; // basis k -> (block, p, q)
  std::vector<int> block_offset;
  std::vector<Mat> mul_tensor;                 // mul_tensor[i](j,m): coeff of e_m in e_i e_j
  Mat star_matrix;                             // star(a) = star_matrix * conj(a)
  Vec unit_vector;
  std::vector<std::pair<int, int>> emb_pos;    // basis k -> (row, col) in M_N

  Functional counit;
  double counit_residual = 0.0;
};

inline int basis_size(const std::vector<int>& blocks) {
  int d = 0;
  for (int n : blocks) d += n * n;
  return d;
}

inline Functional compute_counit(const QuantumGroup& g, double* residual);

inline QuantumGroup make_quantum_group(std::vector<int> blocks, Mat delta,
                                       std::string name = "") {
  QuantumGroup g;
  g.blocks = std::move(blocks);
  g.name = std::move(name);
  for (int n : g.blocks) {
    if (n <= 0) throw Error("ShapeMismatch", "block sizes must be positive");
  }
  g.dim = basis_size(g.blocks);
  if (delta.rows() != static_cast<Eigen::Index>(g.dim) * g.dim ||
      delta.cols() != g.dim) {
    throw Error("ShapeMismatch", "delta must be dim^2 x dim");
  }
  g.delta = std::move(delta);

  g.N = std::accumulate(g.blocks.begin(), g.blocks.end(), 0);
  g.block_offset.resize(g.blocks.size());
  int off = 0;
  for (std::size_t b = 0; b < g.blocks.size(); ++b) {
    g.block_offset[b] = off;
    off += g.blocks[b];
  }
  for (std::size_t b = 0; b < g.blocks.size(); ++b) {
    for (int p = 0; p < g.blocks[b]; ++p)
      for (int q = 0; q < g.blocks[b]; ++q) {
        g.basis_index.push_back({static_cast<int>(b), p, q});
        g.emb_pos.emplace_back(g.block_offset[b] + p, g.block_offset[b] + q);
      }
  }

  auto idx_of = [&](int b, int p, int q) {
    int base = 0;
    for (int t = 0; t < b; ++t) base += g.blocks[t] * g.blocks[t];
    return base + p * g.blocks[b] + q;
  };

  g.mul_tensor.assign(g.dim, Mat::Zero(g.dim, g.dim));
  for (int i = 0; i < g.dim; ++i) {
    const auto [b1, p, q] = g.basis_index[i];
    for (int j = 0; j < g.dim; ++j) {
      const auto [b2, r, s] = g.basis_index[j];
      if (b1 == b2 && q == r) g.mul_tensor[i](j, idx_of(b1, p, s)) = 1.0;
    }
  }

  g.star_matrix = Mat::Zero(g.dim, g.dim);
  for (int k = 0; k < g.dim; ++k) {
    const auto [b, p, q] = g.basis_index[k];
    g.star_matrix(idx_of(b, q, p), k) = 1.0;
  }

  g.unit_vector = Vec::Zero(g.dim);
  for (int k = 0; k < g.dim; ++k) {
    const auto [b, p, q] = g.basis_index[k];
    if (p == q) g.unit_vector(k) = 1.0;
  }

  g.counit = compute_counit(g, &g.counit_residual);
  return g;
}

inline Mat embed(const QuantumGroup& g, const Vec& a) {
  Mat M = Mat::Zero(g.N, g.N);
  for (int k = 0; k < g.dim; ++k) M(g.emb_pos[k].first, g.emb_pos[k].second) = a(k);
  return M;
}

inline Vec unembed(const QuantumGroup& g, const Mat& M) {
  Vec a(g.dim);
  for (int k = 0; k < g.dim; ++k) a(k) = M(g.emb_pos[k].first, g.emb_pos[k].second);
  return a;
}

// A (x) A realized inside M_{N^2} (Kronecker order).
inline Mat embed2(const QuantumGroup& g, const Vec& x) {
  Mat M = Mat::Zero(g.N * g.N, g.N * g.N);
  for (int k = 0; k < g.dim; ++k) {
    const auto [rk, ck] = g.emb_pos[k];
    for (int l = 0; l < g.dim; ++l) {
      const cplx v = x(k * g.dim + l);
      if (v == cplx(0.0)) continue;
      const auto [rl, cl] = g.emb_pos[l];
      M(rk * g.N + rl, ck * g.N + cl) = v;
    }
  }
  return M;
}

inline Vec unembed2(const QuantumGroup& g, const Mat& M) {
  Vec x(g.dim * g.dim);
  for (int k = 0; k < g.dim; ++k) {
    const auto [rk, ck] = g.emb_pos[k];
    for (int l = 0; l < g.dim; ++l) {
      const auto [rl, cl] = g.emb_pos[l];
      x(k * g.dim + l) = M(rk * g.N + rl, ck * g.N + cl);
    }
  }
  return x;
}

inline Vec mul_vec(const QuantumGroup& g, const Vec& a, const Vec& b) {
  return unembed(g, embed(g, a) * embed(g, b));
}

inline Vec star_vec(const QuantumGroup& g, const Vec& a) {
  return g.star_matrix * a.conjugate();
}

inline AlgebraElement mul(const QuantumGroup& g, const AlgebraElement& a,
                          const AlgebraElement& b) {
  if (a.coeffs.size() != g.dim || b.coeffs.size() != g.dim)
    throw Error("ShapeMismatch", "element size != dim");
  return {mul_vec(g, a.coeffs, b.coeffs)};
}

inline AlgebraElement star(const QuantumGroup& g, const AlgebraElement& a) {
  if (a.coeffs.size() != g.dim) throw Error("ShapeMismatch", "element size != dim");
  return {star_vec(g, a.coeffs)};
}

inline AlgebraElement unit_element(const QuantumGroup& g) {
  return {g.unit_vector};
}

inline AlgebraElement basis_element(const QuantumGroup& g, int k) {
  Vec v = Vec::Zero(g.dim);
  v(k) = 1.0;
  return {v};
}

// f * a = (iota (x) f) Delta(a): apply f to the second leg.
inline AlgebraElement convolve_fa(const QuantumGroup& g, const Functional& f,
                                  const AlgebraElement& a) {
  if (f.coeffs.size() != g.dim || a.coeffs.size() != g.dim)
    throw Error("ShapeMismatch", "size != dim");
  Vec out = Vec::Zero(g.dim);
  for (int j = 0; j < g.dim; ++j) {
    if (a.coeffs(j) == cplx(0.0)) continue;
    for (int i = 0; i < g.dim; ++i) {
      cplx s = 0.0;
      for (int l = 0; l < g.dim; ++l) s += g.delta(i * g.dim + l, j) * f.coeffs(l);
      out(i) += s * a.coeffs(j);
    }
  }
  return {out};
}

// a * f = (f (x) iota) Delta(a): apply f to the first leg.
inline AlgebraElement convolve_af(const QuantumGroup& g, const AlgebraElement& a,
                                  const Functional& f) {
  if (f.coeffs.size() != g.dim || a.coeffs.size() != g.dim)
    throw Error("ShapeMismatch", "size != dim");
  Vec out = Vec::Zero(g.dim);
  for (int j = 0; j < g.dim; ++j) {
    if (a.coeffs(j) == cplx(0.0)) continue;
    for (int l = 0; l < g.dim; ++l) {
      cplx s = 0.0;
      for (int k = 0; k < g.dim; ++k) s += g.delta(k * g.dim + l, j) * f.coeffs(k);
      out(l) += s * a.coeffs(j);
    }
  }
  return {out};
}

// Counit recovered from Delta: the unique eps with (iota (x) eps)Delta = id =
// (eps (x) iota)Delta, solved in the least-squares sense so invalid inputs
// still produce a diagnostic residual.
inline Functional compute_counit(const QuantumGroup& g, double* residual) {
  const int d = g.dim;
  Mat A(2 * d * d, d);
  Vec b(2 * d * d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      for (int l = 0; l < d; ++l) A(k * d + j, l) = g.delta(k * d + l, j);
      b(k * d + j) = (k == j) ? 1.0 : 0.0;
    }
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) A(d * d + l * d + j, k) = g.delta(k * d + l, j);
      b(d * d + l * d + j) = (l == j) ? 1.0 : 0.0;
    }
  Vec eps = A.colPivHouseholderQr().solve(b);
  if (residual) *residual = (A * eps - b).cwiseAbs().maxCoeff();
  return {eps};
}

// The two cancellation maps of the density axiom, as dim^2 x dim^2 matrices
// over the coefficient spaces.  Free-standing so transformed tensors can be
// fed in directly (basis independence of the rank check).
inline std::pair<Mat, Mat> cancellation_maps(const std::vector<Mat>& mul_tensor,
                                             const Mat& delta) {
  const int d = static_cast<int>(mul_tensor.size());
  Mat T1 = Mat::Zero(d * d, d * d);  // a(x)b -> (a(x)1)Delta(b)
  Mat T2 = Mat::Zero(d * d, d * d);  // a(x)b -> (1(x)a)Delta(b)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const cplx dv = delta(k * d + l, j);
          if (dv == cplx(0.0)) continue;
          for (int m = 0; m < d; ++m) {
            if (mul_tensor[i](k, m) != cplx(0.0))
              T1(m * d + l, i * d + j) += mul_tensor[i](k, m) * dv;
            if (mul_tensor[i](l, m) != cplx(0.0))
              T2(k * d + m, i * d + j) += mul_tensor[i](l, m) * dv;
          }
        }
  return {T1, T2};
}

struct ValidationCheck {
  std::string axiom;
  double residual = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  int rank1 = 0, rank2 = 0;
  int expected_rank = 0;
  double tol = kDefaultTol;
  bool pass = false;

  const ValidationCheck* find(const std::string& axiom) const {
    for (const auto& c : checks)
      if (c.axiom == axiom) return &c;
    return nullptr;
  }
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    auto put = [&](const std::string& cls) {
      if (std::find(out.begin(), out.end(), cls) == out.end()) out.push_back(cls);
    };
    for (const auto& c : checks) {
      if (c.pass) continue;
      if (c.axiom == "coassociativity")
        put("CoassociativityViolation");
      else if (c.axiom.rfind("delta_", 0) == 0)
        put("StarHomViolation");
      else
        put("AlgebraViolation");
    }
    if (rank1 != expected_rank || rank2 != expected_rank) put("DensityViolation");
    return out;
  }
};

inline ValidationReport validate_cqg(const QuantumGroup& g, double tol = kDefaultTol) {
  ValidationReport rep;
  rep.tol = tol;
  const int d = g.dim;
  rep.expected_rank = d * d;
  auto add = [&](const std::string& axiom, double r) {
    rep.checks.push_back({axiom, r, r < tol});
  };

  double r = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Vec ab = mul_vec(g, Vec::Unit(d, i), Vec::Unit(d, j));
      for (int k = 0; k < d; ++k) {
        const Vec lhs = mul_vec(g, ab, Vec::Unit(d, k));
        const Vec rhs = mul_vec(g, Vec::Unit(d, i), mul_vec(g, Vec::Unit(d, j), Vec::Unit(d, k)));
        r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
  add("associativity", r);

  r = 0.0;
  for (int i = 0; i < d; ++i) {
    r = std::max(r, (star_vec(g, star_vec(g, Vec::Unit(d, i))) - Vec::Unit(d, i))
                        .cwiseAbs().maxCoeff());
    for (int j = 0; j < d; ++j) {
      const Vec lhs = star_vec(g, mul_vec(g, Vec::Unit(d, i), Vec::Unit(d, j)));
      const Vec rhs = mul_vec(g, star_vec(g, Vec::Unit(d, j)), star_vec(g, Vec::Unit(d, i)));
      r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  add("star", r);

  r = 0.0;
  for (int i = 0; i < d; ++i) {
    r = std::max(r, (mul_vec(g, g.unit_vector, Vec::Unit(d, i)) - Vec::Unit(d, i))
                        .cwiseAbs().maxCoeff());
    r = std::max(r, (mul_vec(g, Vec::Unit(d, i), g.unit_vector) - Vec::Unit(d, i))
                        .cwiseAbs().maxCoeff());
  }
  add("unit", r);

  // Delta as *-homomorphism, checked inside M_{N^2}.
  std::vector<Mat> D2(d);
  for (int j = 0; j < d; ++j) D2[j] = embed2(g, g.delta.col(j));
  r = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Vec pc = mul_vec(g, Vec::Unit(d, i), Vec::Unit(d, j));
      Mat rhs = Mat::Zero(g.N * g.N, g.N * g.N);
      for (int m = 0; m < d; ++m)
        if (pc(m) != cplx(0.0)) rhs += pc(m) * D2[m];
      r = std::max(r, max_abs(D2[i] * D2[j] - rhs));
    }
  add("delta_mult", r);

  r = 0.0;
  for (int i = 0; i < d; ++i) {
    const Vec si = star_vec(g, Vec::Unit(d, i));
    Mat lhs = Mat::Zero(g.N * g.N, g.N * g.N);
    for (int m = 0; m < d; ++m)
      if (si(m) != cplx(0.0)) lhs += si(m) * D2[m];
    r = std::max(r, max_abs(lhs - Mat(D2[i].adjoint())));
  }
  add("delta_star", r);

  add("delta_unit", (g.delta * g.unit_vector - kronvec(g.unit_vector, g.unit_vector))
                        .cwiseAbs().maxCoeff());

  r = 0.0;
  for (int j = 0; j < d; ++j) {
    // (Delta (x) id)Delta vs (id (x) Delta)Delta on e_j
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        for (int l = 0; l < d; ++l) {
          cplx m1 = 0.0, m2 = 0.0;
          for (int k = 0; k < d; ++k) m1 += g.delta(p * d + q, k) * g.delta(k * d + l, j);
          for (int k = 0; k < d; ++k) m2 += g.delta(p * d + k, j) * g.delta(q * d + l, k);
          r = std::max(r, std::abs(m1 - m2));
        }
  }
  add("coassociativity", r);

  const auto [T1, T2] = cancellation_maps(g.mul_tensor, g.delta);
  rep.rank1 = svd_rank(T1);
  rep.rank2 = svd_rank(T2);

  rep.pass = rep.rank1 == rep.expected_rank && rep.rank2 == rep.expected_rank;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace qg
