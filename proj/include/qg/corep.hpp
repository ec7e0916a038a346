#pragma once

#include <optional>

#include "qg/haar.hpp"

namespace qg {

// d x d matrix over A.  entries[i][j] is the coefficient vector of u_ij.
struct CoRep {
  int d = 0;
  std::vector<std::vector<AlgebraElement>> entries;
  bool is_corep_flag = false;
  bool is_unitary_flag = false;
  bool is_irreducible_flag = false;
};

inline CoRep make_corep(int d, std::vector<std::vector<AlgebraElement>> entries) {
  CoRep u;
  u.d = d;
  u.entries = std::move(entries);
  return u;
}

inline CoRep trivial_corep(const QuantumGroup& g) {
  return make_corep(1, {{unit_element(g)}});
}

inline Mat embed_corep(const QuantumGroup& g, const CoRep& u) {
  Mat B = Mat::Zero(u.d * g.N, u.d * g.N);
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j)
      B.block(i * g.N, j * g.N, g.N, g.N) = embed(g, u.entries[i][j].coeffs);
  return B;
}

struct CoRepCheck {
  bool ok = false;
  double corep_residual = 0.0;
  double unitarity_residual = 0.0;
};

inline CoRepCheck is_corep(const QuantumGroup& g, const CoRep& u, double tol = kDefaultTol) {
  const int d = g.dim;
  CoRepCheck out;
  double r = 0.0;
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j) {
      Vec lhs = g.delta * u.entries[i][j].coeffs;
      for (int k = 0; k < u.d; ++k)
        lhs -= kronvec(u.entries[i][k].coeffs, u.entries[k][j].coeffs);
      r = std::max(r, lhs.cwiseAbs().maxCoeff());
    }
  out.corep_residual = r;
  const Mat B = embed_corep(g, u);
  out.unitarity_residual =
      std::max(max_abs(B * B.adjoint() - Mat::Identity(B.rows(), B.cols())),
               max_abs(B.adjoint() * B - Mat::Identity(B.rows(), B.cols())));
  (void)d;
  out.ok = out.corep_residual < tol;
  return out;
}

// Orthonormal basis (Frobenius) of {T : (T (x) 1) u = w (T (x) 1)}, T of shape
// d_w x d_u, from the SVD nullspace of the intertwining system.
inline std::vector<Mat> intertwiner_space(const QuantumGroup& g, const CoRep& u,
                                          const CoRep& w, double rel = kRankRelTol) {
  const int du = u.d, dw = w.d, d = g.dim;
  Mat A = Mat::Zero(dw * du * d, dw * du);
  for (int i = 0; i < dw; ++i)
    for (int j = 0; j < du; ++j)
      for (int m = 0; m < d; ++m) {
        const Eigen::Index row = (static_cast<Eigen::Index>(i) * du + j) * d + m;
        for (int k = 0; k < du; ++k) A(row, i * du + k) += u.entries[k][j].coeffs(m);
        for (int k = 0; k < dw; ++k) A(row, k * du + j) -= w.entries[i][k].coeffs(m);
      }
  std::vector<Mat> basis;
  for (const Vec& t : nullspace(A, rel)) {
    Mat T(dw, du);
    for (int i = 0; i < dw; ++i)
      for (int k = 0; k < du; ++k) T(i, k) = t(i * du + k);
    basis.push_back(T);
  }
  return basis;
}

inline bool is_irreducible(const QuantumGroup& g, const CoRep& u, double rel = kRankRelTol) {
  return intertwiner_space(g, u, u, rel).size() == 1;
}

inline double intertwining_residual(const QuantumGroup& g, const CoRep& u,
                                    const CoRep& w, const Mat& T) {
  double r = 0.0;
  for (int i = 0; i < w.d; ++i)
    for (int j = 0; j < u.d; ++j) {
      Vec e = Vec::Zero(g.dim);
      for (int k = 0; k < u.d; ++k) e += T(i, k) * u.entries[k][j].coeffs;
      for (int k = 0; k < w.d; ++k) e -= w.entries[i][k].coeffs * T(k, j);
      r = std::max(r, e.cwiseAbs().maxCoeff());
    }
  return r;
}

// Unitary implementing u ~ w, if any: polar decomposition of a spanning
// intertwiner, phase fixed for reproducibility.
inline std::optional<Mat> equivalence(const QuantumGroup& g, const CoRep& u,
                                      const CoRep& w, double tol = kDefaultTol) {
  if (u.d != w.d) return std::nullopt;
  const auto basis = intertwiner_space(g, u, w);
  if (basis.empty()) return std::nullopt;
  const Mat& T = basis.front();
  if (T.norm() < tol) return std::nullopt;
  Mat U = fix_phase(polar_unitary(T));
  if (intertwining_residual(g, u, w, U) > std::max(tol, 1e-7)) return std::nullopt;
  return U;
}

// Entry (i,j) of the contragredient is u_ij^*.
inline CoRep contragredient(const QuantumGroup& g, const CoRep& u) {
  std::vector<std::vector<AlgebraElement>> e(u.d, std::vector<AlgebraElement>(u.d));
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j) e[i][j] = {star_vec(g, u.entries[i][j].coeffs)};
  return make_corep(u.d, std::move(e));
}

// Transpose of the inverse of u in M_d(A); agrees with the contragredient for
// unitary u but stays a corepresentation when applied twice.
inline CoRep corep_inverse_transpose(const QuantumGroup& g, const CoRep& u) {
  const Mat Binv = embed_corep(g, u).inverse();
  std::vector<std::vector<AlgebraElement>> e(u.d, std::vector<AlgebraElement>(u.d));
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j)
      e[i][j] = {unembed(g, Binv.block(j * g.N, i * g.N, g.N, g.N))};
  return make_corep(u.d, std::move(e));
}

inline AlgebraElement character(const QuantumGroup& g, const CoRep& u) {
  Vec chi = Vec::Zero(g.dim);
  for (int i = 0; i < u.d; ++i) chi += u.entries[i][i].coeffs;
  return {chi};
}

struct FMatrix {
  Mat F;
  double M = 0.0;
};

// The positive invertible intertwiner between u and its double dual with
// Tr F = Tr F^{-1}; M = Tr F.
inline FMatrix f_matrix(const QuantumGroup& g, const CoRep& u, double tol = kDefaultTol) {
  const CoRep ucc = corep_inverse_transpose(g, corep_inverse_transpose(g, u));
  const auto span = intertwiner_space(g, u, ucc);
  if (span.size() != 1)
    throw Error("DegenerateIntertwiner",
                "F intertwiner space has dimension " + std::to_string(span.size()));
  Mat T = span.front();
  const cplx tr = T.trace();
  if (std::abs(tr) < tol) throw Error("DegenerateIntertwiner", "traceless F candidate");
  T *= std::conj(tr) / std::abs(tr);
  T = (T + Mat(T.adjoint())) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(T);
  if (es.eigenvalues().minCoeff() <= 0.0) T = -T;
  Eigen::SelfAdjointEigenSolver<Mat> es2(T);
  if (es2.eigenvalues().minCoeff() <= 0.0)
    throw Error("DegenerateIntertwiner", "F candidate is not definite");
  const double trF = T.trace().real();
  const double trFinv = T.inverse().trace().real();
  const double t = std::sqrt(trFinv / trF);
  FMatrix out;
  out.F = t * T;
  out.M = out.F.trace().real();
  return out;
}

// Projection onto span{pi_h(u_ij) xi_h} (all entries) or a fixed row.
inline Mat subspace_projection(const GnsSpace& gns, const CoRep& u, int row = -1) {
  std::vector<Vec> span;
  for (int i = 0; i < u.d; ++i) {
    if (row >= 0 && i != row) continue;
    for (int j = 0; j < u.d; ++j) span.push_back(gns.onb * u.entries[i][j].coeffs);
  }
  return span_projector(span);
}

struct IrrepClass {
  int id = 0;
  CoRep rep;
  Mat F;
  double M = 0.0;
  AlgebraElement chi;
  AlgebraElement a_elem;
  std::vector<std::vector<AlgebraElement>> c;  // c_ij = M (u_ij * f_1)^*
  int conj_class = -1;
  int mult = 0;
};

// f_{+-1} on the Peter-Weyl basis: f_{e}(u^a_ij) = (F_a^{e})_{ij}, pulled back
// to the fixed algebra basis.
inline std::pair<Functional, Functional> woronowicz_functionals(
    const QuantumGroup& g, const std::vector<IrrepClass>& classes) {
  int total = 0;
  for (const auto& cl : classes) total += cl.rep.d * cl.rep.d;
  if (total != g.dim)
    throw Error("BasisIncomplete", "sum of squared class dimensions != dim");
  Mat B(g.dim, g.dim);
  Vec w1(g.dim), wm1(g.dim);
  int col = 0;
  for (const auto& cl : classes) {
    const Mat Finv = cl.F.inverse();
    for (int i = 0; i < cl.rep.d; ++i)
      for (int j = 0; j < cl.rep.d; ++j) {
        B.col(col) = cl.rep.entries[i][j].coeffs;
        w1(col) = cl.F(i, j);
        wm1(col) = Finv(i, j);
        ++col;
      }
  }
  const auto qr = Mat(B.transpose()).colPivHouseholderQr();
  return {Functional{qr.solve(w1)}, Functional{qr.solve(wm1)}};
}

inline std::pair<int, Mat> conjugate_rep(const QuantumGroup& g, const CoRep& u,
                                         const std::vector<IrrepClass>& classes,
                                         double tol = kDefaultTol) {
  const CoRep ubar = contragredient(g, u);
  for (const auto& cl : classes) {
    if (cl.rep.d != u.d) continue;
    const auto basis = intertwiner_space(g, ubar, cl.rep);
    if (basis.size() == 1 && basis.front().norm() > tol)
      return {cl.id, fix_phase(polar_unitary(basis.front()))};
  }
  throw Error("NotFound", "no conjugate class for a " + std::to_string(u.d) +
                              "-dimensional irreducible");
}

struct OrthogonalityReport {
  // max residuals of the four relation families
  double fam1 = 0.0, fam2 = 0.0, fam3 = 0.0, fam4 = 0.0;
  bool pass = false;
};

inline OrthogonalityReport orthogonality_check(const QuantumGroup& g,
                                               const std::vector<IrrepClass>& classes,
                                               const Functional& h,
                                               double tol = kDefaultTol) {
  OrthogonalityReport rep;
  auto hv = [&](const Vec& x) { return (h.coeffs.array() * x.array()).sum(); };
  for (const auto& A : classes) {
    const Mat Finv = A.F.inverse();
    for (const auto& B : classes) {
      const int da = A.rep.d, db = B.rep.d;
      const bool same = A.id == B.id;
      for (int m = 0; m < da; ++m)
        for (int k = 0; k < da; ++k)
          for (int n = 0; n < db; ++n)
            for (int l = 0; l < db; ++l) {
              const cplx v1 = hv(mul_vec(g, A.rep.entries[m][k].coeffs,
                                         star_vec(g, B.rep.entries[n][l].coeffs)));
              const cplx e1 = (same && m == n) ? A.F(l, k) / A.M : cplx(0.0);
              rep.fam1 = std::max(rep.fam1, std::abs(v1 - e1));
              const cplx v2 = hv(mul_vec(g, star_vec(g, A.rep.entries[k][m].coeffs),
                                         B.rep.entries[l][n].coeffs));
              const cplx e2 = (same && m == n) ? Finv(l, k) / A.M : cplx(0.0);
              rep.fam2 = std::max(rep.fam2, std::abs(v2 - e2));
            }
      for (int n = 0; n < db; ++n)
        for (int l = 0; l < db; ++l) {
          const cplx e = (same && n == l) ? cplx(1.0) : cplx(0.0);
          const cplx v3 = hv(mul_vec(g, A.a_elem.coeffs, B.rep.entries[n][l].coeffs));
          rep.fam3 = std::max(rep.fam3, std::abs(v3 - e));
          const cplx v4 = hv(mul_vec(g, star_vec(g, B.rep.entries[n][l].coeffs),
                                     star_vec(g, A.a_elem.coeffs)));
          rep.fam4 = std::max(rep.fam4, std::abs(v4 - e));
        }
    }
  }
  rep.pass = rep.fam1 < tol && rep.fam2 < tol && rep.fam3 < tol && rep.fam4 < tol;
  return rep;
}

}  // namespace qg
