#pragma once

#include "qg/algebra.hpp"

namespace qg {

struct HaarResult {
  Functional h;
  int nullspace_dim = 0;
  RVec singvals;
  double invariance_residual = 0.0;
};

inline Mat gram_matrix(const QuantumGroup& g, const Functional& h) {
  const int d = g.dim;
  Mat G(d, d);
  for (int i = 0; i < d; ++i) {
    const Vec si = star_vec(g, Vec::Unit(d, i));
    for (int j = 0; j < d; ++j) {
      G(i, j) = (h.coeffs.array() * mul_vec(g, si, Vec::Unit(d, j)).array()).sum();
    }
  }
  return G;
}

inline double invariance_residual(const QuantumGroup& g, const Functional& h) {
  const int d = g.dim;
  double r = 0.0;
  for (int j = 0; j < d; ++j) {
    Vec left = Vec::Zero(d), right = Vec::Zero(d);
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < d; ++l) {
        const cplx dv = g.delta(i * d + l, j);
        left(i) += dv * h.coeffs(l);   // (id (x) h)Delta(e_j)
        right(l) += dv * h.coeffs(i);  // (h (x) id)Delta(e_j)
      }
    r = std::max(r, (left - h.coeffs(j) * g.unit_vector).cwiseAbs().maxCoeff());
    r = std::max(r, (right - h.coeffs(j) * g.unit_vector).cwiseAbs().maxCoeff());
  }
  return r;
}

inline double traciality_residual(const QuantumGroup& g, const Functional& h) {
  const int d = g.dim;
  double r = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const cplx ab = (h.coeffs.array() * mul_vec(g, Vec::Unit(d, i), Vec::Unit(d, j)).array()).sum();
      const cplx ba = (h.coeffs.array() * mul_vec(g, Vec::Unit(d, j), Vec::Unit(d, i)).array()).sum();
      r = std::max(r, std::abs(ab - ba));
    }
  return r;
}

// Invariance system: (2 dim^2 + 1) x dim.  The homogeneous part stacks both
// invariance identities; the final row pins h(1) = 1.  Uniqueness is read off
// the singular spectrum of the homogeneous block.
inline HaarResult haar_state(const QuantumGroup& g, double tol = kDefaultTol) {
  const int d = g.dim;
  Mat A = Mat::Zero(2 * d * d + 1, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l) {
        A(i * d + j, l) += g.delta(i * d + l, j);
        if (l == j) A(i * d + j, l) -= g.unit_vector(i);
      }
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        A(d * d + l * d + j, k) += g.delta(k * d + l, j);
        if (k == j) A(d * d + l * d + j, k) -= g.unit_vector(l);
      }
  A.row(2 * d * d) = g.unit_vector.transpose();

  Eigen::JacobiSVD<Mat> svd(A.topRows(2 * d * d), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = kRankRelTol * std::max(sv.size() ? sv(0) : 0.0, 1.0);
  int nullity = d;
  for (Eigen::Index t = 0; t < sv.size(); ++t)
    if (sv(t) > cut) --nullity;

  HaarResult res;
  res.nullspace_dim = nullity;
  res.singvals = sv;
  if (nullity != 1)
    throw Error("NonUniqueInvariant",
                "invariance nullspace dimension " + std::to_string(nullity));

  Vec b = Vec::Zero(2 * d * d + 1);
  b(2 * d * d) = 1.0;
  Vec h = A.colPivHouseholderQr().solve(b);
  const cplx h1 = (h.array() * g.unit_vector.array()).sum();
  if (std::abs(h1) < tol) throw Error("NotAState", "h(1) = 0");
  h /= h1;
  res.h = Functional{h};
  res.invariance_residual = invariance_residual(g, res.h);

  Mat G = gram_matrix(g, res.h);
  Eigen::SelfAdjointEigenSolver<Mat> es((G + G.adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() < -tol)
    throw Error("NotAState", "gram matrix not positive semidefinite");
  return res;
}

// GNS triple in an orthonormal basis.  onb maps algebra coefficients to
// orthonormal coordinates; pi[m] is pi_h(e_m); xi is the class of the unit.
struct GnsSpace {
  Mat gram;
  Mat onb;
  Mat onb_inv;
  std::vector<Mat> pi;
  Vec xi;
  double min_gram_eig = 0.0;
};

inline GnsSpace gns_construct(const QuantumGroup& g, const Functional& h,
                              double tol = kDefaultTol) {
  const int d = g.dim;
  GnsSpace gns;
  gns.gram = gram_matrix(g, h);
  const Mat Gh = (gns.gram + gns.gram.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(Gh);
  gns.min_gram_eig = es.eigenvalues().minCoeff();
  if (gns.min_gram_eig <= tol)
    throw Error("GramNotPD", "gram minimum eigenvalue " + std::to_string(gns.min_gram_eig));

  Eigen::LLT<Mat> llt(Gh);
  const Mat L = llt.matrixL();
  gns.onb = L.adjoint();                       // kappa(a) = onb * a
  gns.onb_inv = gns.onb.inverse();
  gns.xi = gns.onb * g.unit_vector;
  gns.pi.resize(d);
  for (int m = 0; m < d; ++m) {
    Mat Lm(d, d);  // left multiplication by e_m in algebra coordinates
    for (int j = 0; j < d; ++j) Lm.col(j) = g.mul_tensor[m].row(j).transpose();
    gns.pi[m] = gns.onb * Lm * gns.onb_inv;
  }
  return gns;
}

inline Vec kappa(const GnsSpace& gns, const Vec& a) { return gns.onb * a; }

inline Mat pi_of(const GnsSpace& gns, const Vec& a) {
  Mat M = Mat::Zero(gns.xi.size(), gns.xi.size());
  for (int m = 0; m < a.size(); ++m)
    if (a(m) != cplx(0.0)) M += a(m) * gns.pi[m];
  return M;
}

}  // namespace qg
