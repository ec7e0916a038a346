#pragma once

#include <algorithm>
#include <deque>

#include "qg/corep.hpp"

namespace qg {

struct RegularRep {
  CoRep v;  // entries over A, Hilbert-space legs in the orthonormal GNS basis
  Mat V;    // (id (x) pi_h) v, dim^2 x dim^2
};

// From Delta(e_j) = sum_i e_i (x) c_ij, transported once into the orthonormal
// GNS basis on both Hilbert legs.
inline RegularRep build_regular(const GnsSpace& gns, const QuantumGroup& g,
                                double tol = kDefaultTol) {
  const int d = g.dim;
  std::vector<std::vector<Vec>> c(d, std::vector<Vec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec cij(d);
      for (int l = 0; l < d; ++l) cij(l) = g.delta(i * d + l, j);
      c[i][j] = cij;
    }
  std::vector<std::vector<AlgebraElement>> ve(d, std::vector<AlgebraElement>(d));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Vec e = Vec::Zero(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) e += gns.onb(k, i) * gns.onb_inv(j, l) * c[i][j];
      ve[k][l] = {e};
    }
  RegularRep vr;
  vr.v = make_corep(d, std::move(ve));

  // defining property on the full dual basis of functionals
  double r = 0.0;
  for (int m = 0; m < d; ++m) {
    Mat Mf(d, d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) Mf(k, l) = vr.v.entries[k][l].coeffs(m);
    Mat conv(d, d);
    for (int j = 0; j < d; ++j)
      conv.col(j) = convolve_fa(g, Functional{Vec::Unit(d, m)},
                                basis_element(g, j)).coeffs;
    r = std::max(r, max_abs(Mf * gns.onb - gns.onb * conv));
  }
  if (r >= std::max(tol, 1e-7))
    throw Error("ConstructionInconsistent",
                "defining-property residual " + std::to_string(r));

  vr.V = Mat::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      const Mat P = pi_of(gns, vr.v.entries[k][l].coeffs);
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) vr.V(k * d + s, l * d + t) = P(s, t);
    }
  return vr;
}

struct RegularChecks {
  double defining = 0.0;
  double unitarity = 0.0;
  double corep = 0.0;
  double translation = 0.0;
  int density_rank = 0;
};

inline RegularChecks regular_checks(const QuantumGroup& g, const GnsSpace& gns,
                                    const RegularRep& vr) {
  const int d = g.dim;
  RegularChecks rc;
  for (int m = 0; m < d; ++m) {
    Mat Mf(d, d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) Mf(k, l) = vr.v.entries[k][l].coeffs(m);
    Mat conv(d, d);
    for (int j = 0; j < d; ++j)
      conv.col(j) = convolve_fa(g, Functional{Vec::Unit(d, m)},
                                basis_element(g, j)).coeffs;
    rc.defining = std::max(rc.defining, max_abs(Mf * gns.onb - gns.onb * conv));
  }
  const auto chk = is_corep(g, vr.v);
  rc.corep = chk.corep_residual;
  rc.unitarity = chk.unitarity_residual;

  Mat R(d * d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) R.row(k * d + l) = vr.v.entries[k][l].coeffs.transpose();
  rc.density_rank = svd_rank(R);

  for (int j = 0; j < d; ++j) {
    Mat DPi = Mat::Zero(d * d, d * d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        const cplx dv = g.delta(k * d + l, j);
        if (dv != cplx(0.0)) DPi += dv * kron(gns.pi[k], gns.pi[l]);
      }
    const Vec x = gns.onb.col(j);  // kappa(e_j)
    for (int t = 0; t < d; ++t) {
      const Vec lhs = vr.V * kronvec(x, Vec::Unit(d, t));
      const Vec rhs = DPi * kronvec(gns.xi, Vec::Unit(d, t));
      rc.translation = std::max(rc.translation, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return rc;
}

enum class HaSide { XA, AX };  // ha(x) = h(xa) vs h(ax)

inline Mat fourier(const QuantumGroup& g, const RegularRep& vr, const Functional& h,
                   const Vec& a, HaSide side) {
  const int d = g.dim;
  Mat F(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Vec vs = star_vec(g, vr.v.entries[j][i].coeffs);  // (v^*)_{ij}
      const Vec prod = side == HaSide::XA ? mul_vec(g, vs, a) : mul_vec(g, a, vs);
      F(i, j) = (h.coeffs.array() * prod.array()).sum();
    }
  return F;
}

inline CoRep compress(const QuantumGroup& g, const CoRep& v, const Mat& W) {
  const int m = static_cast<int>(W.cols());
  std::vector<std::vector<AlgebraElement>> e(m, std::vector<AlgebraElement>(m));
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      Vec x = Vec::Zero(g.dim);
      for (int k = 0; k < v.d; ++k)
        for (int l = 0; l < v.d; ++l)
          x += std::conj(W(k, s)) * W(l, t) * v.entries[k][l].coeffs;
      e[s][t] = {x};
    }
  return make_corep(m, std::move(e));
}

namespace detail {

inline Mat random_hermitian(const std::vector<Mat>& span, Rng& rng) {
  Mat X = Mat::Zero(span.front().rows(), span.front().cols());
  for (const Mat& B : span) X += rng.cgauss() * B;
  Mat H = (X + Mat(X.adjoint())) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (top > 0.0) H /= top;
  return H;
}

inline std::vector<Mat> eigencluster_isometries(const Mat& H, double gap = kEigenGap) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const RVec w = es.eigenvalues();
  const Mat Q = es.eigenvectors();
  std::vector<Mat> out;
  int start = 0;
  const int n = static_cast<int>(w.size());
  for (int t = 1; t <= n; ++t) {
    if (t == n || w(t) - w(t - 1) > gap) {
      out.push_back(Q.middleCols(start, t - start));
      start = t;
    }
  }
  return out;
}

}  // namespace detail

struct Decomposition {
  std::vector<IrrepClass> classes;
  std::vector<Mat> commutant;  // self-intertwiners of v
  HaSide side = HaSide::XA;
  double side_residual_xa = 0.0;
  double side_residual_ax = 0.0;
};

// Peter-Weyl decomposition of the regular representation: split along a seeded
// random Hermitian element of the commutant, refine to irreducible blocks,
// group into equivalence classes, then attach F, M, chi, a, c per class.
inline Decomposition decompose_regular(const QuantumGroup& g, const GnsSpace& gns,
                                       const RegularRep& vr, double tol = kDefaultTol,
                                       std::uint64_t seed = kDefaultSeed) {
  const int d = g.dim;
  Decomposition dec;
  dec.commutant = intertwiner_space(g, vr.v, vr.v);
  Rng rng(seed);

  std::deque<std::pair<Mat, CoRep>> queue;
  for (const Mat& W : detail::eigencluster_isometries(
           detail::random_hermitian(dec.commutant, rng)))
    queue.emplace_back(W, compress(g, vr.v, W));

  std::vector<std::pair<Mat, CoRep>> blocks;
  int iterations = 0;
  while (!queue.empty()) {
    if (++iterations > 10 * d)
      throw Error("IrreducibilitySplitFailure", "refinement exceeded iteration cap");
    auto [W, u] = queue.front();
    queue.pop_front();
    const auto self = intertwiner_space(g, u, u);
    if (self.size() == 1) {
      u.is_irreducible_flag = true;
      blocks.emplace_back(W, u);
      continue;
    }
    for (const Mat& Q : detail::eigencluster_isometries(
             detail::random_hermitian(self, rng))) {
      const Mat W2 = W * Q;
      queue.emplace_back(W2, compress(g, vr.v, W2));
    }
  }

  for (auto& [W, u] : blocks) {
    bool placed = false;
    for (auto& cl : dec.classes) {
      if (cl.rep.d != u.d) continue;
      const auto span = intertwiner_space(g, u, cl.rep);
      if (span.size() == 1 && span.front().norm() > tol) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      IrrepClass cl;
      cl.rep = u;
      cl.rep.is_corep_flag = true;
      cl.rep.is_unitary_flag = true;
      cl.rep.is_irreducible_flag = true;
      dec.classes.push_back(std::move(cl));
    }
  }

  for (auto& cl : dec.classes) cl.chi = character(g, cl.rep);
  std::sort(dec.classes.begin(), dec.classes.end(),
            [](const IrrepClass& a, const IrrepClass& b) {
              if (a.rep.d != b.rep.d) return a.rep.d < b.rep.d;
              for (int m = 0; m < a.chi.coeffs.size(); ++m) {
                const double ar = std::round(a.chi.coeffs(m).real() * 1e9) / 1e9;
                const double br = std::round(b.chi.coeffs(m).real() * 1e9) / 1e9;
                if (ar != br) return ar < br;
                const double ai = std::round(a.chi.coeffs(m).imag() * 1e9) / 1e9;
                const double bi = std::round(b.chi.coeffs(m).imag() * 1e9) / 1e9;
                if (ai != bi) return ai < bi;
              }
              return false;
            });
  for (std::size_t t = 0; t < dec.classes.size(); ++t)
    dec.classes[t].id = static_cast<int>(t);

  int sum_d2 = 0;
  for (auto& cl : dec.classes) {
    cl.mult = static_cast<int>(intertwiner_space(g, cl.rep, vr.v).size());
    if (cl.mult != cl.rep.d)
      throw Error("MultiplicityMismatch",
                  "class " + std::to_string(cl.id) + ": multiplicity " +
                      std::to_string(cl.mult) + " != dimension " +
                      std::to_string(cl.rep.d));
    sum_d2 += cl.rep.d * cl.rep.d;
  }
  if (sum_d2 != d)
    throw Error("MultiplicityMismatch", "sum of squared dimensions != dim");

  for (auto& cl : dec.classes) {
    const FMatrix fm = f_matrix(g, cl.rep, tol);
    cl.F = fm.F;
    cl.M = fm.M;
  }
  const auto [f1, fm1] = woronowicz_functionals(g, dec.classes);
  for (auto& cl : dec.classes) {
    cl.a_elem = {cl.M * star_vec(g, convolve_fa(g, f1, cl.chi).coeffs)};
    cl.c.assign(cl.rep.d, std::vector<AlgebraElement>(cl.rep.d));
    for (int i = 0; i < cl.rep.d; ++i)
      for (int j = 0; j < cl.rep.d; ++j)
        cl.c[i][j] = {cl.M *
                      star_vec(g, convolve_af(g, cl.rep.entries[i][j], f1).coeffs)};
  }
  for (auto& cl : dec.classes)
    cl.conj_class = conjugate_rep(g, cl.rep, dec.classes, tol).first;
  return dec;
}

// Projection onto H_h(u-bar) = span{kappa(u_ij^*)} or one of its rows.
inline Mat conj_span_projector(const QuantumGroup& g, const GnsSpace& gns,
                               const CoRep& u, int row = -1) {
  return subspace_projection(gns, contragredient(g, u), row);
}

// Fix the functional side in F_v(a) = (id (x) ha)(v^*) by testing which of
// h(xa), h(ax) sends every a_alpha to the projection onto H_h(u-bar_alpha).
inline void choose_fourier_side(const QuantumGroup& g, const GnsSpace& gns,
                                const RegularRep& vr, const Functional& h,
                                Decomposition& dec) {
  double rxa = 0.0, rax = 0.0;
  for (const auto& cl : dec.classes) {
    const Mat P = conj_span_projector(g, gns, cl.rep);
    rxa = std::max(rxa, max_abs(fourier(g, vr, h, cl.a_elem.coeffs, HaSide::XA) - P));
    rax = std::max(rax, max_abs(fourier(g, vr, h, cl.a_elem.coeffs, HaSide::AX) - P));
  }
  dec.side_residual_xa = rxa;
  dec.side_residual_ax = rax;
  dec.side = rxa <= rax ? HaSide::XA : HaSide::AX;
}

struct CStarG {
  HaSide side = HaSide::XA;
  std::vector<Mat> fourier_basis;          // F_v(e_m)
  std::vector<Mat> p;                      // central projections, class order
  std::vector<std::vector<Mat>> p_rows;    // p_alpha^k
  std::vector<std::vector<std::vector<Mat>>> E;  // E[alpha][i][j]
  std::vector<int> block_dims;             // dim span(C*(G) p_alpha)
  double sum_p_residual = 0.0;
  double centrality_residual = 0.0;
  double projection_residual = 0.0;
  double e_relation_residual = 0.0;
  double e_action_residual = 0.0;
  double p_row_sum_residual = 0.0;
  double p_row_orth_residual = 0.0;
  bool pass = false;
};

inline CStarG cstar_blocks(const QuantumGroup& g, const GnsSpace& gns,
                           const RegularRep& vr, const Decomposition& dec,
                           const Functional& h, double tol = kDefaultTol) {
  const int d = g.dim;
  CStarG cs;
  cs.side = dec.side;
  for (int m = 0; m < d; ++m)
    cs.fourier_basis.push_back(fourier(g, vr, h, Vec::Unit(d, m), cs.side));

  Mat psum = Mat::Zero(d, d);
  for (const auto& cl : dec.classes) {
    const Mat p = fourier(g, vr, h, cl.a_elem.coeffs, cs.side);
    cs.projection_residual = std::max({cs.projection_residual, max_abs(p * p - p),
                                       max_abs(Mat(p.adjoint()) - p)});
    for (const Mat& Fm : cs.fourier_basis)
      cs.centrality_residual = std::max(cs.centrality_residual, max_abs(p * Fm - Fm * p));
    psum += p;
    cs.p.push_back(p);
  }
  cs.sum_p_residual = max_abs(psum - Mat::Identity(d, d));

  for (std::size_t ci = 0; ci < dec.classes.size(); ++ci) {
    const auto& cl = dec.classes[ci];
    const int du = cl.rep.d;
    std::vector<Mat> rows;
    Mat rsum = Mat::Zero(d, d);
    for (int k = 0; k < du; ++k) {
      rows.push_back(conj_span_projector(g, gns, cl.rep, k));
      rsum += rows.back();
    }
    for (int k = 0; k < du; ++k)
      for (int l = 0; l < du; ++l)
        if (k != l)
          cs.p_row_orth_residual =
              std::max(cs.p_row_orth_residual, max_abs(rows[k] * rows[l]));
    cs.p_row_sum_residual = std::max(cs.p_row_sum_residual, max_abs(rsum - cs.p[ci]));
    cs.p_rows.push_back(std::move(rows));

    std::vector<std::vector<Mat>> Ec(du, std::vector<Mat>(du));
    for (int i = 0; i < du; ++i)
      for (int j = 0; j < du; ++j) {
        const Mat Fc = fourier(g, vr, h, cl.c[i][j].coeffs, cs.side);
        Ec[i][j] = Fc.adjoint() * cs.p[ci];
      }
    for (int k = 0; k < du; ++k)
      for (int l = 0; l < du; ++l)
        for (int i = 0; i < du; ++i)
          for (int j = 0; j < du; ++j) {
            const Mat lhs = Ec[k][l] * Ec[i][j];
            const Mat rhs = (i == l) ? Ec[k][j] : Mat(Mat::Zero(d, d));
            cs.e_relation_residual = std::max(cs.e_relation_residual, max_abs(lhs - rhs));
          }
    for (int i = 0; i < du; ++i)
      for (int j = 0; j < du; ++j)
        for (int r = 0; r < du; ++r)
          for (int s = 0; s < du; ++s) {
            const Vec x = gns.onb * star_vec(g, cl.rep.entries[r][s].coeffs);
            Vec rhs = Vec::Zero(d);
            if (s == j) rhs = gns.onb * star_vec(g, cl.rep.entries[r][i].coeffs);
            cs.e_action_residual =
                std::max(cs.e_action_residual,
                         (Ec[i][j] * x - rhs).cwiseAbs().maxCoeff());
          }
    std::vector<Vec> span;
    for (const Mat& Fm : cs.fourier_basis) {
      const Mat X = Fm * cs.p[ci];
      span.push_back(Eigen::Map<const Vec>(X.data(), X.size()));
    }
    cs.block_dims.push_back(span_rank(span));
    cs.E.push_back(std::move(Ec));
  }

  cs.pass = cs.sum_p_residual < tol && cs.centrality_residual < tol &&
            cs.projection_residual < tol && cs.e_relation_residual < tol &&
            cs.e_action_residual < tol && cs.p_row_sum_residual < tol &&
            cs.p_row_orth_residual < tol;
  for (std::size_t ci = 0; ci < dec.classes.size(); ++ci)
    cs.pass = cs.pass &&
              cs.block_dims[ci] == dec.classes[ci].rep.d * dec.classes[ci].rep.d;
  return cs;
}

struct CommutantReport {
  int dim_intertwiner = 0;
  int dim_commutant = 0;
  double containment_iv_in_comm = 0.0;  // intertwiners commute with C*(G)
  double containment_comm_in_iv = 0.0;  // commutant intertwines v
  bool pass = false;
};

inline CommutantReport commutant_check(const QuantumGroup& g, const RegularRep& vr,
                                       const CStarG& cs, const Decomposition& dec,
                                       double tol = kDefaultTol) {
  const int d = g.dim;
  CommutantReport rep;
  rep.dim_intertwiner = static_cast<int>(dec.commutant.size());

  Mat A = Mat::Zero(static_cast<Eigen::Index>(cs.fourier_basis.size()) * d * d, d * d);
  for (std::size_t m = 0; m < cs.fourier_basis.size(); ++m) {
    const Mat& Fm = cs.fourier_basis[m];
    // vec(FX - XF) rows
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Eigen::Index row = (static_cast<Eigen::Index>(m) * d + i) * d + j;
        for (int k = 0; k < d; ++k) {
          A(row, k * d + j) += Fm(i, k);
          A(row, i * d + k) -= Fm(k, j);
        }
      }
  }
  const auto comm = nullspace(A);
  rep.dim_commutant = static_cast<int>(comm.size());

  for (const Mat& X : dec.commutant) {
    for (const Mat& Fm : cs.fourier_basis)
      rep.containment_iv_in_comm =
          std::max(rep.containment_iv_in_comm, max_abs(X * Fm - Fm * X));
  }
  for (const Vec& x : comm) {
    Mat X(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) X(i, j) = x(i * d + j);
    rep.containment_comm_in_iv =
        std::max(rep.containment_comm_in_iv,
                 intertwining_residual(g, vr.v, vr.v, X));
  }
  int sum_d2 = 0;
  for (const auto& cl : dec.classes) sum_d2 += cl.rep.d * cl.rep.d;
  rep.pass = rep.dim_intertwiner == sum_d2 && rep.dim_commutant == sum_d2 &&
             rep.containment_iv_in_comm < std::max(tol, 1e-8) &&
             rep.containment_comm_in_iv < std::max(tol, 1e-8);
  return rep;
}

struct IntertwinerS {
  Mat S;
  double relation_residual = 0.0;
  double smin = 0.0;
  double p_row_commutant_residual = 0.0;
  bool restriction_equivalent = false;
};

// S e_i = kappa(u_{k0 i}^*); checked against V (p_alpha^{k0} (x) 1)(S (x) 1) =
// (S (x) 1) (id (x) pi_h)(u-bar).
inline IntertwinerS explicit_intertwiner_S(const QuantumGroup& g, const GnsSpace& gns,
                                           const RegularRep& vr, const CStarG& cs,
                                           const Decomposition& dec, int alpha, int k0) {
  const int d = g.dim;
  const auto& cl = dec.classes[alpha];
  const int du = cl.rep.d;
  IntertwinerS out;
  out.S = Mat(d, du);
  for (int i = 0; i < du; ++i)
    out.S.col(i) = gns.onb * star_vec(g, cl.rep.entries[k0][i].coeffs);

  Mat Ubar(du * d, du * d);
  for (int i = 0; i < du; ++i)
    for (int j = 0; j < du; ++j) {
      const Mat P = pi_of(gns, star_vec(g, cl.rep.entries[i][j].coeffs));
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) Ubar(i * d + s, j * d + t) = P(s, t);
    }
  const Mat& pk = cs.p_rows[alpha][k0];
  const Mat lhs = vr.V * kron(pk * out.S, Mat::Identity(d, d));
  const Mat rhs = kron(out.S, Mat::Identity(d, d)) * Ubar;
  out.relation_residual = max_abs(lhs - rhs);

  Eigen::JacobiSVD<Mat> svd(out.S);
  out.smin = svd.singularValues().minCoeff();

  for (const Mat& Fm : cs.fourier_basis)
    out.p_row_commutant_residual =
        std::max(out.p_row_commutant_residual, max_abs(pk * Fm - Fm * pk));

  // restriction of v to H_h^{k0}(u-bar) vs the conjugate class
  std::vector<Vec> span;
  for (int i = 0; i < du; ++i) span.push_back(out.S.col(i));
  Mat W(d, du);
  {
    Mat Ws(d, du);
    for (int i = 0; i < du; ++i) Ws.col(i) = span[i];
    Eigen::JacobiSVD<Mat> s2(Ws, Eigen::ComputeThinU);
    W = s2.matrixU().leftCols(du);
  }
  const CoRep restriction = compress(g, vr.v, W);
  const auto eq = equivalence(g, restriction, dec.classes[cl.conj_class].rep);
  out.restriction_equivalent = eq.has_value();
  return out;
}

}  // namespace qg
