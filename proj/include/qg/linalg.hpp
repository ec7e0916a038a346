#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

constexpr double kDefaultTol = 1e-9;
constexpr double kRankRelTol = 1e-8;
constexpr double kEigenGap = 1e-7;
constexpr std::uint64_t kDefaultSeed = 42;

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error("ParseError", msg) {}
};

// Deterministic RNG: mt19937_64 output mapped by hand so results do not
// depend on the standard library's distribution implementations.
struct Rng {
  std::mt19937_64 eng;
  bool have_spare = false;
  double spare = 0.0;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform() {  // [0,1)
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  }

  double gauss() {  // Box-Muller
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare = r * std::sin(t);
    have_spare = true;
    return r * std::cos(t);
  }

  cplx cgauss() {
    const double re = gauss();
    return {re, gauss()};
  }
};

// Rank with the relative threshold rel * sigma_max (rank 0 for a zero matrix).
inline int svd_rank(const Mat& A, double rel = kRankRelTol) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rel * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

// Nullspace columns of A (cols n). Threshold has an absolute floor so that a
// numerically-zero system (all constraints trivially satisfied) yields the
// full space instead of an empty one.
inline std::vector<Vec> nullspace(const Mat& A, double rel = kRankRelTol) {
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = rel * std::max(smax, 1.0);
  std::vector<Vec> out;
  const Eigen::Index n = A.cols();
  for (Eigen::Index t = 0; t < n; ++t) {
    if (t >= sv.size() || sv(t) <= cut) out.push_back(svd.matrixV().col(t));
  }
  return out;
}

// Orthogonal projector onto the span of the given vectors.
inline Mat span_projector(const std::vector<Vec>& span, double rel = kRankRelTol) {
  if (span.empty()) throw Error("ShapeMismatch", "empty span");
  Mat W(span[0].size(), static_cast<Eigen::Index>(span.size()));
  for (std::size_t j = 0; j < span.size(); ++j) W.col(static_cast<Eigen::Index>(j)) = span[j];
  Eigen::JacobiSVD<Mat> svd(W, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  if (sv.size() && sv(0) > 0.0) {
    const double cut = rel * sv(0);
    while (r < sv.size() && sv(r) > cut) ++r;
  }
  const Mat U = svd.matrixU().leftCols(r);
  return U * U.adjoint();
}

inline int span_rank(const std::vector<Vec>& span, double rel = kRankRelTol) {
  Mat W(span[0].size(), static_cast<Eigen::Index>(span.size()));
  for (std::size_t j = 0; j < span.size(); ++j) W.col(static_cast<Eigen::Index>(j)) = span[j];
  return svd_rank(W, rel);
}

inline Mat polar_unitary(const Mat& T) {
  Eigen::JacobiSVD<Mat> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Multiply by a global phase so the first nonzero entry (column-major scan)
// is real positive.  Keeps equivalence unitaries reproducible.
inline Mat fix_phase(const Mat& U, double tol = 1e-12) {
  for (Eigen::Index j = 0; j < U.cols(); ++j) {
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
      if (std::abs(U(i, j)) > tol) {
        return U * (std::conj(U(i, j)) / std::abs(U(i, j)));
      }
    }
  }
  return U;
}

inline Mat kron(const Mat& A, const Mat& B) {
  Mat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

inline Vec kronvec(const Vec& a, const Vec& b) {
  Vec v(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    v.segment(i * b.size(), b.size()) = a(i) * b;
  return v;
}

inline double max_abs(const Mat& A) {
  return A.size() ? A.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace qg
