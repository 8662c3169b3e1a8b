#include "finsler/linalg.hpp"

#include <cmath>

namespace finsler::linalg {

HermitianMatrix::HermitianMatrix(const CMat& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidInputError("HermitianMatrix: need a square matrix of dim >= 1");
  }
  entries_ = 0.5 * (a + a.adjoint().eval());
}

SymmetricRealMatrix::SymmetricRealMatrix(const RMat& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidInputError(
        "SymmetricRealMatrix: need a square matrix of dim >= 1");
  }
  entries_ = 0.5 * (a + a.transpose().eval());
}

namespace {

// Shared Cholesky driver; Scalar is double or Complex.
template <typename Mat>
PdCheckResult cholesky_impl(const Mat& m) {
  using Scalar = typename Mat::Scalar;
  const int n = static_cast<int>(m.rows());
  if (n == 0 || m.rows() != m.cols()) {
    throw InvalidInputError("cholesky_pd_check: dimension 0 or non-square");
  }
  Mat l = Mat::Zero(n, n);
  double min_pivot = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double pivot = std::real(m(j, j));
    for (int k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    min_pivot = std::min(min_pivot, pivot);
    if (!(pivot > 0.0)) return {false, pivot};
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      Scalar s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * Eigen::numext::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return {true, min_pivot};
}

template <typename Mat, typename Vec>
Mat rank1_impl(const Mat& a_inv, const Vec& y, double lambda,
               double threshold) {
  if (a_inv.rows() != a_inv.cols() || y.size() != a_inv.rows()) {
    throw InvalidInputError("rank1_update_inverse: dimension mismatch");
  }
  const Vec ay = a_inv * y;
  const auto denom = 1.0 - lambda * std::real(y.dot(ay));
  if (std::abs(denom) < threshold) {
    throw SingularUpdateError("rank1_update_inverse: singular update");
  }
  return a_inv + (lambda / denom) * (ay * ay.adjoint());
}

template <typename Mat>
Mat block_diag_impl(const std::vector<Mat>& blocks) {
  if (blocks.empty()) {
    throw InvalidInputError("block_diag: empty block list");
  }
  int n = 0;
  for (const auto& b : blocks) {
    if (b.rows() == 0 || b.rows() != b.cols()) {
      throw InvalidInputError("block_diag: blocks must be square, dim >= 1");
    }
    n += static_cast<int>(b.rows());
  }
  Mat out = Mat::Zero(n, n);
  int off = 0;
  for (const auto& b : blocks) {
    const int m = static_cast<int>(b.rows());
    out.block(off, off, m, m) = b;
    off += m;
  }
  return out;
}

}  // namespace

PdCheckResult cholesky_pd_check(const CMat& m) { return cholesky_impl(m); }
PdCheckResult cholesky_pd_check(const RMat& m) { return cholesky_impl(m); }

CMat rank1_update_inverse(const CMat& a_inv, const CVec& y, double lambda,
                          double threshold) {
  return rank1_impl(a_inv, y, lambda, threshold);
}
RMat rank1_update_inverse(const RMat& a_inv, const RVec& y, double lambda,
                          double threshold) {
  return rank1_impl(a_inv, y, lambda, threshold);
}

CMat block_diag(const std::vector<CMat>& blocks) {
  return block_diag_impl(blocks);
}
RMat block_diag(const std::vector<RMat>& blocks) {
  return block_diag_impl(blocks);
}

}  // namespace finsler::linalg
