#ifndef FINSLER_LINALG_HPP
#define FINSLER_LINALG_HPP

#include <vector>

#include "finsler/types.hpp"

namespace finsler::linalg {

// Hermitian matrix with symmetrizing constructor: the stored entries are
// 0.5*(A + A^H), so downstream checks test mathematics rather than
// representation noise.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMat& a);
  int dim() const { return static_cast<int>(entries_.rows()); }
  const CMat& entries() const { return entries_; }

 private:
  CMat entries_;
};

class SymmetricRealMatrix {
 public:
  explicit SymmetricRealMatrix(const RMat& a);
  int dim() const { return static_cast<int>(entries_.rows()); }
  const RMat& entries() const { return entries_; }

 private:
  RMat entries_;
};

struct PdCheckResult {
  bool is_pd;
  double min_pivot;  // smallest pivot seen, or the first nonpositive one
};

// Cholesky-based positive definiteness certification. Pivots are the
// diagonal values before the square root; factorization stops at the first
// nonpositive pivot.
PdCheckResult cholesky_pd_check(const CMat& m);
PdCheckResult cholesky_pd_check(const RMat& m);
inline PdCheckResult cholesky_pd_check(const HermitianMatrix& m) {
  return cholesky_pd_check(m.entries());
}
inline PdCheckResult cholesky_pd_check(const SymmetricRealMatrix& m) {
  return cholesky_pd_check(m.entries());
}

inline constexpr double kSingularUpdateThreshold = 1e-12;

// Sherman-Morrison: given A^{-1}, returns (A - lambda*y*y^H)^{-1}
//   = A^{-1} + lambda/(1 - lambda*y^H A^{-1} y) * A^{-1} y y^H A^{-1}.
// Throws SingularUpdateError when the denominator falls below threshold.
CMat rank1_update_inverse(const CMat& a_inv, const CVec& y, double lambda,
                          double threshold = kSingularUpdateThreshold);
RMat rank1_update_inverse(const RMat& a_inv, const RVec& y, double lambda,
                          double threshold = kSingularUpdateThreshold);

CMat block_diag(const std::vector<CMat>& blocks);
RMat block_diag(const std::vector<RMat>& blocks);

// Assembles a block-diagonal matrix from per-block inverses. Identical to
// block_diag; the name records intent at call sites assembling C^{-1}/B^{-1}.
inline CMat block_diag_inverse(const std::vector<CMat>& blocks) {
  return block_diag(blocks);
}
inline RMat block_diag_inverse(const std::vector<RMat>& blocks) {
  return block_diag(blocks);
}

}  // namespace finsler::linalg

#endif  // FINSLER_LINALG_HPP
