#ifndef FINSLER_PRODUCT_METRIC_HPP
#define FINSLER_PRODUCT_METRIC_HPP

#include <vector>

#include "finsler/factors.hpp"
#include "finsler/types.hpp"

namespace finsler {

// Parameters of the metric family F_{t,k}.
struct MetricParams {
  double t = 1.0;
  int k = 2;

  MetricParams() = default;
  MetricParams(double t_, int k_);
};

// Product of model factors M_1 x ... x M_n.  Complex coordinates are stored
// as one length-N vector; factor l owns the slice [offset(l), offset(l)+dim(l)).
// The real view interleaves per factor: factor l occupies real indices
// [2*offset(l), 2*offset(l)+2*dim(l)), laid out as (Re z_l, Im z_l).
class ProductManifold {
 public:
  explicit ProductManifold(std::vector<FactorMetric> factors);

  static ProductManifold polydisk(int n);

  int num_factors() const { return static_cast<int>(factors_.size()); }
  const FactorMetric& factor(int l) const { return factors_[l]; }
  int total_dim() const { return total_dim_; }
  int offset(int l) const { return offsets_[l]; }

  CVec block(const CVec& z, int l) const;
  RVec real_block(const RVec& x, int l) const;
  void check_point(const CVec& z) const;
  void check_tangent(const CVec& v) const;

  RVec to_real(const CVec& z) const;
  CVec to_complex(const RVec& x) const;

 private:
  std::vector<FactorMetric> factors_;
  std::vector<int> offsets_;
  int total_dim_;
};

// Scalars shared by the tensor, connection and curvature formulas, evaluated
// at the given (z,v):
//   q[l]  = Q_l,   a = sum_l Q_l^k,   e[l] = 1 + t a^{1/k-1} Q_l^{k-1}.
struct FamilyScalars {
  std::vector<double> q;
  double sum_q = 0.0;
  double a = 0.0;
  std::vector<double> e;
};

FamilyScalars family_scalars(const ProductManifold& mfd, const MetricParams& p,
                             const CVec& z, const CVec& v);

// F_{t,k}(z,v) = (1+t)^{-1/2} sqrt(sum Q_l + t (sum Q_l^k)^{1/k}).
double metric_value(const ProductManifold& mfd, const MetricParams& p,
                    const CVec& z, const CVec& v);

// G = F^2.
double metric_g(const ProductManifold& mfd, const MetricParams& p,
                const CVec& z, const CVec& v);

// Complex fundamental tensor G_{alpha beta'} = d^2 G / dv dvbar, with the
// closed-form inverse.  Entry convention: h(a,b) = G_{a b'}.
struct ComplexFundamentalTensor {
  CMat h;
  CMat h_inv;
  double g_value;    // G at the evaluation point
  double a;          // sum Q_l^k
  RVec e;            // per-factor E_l
  double det_guard;  // Sherman-Morrison denominator of the final rank-1 step
};

ComplexFundamentalTensor complex_fundamental_tensor(const ProductManifold& mfd,
                                                    const MetricParams& p,
                                                    const CVec& z,
                                                    const CVec& v);

// Real fundamental tensor g_ab = (1/2) d^2 G / du^a du^b (2N x 2N), with the
// closed-form inverse.  u^T g u = G exactly (degree-2 homogeneity).
struct RealFundamentalTensor {
  RMat g;
  RMat g_inv;
  double c_pos;            // the scalar C of the inverse formula; > 0 always
  std::vector<RVec> w;     // per-factor vectors W_s of the rank-1 correction
};

RealFundamentalTensor real_fundamental_tensor(const ProductManifold& mfd,
                                              const MetricParams& p,
                                              const RVec& x, const RVec& u);

// Both sides of the real/complex Hessian bridge
//   sum_ab d^2G/du^a du^b U^a U^b
//     = 2 Re{ sum G_{a b'} V^a conj(V^b) + sum G_{ab} V^a V^b },
// with U the real view of the vertical vector V.  The mixed term uses the
// closed-form tensor; the holomorphic-holomorphic term is finite-differenced.
struct BridgeCheck {
  double lhs;
  double rhs;
};

BridgeCheck real_complex_bridge_check(const ProductManifold& mfd,
                                      const MetricParams& p, const CVec& z,
                                      const CVec& v, const CVec& big_v);

}  // namespace finsler

#endif  // FINSLER_PRODUCT_METRIC_HPP
