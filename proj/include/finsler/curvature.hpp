#ifndef FINSLER_CURVATURE_HPP
#define FINSLER_CURVATURE_HPP

#include "finsler/product_metric.hpp"

namespace finsler {

// Holomorphic sectional curvature range when every factor has constant
// curvature c.  The non-c endpoint is (1+t)c / (n + t n^{1/k}).
struct CurvatureBounds {
  double lo;
  double hi;
  double c;
  int n;
  MetricParams params;

  bool contains(double k_val, double slack = 1e-9) const {
    return k_val >= lo - slack && k_val <= hi + slack;
  }
};

// Closed form
//   K = (1+t) * sum_l c_l E_l Q_l^2 / (sum Q + t A^{1/k})^2
// (per-factor curvatures c_l; reduces to the constant-c display when all
// factors agree).
double sectional_curvature(const ProductManifold& mfd, const MetricParams& p,
                           const CVec& z, const CVec& v);

// Direct evaluation of K = -(2/G^2) G_c delta_{m'}(Gamma^c_{;a}) v^a vbar^m
// with delta_{m'} = d/dzbar^m - conj(Gamma^l_{;m}) d/dvbar^l, built on the
// closed-form connection with finite differences for the two derivatives.
double sectional_curvature_direct(const ProductManifold& mfd,
                                  const MetricParams& p, const CVec& z,
                                  const CVec& v);

CurvatureBounds curvature_bounds(double c, int n, const MetricParams& p);

// Limits of K at fixed (z,v) as t -> 0 and t -> infinity.
struct CurvatureLimits {
  double at_t0;
  double at_tinf;
};

CurvatureLimits curvature_limits(const ProductManifold& mfd, const CVec& z,
                                 const CVec& v, int k);

}  // namespace finsler

#endif  // FINSLER_CURVATURE_HPP
