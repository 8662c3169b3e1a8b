#ifndef FINSLER_CONNECTION_HPP
#define FINSLER_CONNECTION_HPP

#include <functional>
#include <vector>

#include "finsler/check_report.hpp"
#include "finsler/product_metric.hpp"

namespace finsler {

// A metric given only through its squared value G(z,v) = F^2.  Connection
// quantities for such metrics are computed by finite differences; this is the
// path used for pullbacks and for control fixtures in the tests.
using MetricFn = std::function<double(const CVec&, const CVec&)>;

MetricFn family_metric_fn(const ProductManifold& mfd, const MetricParams& p);

struct ConnectionData {
  CMat nonlinear;                // (c, a) = Gamma^c_{;a}(z,v)
  std::vector<CMat> horizontal;  // [c](b, a) = Gamma^c_{b;a}(z,v)
  RVec real_spray;               // 2 G^b(x,u)
};

// Chern-Finsler nonlinear coefficients from the generic formula
// Gamma^c_{;a} = G^{t' c} d^2 G / dvbar^t dz^a: the inverse tensor is closed
// form, the z-derivatives of the vbar-gradient are central differences.
CMat nonlinear_connection(const ProductManifold& mfd, const MetricParams& p,
                          const CVec& z, const CVec& v);

// Closed-form expectation: block diagonal of per-factor Hermitian
// connections, zero across factors.
CMat nonlinear_connection_closed(const ProductManifold& mfd,
                                 const MetricParams& p, const CVec& z,
                                 const CVec& v);

// Gamma^c_{b;a} = d Gamma^c_{;a} / dv^b by Wirtinger central differences
// over nonlinear_connection.
std::vector<CMat> horizontal_coefficients(const ProductManifold& mfd,
                                          const MetricParams& p, const CVec& z,
                                          const CVec& v);

// Real geodesic spray 2G^b = (1/2) g^{bc} (d^2G/du^c dx^a u^a - dG/dx^c),
// with the closed-form inverse tensor and finite differences in x.
RVec real_spray(const ProductManifold& mfd, const MetricParams& p,
                const RVec& x, const RVec& u);

ConnectionData connection_data(const ProductManifold& mfd,
                               const MetricParams& p, const CVec& z,
                               const CVec& v);

// Fully finite-difference variants over an opaque metric; mfd supplies the
// coordinate layout and domain checks only.
CMat nonlinear_connection_fn(const MetricFn& g_fn, const ProductManifold& mfd,
                             const CVec& z, const CVec& v);
std::vector<CMat> horizontal_coefficients_fn(const MetricFn& g_fn,
                                             const ProductManifold& mfd,
                                             const CVec& z, const CVec& v);
RVec real_spray_fn(const MetricFn& g_fn, const ProductManifold& mfd,
                   const RVec& x, const RVec& u);

// Berwald property: horizontal coefficients at fixed z must not depend on v.
// Reports the max pairwise entry deviation across the samples.
CheckReport check_berwald(const ProductManifold& mfd, const MetricParams& p,
                          const CVec& z, const std::vector<CVec>& v_samples,
                          double tol = 1e-5);

enum class KahlerLevel { Strong, Kahler, Weak };

// Residual of the Kahler symmetry Gamma^c_{b;a} = Gamma^c_{a;b} at the
// requested contraction level (Strong: full tensor; Kahler: contracted with
// v^b; Weak: additionally contracted with G_c = dG/dv^c).
CheckReport check_kahler(const ProductManifold& mfd, const MetricParams& p,
                         const CVec& z, const CVec& v, KahlerLevel level,
                         double tol = 1e-5);

struct ComplexSpray {
  CVec g_alpha;                // G^a = (1/2) Gamma^a_{;m} v^m
  std::vector<CMat> g_numu;    // [a](n, m) = d^2 G^a / dv^n dv^m
};

ComplexSpray complex_spray(const ProductManifold& mfd, const MetricParams& p,
                           const CVec& z, const CVec& v);

}  // namespace finsler

#endif  // FINSLER_CONNECTION_HPP
