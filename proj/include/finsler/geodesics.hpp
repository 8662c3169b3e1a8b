#ifndef FINSLER_GEODESICS_HPP
#define FINSLER_GEODESICS_HPP

#include <vector>

#include "finsler/product_metric.hpp"

namespace finsler {

struct GeodesicSample {
  double s;
  RVec x;
  RVec u;
};

// Affinely parameterized geodesic: F(x(s), u(s)) stays constant along the
// samples (up to integration error).
struct GeodesicPath {
  std::vector<GeodesicSample> samples;
};

// Thrown when a trajectory reaches the boundary guard of a bounded factor;
// carries the last sample still inside the domain.
class BoundaryExitError : public DomainError {
 public:
  BoundaryExitError(const std::string& what, GeodesicSample last)
      : DomainError(what), last_valid(std::move(last)) {}
  GeodesicSample last_valid;
};

// Classical 4th-order integration of xdd = -2G(x, xd) with step-doubling
// error control (absolute tolerance 1e-9 per unit parameter).  `steps` sets
// the initial step s_max/steps; the controller only ever shrinks it.
GeodesicPath integrate_geodesic(const ProductManifold& mfd,
                                const MetricParams& p, const RVec& x0,
                                const RVec& u0, double s_max, int steps);

struct DistanceResult {
  double value;
  enum class Method { ClosedForm, PathIntegral } method;
};

// Invariant geodesic distance on the polydisk:
//   sigma = (1/(2 sqrt(1+t))) sqrt( sum L_l^2 + t (sum L_l^{2k})^{1/k} ),
// L_l = log((1+|m_l|)/(1-|m_l|)), m_l the Moebius quotient of the l-th
// coordinates.
DistanceResult polydisk_distance(const MetricParams& p, const CVec& z1,
                                 const CVec& z2);

// Composite trapezoid quadrature of F along the path samples.
double path_length(const ProductManifold& mfd, const MetricParams& p,
                   const GeodesicPath& path);

// Closed-form unit-speed-family geodesic of the polydisk through 0:
// z^l(s) = (e^{a_l s} - 1)/(e^{a_l s} + 1); initial velocity is a/2.
CVec polydisk_closed_geodesic(const CVec& a, double s);

}  // namespace finsler

#endif  // FINSLER_GEODESICS_HPP
