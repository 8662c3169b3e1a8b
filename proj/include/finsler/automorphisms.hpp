#ifndef FINSLER_AUTOMORPHISMS_HPP
#define FINSLER_AUTOMORPHISMS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "finsler/check_report.hpp"
#include "finsler/connection.hpp"
#include "finsler/types.hpp"

namespace finsler {

// phi_a followed by a unitary rotation: z -> U * phi_a(z).  phi_a is the
// standard involutive automorphism of the unit ball with phi_a(0) = a,
// phi_a(a) = 0; with U = I the map is its own inverse.
class BallAutomorphism {
 public:
  explicit BallAutomorphism(CVec a);
  BallAutomorphism(CVec a, CMat u);

  int dim() const { return static_cast<int>(a_.size()); }
  const CVec& center() const { return a_; }

  CVec apply(const CVec& z) const;
  CMat jacobian(const CVec& z) const;  // closed form

 private:
  CVec phi(const CVec& z) const;
  CMat phi_jacobian(const CVec& z) const;

  CVec a_;
  CMat u_;
  double s_a_;  // sqrt(1 - |a|^2)
};

// f_l(z) = e^{i theta_l} (z^{sigma(l)} - a_l) / (1 - conj(a_l) z^{sigma(l)}):
// rotations, coordinate Moebius shifts and a coordinate permutation.
class PolydiskAutomorphism {
 public:
  PolydiskAutomorphism(std::vector<double> thetas, CVec a,
                       std::vector<int> sigma);

  int dim() const { return static_cast<int>(a_.size()); }
  PolydiskAutomorphism inverse() const;

  CVec apply(const CVec& z) const;
  CMat jacobian(const CVec& z) const;
  // second_derivative[c](b, a) = d^2 f^c / dz^b dz^a (closed form).
  std::vector<CMat> second_derivative(const CVec& z) const;

 private:
  std::vector<double> thetas_;
  CVec a_;
  std::vector<int> sigma_;
};

// A holomorphic map with inverse; Jacobians are closed form when supplied,
// central finite differences otherwise.
struct Biholomorphism {
  std::function<CVec(const CVec&)> forward;
  std::function<CVec(const CVec&)> inverse;
  std::function<CMat(const CVec&)> forward_jacobian;  // optional
  std::function<CMat(const CVec&)> inverse_jacobian;  // optional

  CMat jac_forward(const CVec& z) const;
  CMat jac_inverse(const CVec& w) const;

  static Biholomorphism identity(int n);
  static Biholomorphism from_ball(const BallAutomorphism& m);
  static Biholomorphism from_polydisk(const PolydiskAutomorphism& m);
};

// (f(z), df_z(v)).
std::pair<CVec, CVec> apply_with_differential(const Biholomorphism& map,
                                              const CVec& z, const CVec& v);

// Pullback along the forward map: the returned metric evaluates
// G2(z, v) = G1(f(z), df_z(v)).
MetricFn pullback_metric(const MetricFn& g1, const Biholomorphism& map);

// Transformation law of horizontal connection coefficients under a polydisk
// automorphism: the coefficients of the pulled-back family metric (computed
// by the generic finite-difference pipeline) must match the transformed
// closed-form coefficients
//   Gamma2^c_{b;a} = Jf^c_s Gamma1^s_{m;l} Jg^m_b Jg^l_a + Jf^c_s Hg^s_{ba}.
CheckReport pullback_connection_check(const ProductManifold& mfd,
                                      const MetricParams& p,
                                      const PolydiskAutomorphism& map,
                                      const CVec& z2, const CVec& v2,
                                      double tol = 1e-4);

// c((1-|z|^2)|v|^2 + |<z,v>|^2)/(1-|z|^2)^2: the only Aut-invariant
// candidate produced by transporting c|v|^2 from the origin.
double ball_rigidity_metric(double c, const CVec& z, const CVec& v);

}  // namespace finsler

#endif  // FINSLER_AUTOMORPHISMS_HPP
