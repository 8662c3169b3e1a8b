#ifndef FINSLER_FACTORS_HPP
#define FINSLER_FACTORS_HPP

#include <string>
#include <vector>

#include "finsler/types.hpp"

namespace finsler {

enum class FactorKind { PoincareDisk, BergmanBall, FubiniStudy, EuclideanFlat };

// Points closer than this to the unit sphere are rejected: curvature terms
// blow up like (1 - |z|^2)^-2 there.
inline constexpr double kBoundaryMargin = 1e-6;

// One constant-curvature model factor (M_l, Q_l).
struct FactorMetric {
  FactorKind kind;
  int dim;

  static FactorMetric poincare_disk();
  static FactorMetric bergman_ball(int dim);
  static FactorMetric fubini_study(int dim);
  static FactorMetric euclidean_flat(int dim);

  // -4 for disk/ball, +4 for Fubini-Study, 0 for flat.
  double constant_curvature() const;
  bool bounded_domain() const {
    return kind == FactorKind::PoincareDisk || kind == FactorKind::BergmanBall;
  }
  // Throws DomainError if z is outside (or too close to the boundary of)
  // the factor's domain.
  void check_point(const CVec& z) const;
  std::string name() const;
};

// Q_l(z,v): the Hermitian metric value of the factor.
double q_value(const FactorMetric& f, const CVec& z, const CVec& v);

struct QDerivatives {
  CMat tensor;  // [Q]_{a b'}(z), entry (a,b)
  CVec dv;      // dQ/dv^a = [Q]_{a b'} conj(v^b)
  CVec dz;      // dQ/dz^a at fixed v
};

QDerivatives q_derivatives(const FactorMetric& f, const CVec& z,
                           const CVec& v);

// Metric tensor [Q]_{a b'}(z) alone.
CMat q_tensor(const FactorMetric& f, const CVec& z);

// Closed-form z-derivatives of the tensor: result[c](a,b) = d[Q]_{a b'}/dz^c.
std::vector<CMat> q_tensor_dz(const FactorMetric& f, const CVec& z);

// Hermitian connection applied to v: entry (c,b) = Gamma^c_{;b}(z,v)
//   = [Q]^{l' c} d[Q]_{a l'}/dz^b v^a.  Complex linear in v.
CMat hermitian_connection(const FactorMetric& f, const CVec& z, const CVec& v);

// v-independent horizontal coefficients: result[c](a,b) = Gamma^c_{a;b}(z).
std::vector<CMat> hermitian_connection_coefficients(const FactorMetric& f,
                                                    const CVec& z);

// Real coordinate views. Layout within a factor: x^a = Re z^a,
// x^{a+m} = Im z^a, same for (v,u).
RVec factor_to_real(const CVec& z);
CVec factor_to_complex(const RVec& x);

// Real metric tensor [Q]_{ab}(x) (the 2m x 2m second u-derivative of Q,
// without the 1/2 of the quadratic-form convention).
RMat q_real_tensor(const FactorMetric& f, const RVec& x);

// Levi-Civita spray matrix: entry (c,b) = LC^c_{;b}(x,u) = LC^c_{a;b}(x) u^a,
// with x-derivatives of [Q]_{ab} taken by central differences (step shrunk
// near the boundary of bounded domains).
RMat levi_civita(const FactorMetric& f, const RVec& x, const RVec& u);

// Per-factor spray quadratic form 2G^b = LC^b_{c;a} u^c u^a.
RVec levi_civita_spray(const FactorMetric& f, const RVec& x, const RVec& u);

}  // namespace finsler

#endif  // FINSLER_FACTORS_HPP
