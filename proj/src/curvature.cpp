#include "finsler/curvature.hpp"

#include <cmath>

#include "finsler/connection.hpp"
#include "finsler/numdiff.hpp"

namespace finsler {

namespace {

double pow_q(double q, int e) {
  if (e == 0) return 1.0;
  return std::pow(q, e);
}

double pow_a(double a, double p) {
  if (a <= 0.0) return 0.0;
  return std::exp(p * std::log(a));
}

}  // namespace

double sectional_curvature(const ProductManifold& mfd, const MetricParams& p,
                           const CVec& z, const CVec& v) {
  mfd.check_point(z);
  if (v.norm() == 0.0) throw ZeroSectionError("sectional_curvature: v = 0");
  // Degree-0 in v; normalize for conditioning.
  const CVec vh = v / v.norm();
  const FamilyScalars s = family_scalars(mfd, p, z, vh);
  double num = 0.0;
  for (int l = 0; l < mfd.num_factors(); ++l) {
    num += mfd.factor(l).constant_curvature() * s.e[l] * s.q[l] * s.q[l];
  }
  const double denom = s.sum_q + p.t * pow_a(s.a, 1.0 / p.k);
  return (1.0 + p.t) * num / (denom * denom);
}

double sectional_curvature_direct(const ProductManifold& mfd,
                                  const MetricParams& p, const CVec& z,
                                  const CVec& v) {
  mfd.check_point(z);
  if (v.norm() == 0.0) {
    throw ZeroSectionError("sectional_curvature_direct: v = 0");
  }
  const CVec vh = v / v.norm();
  const int n = mfd.total_dim();

  // N^c(z,v) = Gamma^c_{;a} v^a from the closed-form connection.
  const auto nvec = [&](const CVec& zp, const CVec& vp) -> CVec {
    return nonlinear_connection_closed(mfd, p, zp, vp) * vp;
  };

  double scale = 1.0;
  for (int l = 0; l < mfd.num_factors(); ++l) {
    if (mfd.factor(l).bounded_domain()) {
      scale = std::min(scale, 1.0 - mfd.block(z, l).norm());
    }
  }
  const double hz = numdiff::kDefaultStep * std::max(scale, 10.0 * kBoundaryMargin);

  const CMat gamma = nonlinear_connection_closed(mfd, p, z, vh);
  const ComplexFundamentalTensor ct = complex_fundamental_tensor(mfd, p, z, vh);
  const CVec g_c = ct.h * vh.conjugate();  // G_c = dG/dv^c
  const double g_val = ct.g_value;

  const auto n_of_z = [&](const CVec& zp) { return nvec(zp, vh); };
  const auto n_of_v = [&](const CVec& vp) { return nvec(z, vp); };

  Complex total = 0.0;
  for (int m = 0; m < n; ++m) {
    CVec delta = numdiff::wirtinger_dzbar_component(n_of_z, z, m, hz);
    for (int l = 0; l < n; ++l) {
      const CVec dv = numdiff::wirtinger_dzbar_component(n_of_v, vh, l);
      delta -= std::conj(gamma(l, m)) * dv;
    }
    total += (g_c.array() * delta.array()).sum() * std::conj(vh[m]);
  }
  return -2.0 / (g_val * g_val) * std::real(total);
}

CurvatureBounds curvature_bounds(double c, int n, const MetricParams& p) {
  if (n < 1) throw InvalidInputError("curvature_bounds: n must be >= 1");
  CurvatureBounds b;
  b.c = c;
  b.n = n;
  b.params = p;
  const double other =
      (1.0 + p.t) * c / (n + p.t * std::pow(double(n), 1.0 / p.k));
  if (c < 0.0) {
    b.lo = c;
    b.hi = other;
  } else if (c > 0.0) {
    b.lo = other;
    b.hi = c;
  } else {
    b.lo = b.hi = 0.0;
  }
  return b;
}

CurvatureLimits curvature_limits(const ProductManifold& mfd, const CVec& z,
                                 const CVec& v, int k) {
  mfd.check_point(z);
  if (v.norm() == 0.0) throw ZeroSectionError("curvature_limits: v = 0");
  if (k < 2) throw InvalidInputError("curvature_limits: k must be >= 2");
  const CVec vh = v / v.norm();
  const int n = mfd.num_factors();
  double sum_q = 0.0, a = 0.0, num0 = 0.0, numinf = 0.0;
  for (int l = 0; l < n; ++l) {
    const double q = q_value(mfd.factor(l), mfd.block(z, l), mfd.block(vh, l));
    const double c = mfd.factor(l).constant_curvature();
    sum_q += q;
    a += pow_q(q, k);
    num0 += c * q * q;
    numinf += c * pow_q(q, k + 1);
  }
  CurvatureLimits out;
  out.at_t0 = num0 / (sum_q * sum_q);
  out.at_tinf = (a > 0.0) ? numinf / pow_a(a, (k + 1.0) / k) : 0.0;
  return out;
}

}  // namespace finsler
