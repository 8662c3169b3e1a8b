#include "finsler/automorphisms.hpp"

#include <cmath>

#include "finsler/factors.hpp"
#include "finsler/numdiff.hpp"

namespace finsler {

namespace {

constexpr double kTinyCenter = 1e-14;
const Complex kI(0.0, 1.0);

void check_ball_point(const CVec& z) {
  if (z.norm() > 1.0 - kBoundaryMargin) {
    throw DomainError("ball automorphism: point outside the unit ball");
  }
}

}  // namespace

BallAutomorphism::BallAutomorphism(CVec a)
    : BallAutomorphism(std::move(a), CMat()) {}

BallAutomorphism::BallAutomorphism(CVec a, CMat u) : a_(std::move(a)) {
  if (a_.size() == 0) throw InvalidInputError("BallAutomorphism: empty center");
  if (a_.norm() >= 1.0) {
    throw InvalidInputError("BallAutomorphism: center must satisfy |a| < 1");
  }
  const int m = dim();
  u_ = (u.size() == 0) ? CMat(CMat::Identity(m, m)) : u;
  if (u_.rows() != m || u_.cols() != m ||
      (u_ * u_.adjoint() - CMat::Identity(m, m)).cwiseAbs().maxCoeff() >
          1e-12) {
    throw InvalidInputError("BallAutomorphism: U must be unitary");
  }
  s_a_ = std::sqrt(1.0 - a_.squaredNorm());
}

CVec BallAutomorphism::phi(const CVec& z) const {
  if (a_.norm() < kTinyCenter) return -z;
  const Complex pz = a_.dot(z);  // <z, a> = sum z^i conj(a^i)
  const CVec proj = (pz / a_.squaredNorm()) * a_;
  const CVec num = a_ - proj - s_a_ * (z - proj);
  return num / (1.0 - pz);
}

CMat BallAutomorphism::phi_jacobian(const CVec& z) const {
  const int m = dim();
  if (a_.norm() < kTinyCenter) return -CMat::Identity(m, m);
  const Complex pz = a_.dot(z);
  const Complex d = 1.0 - pz;
  // P(i,j) = a^i conj(a^j)/|a|^2, the projection onto the center direction.
  const CMat proj = (a_ * a_.adjoint()) / a_.squaredNorm();
  const CMat dnum = -proj - s_a_ * (CMat::Identity(m, m) - proj);
  const CVec num = a_ - (pz / a_.squaredNorm()) * a_ -
                   s_a_ * (z - (pz / a_.squaredNorm()) * a_);
  return dnum / d + (num * a_.adjoint()) / (d * d);
}

CVec BallAutomorphism::apply(const CVec& z) const {
  if (z.size() != dim()) throw InvalidInputError("BallAutomorphism: dim");
  check_ball_point(z);
  return u_ * phi(z);
}

CMat BallAutomorphism::jacobian(const CVec& z) const {
  if (z.size() != dim()) throw InvalidInputError("BallAutomorphism: dim");
  check_ball_point(z);
  return u_ * phi_jacobian(z);
}

PolydiskAutomorphism::PolydiskAutomorphism(std::vector<double> thetas, CVec a,
                                           std::vector<int> sigma)
    : thetas_(std::move(thetas)), a_(std::move(a)), sigma_(std::move(sigma)) {
  const int n = dim();
  if (n == 0 || static_cast<int>(thetas_.size()) != n ||
      static_cast<int>(sigma_.size()) != n) {
    throw InvalidInputError("PolydiskAutomorphism: size mismatch");
  }
  std::vector<bool> seen(n, false);
  for (int s : sigma_) {
    if (s < 0 || s >= n || seen[s]) {
      throw InvalidInputError("PolydiskAutomorphism: sigma not a permutation");
    }
    seen[s] = true;
  }
  for (int l = 0; l < n; ++l) {
    if (std::abs(a_[l]) >= 1.0) {
      throw InvalidInputError("PolydiskAutomorphism: |a_l| < 1 required");
    }
  }
}

PolydiskAutomorphism PolydiskAutomorphism::inverse() const {
  const int n = dim();
  std::vector<int> sigma_inv(n);
  for (int l = 0; l < n; ++l) sigma_inv[sigma_[l]] = l;
  std::vector<double> thetas(n);
  CVec a(n);
  for (int j = 0; j < n; ++j) {
    const int l = sigma_inv[j];
    thetas[j] = -thetas_[l];
    a[j] = -a_[l] * std::exp(kI * thetas_[l]);
  }
  return PolydiskAutomorphism(std::move(thetas), std::move(a),
                              std::move(sigma_inv));
}

CVec PolydiskAutomorphism::apply(const CVec& z) const {
  const int n = dim();
  if (z.size() != n) throw InvalidInputError("PolydiskAutomorphism: dim");
  CVec w(n);
  for (int l = 0; l < n; ++l) {
    const Complex zl = z[sigma_[l]];
    if (std::abs(zl) > 1.0 - kBoundaryMargin) {
      throw DomainError("PolydiskAutomorphism: point outside the polydisk");
    }
    w[l] = std::exp(kI * thetas_[l]) * (zl - a_[l]) /
           (1.0 - std::conj(a_[l]) * zl);
  }
  return w;
}

CMat PolydiskAutomorphism::jacobian(const CVec& z) const {
  const int n = dim();
  if (z.size() != n) throw InvalidInputError("PolydiskAutomorphism: dim");
  CMat jac = CMat::Zero(n, n);
  for (int l = 0; l < n; ++l) {
    const Complex zl = z[sigma_[l]];
    const Complex d = 1.0 - std::conj(a_[l]) * zl;
    jac(l, sigma_[l]) = std::exp(kI * thetas_[l]) *
                        (1.0 - std::norm(a_[l])) / (d * d);
  }
  return jac;
}

std::vector<CMat> PolydiskAutomorphism::second_derivative(const CVec& z) const {
  const int n = dim();
  if (z.size() != n) throw InvalidInputError("PolydiskAutomorphism: dim");
  std::vector<CMat> out(n, CMat::Zero(n, n));
  for (int l = 0; l < n; ++l) {
    const Complex zl = z[sigma_[l]];
    const Complex d = 1.0 - std::conj(a_[l]) * zl;
    out[l](sigma_[l], sigma_[l]) = std::exp(kI * thetas_[l]) *
                                   (1.0 - std::norm(a_[l])) * 2.0 *
                                   std::conj(a_[l]) / (d * d * d);
  }
  return out;
}

CMat Biholomorphism::jac_forward(const CVec& z) const {
  if (forward_jacobian) return forward_jacobian(z);
  return numdiff::holomorphic_jacobian(forward, z);
}

CMat Biholomorphism::jac_inverse(const CVec& w) const {
  if (inverse_jacobian) return inverse_jacobian(w);
  return numdiff::holomorphic_jacobian(inverse, w);
}

Biholomorphism Biholomorphism::identity(int n) {
  Biholomorphism b;
  b.forward = [](const CVec& z) { return z; };
  b.inverse = b.forward;
  b.forward_jacobian = [n](const CVec&) { return CMat::Identity(n, n); };
  b.inverse_jacobian = b.forward_jacobian;
  return b;
}

Biholomorphism Biholomorphism::from_ball(const BallAutomorphism& m) {
  Biholomorphism b;
  b.forward = [m](const CVec& z) { return m.apply(z); };
  b.forward_jacobian = [m](const CVec& z) { return m.jacobian(z); };
  // phi_a is an involution; undo the trailing unitary by finite-difference
  // inversion only when needed.  With U = I the inverse is the map itself.
  b.inverse = b.forward;
  b.inverse_jacobian = b.forward_jacobian;
  return b;
}

Biholomorphism Biholomorphism::from_polydisk(const PolydiskAutomorphism& m) {
  const PolydiskAutomorphism inv = m.inverse();
  Biholomorphism b;
  b.forward = [m](const CVec& z) { return m.apply(z); };
  b.forward_jacobian = [m](const CVec& z) { return m.jacobian(z); };
  b.inverse = [inv](const CVec& w) { return inv.apply(w); };
  b.inverse_jacobian = [inv](const CVec& w) { return inv.jacobian(w); };
  return b;
}

std::pair<CVec, CVec> apply_with_differential(const Biholomorphism& map,
                                              const CVec& z, const CVec& v) {
  return {map.forward(z), map.jac_forward(z) * v};
}

MetricFn pullback_metric(const MetricFn& g1, const Biholomorphism& map) {
  return [g1, map](const CVec& z, const CVec& v) {
    return g1(map.forward(z), map.jac_forward(z) * v);
  };
}

CheckReport pullback_connection_check(const ProductManifold& mfd,
                                      const MetricParams& p,
                                      const PolydiskAutomorphism& map,
                                      const CVec& z2, const CVec& v2,
                                      double tol) {
  const int n = mfd.total_dim();
  if (n != map.dim()) {
    throw InvalidInputError("pullback_connection_check: dimension mismatch");
  }
  if (v2.norm() == 0.0) {
    throw ZeroSectionError("pullback_connection_check: v = 0");
  }
  const PolydiskAutomorphism g = map.inverse();
  const CVec z1 = g.apply(z2);
  const CMat jg = g.jacobian(z2);
  const std::vector<CMat> hg = g.second_derivative(z2);
  const CMat jf = map.jacobian(z1);

  // Upstream closed-form horizontal coefficients at z1.
  std::vector<CMat> up(n, CMat::Zero(n, n));
  for (int l = 0; l < mfd.num_factors(); ++l) {
    const auto coeffs =
        hermitian_connection_coefficients(mfd.factor(l), mfd.block(z1, l));
    const int off = mfd.offset(l);
    const int m = mfd.factor(l).dim;
    for (int c = 0; c < m; ++c) {
      up[off + c].block(off, off, m, m) = coeffs[c];
    }
  }

  // Transformed coefficients on the pulled-back side.
  std::vector<CMat> rhs(n, CMat::Zero(n, n));
  for (int c = 0; c < n; ++c) {
    CMat acc = CMat::Zero(n, n);
    for (int s = 0; s < n; ++s) {
      if (jf(c, s) == Complex(0.0)) continue;
      acc += jf(c, s) * (jg.transpose() * up[s] * jg + hg[s]);
    }
    rhs[c] = acc;
  }

  // The same coefficients from the generic finite-difference pipeline over
  // the pulled-back metric, with a wider outer step to tame nested-FD noise.
  const MetricFn g2 =
      pullback_metric(family_metric_fn(mfd, p), Biholomorphism::from_polydisk(g));
  const auto gamma_fn = [&](const CVec& vp) -> CVec {
    const CMat gm = nonlinear_connection_fn(g2, mfd, z2, vp);
    return Eigen::Map<const CVec>(gm.data(), n * n);
  };
  CheckReport rep;
  rep.name = "pullback_connection";
  rep.tolerance = tol;
  for (int b = 0; b < n; ++b) {
    const CVec d = numdiff::wirtinger_dz_component(gamma_fn, v2, b, 1e-3);
    const Eigen::Map<const CMat> dm(d.data(), n, n);  // (c, a)
    for (int c = 0; c < n; ++c) {
      for (int a = 0; a < n; ++a) {
        rep.record(std::abs(dm(c, a) - rhs[c](b, a)),
                   "indices (" + std::to_string(c) + "," + std::to_string(b) +
                       "," + std::to_string(a) + ")");
      }
    }
  }
  return rep;
}

double ball_rigidity_metric(double c, const CVec& z, const CVec& v) {
  if (c <= 0.0) throw InvalidInputError("ball_rigidity_metric: c > 0 required");
  const FactorMetric ball =
      FactorMetric::bergman_ball(static_cast<int>(z.size()));
  return c * q_value(ball, z, v);
}

}  // namespace finsler
