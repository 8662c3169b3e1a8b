#include "finsler/product_metric.hpp"

#include <cmath>

#include "finsler/linalg.hpp"
#include "finsler/numdiff.hpp"

namespace finsler {

namespace {

// Q^e with the 0^0 = 1 convention (the adjacent covector factors vanish when
// Q = 0, so the product is 0 regardless; this just avoids NaN).
double pow_q(double q, int e) {
  if (e == 0) return 1.0;
  return std::pow(q, e);
}

// a^p for a > 0, evaluated in log space; 0 for a = 0.
double pow_a(double a, double p) {
  if (a <= 0.0) return 0.0;
  return std::exp(p * std::log(a));
}

}  // namespace

MetricParams::MetricParams(double t_, int k_) : t(t_), k(k_) {
  if (!(t >= 0.0)) throw InvalidInputError("MetricParams: t must be >= 0");
  if (k < 2) throw InvalidInputError("MetricParams: k must be an integer >= 2");
}

ProductManifold::ProductManifold(std::vector<FactorMetric> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw InvalidInputError("ProductManifold: need at least one factor");
  }
  offsets_.reserve(factors_.size());
  int off = 0;
  for (const auto& f : factors_) {
    offsets_.push_back(off);
    off += f.dim;
  }
  total_dim_ = off;
}

ProductManifold ProductManifold::polydisk(int n) {
  if (n < 1) throw InvalidInputError("polydisk: n must be >= 1");
  std::vector<FactorMetric> fs(n, FactorMetric::poincare_disk());
  return ProductManifold(std::move(fs));
}

CVec ProductManifold::block(const CVec& z, int l) const {
  return z.segment(offsets_[l], factors_[l].dim);
}

RVec ProductManifold::real_block(const RVec& x, int l) const {
  return x.segment(2 * offsets_[l], 2 * factors_[l].dim);
}

void ProductManifold::check_point(const CVec& z) const {
  if (z.size() != total_dim_) {
    throw InvalidInputError("point: wrong coordinate length");
  }
  for (int l = 0; l < num_factors(); ++l) {
    factors_[l].check_point(block(z, l));
  }
}

void ProductManifold::check_tangent(const CVec& v) const {
  if (v.size() != total_dim_) {
    throw InvalidInputError("tangent: wrong coordinate length");
  }
}

RVec ProductManifold::to_real(const CVec& z) const {
  if (z.size() != total_dim_) {
    throw InvalidInputError("to_real: wrong coordinate length");
  }
  RVec x(2 * total_dim_);
  for (int l = 0; l < num_factors(); ++l) {
    x.segment(2 * offsets_[l], 2 * factors_[l].dim) =
        factor_to_real(block(z, l));
  }
  return x;
}

CVec ProductManifold::to_complex(const RVec& x) const {
  if (x.size() != 2 * total_dim_) {
    throw InvalidInputError("to_complex: wrong coordinate length");
  }
  CVec z(total_dim_);
  for (int l = 0; l < num_factors(); ++l) {
    z.segment(offsets_[l], factors_[l].dim) =
        factor_to_complex(x.segment(2 * offsets_[l], 2 * factors_[l].dim));
  }
  return z;
}

FamilyScalars family_scalars(const ProductManifold& mfd, const MetricParams& p,
                             const CVec& z, const CVec& v) {
  mfd.check_tangent(v);
  const int n = mfd.num_factors();
  FamilyScalars out;
  out.q.resize(n);
  for (int l = 0; l < n; ++l) {
    out.q[l] = q_value(mfd.factor(l), mfd.block(z, l), mfd.block(v, l));
    out.sum_q += out.q[l];
    out.a += pow_q(out.q[l], p.k);
  }
  const double a1 = pow_a(out.a, 1.0 / p.k - 1.0);
  out.e.resize(n);
  for (int l = 0; l < n; ++l) {
    out.e[l] = 1.0 + p.t * a1 * pow_q(out.q[l], p.k - 1);
  }
  return out;
}

double metric_g(const ProductManifold& mfd, const MetricParams& p,
                const CVec& z, const CVec& v) {
  const FamilyScalars s = family_scalars(mfd, p, z, v);
  return (s.sum_q + p.t * pow_a(s.a, 1.0 / p.k)) / (1.0 + p.t);
}

double metric_value(const ProductManifold& mfd, const MetricParams& p,
                    const CVec& z, const CVec& v) {
  return std::sqrt(metric_g(mfd, p, z, v));
}

ComplexFundamentalTensor complex_fundamental_tensor(const ProductManifold& mfd,
                                                    const MetricParams& p,
                                                    const CVec& z,
                                                    const CVec& v) {
  mfd.check_point(z);
  mfd.check_tangent(v);
  if (v.norm() == 0.0) {
    throw ZeroSectionError("complex_fundamental_tensor: v = 0");
  }
  const int n = mfd.num_factors();
  const int dim = mfd.total_dim();
  // The tensor is degree 0 in v; evaluate at the unit-normalized direction
  // for conditioning.
  const CVec vh = v / v.norm();

  std::vector<double> q(n);
  std::vector<QDerivatives> der(n);
  double a = 0.0;
  for (int l = 0; l < n; ++l) {
    der[l] = q_derivatives(mfd.factor(l), mfd.block(z, l), mfd.block(vh, l));
    q[l] = hermitian_quadratic_form(der[l].tensor, mfd.block(vh, l));
    a += pow_q(q[l], p.k);
  }
  const double a1 = pow_a(a, 1.0 / p.k - 1.0);
  const double a2 = pow_a(a, 1.0 / p.k - 2.0);
  const double lambda = p.t * (p.k - 1) * a2;

  ComplexFundamentalTensor out;
  out.a = a;
  out.e.resize(n);
  std::vector<CMat> c_blocks(n), c_inv_blocks(n);
  CVec y = CVec::Zero(dim);
  for (int l = 0; l < n; ++l) {
    const double el = 1.0 + p.t * a1 * pow_q(q[l], p.k - 1);
    out.e[l] = el;
    const double coef = p.t * (p.k - 1) * a1 * pow_q(q[l], p.k - 2);
    const CVec& d = der[l].dv;
    c_blocks[l] = el * der[l].tensor + coef * (d * d.adjoint());
    const CMat q_inv = der[l].tensor.inverse();
    c_inv_blocks[l] =
        (1.0 / el) * linalg::rank1_update_inverse(q_inv, d, -coef / el);
    y.segment(mfd.offset(l), mfd.factor(l).dim) = pow_q(q[l], p.k - 1) * d;
  }
  const CMat c_full = linalg::block_diag(c_blocks);
  const CMat c_inv = linalg::block_diag_inverse(c_inv_blocks);
  out.det_guard = 1.0 - lambda * (y.dot(c_inv * y)).real();
  CMat h_inv_raw;
  if (lambda == 0.0) {
    h_inv_raw = c_inv;
  } else {
    h_inv_raw = linalg::rank1_update_inverse(c_inv, y, lambda);
  }
  const double pref = 1.0 + p.t;
  out.h = (c_full - lambda * (y * y.adjoint())) / pref;
  out.h_inv = pref * h_inv_raw;
  out.g_value = metric_g(mfd, p, z, v);
  return out;
}

RealFundamentalTensor real_fundamental_tensor(const ProductManifold& mfd,
                                              const MetricParams& p,
                                              const RVec& x, const RVec& u) {
  const CVec z = mfd.to_complex(x);
  mfd.check_point(z);
  if (u.size() != x.size()) {
    throw InvalidInputError("real_fundamental_tensor: size mismatch");
  }
  if (u.norm() == 0.0) {
    throw ZeroSectionError("real_fundamental_tensor: u = 0");
  }
  const int n = mfd.num_factors();
  const int rdim = static_cast<int>(x.size());
  const RVec uh = u / u.norm();

  std::vector<double> q(n);
  std::vector<RMat> qr(n);
  std::vector<RVec> dq(n);
  double a = 0.0;
  for (int l = 0; l < n; ++l) {
    qr[l] = q_real_tensor(mfd.factor(l), mfd.real_block(x, l));
    const RVec ul = mfd.real_block(uh, l);
    dq[l] = qr[l] * ul;
    q[l] = 0.5 * ul.dot(dq[l]);
    a += pow_q(q[l], p.k);
  }
  const double a1 = pow_a(a, 1.0 / p.k - 1.0);
  const double a2 = pow_a(a, 1.0 / p.k - 2.0);
  const double lambda = p.t * (p.k - 1) * a2;

  RealFundamentalTensor out;
  std::vector<RMat> b_blocks(n), b_inv_blocks(n);
  RVec zvec = RVec::Zero(rdim);
  out.w.resize(n);
  double c_pos = 0.0;
  for (int l = 0; l < n; ++l) {
    const double el = 1.0 + p.t * a1 * pow_q(q[l], p.k - 1);
    const double coef = p.t * (p.k - 1) * a1 * pow_q(q[l], p.k - 2);
    b_blocks[l] = el * qr[l] + coef * (dq[l] * dq[l].transpose());
    b_inv_blocks[l] = (1.0 / el) * linalg::rank1_update_inverse(
                                       RMat(qr[l].inverse()), dq[l], -coef / el);
    zvec.segment(2 * mfd.offset(l), 2 * mfd.factor(l).dim) =
        pow_q(q[l], p.k - 1) * dq[l];
    const double denom = 1.0 + p.t * (2 * p.k - 1) * a1 * pow_q(q[l], p.k - 1);
    out.w[l] = pow_q(q[l], p.k - 1) * mfd.real_block(uh, l) / denom;
    c_pos += el * pow_q(q[l], p.k) / denom;
  }
  out.c_pos = (a > 0.0) ? c_pos / a : 1.0;
  const RMat b_full = linalg::block_diag(b_blocks);
  const RMat b_inv = linalg::block_diag_inverse(b_inv_blocks);
  RMat gp_inv;
  if (lambda == 0.0) {
    gp_inv = b_inv;
  } else {
    gp_inv = linalg::rank1_update_inverse(b_inv, zvec, lambda);
  }
  const double pref = 2.0 * (1.0 + p.t);
  out.g = (b_full - lambda * (zvec * zvec.transpose())) / pref;
  out.g_inv = pref * gp_inv;
  return out;
}

BridgeCheck real_complex_bridge_check(const ProductManifold& mfd,
                                      const MetricParams& p, const CVec& z,
                                      const CVec& v, const CVec& big_v) {
  mfd.check_point(z);
  if (v.norm() == 0.0) {
    throw ZeroSectionError("real_complex_bridge_check: v = 0");
  }
  if (big_v.size() != mfd.total_dim()) {
    throw InvalidInputError("real_complex_bridge_check: vertical size");
  }
  BridgeCheck out{0.0, 0.0};
  if (big_v.norm() == 0.0) return out;

  const RealFundamentalTensor rt =
      real_fundamental_tensor(mfd, p, mfd.to_real(z), mfd.to_real(v));
  const RVec u_cap = mfd.to_real(big_v);
  out.lhs = 2.0 * u_cap.dot(rt.g * u_cap);

  const ComplexFundamentalTensor ct = complex_fundamental_tensor(mfd, p, z, v);
  const Complex mixed = (big_v.transpose() * ct.h * big_v.conjugate())(0, 0);
  // Holomorphic-holomorphic second derivatives (the Cartan part) have no
  // closed form here; finite-difference them in v.
  const auto g_of_v = [&](const CVec& w) { return metric_g(mfd, p, z, w); };
  const CMat holo = numdiff::wirtinger_holo_hessian(g_of_v, v);
  const Complex pure = (big_v.transpose() * holo * big_v)(0, 0);
  out.rhs = 2.0 * (mixed + pure).real();
  return out;
}

}  // namespace finsler
