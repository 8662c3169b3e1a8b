#include "finsler/connection.hpp"

#include <cmath>

#include "finsler/numdiff.hpp"

namespace finsler {

namespace {

// Base-point finite-difference steps shrink near the boundary of bounded
// factors so stencils stay inside the domain.
double z_step_scale(const ProductManifold& mfd, const CVec& z) {
  double scale = 1.0;
  for (int l = 0; l < mfd.num_factors(); ++l) {
    if (mfd.factor(l).bounded_domain()) {
      scale = std::min(scale, 1.0 - mfd.block(z, l).norm());
    }
  }
  return std::max(scale, 10.0 * kBoundaryMargin);
}

void check_nonzero(const CVec& v, const char* where) {
  if (v.norm() == 0.0) throw ZeroSectionError(std::string(where) + ": v = 0");
}

}  // namespace

MetricFn family_metric_fn(const ProductManifold& mfd, const MetricParams& p) {
  return [mfd, p](const CVec& z, const CVec& v) {
    return metric_g(mfd, p, z, v);
  };
}

CMat nonlinear_connection(const ProductManifold& mfd, const MetricParams& p,
                          const CVec& z, const CVec& v) {
  mfd.check_point(z);
  check_nonzero(v, "nonlinear_connection");
  const int n = mfd.total_dim();
  const ComplexFundamentalTensor ct = complex_fundamental_tensor(mfd, p, z, v);
  // vbar-gradient of G as a function of the base point (closed form via the
  // tensor: dG/dvbar^t = G_{a t'} v^a).
  const auto wfun = [&](const CVec& zp) -> CVec {
    return complex_fundamental_tensor(mfd, p, zp, v).h.transpose() * v;
  };
  const double h = numdiff::kDefaultStep * z_step_scale(mfd, z);
  CMat mixed(n, n);  // (t, a) = d^2 G / dvbar^t dz^a
  for (int a = 0; a < n; ++a) {
    mixed.col(a) = numdiff::wirtinger_dz_component(wfun, z, a, h);
  }
  return ct.h_inv.transpose() * mixed;
}

CMat nonlinear_connection_closed(const ProductManifold& mfd,
                                 const MetricParams& p, const CVec& z,
                                 const CVec& v) {
  (void)p;  // Eq-level fact: the family's coefficients do not involve (t,k).
  mfd.check_point(z);
  check_nonzero(v, "nonlinear_connection_closed");
  const int n = mfd.total_dim();
  CMat gamma = CMat::Zero(n, n);
  for (int l = 0; l < mfd.num_factors(); ++l) {
    const int off = mfd.offset(l);
    const int m = mfd.factor(l).dim;
    gamma.block(off, off, m, m) =
        hermitian_connection(mfd.factor(l), mfd.block(z, l), mfd.block(v, l));
  }
  return gamma;
}

std::vector<CMat> horizontal_coefficients(const ProductManifold& mfd,
                                          const MetricParams& p, const CVec& z,
                                          const CVec& v) {
  check_nonzero(v, "horizontal_coefficients");
  const int n = mfd.total_dim();
  const auto gamma_fn = [&](const CVec& vp) -> CVec {
    const CMat g = nonlinear_connection(mfd, p, z, vp);
    return Eigen::Map<const CVec>(g.data(), n * n);
  };
  std::vector<CMat> hor(n, CMat::Zero(n, n));
  for (int b = 0; b < n; ++b) {
    const CVec d = numdiff::wirtinger_dz_component(gamma_fn, v, b);
    const Eigen::Map<const CMat> dm(d.data(), n, n);  // (c, a)
    for (int c = 0; c < n; ++c) hor[c].row(b) = dm.row(c);
  }
  return hor;
}

RVec real_spray(const ProductManifold& mfd, const MetricParams& p,
                const RVec& x, const RVec& u) {
  const CVec z = mfd.to_complex(x);
  mfd.check_point(z);
  if (u.norm() == 0.0) throw ZeroSectionError("real_spray: u = 0");
  const RealFundamentalTensor rt = real_fundamental_tensor(mfd, p, x, u);
  const double scale = z_step_scale(mfd, z);
  const double h = numdiff::kDefaultStep * scale;

  // u-gradient of G is exactly (2g)u by homogeneity; differentiate it along
  // the direction u in the base.
  const auto ugrad = [&](const RVec& xp) -> RVec {
    return 2.0 * real_fundamental_tensor(mfd, p, xp, u).g * u;
  };
  const double eps = h / std::max(1.0, u.norm());
  const RVec mixed_u = (ugrad(x + eps * u) - ugrad(x - eps * u)) / (2.0 * eps);

  const auto g_of_x = [&](const RVec& xp) {
    return metric_g(mfd, p, mfd.to_complex(xp), mfd.to_complex(u));
  };
  const RVec dx = numdiff::gradient(g_of_x, x, h);

  return 0.5 * rt.g_inv * (mixed_u - dx);
}

ConnectionData connection_data(const ProductManifold& mfd,
                               const MetricParams& p, const CVec& z,
                               const CVec& v) {
  ConnectionData out;
  out.nonlinear = nonlinear_connection(mfd, p, z, v);
  out.horizontal = horizontal_coefficients(mfd, p, z, v);
  out.real_spray = real_spray(mfd, p, mfd.to_real(z), mfd.to_real(v));
  return out;
}

CMat nonlinear_connection_fn(const MetricFn& g_fn, const ProductManifold& mfd,
                             const CVec& z, const CVec& v) {
  mfd.check_point(z);
  check_nonzero(v, "nonlinear_connection_fn");
  const int n = mfd.total_dim();
  const CMat h = numdiff::wirtinger_mixed_hessian(
      [&](const CVec& vp) { return g_fn(z, vp); }, v);
  const auto wfun = [&](const CVec& zp) -> CVec {
    return numdiff::wirtinger_dzbar([&](const CVec& vp) { return g_fn(zp, vp); },
                                    v);
  };
  const double hz = numdiff::kDefaultStep * z_step_scale(mfd, z);
  CMat mixed(n, n);
  for (int a = 0; a < n; ++a) {
    mixed.col(a) = numdiff::wirtinger_dz_component(wfun, z, a, hz);
  }
  return CMat(h.inverse()).transpose() * mixed;
}

std::vector<CMat> horizontal_coefficients_fn(const MetricFn& g_fn,
                                             const ProductManifold& mfd,
                                             const CVec& z, const CVec& v) {
  check_nonzero(v, "horizontal_coefficients_fn");
  const int n = mfd.total_dim();
  const auto gamma_fn = [&](const CVec& vp) -> CVec {
    const CMat g = nonlinear_connection_fn(g_fn, mfd, z, vp);
    return Eigen::Map<const CVec>(g.data(), n * n);
  };
  std::vector<CMat> hor(n, CMat::Zero(n, n));
  for (int b = 0; b < n; ++b) {
    const CVec d = numdiff::wirtinger_dz_component(gamma_fn, v, b);
    const Eigen::Map<const CMat> dm(d.data(), n, n);
    for (int c = 0; c < n; ++c) hor[c].row(b) = dm.row(c);
  }
  return hor;
}

RVec real_spray_fn(const MetricFn& g_fn, const ProductManifold& mfd,
                   const RVec& x, const RVec& u) {
  const CVec z = mfd.to_complex(x);
  mfd.check_point(z);
  if (u.norm() == 0.0) throw ZeroSectionError("real_spray_fn: u = 0");
  const double h = numdiff::kDefaultStep * z_step_scale(mfd, z);

  const auto g_real = [&](const RVec& xp, const RVec& up) {
    return g_fn(mfd.to_complex(xp), mfd.to_complex(up));
  };
  const RMat hess = numdiff::hessian(
      [&](const RVec& up) { return g_real(x, up); }, u);
  const auto ugrad = [&](const RVec& xp) -> RVec {
    return numdiff::gradient([&](const RVec& up) { return g_real(xp, up); }, u);
  };
  const double eps = h / std::max(1.0, u.norm());
  const RVec mixed_u = (ugrad(x + eps * u) - ugrad(x - eps * u)) / (2.0 * eps);
  const RVec dx = numdiff::gradient(
      [&](const RVec& xp) { return g_real(xp, u); }, x, h);
  return hess.inverse() * (mixed_u - dx);
}

CheckReport check_berwald(const ProductManifold& mfd, const MetricParams& p,
                          const CVec& z, const std::vector<CVec>& v_samples,
                          double tol) {
  if (v_samples.size() < 2) {
    throw InvalidInputError("check_berwald: need at least 2 fiber samples");
  }
  CheckReport rep;
  rep.name = "berwald";
  rep.tolerance = tol;
  std::vector<std::vector<CMat>> all;
  all.reserve(v_samples.size());
  for (const auto& v : v_samples) {
    all.push_back(horizontal_coefficients(mfd, p, z, v));
  }
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = i + 1; j < all.size(); ++j) {
      double dev = 0.0;
      for (size_t c = 0; c < all[i].size(); ++c) {
        dev = std::max(dev,
                       (all[i][c] - all[j][c]).cwiseAbs().maxCoeff());
      }
      rep.record(dev, "fiber samples " + std::to_string(i) + "," +
                          std::to_string(j));
    }
  }
  return rep;
}

CheckReport check_kahler(const ProductManifold& mfd, const MetricParams& p,
                         const CVec& z, const CVec& v, KahlerLevel level,
                         double tol) {
  check_nonzero(v, "check_kahler");
  const int n = mfd.total_dim();
  const auto hor = horizontal_coefficients(mfd, p, z, v);
  CheckReport rep;
  rep.tolerance = tol;
  switch (level) {
    case KahlerLevel::Strong: {
      rep.name = "kahler_strong";
      for (int c = 0; c < n; ++c) {
        const CMat asym = hor[c] - hor[c].transpose();
        rep.record(asym.cwiseAbs().maxCoeff(), "index " + std::to_string(c));
      }
      break;
    }
    case KahlerLevel::Kahler: {
      rep.name = "kahler";
      for (int c = 0; c < n; ++c) {
        const CMat asym = hor[c] - hor[c].transpose();
        const CVec contracted = asym.transpose() * v;  // sum_b asym(b,a) v^b
        rep.record(contracted.cwiseAbs().maxCoeff(),
                   "index " + std::to_string(c));
      }
      break;
    }
    case KahlerLevel::Weak: {
      rep.name = "kahler_weak";
      const CVec g_c =
          complex_fundamental_tensor(mfd, p, z, v).h * v.conjugate();
      CVec residual = CVec::Zero(n);  // free index a
      for (int c = 0; c < n; ++c) {
        const CMat asym = hor[c] - hor[c].transpose();
        residual += g_c[c] * (asym.transpose() * v);
      }
      rep.record(residual.cwiseAbs().maxCoeff(), "contracted residual");
      break;
    }
  }
  return rep;
}

ComplexSpray complex_spray(const ProductManifold& mfd, const MetricParams& p,
                           const CVec& z, const CVec& v) {
  check_nonzero(v, "complex_spray");
  const int n = mfd.total_dim();
  ComplexSpray out;
  out.g_alpha = 0.5 * nonlinear_connection(mfd, p, z, v) * v;
  const auto spray_fn = [&](const CVec& vp) -> CVec {
    return 0.5 * nonlinear_connection(mfd, p, z, vp) * vp;
  };
  out.g_numu.assign(n, CMat::Zero(n, n));
  for (int mu = 0; mu < n; ++mu) {
    const auto first = [&](const CVec& vp) -> CVec {
      return numdiff::wirtinger_dz_component(spray_fn, vp, mu);
    };
    for (int nu = 0; nu < n; ++nu) {
      const CVec second = numdiff::wirtinger_dz_component(first, v, nu);
      for (int a = 0; a < n; ++a) out.g_numu[a](nu, mu) = second[a];
    }
  }
  return out;
}

}  // namespace finsler
