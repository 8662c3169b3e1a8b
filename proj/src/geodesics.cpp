#include "finsler/geodesics.hpp"

#include <cmath>

#include "finsler/connection.hpp"

namespace finsler {

namespace {

constexpr double kStepTolerance = 1e-9;  // absolute, per unit parameter

struct State {
  RVec x;
  RVec u;
};

State rk4_step(const ProductManifold& mfd, const MetricParams& p,
               const State& y, double h) {
  const auto accel = [&](const RVec& x, const RVec& u) -> RVec {
    return -real_spray(mfd, p, x, u);
  };
  const RVec k1x = y.u;
  const RVec k1u = accel(y.x, y.u);
  const RVec k2x = y.u + 0.5 * h * k1u;
  const RVec k2u = accel(y.x + 0.5 * h * k1x, y.u + 0.5 * h * k1u);
  const RVec k3x = y.u + 0.5 * h * k2u;
  const RVec k3u = accel(y.x + 0.5 * h * k2x, y.u + 0.5 * h * k2u);
  const RVec k4x = y.u + h * k3u;
  const RVec k4u = accel(y.x + h * k3x, y.u + h * k3u);
  State out;
  out.x = y.x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  out.u = y.u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  return out;
}

}  // namespace

GeodesicPath integrate_geodesic(const ProductManifold& mfd,
                                const MetricParams& p, const RVec& x0,
                                const RVec& u0, double s_max, int steps) {
  if (steps < 16) throw InvalidInputError("integrate_geodesic: steps >= 16");
  if (!(s_max > 0.0)) throw InvalidInputError("integrate_geodesic: s_max > 0");
  if (u0.norm() == 0.0) throw ZeroSectionError("integrate_geodesic: u0 = 0");
  mfd.check_point(mfd.to_complex(x0));

  GeodesicPath path;
  State y{x0, u0};
  double s = 0.0;
  path.samples.push_back({s, y.x, y.u});

  const double h_max = s_max / steps;
  double h = h_max;
  while (s < s_max - 1e-15) {
    h = std::min(h, s_max - s);
    State full, fine;
    try {
      full = rk4_step(mfd, p, y, h);
      fine = rk4_step(mfd, p, rk4_step(mfd, p, y, 0.5 * h), 0.5 * h);
      mfd.check_point(mfd.to_complex(fine.x));
    } catch (const DomainError& e) {
      throw BoundaryExitError(
          std::string("integrate_geodesic: trajectory left the domain (") +
              e.what() + ")",
          path.samples.back());
    }
    const double err = std::max((full.x - fine.x).cwiseAbs().maxCoeff(),
                                (full.u - fine.u).cwiseAbs().maxCoeff());
    if (err > kStepTolerance * h && h > 1e-6 * h_max) {
      h *= 0.5;
      continue;
    }
    y = fine;
    s += h;
    path.samples.push_back({s, y.x, y.u});
    if (err < kStepTolerance * h / 64.0) h = std::min(2.0 * h, h_max);
  }
  return path;
}

DistanceResult polydisk_distance(const MetricParams& p, const CVec& z1,
                                 const CVec& z2) {
  if (z1.size() != z2.size() || z1.size() == 0) {
    throw InvalidInputError("polydisk_distance: size mismatch");
  }
  const int n = static_cast<int>(z1.size());
  double sum2 = 0.0, sum2k = 0.0;
  for (int l = 0; l < n; ++l) {
    if (std::abs(z1[l]) > 1.0 - kBoundaryMargin ||
        std::abs(z2[l]) > 1.0 - kBoundaryMargin) {
      throw DomainError("polydisk_distance: point outside the polydisk");
    }
    const Complex m = (z2[l] - z1[l]) / (1.0 - std::conj(z1[l]) * z2[l]);
    const double r = std::abs(m);
    const double big_l = std::log((1.0 + r) / (1.0 - r));
    sum2 += big_l * big_l;
    sum2k += std::pow(big_l, 2 * p.k);
  }
  DistanceResult out;
  out.method = DistanceResult::Method::ClosedForm;
  const double mix = (sum2k > 0.0)
                         ? std::exp(std::log(sum2k) / p.k)
                         : 0.0;
  out.value = 0.5 / std::sqrt(1.0 + p.t) * std::sqrt(sum2 + p.t * mix);
  return out;
}

double path_length(const ProductManifold& mfd, const MetricParams& p,
                   const GeodesicPath& path) {
  if (path.samples.size() < 2) {
    throw InvalidInputError("path_length: need at least 2 samples");
  }
  double total = 0.0;
  double f_prev = metric_value(mfd, p, mfd.to_complex(path.samples[0].x),
                               mfd.to_complex(path.samples[0].u));
  for (size_t i = 1; i < path.samples.size(); ++i) {
    const double f = metric_value(mfd, p, mfd.to_complex(path.samples[i].x),
                                  mfd.to_complex(path.samples[i].u));
    total += 0.5 * (f_prev + f) *
             (path.samples[i].s - path.samples[i - 1].s);
    f_prev = f;
  }
  return total;
}

CVec polydisk_closed_geodesic(const CVec& a, double s) {
  CVec z(a.size());
  for (int l = 0; l < a.size(); ++l) {
    const Complex e = std::exp(a[l] * s);
    z[l] = (e - 1.0) / (e + 1.0);
  }
  return z;
}

}  // namespace finsler
