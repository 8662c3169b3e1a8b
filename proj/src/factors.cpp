#include "finsler/factors.hpp"

#include <cmath>

#include "finsler/numdiff.hpp"

namespace finsler {

namespace {

void check_sizes(const FactorMetric& f, const CVec& z, const CVec& v) {
  if (z.size() != f.dim || v.size() != f.dim) {
    throw InvalidInputError("factor: coordinate length does not match dim");
  }
}

// <z,v> = sum z^a conj(v^a)
Complex pairing(const CVec& z, const CVec& v) { return v.dot(z); }

}  // namespace

FactorMetric FactorMetric::poincare_disk() {
  return {FactorKind::PoincareDisk, 1};
}
FactorMetric FactorMetric::bergman_ball(int dim) {
  if (dim < 1) throw InvalidInputError("bergman_ball: dim must be >= 1");
  return {FactorKind::BergmanBall, dim};
}
FactorMetric FactorMetric::fubini_study(int dim) {
  if (dim < 1) throw InvalidInputError("fubini_study: dim must be >= 1");
  return {FactorKind::FubiniStudy, dim};
}
FactorMetric FactorMetric::euclidean_flat(int dim) {
  if (dim < 1) throw InvalidInputError("euclidean_flat: dim must be >= 1");
  return {FactorKind::EuclideanFlat, dim};
}

double FactorMetric::constant_curvature() const {
  switch (kind) {
    case FactorKind::PoincareDisk:
    case FactorKind::BergmanBall:
      return -4.0;
    case FactorKind::FubiniStudy:
      return 4.0;
    case FactorKind::EuclideanFlat:
      return 0.0;
  }
  return 0.0;
}

void FactorMetric::check_point(const CVec& z) const {
  if (z.size() != dim) {
    throw InvalidInputError("factor point: wrong length");
  }
  if (bounded_domain() && z.norm() > 1.0 - kBoundaryMargin) {
    throw DomainError(name() + ": point outside (or too close to) the unit ball");
  }
}

std::string FactorMetric::name() const {
  switch (kind) {
    case FactorKind::PoincareDisk:
      return "disk";
    case FactorKind::BergmanBall:
      return "ball(" + std::to_string(dim) + ")";
    case FactorKind::FubiniStudy:
      return "fs(" + std::to_string(dim) + ")";
    case FactorKind::EuclideanFlat:
      return "flat(" + std::to_string(dim) + ")";
  }
  return "?";
}

double q_value(const FactorMetric& f, const CVec& z, const CVec& v) {
  check_sizes(f, z, v);
  f.check_point(z);
  const double v2 = v.squaredNorm();
  switch (f.kind) {
    case FactorKind::PoincareDisk: {
      const double s = 1.0 - std::norm(z[0]);
      return v2 / (s * s);
    }
    case FactorKind::BergmanBall: {
      const double s = 1.0 - z.squaredNorm();
      return (s * v2 + std::norm(pairing(z, v))) / (s * s);
    }
    case FactorKind::FubiniStudy: {
      const double r = 1.0 + z.squaredNorm();
      return (r * v2 - std::norm(pairing(z, v))) / (r * r);
    }
    case FactorKind::EuclideanFlat:
      return v2;
  }
  return 0.0;
}

CMat q_tensor(const FactorMetric& f, const CVec& z) {
  f.check_point(z);
  const int m = f.dim;
  switch (f.kind) {
    case FactorKind::PoincareDisk: {
      const double s = 1.0 - std::norm(z[0]);
      return CMat::Constant(1, 1, 1.0 / (s * s));
    }
    case FactorKind::BergmanBall: {
      const double s = 1.0 - z.squaredNorm();
      CMat t = s * CMat::Identity(m, m) + z.conjugate() * z.transpose();
      return t / (s * s);
    }
    case FactorKind::FubiniStudy: {
      const double r = 1.0 + z.squaredNorm();
      CMat t = r * CMat::Identity(m, m) - z.conjugate() * z.transpose();
      return t / (r * r);
    }
    case FactorKind::EuclideanFlat:
      return CMat::Identity(m, m);
  }
  return CMat();
}

QDerivatives q_derivatives(const FactorMetric& f, const CVec& z,
                           const CVec& v) {
  check_sizes(f, z, v);
  QDerivatives out;
  out.tensor = q_tensor(f, z);
  out.dv = out.tensor * v.conjugate();
  const double v2 = v.squaredNorm();
  switch (f.kind) {
    case FactorKind::PoincareDisk: {
      const double s = 1.0 - std::norm(z[0]);
      out.dz = CVec::Constant(1, 2.0 * std::conj(z[0]) * v2 / (s * s * s));
      break;
    }
    case FactorKind::BergmanBall: {
      const double s = 1.0 - z.squaredNorm();
      const Complex p = pairing(z, v);
      const double q = (s * v2 + std::norm(p)) / (s * s);
      out.dz = (-v2 * z.conjugate() + std::conj(p) * v.conjugate()) / (s * s) +
               (2.0 * q / s) * z.conjugate();
      break;
    }
    case FactorKind::FubiniStudy: {
      const double r = 1.0 + z.squaredNorm();
      const Complex p = pairing(z, v);
      const double q = (r * v2 - std::norm(p)) / (r * r);
      out.dz = (v2 * z.conjugate() - std::conj(p) * v.conjugate()) / (r * r) -
               (2.0 * q / r) * z.conjugate();
      break;
    }
    case FactorKind::EuclideanFlat:
      out.dz = CVec::Zero(f.dim);
      break;
  }
  return out;
}

std::vector<CMat> q_tensor_dz(const FactorMetric& f, const CVec& z) {
  f.check_point(z);
  const int m = f.dim;
  std::vector<CMat> out(m, CMat::Zero(m, m));
  switch (f.kind) {
    case FactorKind::PoincareDisk: {
      const double s = 1.0 - std::norm(z[0]);
      out[0](0, 0) = 2.0 * std::conj(z[0]) / (s * s * s);
      break;
    }
    case FactorKind::BergmanBall: {
      const double s = 1.0 - z.squaredNorm();
      const CMat base =
          s * CMat::Identity(m, m) + z.conjugate() * z.transpose();
      for (int c = 0; c < m; ++c) {
        const Complex zc = std::conj(z[c]);
        CMat d = -zc * CMat::Identity(m, m);
        d.col(c) += z.conjugate();
        out[c] = d / (s * s) + (2.0 * zc / (s * s * s)) * base;
      }
      break;
    }
    case FactorKind::FubiniStudy: {
      const double r = 1.0 + z.squaredNorm();
      const CMat base =
          r * CMat::Identity(m, m) - z.conjugate() * z.transpose();
      for (int c = 0; c < m; ++c) {
        const Complex zc = std::conj(z[c]);
        CMat d = zc * CMat::Identity(m, m);
        d.col(c) -= z.conjugate();
        out[c] = d / (r * r) - (2.0 * zc / (r * r * r)) * base;
      }
      break;
    }
    case FactorKind::EuclideanFlat:
      break;
  }
  return out;
}

CMat hermitian_connection(const FactorMetric& f, const CVec& z,
                          const CVec& v) {
  check_sizes(f, z, v);
  const int m = f.dim;
  if (f.kind == FactorKind::EuclideanFlat) return CMat::Zero(m, m);
  const CMat qinv = q_tensor(f, z).inverse();
  const auto dt = q_tensor_dz(f, z);
  CMat gamma(m, m);
  for (int b = 0; b < m; ++b) {
    gamma.col(b) = qinv.transpose() * (dt[b].transpose() * v);
  }
  return gamma;
}

std::vector<CMat> hermitian_connection_coefficients(const FactorMetric& f,
                                                    const CVec& z) {
  const int m = f.dim;
  std::vector<CMat> out(m, CMat::Zero(m, m));
  if (f.kind == FactorKind::EuclideanFlat) return out;
  const CMat qinv = q_tensor(f, z).inverse();
  const auto dt = q_tensor_dz(f, z);
  for (int b = 0; b < m; ++b) {
    const CMat mb = dt[b] * qinv;  // (a, c)
    for (int c = 0; c < m; ++c) out[c].col(b) = mb.col(c);
  }
  return out;
}

RVec factor_to_real(const CVec& z) {
  const int m = static_cast<int>(z.size());
  RVec x(2 * m);
  x.head(m) = z.real();
  x.tail(m) = z.imag();
  return x;
}

CVec factor_to_complex(const RVec& x) {
  const int m = static_cast<int>(x.size()) / 2;
  CVec z(m);
  z.real() = x.head(m);
  z.imag() = x.tail(m);
  return z;
}

RMat q_real_tensor(const FactorMetric& f, const RVec& x) {
  if (x.size() != 2 * f.dim) {
    throw InvalidInputError("q_real_tensor: wrong real coordinate length");
  }
  const CMat h = q_tensor(f, factor_to_complex(x));
  const int m = f.dim;
  RMat g(2 * m, 2 * m);
  g.topLeftCorner(m, m) = h.real();
  g.bottomRightCorner(m, m) = h.real();
  g.topRightCorner(m, m) = h.imag();
  g.bottomLeftCorner(m, m) = -h.imag();
  return 2.0 * g;
}

namespace {

// x-derivatives of the real tensor; step shrunk near the boundary so the
// stencil stays inside the domain.
std::vector<RMat> real_tensor_dx(const FactorMetric& f, const RVec& x) {
  const int n = 2 * f.dim;
  std::vector<RMat> out(n);
  double scale = 1.0;
  if (f.bounded_domain()) {
    scale = std::max(1.0 - x.norm(), 10.0 * kBoundaryMargin);
  }
  RVec xp = x;
  for (int d = 0; d < n; ++d) {
    const double h = numdiff::kDefaultStep * scale;
    xp[d] = x[d] + h;
    const RMat gp = q_real_tensor(f, xp);
    xp[d] = x[d] - h;
    const RMat gm = q_real_tensor(f, xp);
    xp[d] = x[d];
    out[d] = (gp - gm) / (2.0 * h);
  }
  return out;
}

}  // namespace

RMat levi_civita(const FactorMetric& f, const RVec& x, const RVec& u) {
  const int n = 2 * f.dim;
  if (x.size() != n || u.size() != n) {
    throw InvalidInputError("levi_civita: wrong coordinate length");
  }
  f.check_point(factor_to_complex(x));
  if (f.kind == FactorKind::EuclideanFlat) return RMat::Zero(n, n);
  const RMat ginv = q_real_tensor(f, x).inverse();
  const auto dg = real_tensor_dx(f, x);
  RMat spray = RMat::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int d = 0; d < n; ++d) {
        double contr = 0.0;
        for (int a = 0; a < n; ++a) {
          contr += (dg[a](b, d) + dg[b](a, d) - dg[d](a, b)) * u[a];
        }
        acc += ginv(c, d) * contr;
      }
      spray(c, b) = 0.5 * acc;
    }
  }
  return spray;
}

RVec levi_civita_spray(const FactorMetric& f, const RVec& x, const RVec& u) {
  return levi_civita(f, x, u) * u;
}

}  // namespace finsler
