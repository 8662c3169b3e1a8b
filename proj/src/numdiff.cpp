#include "finsler/numdiff.hpp"

namespace finsler::numdiff {

namespace {

const Complex kI(0.0, 1.0);

RVec to_real_split(const CVec& z) {
  const int n = static_cast<int>(z.size());
  RVec x(2 * n);
  x.head(n) = z.real();
  x.tail(n) = z.imag();
  return x;
}

CVec to_complex_split(const RVec& x) {
  const int n = static_cast<int>(x.size()) / 2;
  CVec z(n);
  z.real() = x.head(n);
  z.imag() = x.tail(n);
  return z;
}

}  // namespace

RVec gradient(const RealFn& f, const RVec& x, double h) {
  const int n = static_cast<int>(x.size());
  RVec g(n);
  RVec xp = x;
  for (int i = 0; i < n; ++i) {
    const double hi = scaled_step(std::abs(x[i]), h);
    xp[i] = x[i] + hi;
    const double fp = f(xp);
    xp[i] = x[i] - hi;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * hi);
  }
  return g;
}

RMat hessian(const RealFn& f, const RVec& x, double h) {
  const int n = static_cast<int>(x.size());
  RMat hess(n, n);
  const double f0 = f(x);
  RVec xp = x;
  // Diagonal via the 3-point stencil, off-diagonal via the 4-point cross.
  for (int i = 0; i < n; ++i) {
    const double hi = scaled_step(std::abs(x[i]), h);
    xp[i] = x[i] + hi;
    const double fp = f(xp);
    xp[i] = x[i] - hi;
    const double fm = f(xp);
    xp[i] = x[i];
    hess(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
  }
  for (int i = 0; i < n; ++i) {
    const double hi = scaled_step(std::abs(x[i]), h);
    for (int j = i + 1; j < n; ++j) {
      const double hj = scaled_step(std::abs(x[j]), h);
      xp[i] = x[i] + hi;
      xp[j] = x[j] + hj;
      const double fpp = f(xp);
      xp[j] = x[j] - hj;
      const double fpm = f(xp);
      xp[i] = x[i] - hi;
      const double fmm = f(xp);
      xp[j] = x[j] + hj;
      const double fmp = f(xp);
      xp[i] = x[i];
      xp[j] = x[j];
      hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
    }
  }
  return hess;
}

CVec wirtinger_dz(const ComplexScalarFn& f, const CVec& z, double h) {
  const int n = static_cast<int>(z.size());
  CVec g(n);
  CVec zp = z;
  for (int a = 0; a < n; ++a) {
    const double ha = scaled_step(std::abs(z[a]), h);
    zp[a] = z[a] + ha;
    const double fxp = f(zp);
    zp[a] = z[a] - ha;
    const double fxm = f(zp);
    zp[a] = z[a] + kI * ha;
    const double fyp = f(zp);
    zp[a] = z[a] - kI * ha;
    const double fym = f(zp);
    zp[a] = z[a];
    const double dx = (fxp - fxm) / (2.0 * ha);
    const double dy = (fyp - fym) / (2.0 * ha);
    g[a] = 0.5 * (dx - kI * dy);
  }
  return g;
}

CVec wirtinger_dzbar(const ComplexScalarFn& f, const CVec& z, double h) {
  // f is real-valued, so d/dzbar is the conjugate of d/dz.
  return wirtinger_dz(f, z, h).conjugate();
}

CMat mixed_from_real_hessian(const RMat& hess) {
  const int n = static_cast<int>(hess.rows()) / 2;
  CMat m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      m(a, b) = 0.25 * Complex(hess(a, b) + hess(a + n, b + n),
                               hess(a, b + n) - hess(a + n, b));
    }
  }
  return m;
}

CMat holo_from_real_hessian(const RMat& hess) {
  const int n = static_cast<int>(hess.rows()) / 2;
  CMat m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      m(a, b) = 0.25 * Complex(hess(a, b) - hess(a + n, b + n),
                               -(hess(a, b + n) + hess(a + n, b)));
    }
  }
  return m;
}

CMat wirtinger_mixed_hessian(const ComplexScalarFn& f, const CVec& z,
                             double h) {
  const RealFn g = [&](const RVec& x) { return f(to_complex_split(x)); };
  return mixed_from_real_hessian(hessian(g, to_real_split(z), h));
}

CMat wirtinger_holo_hessian(const ComplexScalarFn& f, const CVec& z,
                            double h) {
  const RealFn g = [&](const RVec& x) { return f(to_complex_split(x)); };
  return holo_from_real_hessian(hessian(g, to_real_split(z), h));
}

CVec wirtinger_dz_component(const std::function<CVec(const CVec&)>& f,
                            const CVec& z, int idx, double h) {
  const double ha = scaled_step(std::abs(z[idx]), h);
  CVec zp = z;
  zp[idx] = z[idx] + ha;
  const CVec fxp = f(zp);
  zp[idx] = z[idx] - ha;
  const CVec fxm = f(zp);
  zp[idx] = z[idx] + kI * ha;
  const CVec fyp = f(zp);
  zp[idx] = z[idx] - kI * ha;
  const CVec fym = f(zp);
  const CVec dx = (fxp - fxm) / (2.0 * ha);
  const CVec dy = (fyp - fym) / (2.0 * ha);
  return 0.5 * (dx - kI * dy);
}

CVec wirtinger_dzbar_component(const std::function<CVec(const CVec&)>& f,
                               const CVec& z, int idx, double h) {
  const double ha = scaled_step(std::abs(z[idx]), h);
  CVec zp = z;
  zp[idx] = z[idx] + ha;
  const CVec fxp = f(zp);
  zp[idx] = z[idx] - ha;
  const CVec fxm = f(zp);
  zp[idx] = z[idx] + kI * ha;
  const CVec fyp = f(zp);
  zp[idx] = z[idx] - kI * ha;
  const CVec fym = f(zp);
  const CVec dx = (fxp - fxm) / (2.0 * ha);
  const CVec dy = (fyp - fym) / (2.0 * ha);
  return 0.5 * (dx + kI * dy);
}

CMat holomorphic_jacobian(const std::function<CVec(const CVec&)>& f,
                          const CVec& z, double h) {
  const int n = static_cast<int>(z.size());
  const int m = static_cast<int>(f(z).size());
  CMat jac(m, n);
  CVec zp = z;
  for (int j = 0; j < n; ++j) {
    const double hj = scaled_step(std::abs(z[j]), h);
    zp[j] = z[j] + hj;
    const CVec fp = f(zp);
    zp[j] = z[j] - hj;
    const CVec fm = f(zp);
    zp[j] = z[j];
    jac.col(j) = (fp - fm) / (2.0 * hj);
  }
  return jac;
}

}  // namespace finsler::numdiff
