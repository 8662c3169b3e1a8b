#ifndef FINSLER_NUMDIFF_HPP
#define FINSLER_NUMDIFF_HPP

#include <functional>

#include "finsler/types.hpp"

// Central-difference machinery in Wirtinger form: complex derivatives are
// assembled from separate real/imaginary bumps,
//   d/dz      = 0.5*(d/dx - i d/dy),
//   d/dzbar   = 0.5*(d/dx + i d/dy).
namespace finsler::numdiff {

inline constexpr double kDefaultStep = 1e-4;

using RealFn = std::function<double(const RVec&)>;
using ComplexScalarFn = std::function<double(const CVec&)>;

// Step scaled to the coordinate magnitude.
inline double scaled_step(double magnitude, double h = kDefaultStep) {
  return h * std::max(1.0, magnitude);
}

RVec gradient(const RealFn& f, const RVec& x, double h = kDefaultStep);
RMat hessian(const RealFn& f, const RVec& x, double h = kDefaultStep);

// Wirtinger gradients of a real-valued function of a complex vector.
CVec wirtinger_dz(const ComplexScalarFn& f, const CVec& z,
                  double h = kDefaultStep);
CVec wirtinger_dzbar(const ComplexScalarFn& f, const CVec& z,
                     double h = kDefaultStep);

// Mixed complex Hessian d^2 f / dz^a dzbar^b, entry (a,b), from the real
// Hessian of f under the global split x = (Re z, Im z).
CMat wirtinger_mixed_hessian(const ComplexScalarFn& f, const CVec& z,
                             double h = kDefaultStep);
// Holomorphic-holomorphic Hessian d^2 f / dz^a dz^b.
CMat wirtinger_holo_hessian(const ComplexScalarFn& f, const CVec& z,
                            double h = kDefaultStep);

// Wirtinger derivative in component idx of a complex-vector-valued function.
CVec wirtinger_dz_component(const std::function<CVec(const CVec&)>& f,
                            const CVec& z, int idx, double h = kDefaultStep);
CVec wirtinger_dzbar_component(const std::function<CVec(const CVec&)>& f,
                               const CVec& z, int idx,
                               double h = kDefaultStep);

// Holomorphic Jacobian J(i,j) = df_i/dz^j of a holomorphic map, by central
// differences in the real part only (valid whenever f is holomorphic).
CMat holomorphic_jacobian(const std::function<CVec(const CVec&)>& f,
                          const CVec& z, double h = kDefaultStep);

// Combine real Hessian blocks into the two complex Hessians; real layout is
// the global split (Re z, Im z).
CMat mixed_from_real_hessian(const RMat& hess);
CMat holo_from_real_hessian(const RMat& hess);

}  // namespace finsler::numdiff

#endif  // FINSLER_NUMDIFF_HPP
