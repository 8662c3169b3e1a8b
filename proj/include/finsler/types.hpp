#ifndef FINSLER_TYPES_HPP
#define FINSLER_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace finsler {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// A point lies outside the factor's domain (e.g. on or past the unit sphere).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Fiber direction v = 0: the metric is smooth only off the zero section.
class ZeroSectionError : public std::invalid_argument {
 public:
  explicit ZeroSectionError(const std::string& what)
      : std::invalid_argument(what) {}
};

class SingularUpdateError : public std::runtime_error {
 public:
  explicit SingularUpdateError(const std::string& what)
      : std::runtime_error(what) {}
};

class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Quadratic form G_{ab'} v^a conj(v^b) for a matrix stored as m(a,b) = G_{ab'}.
inline double hermitian_quadratic_form(const CMat& m, const CVec& v) {
  return ((v.transpose() * m * v.conjugate())(0, 0)).real();
}

}  // namespace finsler

#endif  // FINSLER_TYPES_HPP
