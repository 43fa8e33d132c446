#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gateforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Raised for malformed input: bad labels, dimension mismatches, invalid
/// configurations. Numerical verdicts are reported in result structs instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest absolute entry, the norm every tolerance in the library refers to.
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

inline int qubits_for_dimension(long d) {
  int n = 0;
  while ((1L << n) < d) ++n;
  return n;
}

}  // namespace gateforge
