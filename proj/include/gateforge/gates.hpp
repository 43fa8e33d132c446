#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gateforge/types.hpp"

namespace gateforge {

/// Spectral data of a unitary: eigenphases on (-pi, pi] with degenerate
/// subspaces merged into one Hermitian projector each.
struct SpectralDecomposition {
  std::vector<double> phases;       // ascending, one per distinct eigenvalue
  std::vector<Matrix> projectors;   // I_k, same order as phases
  std::vector<int> multiplicities;  // rank of each projector
  Matrix eigenvectors;              // orthonormal columns grouped by cluster
  std::vector<double> vector_phases;

  /// sum_k e^{i theta_k} I_k
  Matrix reconstruct() const;
};

inline constexpr double kPhaseClusterTol = 1e-8;

/// Eigen-decomposition of a normal matrix through its complex Schur form.
/// Phases closer than `cluster_tol` are merged.
SpectralDecomposition decompose_unitary(const Matrix& u, double cluster_tol = kPhaseClusterTol);

/// A target unitary. Construction validates unitarity.
class GateTarget {
 public:
  GateTarget(std::string name, Matrix matrix, double unitarity_tol = 1e-12);

  const std::string& name() const { return name_; }
  const Matrix& matrix() const { return matrix_; }
  long dimension() const { return matrix_.rows(); }
  /// Qubit count, or 0 when the dimension is not a power of two (walk-space
  /// targets such as the reflection on an odd-length chain).
  int n_qubits() const { return n_qubits_; }

  const SpectralDecomposition& spectrum() const;

 private:
  std::string name_;
  Matrix matrix_;
  int n_qubits_ = 0;
  mutable std::optional<SpectralDecomposition> eigen_cache_;
};

/// cnot, toffoli, fredkin, ccy, double_fredkin, identity:<n>, reflection:<N>.
/// identity takes a qubit count; reflection takes the walk length N.
GateTarget builtin_gate(std::string_view name);

std::vector<std::string> builtin_gate_names();

/// Reflection matrix Xi_{kj} = delta_{k, N-j+1}.
Matrix reflection_matrix(long n);

/// Text matrix format: first line `d`, then d rows of d `re+imj` entries.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);

/// Reads a gate file; throws Error on a non-power-of-two side or when
/// U^dagger U deviates from identity by more than 1e-8.
GateTarget gate_from_file(const std::filesystem::path& path);

/// Parses one `re+imj` token.
Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);

/// Same spectral data as GateTarget::spectrum, exposed as a free function.
const SpectralDecomposition& spectral_decomposition(const GateTarget& g);

}  // namespace gateforge
