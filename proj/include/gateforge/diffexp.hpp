#pragma once

#include <random>
#include <vector>

#include "gateforge/gates.hpp"
#include "gateforge/pauli.hpp"
#include "gateforge/types.hpp"

namespace gateforge {

/// Normalized state of a d-level system.
class StateVector {
 public:
  /// Throws Error when |psi| deviates from 1 by more than `norm_tol`.
  explicit StateVector(Vector amplitudes, double norm_tol = 1e-12);

  /// Computational-basis state |k> in dimension d.
  static StateVector basis(long d, long k);

  const Vector& amplitudes() const { return amplitudes_; }
  long dimension() const { return amplitudes_.size(); }

 private:
  Vector amplitudes_;
};

/// H(lambda) = sum_i lambda_i O_i.
class HamiltonianModel {
 public:
  /// Throws Error when lambda has the wrong length or a non-finite entry.
  HamiltonianModel(OperatorBasis basis, RealVector lambda);
  explicit HamiltonianModel(OperatorBasis basis);

  const OperatorBasis& basis() const { return basis_; }
  const RealVector& lambda() const { return lambda_; }
  void set_lambda(RealVector lambda);
  std::size_t size() const { return basis_.size(); }
  long dimension() const { return basis_.dimension(); }

  Matrix hamiltonian() const { return basis_.combine(lambda_); }

 private:
  OperatorBasis basis_;
  RealVector lambda_;
};

/// Eigendecomposition of H(lambda) together with every basis element
/// rotated into its eigenbasis. Built once per parameter vector and reused
/// for all states of a batch.
class Propagator {
 public:
  explicit Propagator(const HamiltonianModel& model);

  const RealVector& eigenvalues() const { return mu_; }
  const Matrix& eigenvectors() const { return v_; }

  /// exp(i H)
  Matrix unitary() const;
  Vector apply(const Vector& psi) const;

  /// <psi| G^dagger exp(iH) |psi>
  Complex overlap(const GateTarget& g, const StateVector& psi) const;
  double fidelity(const GateTarget& g, const StateVector& psi) const;

  /// dF/dlambda_i for F = |<psi|G^dagger exp(iH)|psi>|^2. Also returns F
  /// through `value` when non-null.
  RealVector gradient(const GateTarget& g, const StateVector& psi, double* value = nullptr) const;

 private:
  RealVector mu_;
  Matrix v_;
  Vector phases_;              // e^{i mu}
  Matrix divided_;             // Daleckii-Krein kernel
  std::vector<Matrix> rotated_;  // V^dagger O_i V
};

inline constexpr double kDegenerateGap = 1e-9;

StateVector evolve(const HamiltonianModel& m, const StateVector& psi);
double fidelity(const HamiltonianModel& m, const GateTarget& g, const StateVector& psi);
RealVector fidelity_gradient(const HamiltonianModel& m, const GateTarget& g, const StateVector& psi);

/// (d + |Tr(G^dagger U)|^2) / (d (d + 1))
double average_gate_fidelity(const Matrix& u, const Matrix& g);
double average_gate_fidelity(const HamiltonianModel& m, const GateTarget& g);

/// A -> 1 (x) Re A - i sigma_y (x) Im A, i.e. [[Re A, -Im A], [Im A, Re A]].
RealMatrix real_embed(const Matrix& a);
/// psi -> (Re psi, Im psi)
RealVector real_embed(const Vector& psi);

/// Haar-random state: i.i.d. standard complex Gaussians, normalized.
StateVector haar_state(long dimension, std::mt19937_64& rng);
StateVector haar_state_qubits(int n_qubits, std::mt19937_64& rng);

}  // namespace gateforge
