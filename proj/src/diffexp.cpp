#include "gateforge/diffexp.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gateforge/kernels/kernels.hpp"

namespace gateforge {

StateVector::StateVector(Vector amplitudes, double norm_tol) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw Error("StateVector: empty amplitude vector");
  const double norm = std::sqrt(kernels::norm_sq(amplitudes_.data(), static_cast<std::size_t>(amplitudes_.size())));
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > norm_tol) throw Error("StateVector: state is not normalized");
}

StateVector StateVector::basis(long d, long k) {
  if (k < 0 || k >= d) throw Error("StateVector::basis: index out of range");
  Vector v = Vector::Zero(d);
  v[k] = 1.0;
  return StateVector(std::move(v));
}

HamiltonianModel::HamiltonianModel(OperatorBasis basis, RealVector lambda) : basis_(std::move(basis)) {
  set_lambda(std::move(lambda));
}

HamiltonianModel::HamiltonianModel(OperatorBasis basis)
    : HamiltonianModel(basis, RealVector::Zero(static_cast<long>(basis.size()))) {}

void HamiltonianModel::set_lambda(RealVector lambda) {
  if (lambda.size() != static_cast<long>(basis_.size()))
    throw Error("HamiltonianModel: parameter vector length does not match the basis");
  if (!lambda.allFinite()) throw Error("HamiltonianModel: non-finite parameter");
  lambda_ = std::move(lambda);
}

Propagator::Propagator(const HamiltonianModel& model) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(model.hamiltonian());
  if (es.info() != Eigen::Success) throw Error("Propagator: eigen-solver failed");
  mu_ = es.eigenvalues();
  v_ = es.eigenvectors();
  const long d = mu_.size();
  phases_.resize(d);
  for (long k = 0; k < d; ++k) phases_[k] = std::polar(1.0, mu_[k]);

  divided_.resize(d, d);
  const Complex i1(0.0, 1.0);
  for (long b = 0; b < d; ++b) {
    for (long a = 0; a < d; ++a) {
      const double gap = mu_[a] - mu_[b];
      divided_(a, b) = std::abs(gap) <= kDegenerateGap ? i1 * phases_[a] : (phases_[a] - phases_[b]) / gap;
    }
  }
  rotated_.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) rotated_.push_back(v_.adjoint() * model.basis().matrix(i) * v_);
}

Matrix Propagator::unitary() const { return v_ * phases_.asDiagonal() * v_.adjoint(); }

Vector Propagator::apply(const Vector& psi) const {
  if (psi.size() != mu_.size()) throw Error("Propagator: state dimension mismatch");
  return v_ * phases_.asDiagonal() * (v_.adjoint() * psi);
}

Complex Propagator::overlap(const GateTarget& g, const StateVector& psi) const {
  if (g.dimension() != mu_.size()) throw Error("Propagator: gate dimension mismatch");
  const Vector a = v_.adjoint() * (g.matrix() * psi.amplitudes());
  const Vector b = v_.adjoint() * psi.amplitudes();
  return a.dot(phases_.cwiseProduct(b));
}

double Propagator::fidelity(const GateTarget& g, const StateVector& psi) const {
  return std::min(1.0, std::norm(overlap(g, psi)));
}

RealVector Propagator::gradient(const GateTarget& g, const StateVector& psi, double* value) const {
  if (g.dimension() != mu_.size()) throw Error("Propagator: gate dimension mismatch");
  const long d = mu_.size();
  const Vector a = v_.adjoint() * (g.matrix() * psi.amplitudes());
  const Vector b = v_.adjoint() * psi.amplitudes();
  const Complex f = a.dot(phases_.cwiseProduct(b));
  if (value) *value = std::min(1.0, std::norm(f));

  // df_i = sum_ab conj(a_a) D_ab (V^dagger O_i V)_ab b_b
  const Matrix weights = a.conjugate() * b.transpose();
  const Matrix m = weights.cwiseProduct(divided_);
  RealVector grad(static_cast<long>(rotated_.size()));
  const auto n = static_cast<std::size_t>(d * d);
  for (std::size_t i = 0; i < rotated_.size(); ++i) {
    const Complex df = kernels::dotu(m.data(), rotated_[i].data(), n);
    grad[static_cast<long>(i)] = 2.0 * (std::conj(f) * df).real();
  }
  return grad;
}

StateVector evolve(const HamiltonianModel& m, const StateVector& psi) {
  const Propagator p(m);
  Vector out = p.apply(psi.amplitudes());
  return StateVector(std::move(out), 1e-10);
}

double fidelity(const HamiltonianModel& m, const GateTarget& g, const StateVector& psi) {
  return Propagator(m).fidelity(g, psi);
}

RealVector fidelity_gradient(const HamiltonianModel& m, const GateTarget& g, const StateVector& psi) {
  return Propagator(m).gradient(g, psi);
}

double average_gate_fidelity(const Matrix& u, const Matrix& g) {
  if (u.rows() != g.rows() || u.cols() != g.cols()) throw Error("average_gate_fidelity: dimension mismatch");
  const auto d = static_cast<double>(u.rows());
  const double t = std::norm((g.adjoint() * u).trace());
  return std::min(1.0, (d + t) / (d * (d + 1.0)));
}

double average_gate_fidelity(const HamiltonianModel& m, const GateTarget& g) {
  return average_gate_fidelity(Propagator(m).unitary(), g.matrix());
}

RealMatrix real_embed(const Matrix& a) {
  const long r = a.rows(), c = a.cols();
  RealMatrix out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = a.real();
  out.topRightCorner(r, c) = -a.imag();
  out.bottomLeftCorner(r, c) = a.imag();
  out.bottomRightCorner(r, c) = a.real();
  return out;
}

RealVector real_embed(const Vector& psi) {
  RealVector out(2 * psi.size());
  out << psi.real(), psi.imag();
  return out;
}

StateVector haar_state(long dimension, std::mt19937_64& rng) {
  if (dimension < 1) throw Error("haar_state: dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dimension);
  for (long k = 0; k < dimension; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[k] = Complex(re, im);
  }
  v /= std::sqrt(kernels::norm_sq(v.data(), static_cast<std::size_t>(dimension)));
  return StateVector(std::move(v));
}

StateVector haar_state_qubits(int n_qubits, std::mt19937_64& rng) {
  if (n_qubits < 1 || n_qubits > 20) throw Error("haar_state: qubit count out of range");
  return haar_state(1L << n_qubits, rng);
}

}  // namespace gateforge
