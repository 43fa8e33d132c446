#include "gateforge/pst.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gateforge/gates.hpp"

namespace gateforge {

namespace {

// Eigenbasis of H_W in which every vector is also a Xi eigenvector.
struct ParityBasis {
  RealVector energies;
  Matrix vectors;
  std::vector<int> parities;
};

ParityBasis parity_eigenbasis(const Matrix& h, const Matrix& xi) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  ParityBasis out;
  out.energies = es.eigenvalues();
  out.vectors = es.eigenvectors();
  const long n = h.rows();
  long start = 0;
  while (start < n) {
    long stop = start + 1;
    while (stop < n && out.energies[stop] - out.energies[start] <= 1e-9) ++stop;
    const Matrix block = out.vectors.middleCols(start, stop - start);
    Eigen::SelfAdjointEigenSolver<Matrix> parity(block.adjoint() * xi * block);
    out.vectors.middleCols(start, stop - start) = block * parity.eigenvectors();
    start = stop;
  }
  for (long k = 0; k < n; ++k) {
    const double p = (out.vectors.col(k).adjoint() * xi * out.vectors.col(k))(0, 0).real();
    out.parities.push_back(p >= 0.0 ? 1 : -1);
  }
  return out;
}

}  // namespace

WalkChain::WalkChain(RealVector couplings, RealVector fields)
    : couplings_(std::move(couplings)), fields_(std::move(fields)) {
  if (fields_.size() < 2) throw Error("WalkChain: need at least two sites");
  if (couplings_.size() != fields_.size() - 1) throw Error("WalkChain: need N - 1 couplings for N sites");
  if (!couplings_.allFinite() || !fields_.allFinite()) throw Error("WalkChain: non-finite parameter");
}

WalkChain WalkChain::krawtchouk(long n) {
  if (n < 2) throw Error("WalkChain: need at least two sites");
  RealVector j(n - 1);
  for (long k = 1; k < n; ++k) j[k - 1] = std::sqrt(static_cast<double>(k * (n - k)));
  return WalkChain(j, RealVector::Zero(n));
}

WalkChain WalkChain::uniform(long n, double coupling) {
  if (n < 2) throw Error("WalkChain: need at least two sites");
  return WalkChain(RealVector::Constant(n - 1, coupling), RealVector::Zero(n));
}

Matrix WalkChain::hamiltonian() const {
  const long n = length();
  Matrix h = Matrix::Zero(n, n);
  for (long k = 0; k < n; ++k) h(k, k) = fields_[k];
  for (long k = 1; k < n; ++k) {
    h(k, k - 1) = couplings_[k - 1];
    h(k - 1, k) = couplings_[k - 1];
  }
  return h;
}

bool mirror_symmetric(const WalkChain& c) {
  const Matrix xi = reflection_matrix(c.length());
  return max_abs(commutator(c.hamiltonian(), xi)) <= 1e-10;
}

PstReport pst_check(const WalkChain& c, double t) {
  if (!mirror_symmetric(c)) throw Error("pst_check: chain is not mirror-symmetric");
  if (!std::isfinite(t)) throw Error("pst_check: non-finite time");
  const Matrix xi = reflection_matrix(c.length());
  const ParityBasis pb = parity_eigenbasis(c.hamiltonian(), xi);
  const long n = c.length();

  PstReport rep;
  Vector phases(n);
  for (long k = 0; k < n; ++k) phases[k] = std::polar(1.0, -pb.energies[k] * t);
  const Matrix u = pb.vectors * phases.asDiagonal() * pb.vectors.adjoint();

  // Best phase: e^{i phi} = Tr(Xi^dagger U) / |Tr(Xi^dagger U)|.
  const Complex tr = (xi.adjoint() * u).trace();
  const Complex phase = std::abs(tr) > 1e-300 ? tr / std::abs(tr) : Complex(1.0, 0.0);
  rep.global_phase = std::arg(phase);
  rep.distance = max_abs(u - phase * xi);
  rep.transfers = rep.distance <= 1e-8;
  for (long k = 0; k < n; ++k) {
    rep.energies.push_back(pb.energies[k]);
    rep.parities.push_back(pb.parities[static_cast<std::size_t>(k)]);
    rep.residuals.push_back(std::abs(phases[k] - phase * static_cast<double>(pb.parities[static_cast<std::size_t>(k)])));
  }
  return rep;
}

SpectralReport pst_as_gate_design(const WalkChain& c, double t) {
  const long n = c.length();
  const GateTarget xi = builtin_gate("reflection:" + std::to_string(n));
  const Matrix h = c.hamiltonian();

  // Phase fixed by the lowest mode's parity: e^{-i E_0 t} = e^{i phi} p_0.
  double phi = 0.0;
  if (mirror_symmetric(c)) {
    const ParityBasis pb = parity_eigenbasis(h, xi.matrix());
    phi = std::arg(std::polar(1.0, -pb.energies[0] * t) * static_cast<double>(pb.parities[0]));
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    phi = std::remainder(-es.eigenvalues()[0] * t, kTwoPi);
  }
  const Matrix h_tilde = -t * h - phi * Matrix::Identity(n, n);
  VerifyOptions opts;
  opts.bandwidth = 1;
  return verify_solution(h_tilde, xi, opts);
}

}  // namespace gateforge
