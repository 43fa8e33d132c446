#pragma once

#include <vector>

#include "gateforge/spectral.hpp"
#include "gateforge/types.hpp"

namespace gateforge {

/// Nearest-neighbour walk on N sites: H_W[k, k-1] = J_k, H_W[k, k] = B_k.
class WalkChain {
 public:
  /// Throws Error unless N >= 2, |J| = N - 1, |B| = N and all entries finite.
  WalkChain(RealVector couplings, RealVector fields);

  /// J_k = sqrt(k (N - k)), B = 0.
  static WalkChain krawtchouk(long n);
  static WalkChain uniform(long n, double coupling = 1.0);

  long length() const { return fields_.size(); }
  const RealVector& couplings() const { return couplings_; }
  const RealVector& fields() const { return fields_; }
  Matrix hamiltonian() const;

 private:
  RealVector couplings_;
  RealVector fields_;
};

/// max |[H_W, Xi]| <= 1e-10
bool mirror_symmetric(const WalkChain& c);

struct PstReport {
  bool transfers = false;         // exp(-itH_W) = e^{i phi} Xi within 1e-8
  double distance = 0.0;          // max-abs distance with the best phase
  double global_phase = 0.0;      // phi
  std::vector<double> energies;   // ascending
  std::vector<int> parities;      // Xi eigenvalue of each eigenvector
  std::vector<double> residuals;  // |e^{-i E_k t} - e^{i phi} p_k|
};

/// Throws Error when the chain is not mirror-symmetric.
PstReport pst_check(const WalkChain& c, double t);

/// Runs the chain through the three-condition engine with target Xi and
/// candidate H~ = -t H_W - phi, phi the phase picked by the lowest mode.
/// "Physical" means nearest-neighbour: no entries beyond the tridiagonal.
SpectralReport pst_as_gate_design(const WalkChain& c, double t);

}  // namespace gateforge
