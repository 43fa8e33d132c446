#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gateforge/gates.hpp"
#include "gateforge/pauli.hpp"
#include "gateforge/types.hpp"

namespace gateforge {

/// H_G = sum_k theta_k I_k with theta_k on the principal branch (-pi, pi].
Matrix principal_generator(const GateTarget& g);

/// Canonical basis of {sum_i c_i O_i : [sum_i c_i O_i, H_G] = 0}.
///
/// The null space of the real linear map c -> [sum c_i O_i, H_G] is taken
/// from an SVD (singular values <= 1e-10 * largest count as zero) and then
/// brought to reduced row-echelon form over the input coefficients, so each
/// output element has a unit pivot on one input element and the result does
/// not depend on the SVD's choice of null-space rotation. Throws Error on an
/// empty basis or a dimension mismatch.
OperatorBasis commutant_restrict(const OperatorBasis& basis, const Matrix& principal);

struct VerifyOptions {
  double eigen_tol = 1e-8;         // distance of eig(H~ - H_G) to 2 pi Z
  double commutator_tol = 1e-10;   // max-abs of [H~, H_G]
  double physical_tol = 1e-10;
  int max_weight = 2;              // used when `allowed` is empty
  std::optional<OperatorBasis> allowed;
  // When set, physical means no entries farther than this from the
  // diagonal (walk Hamiltonians); overrides the Pauli-weight test.
  std::optional<long> bandwidth;
};

struct ConditionVerdicts {
  bool physical = false;     // only allowed interactions appear
  bool commutes = false;     // [H~, H_G] = 0
  bool eigenphases = false;  // Eig(H~ - H_G) in 2 pi Z
  bool all() const { return physical && commutes && eigenphases; }
};

struct SpectralReport {
  Matrix principal_generator;
  long commutant_dimension = -1;  // -1 when no reduction was requested
  OperatorBasis reduced_basis;
  std::vector<double> eigenvalues;  // eig(H~ - H_G), ascending
  std::vector<double> residuals;    // distance of each eigenvalue to 2 pi Z
  double max_residual = 0.0;
  double commutator_norm = 0.0;
  double physical_residual = 0.0;
  double unitary_distance = 0.0;  // max |exp(i H~) - U|, no phase freedom
  ConditionVerdicts verdicts;

  bool passed() const { return verdicts.all(); }
};

/// exp(i H~) through a Hermitian eigendecomposition.
Matrix exp_i_hermitian(const Matrix& h);

/// Distance of x to the nearest integer multiple of 2 pi.
double lattice_residual(double x);

/// Checks the three conditions for H~ against g. Throws Error if H~ is not
/// Hermitian within 1e-10 or the dimensions differ.
SpectralReport verify_solution(const Matrix& h_tilde, const GateTarget& g, const VerifyOptions& opts = {});

/// Integer labels of the closed-form Toffoli family.
struct NuAssignment {
  long nu1 = 0, nu2 = 0, nu3 = 0, nu4 = 0;

  /// c = -[(1 + 4(nu1 - nu2))^2 - (4(nu3 - nu4))^2]
  long c() const;
  bool valid() const { return c() >= 0 && nu3 != nu4; }
};

/// Two-local Toffoli generators parametrized by four integers. Throws Error
/// when c < 0 or nu3 == nu4.
PauliSum toffoli_family(const NuAssignment& nu);

/// Closed-form generators shipped with the library:
/// fredkin_eq7, toffoli_alt_sm, toffoli_zplus_sm.
PauliSum builtin_solution(std::string_view name);
/// Gate a builtin solution generates.
std::string builtin_solution_gate(std::string_view name);
std::vector<std::string> builtin_solution_names();

/// A linear relation sum_k w_k nu_k = value forced on the integer labels.
struct Obstruction {
  std::vector<long> coefficients;
  long numerator = 0;
  long denominator = 1;
  /// True when the forced value is not an integer, so no integer labels can
  /// ever satisfy it.
  bool contradicts_integrality() const { return denominator != 1; }
  std::string equation() const;
};

struct FeasibilityReport {
  bool feasible = false;
  bool commuting_route = false;  // basis elements mutually commute: exact linear scan
  int slots = 0;                 // distinct joint-eigenvector slots (or d for the spectral route)
  long assignments_scanned = 0;
  long nu_max = 0;
  std::vector<long> witness_nu;
  RealVector witness_lambda;
  double best_residual = 0.0;
  std::vector<Obstruction> obstructions;
};

/// Bounded search for integer labels |nu_i| <= nu_max admitting real
/// coefficients with Eig(H~ - H_G) = 2 pi nu.
///
/// When the basis elements commute with each other the problem is linear in
/// a joint eigenbasis; every slot assignment is checked and the left null
/// space of the slot matrix yields exact rational obstructions. Otherwise
/// each sorted multiset of labels is attacked with a damped Gauss-Newton fit
/// of the sorted spectrum, so an "infeasible" verdict there is only as
/// strong as the local solver. Throws Error if some basis element does not
/// commute with H_G.
FeasibilityReport integer_infeasibility_scan(const OperatorBasis& basis, const GateTarget& g, long nu_max);

}  // namespace gateforge
