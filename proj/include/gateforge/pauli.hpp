#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gateforge/types.hpp"

namespace gateforge {

/// Tensor product of single-qubit Pauli factors with a real coefficient.
/// Qubit 1 is the leftmost character and the most significant bit of a
/// computational-basis index, so "ZZX" acts as Z on qubits 1 and 2 and X on
/// qubit 3.
class PauliString {
 public:
  PauliString() = default;
  /// Throws Error on an empty label or a character outside {I, X, Y, Z}.
  explicit PauliString(std::string factors, double coefficient = 1.0);

  static PauliString identity(int n_qubits, double coefficient = 1.0);

  int n_qubits() const { return static_cast<int>(factors_.size()); }
  const std::string& factors() const { return factors_; }
  double coefficient() const { return coefficient_; }
  char factor(int qubit) const { return factors_[qubit]; }

  /// Number of non-identity factors.
  int weight() const;

  /// Bits set where the factor flips the basis state (X or Y).
  unsigned long flip_mask() const;

  PauliString scaled(double s) const { return PauliString(factors_, coefficient_ * s); }

  /// `<coefficient> * <LABEL>`, coefficient with 17 significant digits.
  std::string to_string() const;

  /// Inverse of to_string; a bare label means coefficient 1.
  static PauliString parse(std::string_view text);

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::string factors_;
  double coefficient_ = 1.0;
};

/// A Hermitian operator written as a real combination of Pauli strings.
using PauliSum = std::vector<PauliString>;

Matrix dense_matrix(const PauliString& p);
Matrix dense_matrix(const PauliSum& terms, int n_qubits);

/// AB - BA; throws Error when the shapes differ.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Pauli expansion c_s = Tr(sigma_s A) / 2^n of a Hermitian matrix.
/// Terms with |c_s| <= drop_below are omitted; pass a negative threshold to
/// get all 4^n coefficients. Order follows the canonical basis ordering.
/// Throws Error if A is not Hermitian within 1e-10 or not of side 2^n.
PauliSum pauli_decompose(const Matrix& a, double drop_below = 1e-13);

/// Canonical comparison: identity first, then (weight, qubit indices, axis
/// labels) lexicographically.
bool canonical_less(const std::string& a, const std::string& b);

enum class BasisFamily {
  full_two_local,
  two_local_no_y,
  diagonal_pairwise,
  xx_yy_coupled,
  xx_and_yy,
  one_local,
};

BasisFamily parse_basis_family(std::string_view name);
std::string_view to_string(BasisFamily family);

/// Ordered list of Hermitian operators, each stored both as its Pauli
/// expansion and as a dense matrix.
class OperatorBasis {
 public:
  OperatorBasis() = default;
  OperatorBasis(int n_qubits, std::vector<PauliSum> elements);

  int n_qubits() const { return n_qubits_; }
  long dimension() const { return 1L << n_qubits_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  const std::vector<PauliSum>& elements() const { return elements_; }
  const PauliSum& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& matrix(std::size_t i) const { return matrices_[i]; }

  /// sum_i lambda_i O_i
  Matrix combine(const RealVector& lambda) const;

  /// Rank of the real Gram matrix Re Tr(O_i O_j).
  long gram_rank(double relative_tol = 1e-10) const;

  /// Human-readable form of one element, e.g. "1 * XII + 1 * XIX".
  std::string describe(std::size_t i) const;

 private:
  int n_qubits_ = 0;
  std::vector<PauliSum> elements_;
  std::vector<Matrix> matrices_;
};

OperatorBasis standard_basis(int n_qubits, BasisFamily family);

}  // namespace gateforge
