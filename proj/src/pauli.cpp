#include "gateforge/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "gateforge/kernels/kernels.hpp"

namespace gateforge {

namespace {

bool valid_factor(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Phase picked up by column `col` under the string, i.e. sigma[col ^ flip, col].
Complex column_phase(const std::string& factors, unsigned long col) {
  const int n = static_cast<int>(factors.size());
  int i_power = 0;  // power of i
  int sign = 1;
  for (int q = 0; q < n; ++q) {
    const bool bit = (col >> (n - 1 - q)) & 1UL;
    switch (factors[q]) {
      case 'Z':
        if (bit) sign = -sign;
        break;
      case 'Y':
        // Y|0> = i|1>, Y|1> = -i|0>
        ++i_power;
        if (bit) sign = -sign;
        break;
      default:
        break;
    }
  }
  static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return static_cast<double>(sign) * powers[i_power % 4];
}

std::vector<int> support(const std::string& f) {
  std::vector<int> s;
  for (int q = 0; q < static_cast<int>(f.size()); ++q)
    if (f[q] != 'I') s.push_back(q);
  return s;
}

std::string axes(const std::string& f) {
  std::string a;
  for (char c : f)
    if (c != 'I') a.push_back(c);
  return a;
}

std::string single(int n, int q, char a) {
  std::string s(n, 'I');
  s[q] = a;
  return s;
}

std::string pair(int n, int i, int j, char a, char b) {
  std::string s(n, 'I');
  s[i] = a;
  s[j] = b;
  return s;
}

}  // namespace

PauliString::PauliString(std::string factors, double coefficient)
    : factors_(std::move(factors)), coefficient_(coefficient) {
  if (factors_.empty()) throw Error("Pauli string needs at least one qubit");
  for (char c : factors_)
    if (!valid_factor(c)) throw Error("invalid Pauli factor '" + std::string(1, c) + "' in " + factors_);
  if (!std::isfinite(coefficient_)) throw Error("Pauli coefficient must be finite");
}

PauliString PauliString::identity(int n_qubits, double coefficient) {
  if (n_qubits < 1) throw Error("n_qubits must be positive");
  return PauliString(std::string(n_qubits, 'I'), coefficient);
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(factors_.begin(), factors_.end(), [](char c) { return c != 'I'; }));
}

unsigned long PauliString::flip_mask() const {
  unsigned long mask = 0;
  const int n = n_qubits();
  for (int q = 0; q < n; ++q)
    if (factors_[q] == 'X' || factors_[q] == 'Y') mask |= 1UL << (n - 1 - q);
  return mask;
}

std::string PauliString::to_string() const {
  std::ostringstream os;
  os << std::setprecision(17) << coefficient_ << " * " << factors_;
  return os.str();
}

PauliString PauliString::parse(std::string_view text) {
  text = trim(text);
  const auto star = text.find('*');
  if (star == std::string_view::npos) return PauliString(std::string(text));
  const std::string coeff_text(trim(text.substr(0, star)));
  const std::string label(trim(text.substr(star + 1)));
  double c = 0.0;
  // strtod handles the full double grammar including "inf"/"nan", which the
  // constructor then rejects.
  char* end = nullptr;
  c = std::strtod(coeff_text.c_str(), &end);
  if (coeff_text.empty() || end != coeff_text.c_str() + coeff_text.size())
    throw Error("malformed Pauli coefficient: '" + coeff_text + "'");
  return PauliString(label, c);
}

Matrix dense_matrix(const PauliString& p) {
  const long d = 1L << p.n_qubits();
  const unsigned long flip = p.flip_mask();
  Matrix m = Matrix::Zero(d, d);
  for (long col = 0; col < d; ++col) {
    const long row = static_cast<long>(static_cast<unsigned long>(col) ^ flip);
    m(row, col) = p.coefficient() * column_phase(p.factors(), static_cast<unsigned long>(col));
  }
  return m;
}

Matrix dense_matrix(const PauliSum& terms, int n_qubits) {
  const long d = 1L << n_qubits;
  Matrix m = Matrix::Zero(d, d);
  for (const auto& t : terms) {
    if (t.n_qubits() != n_qubits) throw Error("Pauli term " + t.factors() + " has the wrong qubit count");
    m += dense_matrix(t);
  }
  return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw Error("commutator: dimension mismatch");
  return a * b - b * a;
}

bool canonical_less(const std::string& a, const std::string& b) {
  const auto sa = support(a);
  const auto sb = support(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  static const std::string order = "XYZ";
  const auto ka = axes(a), kb = axes(b);
  return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end(), [](char x, char y) {
    return order.find(x) < order.find(y);
  });
}

PauliSum pauli_decompose(const Matrix& a, double drop_below) {
  if (a.rows() != a.cols() || !is_power_of_two(a.rows()))
    throw Error("pauli_decompose: matrix side must be a power of two");
  if (hermiticity_defect(a) > 1e-10) throw Error("pauli_decompose: matrix is not Hermitian");
  const int n = qubits_for_dimension(a.rows());
  const long d = a.rows();

  std::vector<std::string> labels;
  labels.reserve(1UL << (2 * n));
  for (unsigned long code = 0; code < (1UL << (2 * n)); ++code) {
    std::string f(n, 'I');
    for (int q = 0; q < n; ++q) f[q] = "IXYZ"[(code >> (2 * (n - 1 - q))) & 3UL];
    labels.push_back(std::move(f));
  }
  std::sort(labels.begin(), labels.end(), canonical_less);

  PauliSum out;
  for (auto& f : labels) {
    const PauliString p(f);
    const unsigned long flip = p.flip_mask();
    // Tr(sigma A) = sum_j sigma[j^flip, j] A[j, j^flip]
    Complex tr = 0.0;
    for (long j = 0; j < d; ++j)
      tr += column_phase(f, static_cast<unsigned long>(j)) * a(j, static_cast<long>(static_cast<unsigned long>(j) ^ flip));
    const double c = tr.real() / static_cast<double>(d);
    if (std::abs(c) > drop_below) out.emplace_back(std::move(f), c);
  }
  return out;
}

BasisFamily parse_basis_family(std::string_view name) {
  if (name == "full_two_local") return BasisFamily::full_two_local;
  if (name == "two_local_no_y" || name == "two_local_no_Y") return BasisFamily::two_local_no_y;
  if (name == "diagonal_pairwise") return BasisFamily::diagonal_pairwise;
  if (name == "xx_yy_coupled") return BasisFamily::xx_yy_coupled;
  if (name == "xx_and_yy") return BasisFamily::xx_and_yy;
  if (name == "one_local") return BasisFamily::one_local;
  throw Error("unknown basis family '" + std::string(name) + "'");
}

std::string_view to_string(BasisFamily family) {
  switch (family) {
    case BasisFamily::full_two_local: return "full_two_local";
    case BasisFamily::two_local_no_y: return "two_local_no_y";
    case BasisFamily::diagonal_pairwise: return "diagonal_pairwise";
    case BasisFamily::xx_yy_coupled: return "xx_yy_coupled";
    case BasisFamily::xx_and_yy: return "xx_and_yy";
    case BasisFamily::one_local: return "one_local";
  }
  return "unknown";
}

OperatorBasis::OperatorBasis(int n_qubits, std::vector<PauliSum> elements)
    : n_qubits_(n_qubits), elements_(std::move(elements)) {
  if (n_qubits_ < 1) throw Error("OperatorBasis: n_qubits must be positive");
  matrices_.reserve(elements_.size());
  for (const auto& e : elements_) {
    Matrix m = dense_matrix(e, n_qubits_);
    if (hermiticity_defect(m) > 1e-12) throw Error("OperatorBasis: element is not Hermitian");
    matrices_.push_back(std::move(m));
  }
}

Matrix OperatorBasis::combine(const RealVector& lambda) const {
  if (static_cast<std::size_t>(lambda.size()) != size())
    throw Error("parameter vector length does not match basis size");
  const long d = dimension();
  Matrix h = Matrix::Zero(d, d);
  const auto n = static_cast<std::size_t>(d * d);
  for (std::size_t i = 0; i < size(); ++i)
    if (lambda[static_cast<long>(i)] != 0.0) kernels::axpy_real(lambda[static_cast<long>(i)], matrices_[i].data(), h.data(), n);
  return h;
}

long OperatorBasis::gram_rank(double relative_tol) const {
  const auto k = static_cast<long>(size());
  if (k == 0) return 0;
  RealMatrix gram(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j)
      gram(i, j) = (matrices_[i].adjoint() * matrices_[j]).trace().real();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  return (es.eigenvalues().array().abs() > relative_tol * top).count();
}

std::string OperatorBasis::describe(std::size_t i) const {
  std::ostringstream os;
  const auto& e = elements_.at(i);
  for (std::size_t t = 0; t < e.size(); ++t) {
    if (t) os << " + ";
    os << std::setprecision(12) << e[t].coefficient() << " * " << e[t].factors();
  }
  return os.str();
}

OperatorBasis standard_basis(int n_qubits, BasisFamily family) {
  if (n_qubits < 1) throw Error("standard_basis: n_qubits must be positive");
  const int n = n_qubits;
  std::vector<PauliSum> el;
  el.push_back({PauliString::identity(n)});

  const std::string single_axes = family == BasisFamily::two_local_no_y ? "XZ" : "XYZ";
  for (int q = 0; q < n; ++q)
    for (char a : single_axes) el.push_back({PauliString(single(n, q, a))});

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      switch (family) {
        case BasisFamily::full_two_local:
          for (char a : std::string("XYZ"))
            for (char b : std::string("XYZ")) el.push_back({PauliString(pair(n, i, j, a, b))});
          break;
        case BasisFamily::two_local_no_y:
          for (char a : std::string("XZ"))
            for (char b : std::string("XZ")) el.push_back({PauliString(pair(n, i, j, a, b))});
          break;
        case BasisFamily::diagonal_pairwise:
          for (char a : std::string("XYZ")) el.push_back({PauliString(pair(n, i, j, a, a))});
          break;
        case BasisFamily::xx_yy_coupled:
          el.push_back({PauliString(pair(n, i, j, 'X', 'X')), PauliString(pair(n, i, j, 'Y', 'Y'))});
          break;
        case BasisFamily::xx_and_yy:
          el.push_back({PauliString(pair(n, i, j, 'X', 'X'))});
          el.push_back({PauliString(pair(n, i, j, 'Y', 'Y'))});
          break;
        case BasisFamily::one_local:
          break;
      }
    }
  }
  return OperatorBasis(n, std::move(el));
}

}  // namespace gateforge
