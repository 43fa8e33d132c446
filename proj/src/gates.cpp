#include "gateforge/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gateforge {

namespace {


Matrix permutation_gate(int n, const std::function<std::vector<int>(std::vector<int>)>& f) {
  const long d = 1L << n;
  Matrix u = Matrix::Zero(d, d);
  for (long k = 0; k < d; ++k) {
    std::vector<int> bits(n);
    for (int q = 0; q < n; ++q) bits[q] = static_cast<int>((k >> (n - 1 - q)) & 1);
    const auto out = f(bits);
    long row = 0;
    for (int q = 0; q < n; ++q) row |= static_cast<long>(out[q]) << (n - 1 - q);
    u(row, k) = 1.0;
  }
  return u;
}

// Controlled swap on 0-based qubit indices.
std::vector<int> controlled_swap(std::vector<int> b, int control, int t1, int t2) {
  if (b[control]) std::swap(b[t1], b[t2]);
  return b;
}

Matrix toffoli_like(const Matrix& target_block) {
  Matrix u = Matrix::Identity(8, 8);
  u.block(6, 6, 2, 2) = target_block;
  return u;
}

long parse_size_suffix(std::string_view name, std::string_view prefix) {
  const std::string rest(name.substr(prefix.size()));
  if (rest.empty()) throw Error("gate '" + std::string(prefix) + "' needs a size, e.g. " + std::string(prefix) + "3");
  char* end = nullptr;
  const long v = std::strtol(rest.c_str(), &end, 10);
  if (end != rest.c_str() + rest.size() || v < 1) throw Error("bad gate size in '" + std::string(name) + "'");
  return v;
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  const long d = eigenvectors.rows();
  Matrix u = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < phases.size(); ++k) u += std::polar(1.0, phases[k]) * projectors[k];
  return u;
}

SpectralDecomposition decompose_unitary(const Matrix& u, double cluster_tol) {
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  const long d = u.rows();

  std::vector<double> raw(d);
  for (long k = 0; k < d; ++k) {
    double th = std::arg(t(k, k));
    // Principal branch (-pi, pi]; -pi and phases numerically just above it
    // belong to the +pi cluster.
    if (th <= -kPi + cluster_tol) th += kTwoPi;
    raw[k] = th;
  }
  std::vector<long> order(d);
  std::iota(order.begin(), order.end(), 0L);
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) { return raw[a] < raw[b]; });

  SpectralDecomposition out;
  out.eigenvectors.resize(d, d);
  out.vector_phases.resize(d);
  long col = 0;
  for (long start = 0; start < d;) {
    long stop = start + 1;
    while (stop < d && raw[order[stop]] - raw[order[stop - 1]] <= cluster_tol) ++stop;
    double mean = 0.0;
    Matrix block(d, stop - start);
    for (long i = start; i < stop; ++i) {
      mean += raw[order[i]];
      block.col(i - start) = q.col(order[i]);
    }
    mean /= static_cast<double>(stop - start);
    mean = std::min(mean, kPi);
    out.phases.push_back(mean);
    out.projectors.push_back(block * block.adjoint());
    out.multiplicities.push_back(static_cast<int>(stop - start));
    for (long i = 0; i < block.cols(); ++i, ++col) {
      out.eigenvectors.col(col) = block.col(i);
      out.vector_phases[col] = mean;
    }
    start = stop;
  }
  return out;
}

GateTarget::GateTarget(std::string name, Matrix matrix, double unitarity_tol)
    : name_(std::move(name)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) throw Error("gate matrix must be square and non-empty");
  const long d = matrix_.rows();
  const double defect = max_abs(matrix_.adjoint() * matrix_ - Matrix::Identity(d, d));
  if (!(defect <= unitarity_tol)) {
    std::ostringstream os;
    os << "gate '" << name_ << "' is not unitary: max |U^dagger U - 1| = " << defect;
    throw Error(os.str());
  }
  n_qubits_ = is_power_of_two(d) ? qubits_for_dimension(d) : 0;
}

const SpectralDecomposition& GateTarget::spectrum() const {
  if (!eigen_cache_) eigen_cache_ = decompose_unitary(matrix_);
  return *eigen_cache_;
}

const SpectralDecomposition& spectral_decomposition(const GateTarget& g) { return g.spectrum(); }

Matrix reflection_matrix(long n) {
  Matrix xi = Matrix::Zero(n, n);
  for (long j = 0; j < n; ++j) xi(n - 1 - j, j) = 1.0;
  return xi;
}

GateTarget builtin_gate(std::string_view name) {
  using namespace std::string_view_literals;
  if (name == "cnot") {
    Matrix u = Matrix::Identity(4, 4);
    u.block(2, 2, 2, 2) << 0, 1, 1, 0;
    return GateTarget("cnot", u);
  }
  if (name == "toffoli") {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return GateTarget("toffoli", toffoli_like(x));
  }
  if (name == "ccy") {
    Matrix y(2, 2);
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    return GateTarget("ccy", toffoli_like(y));
  }
  if (name == "fredkin") {
    return GateTarget("fredkin", permutation_gate(3, [](std::vector<int> b) { return controlled_swap(b, 0, 1, 2); }));
  }
  if (name == "double_fredkin") {
    // |0><0| (x) Fredkin(control 2; swap 3,4) + |1><1| (x) Fredkin(control 4; swap 2,3)
    return GateTarget("double_fredkin", permutation_gate(4, [](std::vector<int> b) {
                        return b[0] ? controlled_swap(b, 3, 1, 2) : controlled_swap(b, 1, 2, 3);
                      }));
  }
  if (name.starts_with("identity")) {
    const auto prefix = name.starts_with("identity:") ? "identity:"sv : "identity"sv;
    const long n = parse_size_suffix(name, prefix);
    if (n > 12) throw Error("identity gate too large");
    return GateTarget("identity:" + std::to_string(n), Matrix::Identity(1L << n, 1L << n));
  }
  if (name.starts_with("reflection")) {
    const auto prefix = name.starts_with("reflection:") ? "reflection:"sv : "reflection"sv;
    const long n = parse_size_suffix(name, prefix);
    return GateTarget("reflection:" + std::to_string(n), reflection_matrix(n));
  }
  throw Error("unknown gate '" + std::string(name) + "'");
}

std::vector<std::string> builtin_gate_names() {
  return {"cnot", "toffoli", "fredkin", "ccy", "double_fredkin", "identity:<n>", "reflection:<N>"};
}

Complex parse_complex(std::string_view token) {
  std::string s(token);
  if (s.empty()) throw Error("empty matrix entry");
  bool imaginary = false;
  if (s.back() == 'j' || s.back() == 'i') {
    imaginary = true;
    s.pop_back();
  }
  auto to_double = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size()) throw Error("malformed matrix entry '" + std::string(token) + "'");
    return v;
  };
  if (!imaginary) return {to_double(s), 0.0};
  // split at the last sign that is not the leading one and not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(s)};
  return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

Matrix read_matrix(std::istream& in) {
  long d = 0;
  if (!(in >> d) || d <= 0) throw Error("matrix file: first line must be a positive dimension");
  Matrix m(d, d);
  for (long r = 0; r < d; ++r) {
    for (long c = 0; c < d; ++c) {
      std::string tok;
      if (!(in >> tok)) throw Error("matrix file: expected " + std::to_string(d * d) + " entries");
      m(r, c) = parse_complex(tok);
    }
  }
  std::string extra;
  if (in >> extra) throw Error("matrix file: trailing data '" + extra + "'");
  return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << '\n';
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_complex(m(r, c));
    }
    out << '\n';
  }
}

GateTarget gate_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gate file " + path.string());
  Matrix m = read_matrix(in);
  if (!is_power_of_two(m.rows())) throw Error("gate file " + path.string() + ": dimension is not a power of two");
  return GateTarget(path.stem().string(), std::move(m), 1e-8);
}

}  // namespace gateforge
