#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gateforge/gates.hpp"
#include "oracles.hpp"

using namespace gateforge;

namespace {

// Bit of qubit q (1-based, qubit 1 most significant) in an n-qubit index.
int bit(long k, int q, int n) { return static_cast<int>((k >> (n - q)) & 1); }

long swap_bits(long k, int qa, int qb, int n) {
  if (bit(k, qa, n) == bit(k, qb, n)) return k;
  return k ^ (1L << (n - qa)) ^ (1L << (n - qb));
}

oracle::M fredkin_oracle(int control, int ta, int tb) {
  return oracle::permutation(8, [&](long k) { return bit(k, control, 3) ? swap_bits(k, ta, tb, 3) : k; });
}

Vector ket(long d, long k) {
  Vector v = Vector::Zero(d);
  v[k] = 1.0;
  return v;
}

}  // namespace

TEST(BuiltinGate, ToffoliAction) {
  const Matrix t = builtin_gate("toffoli").matrix();
  EXPECT_EQ(max_abs(t * ket(8, 0b110) - ket(8, 0b111)), 0.0);
  EXPECT_EQ(max_abs(t * ket(8, 0b100) - ket(8, 0b100)), 0.0);
  const oracle::M expected = oracle::permutation(8, [](long k) { return (k >> 1) == 0b11 ? k ^ 1 : k; });
  EXPECT_EQ(max_abs(t - expected), 0.0);
}

TEST(BuiltinGate, FredkinAction) {
  const Matrix f = builtin_gate("fredkin").matrix();
  EXPECT_EQ(max_abs(f * ket(8, 0b101) - ket(8, 0b110)), 0.0);
  EXPECT_EQ(max_abs(f - fredkin_oracle(1, 2, 3)), 0.0);
}

TEST(BuiltinGate, CnotMatchesProjectorForm) {
  // CNOT = Z1^+ + Z1^- X2^+ - Z1^- X2^-
  const oracle::M zp = 0.5 * (oracle::eye(2) + oracle::pauli2('Z'));
  const oracle::M zm = 0.5 * (oracle::eye(2) - oracle::pauli2('Z'));
  const oracle::M xp = 0.5 * (oracle::eye(2) + oracle::pauli2('X'));
  const oracle::M xm = 0.5 * (oracle::eye(2) - oracle::pauli2('X'));
  const oracle::M expected = oracle::kron(zp, oracle::eye(2)) + oracle::kron(zm, xp) - oracle::kron(zm, xm);
  EXPECT_LE(max_abs(builtin_gate("cnot").matrix() - expected), 1e-15);
}

TEST(BuiltinGate, CcyAppliesYOnTarget) {
  const oracle::M p11 = oracle::kron(0.5 * (oracle::eye(2) - oracle::pauli2('Z')), 0.5 * (oracle::eye(2) - oracle::pauli2('Z')));
  const oracle::M expected = oracle::kron(oracle::eye(4) - p11, oracle::eye(2)) + oracle::kron(p11, oracle::pauli2('Y'));
  EXPECT_LE(max_abs(builtin_gate("ccy").matrix() - expected), 1e-15);
}

TEST(BuiltinGate, DoubleFredkinFromBlockDefinition) {
  const oracle::M p0 = 0.5 * (oracle::eye(2) + oracle::pauli2('Z'));
  const oracle::M p1 = 0.5 * (oracle::eye(2) - oracle::pauli2('Z'));
  // Second block: control is the third qubit of the block, targets the first two.
  const oracle::M expected = oracle::kron(p0, fredkin_oracle(1, 2, 3)) + oracle::kron(p1, fredkin_oracle(3, 1, 2));
  const Matrix u = builtin_gate("double_fredkin").matrix();
  EXPECT_EQ(max_abs(u - expected), 0.0);
  EXPECT_EQ(max_abs(u * ket(16, 0b1011) - ket(16, 0b1101)), 0.0);
}

TEST(BuiltinGate, PermutationGatesHaveOneUnitEntryPerColumn) {
  for (const char* name : {"toffoli", "fredkin", "double_fredkin", "cnot"}) {
    const Matrix u = builtin_gate(name).matrix();
    for (long c = 0; c < u.cols(); ++c) {
      int nonzero = 0;
      for (long r = 0; r < u.rows(); ++r) {
        if (u(r, c) != Complex(0.0)) {
          ++nonzero;
          EXPECT_EQ(u(r, c), Complex(1.0));
        }
      }
      EXPECT_EQ(nonzero, 1) << name;
    }
  }
}

TEST(BuiltinGate, IdentityAndReflection) {
  EXPECT_EQ(max_abs(builtin_gate("identity:3").matrix() - oracle::eye(8)), 0.0);
  const GateTarget r = builtin_gate("reflection:5");
  EXPECT_EQ(r.dimension(), 5);
  EXPECT_EQ(r.n_qubits(), 0);
  for (long k = 0; k < 5; ++k)
    for (long j = 0; j < 5; ++j) EXPECT_EQ(r.matrix()(k, j), Complex(k == 4 - j ? 1.0 : 0.0));
}

TEST(BuiltinGate, UnknownNameThrows) {
  EXPECT_THROW(builtin_gate("swap_everything"), Error);
  EXPECT_THROW(builtin_gate("identity:x"), Error);
  EXPECT_THROW(builtin_gate("reflection:0"), Error);
}

TEST(GateTarget, RejectsNonUnitary) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = 1.1;
  EXPECT_THROW(GateTarget("bad", m), Error);
}

TEST(SpectralDecomposition, FredkinHasSevenfoldPlusOne) {
  const GateTarget g = builtin_gate("fredkin");
  const auto& s = g.spectrum();
  ASSERT_EQ(s.phases.size(), 2u);
  EXPECT_NEAR(s.phases[0], 0.0, 1e-12);
  EXPECT_NEAR(s.phases[1], kPi, 1e-12);
  EXPECT_EQ(s.multiplicities[0], 7);
  EXPECT_EQ(s.multiplicities[1], 1);
}

TEST(SpectralDecomposition, CnotPhasesZeroAndPi) {
  const GateTarget g = builtin_gate("cnot");
  const auto& s = spectral_decomposition(g);
  ASSERT_EQ(s.phases.size(), 2u);
  EXPECT_NEAR(s.phases[0], 0.0, 1e-12);
  EXPECT_NEAR(s.phases[1], kPi, 1e-12);
  EXPECT_EQ(s.multiplicities[0], 3);
  EXPECT_EQ(s.multiplicities[1], 1);
}

TEST(SpectralDecomposition, IdentitySinglePhase) {
  const GateTarget g = builtin_gate("identity:2");
  const auto& s = g.spectrum();
  ASSERT_EQ(s.phases.size(), 1u);
  EXPECT_EQ(s.phases[0], 0.0);
  EXPECT_LE(max_abs(s.projectors[0] - oracle::eye(4)), 1e-12);
}

TEST(SpectralDecomposition, ProjectorsAreCompleteOrthogonalAndReconstruct) {
  std::mt19937_64 rng(8);
  std::vector<GateTarget> gates;
  for (const char* name : {"cnot", "toffoli", "fredkin", "ccy", "double_fredkin"}) gates.push_back(builtin_gate(name));
  // A generic unitary from a random Hermitian matrix.
  gates.emplace_back("random", oracle::expi_taylor(oracle::random_hermitian(8, rng)), 1e-10);
  for (const auto& g : gates) {
    const auto& s = g.spectrum();
    Matrix sum = Matrix::Zero(g.dimension(), g.dimension());
    int total = 0;
    for (std::size_t k = 0; k < s.phases.size(); ++k) {
      const Matrix& p = s.projectors[k];
      EXPECT_LE(hermiticity_defect(p), 1e-10);
      EXPECT_LE(max_abs(p * p - p), 1e-10);
      for (std::size_t m = k + 1; m < s.phases.size(); ++m) {
        EXPECT_LE(max_abs(p * s.projectors[m]), 1e-10);
        EXPECT_GT(s.phases[m] - s.phases[k], 1e-8);
      }
      EXPECT_GT(s.phases[k], -kPi);
      EXPECT_LE(s.phases[k], kPi);
      sum += p;
      total += s.multiplicities[k];
    }
    EXPECT_LE(max_abs(sum - Matrix::Identity(g.dimension(), g.dimension())), 1e-10);
    EXPECT_EQ(total, g.dimension());
    EXPECT_LE(max_abs(s.reconstruct() - g.matrix()), 1e-10) << g.name();
  }
}

TEST(MatrixFile, RoundTripToffoli) {
  const GateTarget t = builtin_gate("toffoli");
  const auto path = std::filesystem::temp_directory_path() / "gateforge_test_toffoli.txt";
  {
    std::ofstream out(path);
    write_matrix(out, t.matrix());
  }
  const GateTarget back = gate_from_file(path);
  EXPECT_EQ(max_abs(back.matrix() - t.matrix()), 0.0);
  std::filesystem::remove(path);
}

TEST(MatrixFile, IdentityFromText) {
  std::istringstream in("2\n1+0j 0+0j\n0+0j 1+0j\n");
  EXPECT_EQ(max_abs(read_matrix(in) - oracle::eye(2)), 0.0);
}

TEST(MatrixFile, ComplexEntriesRoundTrip) {
  for (Complex z : {Complex(0.5, -0.25), Complex(-1e-17, 3.0), Complex(0.1, 0.2)}) {
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
  EXPECT_EQ(parse_complex("1.5-2j"), Complex(1.5, -2.0));
  EXPECT_THROW(parse_complex("abc"), Error);
}

TEST(MatrixFile, RejectsNonUnitaryAndOddSizes) {
  const auto dir = std::filesystem::temp_directory_path();
  {
    std::ofstream out(dir / "gateforge_bad_unitary.txt");
    out << "2\n1+0j 1+0j\n0+0j 1+0j\n";
  }
  EXPECT_THROW(gate_from_file(dir / "gateforge_bad_unitary.txt"), Error);
  {
    std::ofstream out(dir / "gateforge_bad_size.txt");
    out << "3\n1+0j 0+0j 0+0j\n0+0j 1+0j 0+0j\n0+0j 0+0j 1+0j\n";
  }
  EXPECT_THROW(gate_from_file(dir / "gateforge_bad_size.txt"), Error);
  std::filesystem::remove(dir / "gateforge_bad_unitary.txt");
  std::filesystem::remove(dir / "gateforge_bad_size.txt");
}
