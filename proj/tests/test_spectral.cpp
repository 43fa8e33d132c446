#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gateforge/spectral.hpp"
#include "oracles.hpp"

using namespace gateforge;

namespace {

oracle::M L(const std::string& s) { return oracle::label(s); }

// The single-integer Toffoli family as printed in the main text.
Matrix toffoli_eq5(long nu) {
  const double a = std::abs(static_cast<double>(nu));
  return kPi / 8.0 *
         ((1.0 + 4.0 * a) * L("III") - 2.0 * L("IIX") - L("ZII") - L("IZI") + L("ZIX") + L("IZX") +
          (1.0 - 4.0 * a) * L("ZZI") + std::sqrt(16.0 * a * a - 1.0) * (L("IZZ") - L("ZIZ")));
}

// Rank of [A | B] equals rank of A and rank of B: equal spans.
bool same_span(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  auto stack = [](const std::vector<Matrix>& ms) {
    const long d = ms.front().rows();
    RealMatrix out(2 * d * d, static_cast<long>(ms.size()));
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const Eigen::Map<const Vector> flat(ms[i].data(), d * d);
      out.col(static_cast<long>(i)) << flat.real(), flat.imag();
    }
    return out;
  };
  auto rank = [](const RealMatrix& m) {
    Eigen::JacobiSVD<RealMatrix> svd(m);
    const auto& s = svd.singularValues();
    return static_cast<long>((s.array() > 1e-9 * s.maxCoeff()).count());
  };
  std::vector<Matrix> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const long ra = rank(stack(a)), rb = rank(stack(b)), rab = rank(stack(both));
  return ra == rab && rb == rab;
}

}  // namespace

TEST(PrincipalGenerator, ToffoliMatchesProductForm) {
  const oracle::M expected =
      kPi / 8.0 * (L("III") - L("ZII")) * (L("III") - L("IZI")) * (L("III") - L("IIX"));
  EXPECT_LE(max_abs(principal_generator(builtin_gate("toffoli")) - expected), 1e-12);
}

TEST(PrincipalGenerator, FredkinMatchesProductForm) {
  const oracle::M expected = kPi / 8.0 * (L("III") - L("ZII")) * (L("III") - L("IXX") - L("IYY") - L("IZZ"));
  EXPECT_LE(max_abs(principal_generator(builtin_gate("fredkin")) - expected), 1e-12);
}

TEST(PrincipalGenerator, IdentityGivesZero) {
  EXPECT_LE(max_abs(principal_generator(builtin_gate("identity:2"))), 1e-15);
}

TEST(PrincipalGenerator, ExponentiatesBackToGate) {
  for (const char* name : {"cnot", "toffoli", "fredkin", "ccy", "double_fredkin"}) {
    const GateTarget g = builtin_gate(name);
    EXPECT_LE(max_abs(oracle::expi_taylor(principal_generator(g)) - g.matrix()), 1e-10) << name;
  }
}

TEST(PrincipalGenerator, IdempotentUnderReExtraction) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    // Random Hermitian with spectrum inside (-pi, pi).
    Matrix h = oracle::random_hermitian(8, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    h /= es.eigenvalues().cwiseAbs().maxCoeff();
    h *= 0.95 * kPi;
    const GateTarget g("random", oracle::expi_taylor(h), 1e-10);
    EXPECT_LE(max_abs(principal_generator(g) - h), 1e-9);
  }
}

TEST(CommutantRestrict, ToffoliFullTwoLocalGives25) {
  const Matrix hg = principal_generator(builtin_gate("toffoli"));
  const OperatorBasis reduced = commutant_restrict(standard_basis(3, BasisFamily::full_two_local), hg);
  EXPECT_EQ(reduced.size(), 25u);
  for (const auto& m : reduced.matrices()) EXPECT_LE(max_abs(commutator(m, hg)), 1e-10);
  EXPECT_EQ(reduced.gram_rank(), 25);
}

TEST(CommutantRestrict, CnotOneLocalGivesIdentityZ1X2) {
  const OperatorBasis reduced =
      commutant_restrict(standard_basis(2, BasisFamily::one_local), principal_generator(builtin_gate("cnot")));
  ASSERT_EQ(reduced.size(), 3u);
  EXPECT_TRUE(same_span(reduced.matrices(), {L("II"), L("ZI"), L("IX")}));
}

TEST(CommutantRestrict, ToffoliDiagonalPairwiseIsTheNineTermAnsatzPlusIdentity) {
  const OperatorBasis reduced = commutant_restrict(standard_basis(3, BasisFamily::diagonal_pairwise),
                                                   principal_generator(builtin_gate("toffoli")));
  const std::vector<Matrix> ansatz = {
      L("III"),
      L("ZII"),
      L("IZI"),
      L("IIX"),
      L("XII") * (L("III") + L("IIX")),
      L("IXI") * (L("III") + L("IIX")),
      (L("III") + L("ZII")) * L("IIZ"),
      (L("III") + L("IZI")) * L("IIZ"),
      L("XXI") + L("YYI"),
      L("ZZI"),
  };
  EXPECT_EQ(reduced.size(), 10u);
  EXPECT_TRUE(same_span(reduced.matrices(), ansatz));
}

TEST(CommutantRestrict, ReportedDimensionsForOtherAnsatze) {
  const Matrix toff = principal_generator(builtin_gate("toffoli"));
  EXPECT_EQ(commutant_restrict(standard_basis(3, BasisFamily::two_local_no_y), toff).size(), 13u);
  const Matrix fred = principal_generator(builtin_gate("fredkin"));
  EXPECT_EQ(commutant_restrict(standard_basis(3, BasisFamily::full_two_local), fred).size(), 23u);
  EXPECT_EQ(commutant_restrict(standard_basis(3, BasisFamily::diagonal_pairwise), fred).size(), 12u);
  const Matrix ff = principal_generator(builtin_gate("double_fredkin"));
  EXPECT_EQ(commutant_restrict(standard_basis(4, BasisFamily::diagonal_pairwise), ff).size(), 11u);
}

TEST(CommutantRestrict, ContainsGeneratorWhenBasisDoes) {
  const GateTarget g = builtin_gate("toffoli");
  const Matrix hg = principal_generator(g);
  const OperatorBasis reduced = commutant_restrict(standard_basis(3, BasisFamily::full_two_local), hg);
  // H_G has a three-qubit term; add it through its Pauli expansion.
  std::vector<PauliSum> elements = standard_basis(3, BasisFamily::full_two_local).elements();
  elements.push_back({PauliString("ZZX")});
  const OperatorBasis with_zzx = commutant_restrict(OperatorBasis(3, elements), hg);
  std::vector<Matrix> span = with_zzx.matrices();
  EXPECT_TRUE(same_span(span, [&] {
    auto v = span;
    v.push_back(hg);
    return v;
  }()));
  EXPECT_GE(with_zzx.size(), reduced.size());
}

TEST(CommutantRestrict, MonotoneUnderSubBases) {
  const Matrix hg = principal_generator(builtin_gate("fredkin"));
  const auto full = standard_basis(3, BasisFamily::full_two_local);
  for (auto family : {BasisFamily::diagonal_pairwise, BasisFamily::one_local, BasisFamily::two_local_no_y,
                      BasisFamily::xx_and_yy}) {
    EXPECT_LE(commutant_restrict(standard_basis(3, family), hg).size(), commutant_restrict(full, hg).size());
  }
}

TEST(CommutantRestrict, Errors) {
  EXPECT_THROW(commutant_restrict(OperatorBasis(), Matrix::Zero(2, 2)), Error);
  EXPECT_THROW(commutant_restrict(standard_basis(2, BasisFamily::one_local), Matrix::Zero(8, 8)), Error);
}

TEST(VerifySolution, MainTextToffoliFamily) {
  for (long nu : {1L, -1L, 2L, 3L, -4L}) {
    const SpectralReport rep = verify_solution(toffoli_eq5(nu), builtin_gate("toffoli"));
    EXPECT_TRUE(rep.passed()) << nu;
    EXPECT_LE(rep.max_residual, 1e-9);
    EXPECT_LE(rep.unitary_distance, 1e-9);
  }
}

TEST(VerifySolution, FredkinSpectrum) {
  const PauliSum h = builtin_solution("fredkin_eq7");
  const SpectralReport rep = verify_solution(dense_matrix(h, 3), builtin_gate("fredkin"));
  EXPECT_TRUE(rep.passed());
  const std::vector<double> expected = {-4, -2, 0, 0, 0, 2, 2, 4};
  ASSERT_EQ(rep.eigenvalues.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(rep.eigenvalues[k], expected[k] * kPi, 1e-8);
}

TEST(VerifySolution, ZeroOperatorOnIdentityGate) {
  const SpectralReport rep = verify_solution(Matrix::Zero(4, 4), builtin_gate("identity:2"));
  EXPECT_TRUE(rep.passed());
  for (double r : rep.residuals) EXPECT_EQ(r, 0.0);
}

TEST(VerifySolution, ZeroOperatorFailsOnToffoli) {
  const SpectralReport rep = verify_solution(Matrix::Zero(8, 8), builtin_gate("toffoli"));
  EXPECT_FALSE(rep.verdicts.eigenphases);
  EXPECT_TRUE(rep.verdicts.commutes);
  EXPECT_FALSE(rep.passed());
}

TEST(VerifySolution, GlobalPhaseIsNotForgiven) {
  const Matrix h = toffoli_eq5(1) + 0.3 * Matrix::Identity(8, 8);
  EXPECT_FALSE(verify_solution(h, builtin_gate("toffoli")).passed());
}

TEST(VerifySolution, ThreeQubitTermFailsPhysicalCondition) {
  const GateTarget g = builtin_gate("toffoli");
  const SpectralReport rep = verify_solution(principal_generator(g), g);
  EXPECT_TRUE(rep.verdicts.commutes);
  EXPECT_TRUE(rep.verdicts.eigenphases);
  EXPECT_FALSE(rep.verdicts.physical);
}

TEST(VerifySolution, RejectsNonHermitianAndMismatch) {
  Matrix a = Matrix::Zero(8, 8);
  a(0, 1) = 1.0;
  EXPECT_THROW(verify_solution(a, builtin_gate("toffoli")), Error);
  EXPECT_THROW(verify_solution(Matrix::Zero(4, 4), builtin_gate("toffoli")), Error);
}

TEST(ToffoliFamily, NuOneMatchesMainText) {
  const Matrix h = dense_matrix(toffoli_family({0, 0, 0, 1}), 3);
  EXPECT_LE(max_abs(h - toffoli_eq5(1)), 1e-14);
  // Coefficients quoted alongside the formula.
  for (const auto& t : toffoli_family({0, 0, 0, 1})) {
    if (t.factors() == "III") EXPECT_NEAR(t.coefficient(), 5 * kPi / 8, 1e-14);
    if (t.factors() == "IIX") EXPECT_NEAR(t.coefficient(), -kPi / 4, 1e-14);
    if (t.factors() == "ZZI") EXPECT_NEAR(t.coefficient(), -3 * kPi / 8, 1e-14);
    if (t.factors() == "IZZ") EXPECT_NEAR(t.coefficient(), std::sqrt(15.0) * kPi / 8, 1e-14);
    if (t.factors() == "ZIZ") EXPECT_NEAR(t.coefficient(), -std::sqrt(15.0) * kPi / 8, 1e-14);
  }
}

TEST(ToffoliFamily, InvalidAssignmentsThrow) {
  EXPECT_EQ((NuAssignment{0, 0, 0, 0}).c(), -1);
  EXPECT_THROW(toffoli_family({0, 0, 0, 0}), Error);
  EXPECT_THROW(toffoli_family({3, 0, 1, 0}), Error);  // c = -(13^2 - 4^2) < 0
  EXPECT_EQ((NuAssignment{0, 0, 1, 0}).c(), 15);
}

TEST(ToffoliFamily, EveryValidAssignmentInABoxVerifies) {
  const GateTarget g = builtin_gate("toffoli");
  const Matrix hg = principal_generator(g);
  int checked = 0;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c)
        for (long d = -2; d <= 2; ++d) {
          const NuAssignment nu{a, b, c, d};
          if (!nu.valid()) continue;
          const PauliSum terms = toffoli_family(nu);
          const Matrix h = dense_matrix(terms, 3);
          const SpectralReport rep = verify_solution(h, g);
          EXPECT_TRUE(rep.passed()) << a << b << c << d;
          EXPECT_LE(max_abs(commutator(h, hg)), 1e-10);
          for (const auto& t : pauli_decompose(h, -1.0))
            if (t.weight() == 3) EXPECT_LE(std::abs(t.coefficient()), 1e-12);
          ++checked;
        }
  EXPECT_GT(checked, 100);
}

TEST(ToffoliFamily, SpectrumOfDifferenceFollowsLabels) {
  const NuAssignment nu{1, -1, 3, 0};
  const SpectralReport rep = verify_solution(dense_matrix(toffoli_family(nu), 3), builtin_gate("toffoli"));
  ASSERT_EQ(nu.c(), 63);
  std::vector<double> expected = {1, 1, -1, -1, 3, 3, 6, 6};
  std::sort(expected.begin(), expected.end());
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(rep.eigenvalues[k], kTwoPi * expected[k], 1e-9);
}

TEST(BuiltinSolution, AllVerifyAndCommute) {
  for (const auto& name : builtin_solution_names()) {
    const GateTarget g = builtin_gate(builtin_solution_gate(name));
    const Matrix h = dense_matrix(builtin_solution(name), g.n_qubits());
    const SpectralReport rep = verify_solution(h, g);
    EXPECT_TRUE(rep.passed()) << name;
    EXPECT_LE(rep.max_residual, 1e-9) << name;
    const Matrix hg = principal_generator(g);
    EXPECT_LE(max_abs(commutator(h - hg, hg)), 1e-10) << name;
  }
  EXPECT_THROW(builtin_solution("nope"), Error);
}

TEST(BuiltinSolution, ToffoliAlternateMatchesPrintedForm) {
  const double r7 = std::sqrt(7.0);
  const oracle::M expected = 9 * kPi / 8 * L("III") + 3 * kPi / 4 * L("IIX") - kPi / 8 * (L("ZII") + L("IZI")) +
                             kPi / 8 * L("ZZI") + kPi / 8 * (L("ZIX") + L("IZX")) -
                             r7 * kPi / 8 * (L("ZIZ") - L("IZZ"));
  EXPECT_LE(max_abs(dense_matrix(builtin_solution("toffoli_alt_sm"), 3) - expected), 1e-14);
}

TEST(InfeasibilityScan, CnotOneLocalIsInfeasibleWithHalfIntegerObstruction) {
  const GateTarget g = builtin_gate("cnot");
  const OperatorBasis reduced = commutant_restrict(standard_basis(2, BasisFamily::one_local), principal_generator(g));
  const FeasibilityReport rep = integer_infeasibility_scan(reduced, g, 5);
  EXPECT_FALSE(rep.feasible);
  EXPECT_TRUE(rep.commuting_route);
  EXPECT_EQ(rep.slots, 4);
  EXPECT_EQ(rep.assignments_scanned, 11L * 11 * 11 * 11);
  ASSERT_EQ(rep.obstructions.size(), 1u);
  const Obstruction& ob = rep.obstructions[0];
  EXPECT_EQ(ob.coefficients, (std::vector<long>{1, -1, -1, 1}));
  EXPECT_EQ(ob.numerator, -1);
  EXPECT_EQ(ob.denominator, 2);
  EXPECT_TRUE(ob.contradicts_integrality());
  EXPECT_EQ(ob.equation(), "nu1 - nu2 - nu3 + nu4 = -1/2");
}

TEST(InfeasibilityScan, IdentityGateSpanOfIdentity) {
  const GateTarget g = builtin_gate("identity:1");
  const OperatorBasis basis(1, {{PauliString("I")}});
  const FeasibilityReport rep = integer_infeasibility_scan(basis, g, 1);
  EXPECT_TRUE(rep.feasible);
  ASSERT_EQ(rep.witness_lambda.size(), 1);
  // h0 = 2 pi nu for the witness label.
  EXPECT_NEAR(rep.witness_lambda[0], kTwoPi * static_cast<double>(rep.witness_nu[0]), 1e-12);
  EXPECT_TRUE(rep.obstructions.empty());
}

TEST(InfeasibilityScan, ToffoliFullCommutantIsFeasible) {
  const GateTarget g = builtin_gate("toffoli");
  const OperatorBasis reduced = commutant_restrict(standard_basis(3, BasisFamily::full_two_local), principal_generator(g));
  const FeasibilityReport rep = integer_infeasibility_scan(reduced, g, 2);
  EXPECT_TRUE(rep.feasible);
  EXPECT_FALSE(rep.commuting_route);
  const SpectralReport check = verify_solution(reduced.combine(rep.witness_lambda), g);
  EXPECT_TRUE(check.passed());
}

TEST(InfeasibilityScan, Errors) {
  const GateTarget g = builtin_gate("cnot");
  EXPECT_THROW(integer_infeasibility_scan(standard_basis(2, BasisFamily::one_local), g, 2), Error);
  const OperatorBasis reduced = commutant_restrict(standard_basis(2, BasisFamily::one_local), principal_generator(g));
  EXPECT_THROW(integer_infeasibility_scan(reduced, g, 0), Error);
}
