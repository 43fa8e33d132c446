#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gateforge/pst.hpp"
#include "oracles.hpp"

using namespace gateforge;

namespace {

WalkChain chain(std::vector<double> j, std::vector<double> b) {
  return WalkChain(Eigen::Map<RealVector>(j.data(), static_cast<long>(j.size())),
                   Eigen::Map<RealVector>(b.data(), static_cast<long>(b.size())));
}

// Random palindromic chain.
WalkChain random_mirror_chain(long n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  RealVector j(n - 1), b(n);
  for (long k = 0; k < n - 1; ++k) j[k] = k < (n - 1 + 1) / 2 ? u(rng) : j[n - 2 - k];
  for (long k = 0; k < n; ++k) b[k] = k < (n + 1) / 2 ? u(rng) - 1.1 : b[n - 1 - k];
  return WalkChain(j, b);
}

}  // namespace

TEST(WalkChain, HamiltonianLayout) {
  const WalkChain c = chain({1.0, 2.0}, {0.5, 0.0, -0.5});
  const Matrix h = c.hamiltonian();
  EXPECT_EQ(h(1, 0), Complex(1.0));
  EXPECT_EQ(h(0, 1), Complex(1.0));
  EXPECT_EQ(h(2, 1), Complex(2.0));
  EXPECT_EQ(h(0, 0), Complex(0.5));
  EXPECT_EQ(h(2, 0), Complex(0.0));
  EXPECT_THROW(chain({1.0}, {0.0, 0.0, 0.0}), Error);
  EXPECT_THROW(chain({}, {0.0}), Error);
}

TEST(MirrorSymmetry, Examples) {
  EXPECT_TRUE(mirror_symmetric(WalkChain::uniform(6)));
  EXPECT_FALSE(mirror_symmetric(chain({1.0, 2.0}, {0.0, 0.0, 0.0})));
  for (long n = 2; n <= 8; ++n) EXPECT_TRUE(mirror_symmetric(WalkChain::krawtchouk(n)));
  EXPECT_FALSE(mirror_symmetric(chain({1.0, 1.0}, {0.1, 0.0, 0.0})));
}

TEST(PstCheck, TwoSiteHop) {
  const PstReport rep = pst_check(chain({1.0}, {0.0, 0.0}), kPi / 2);
  EXPECT_TRUE(rep.transfers);
  EXPECT_LE(rep.distance, 1e-12);
  for (double r : rep.residuals) EXPECT_LE(r, 1e-9);
}

TEST(PstCheck, KrawtchoukChainsTransferAtHalfPi) {
  for (long n = 2; n <= 8; ++n) {
    const PstReport rep = pst_check(WalkChain::krawtchouk(n), kPi / 2);
    EXPECT_TRUE(rep.transfers) << n;
    // Spectrum is linear: -(N-1), -(N-3), ..., N-1.
    for (long k = 0; k < n; ++k) EXPECT_NEAR(rep.energies[static_cast<std::size_t>(k)], -(n - 1) + 2.0 * k, 1e-10);
  }
}

TEST(PstCheck, TaylorOracleAgrees) {
  const WalkChain c = WalkChain::krawtchouk(5);
  const oracle::M u = oracle::expi_taylor(-kPi / 2 * c.hamiltonian());
  const oracle::M xi = oracle::permutation(5, [](long k) { return 4 - k; });
  const Complex phase = u(4, 0);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  EXPECT_LE(oracle::max_abs(u - phase * xi), 1e-10);
}

TEST(PstCheck, UniformFourChainNeverTransfers) {
  const WalkChain c = WalkChain::uniform(4);
  double best = 1.0;
  for (int k = 1; k <= 10000; ++k) {
    const PstReport rep = pst_check(c, 20.0 * k / 10000.0);
    EXPECT_FALSE(rep.transfers);
    best = std::min(best, rep.distance);
  }
  EXPECT_GT(best, 1e-3);
}

TEST(PstCheck, RejectsAsymmetricChains) {
  EXPECT_THROW(pst_check(chain({1.0, 2.0}, {0.0, 0.0, 0.0}), 1.0), Error);
}

TEST(PstCheck, PeriodicAtThreeTimes) {
  for (long n = 2; n <= 6; ++n) {
    const WalkChain c = WalkChain::krawtchouk(n);
    EXPECT_TRUE(pst_check(c, 3 * kPi / 2).transfers);
    EXPECT_LE(pst_check(c, 3 * kPi / 2).distance, 1e-8);
  }
}

TEST(PstGateDesign, PstChainsPassBothConditions) {
  for (long n = 2; n <= 7; ++n) {
    const SpectralReport rep = pst_as_gate_design(WalkChain::krawtchouk(n), kPi / 2);
    EXPECT_TRUE(rep.verdicts.commutes) << n;
    EXPECT_TRUE(rep.verdicts.eigenphases) << n;
    EXPECT_TRUE(rep.verdicts.physical) << n;
    for (double r : rep.residuals) EXPECT_LE(r, 1e-9);
  }
}

TEST(PstGateDesign, NonMirrorChainFailsCommutation) {
  const SpectralReport rep = pst_as_gate_design(chain({1.0, 2.0}, {0.0, 0.0, 0.0}), 1.0);
  EXPECT_FALSE(rep.verdicts.commutes);
}

TEST(PstGateDesign, EquivalentToPstCheckOnRandomChains) {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<long> size(2, 8);
  int positives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const long n = size(rng);
    // Mix generic chains with rescaled PST chains so both outcomes occur.
    WalkChain c = trial % 3 == 0 ? WalkChain::krawtchouk(n) : random_mirror_chain(n, rng);
    const double t = trial % 3 == 0 ? kPi / 2 * (1 + 2 * (trial % 2)) : 1.3;
    const bool pst = pst_check(c, t).transfers;
    const SpectralReport rep = pst_as_gate_design(c, t);
    EXPECT_EQ(pst, rep.verdicts.commutes && rep.verdicts.eigenphases) << trial;
    positives += pst;
  }
  EXPECT_GT(positives, 10);
  EXPECT_LT(positives, 90);
}
