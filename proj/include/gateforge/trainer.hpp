#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gateforge/diffexp.hpp"
#include "gateforge/gates.hpp"
#include "gateforge/pauli.hpp"
#include "gateforge/types.hpp"

namespace gateforge {

enum class InitKind { zeros, constant, gaussian };

struct InitSpec {
  InitKind kind = InitKind::zeros;
  double value = 0.0;  // the constant, or the standard deviation

  /// "zeros", "constant:<c>" or "gaussian:<sigma>".
  static InitSpec parse(std::string_view text);
  std::string to_string() const;
};

struct TrainConfig {
  GateTarget gate;
  BasisFamily basis_family = BasisFamily::full_two_local;
  bool reduce_by_commutant = true;
  double eta0 = 1.0;
  double gamma = 0.5;
  double alpha = 0.005;
  int batch_size = 2;
  int states_per_epoch = 200;
  int max_epochs = 2000;
  double target_fidelity = 1.0 - 1e-10;
  std::uint64_t seed = 0;
  InitSpec init;
  // Stop when the best average gate fidelity gains less than
  // `stagnation_tol` over `stagnation_window` epochs; 0 disables the check.
  int stagnation_window = 50;
  double stagnation_tol = 1e-12;
  // Explicit basis overriding `basis_family` (used for file-defined gates
  // and hand-built ansatze).
  std::optional<OperatorBasis> basis_override;

  explicit TrainConfig(GateTarget g) : gate(std::move(g)) {}

  /// Throws Error on any invalid hyperparameter.
  void validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double mean_batch_fidelity = 0.0;
  double avg_gate_fidelity = 0.0;
};

struct TrainingRun {
  std::uint64_t seed = 0;
  OperatorBasis basis;
  RealVector lambda_final;
  RealVector velocity_final;
  std::vector<EpochRecord> history;
  int epochs_used = 0;
  double initial_avg_fidelity = 0.0;
  double final_avg_fidelity = 0.0;
  bool converged = false;
  bool stagnated = false;
};

/// Basis of the search space: the family basis, restricted to the commutant
/// of the principal generator when requested, with lambda set per cfg.init.
/// Throws Error when the restriction leaves nothing.
HamiltonianModel build_search_space(const TrainConfig& cfg, std::mt19937_64& rng);

/// eta0 / (1 + k alpha)
double learning_rate(double eta0, double alpha, int epoch);

/// One momentum step: v' = gamma v + eta mean(grad), lambda' = lambda + v'.
/// Returns the mean batch fidelity. Throws Error on a non-finite gradient.
double sgd_step(HamiltonianModel& model, RealVector& velocity, const GateTarget& g,
                const std::vector<StateVector>& batch, double eta, double gamma);

/// Shifts the identity component of H(lambda) so that Tr(G^dagger e^{iH})
/// becomes real and positive. No-op when the identity is outside the span.
void align_global_phase(HamiltonianModel& model, const GateTarget& g);

TrainingRun train(const TrainConfig& cfg);

/// Seed of restart `index` derived from the master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Independent restarts with seeds derive_seed(cfg.seed, r), executed on up
/// to `jobs` threads. Results are ordered by restart index.
std::vector<TrainingRun> train_restarts(const TrainConfig& cfg, int restarts, int jobs);

enum class SweepMode { global_scale, single_param };

struct SweepRow {
  double grid_value = 0.0;
  int state_index = 0;
  double fidelity = 0.0;
};

/// Fidelity of every test state on an evenly spaced grid of n_points values
/// in [lo, hi]. global_scale evaluates H(a lambda); single_param replaces
/// lambda[index] by the grid value.
std::vector<SweepRow> sweep(const OperatorBasis& basis, const RealVector& lambda, const GateTarget& g,
                            SweepMode mode, long index, double lo, double hi, int n_points,
                            const std::vector<StateVector>& test_states);

}  // namespace gateforge
