#include "gateforge/trainer.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "gateforge/spectral.hpp"

namespace gateforge {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw Error("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

// Coefficients c with sum_i c_i O_i = identity, if the identity is in the
// span of the basis.
std::optional<RealVector> identity_coordinates(const OperatorBasis& basis) {
  const long d = basis.dimension();
  const auto p = static_cast<long>(basis.size());
  RealMatrix a(2 * d * d, p);
  for (long i = 0; i < p; ++i) {
    const Eigen::Map<const Vector> flat(basis.matrix(static_cast<std::size_t>(i)).data(), d * d);
    a.col(i) << flat.real(), flat.imag();
  }
  const Matrix eye = Matrix::Identity(d, d);
  const Eigen::Map<const Vector> flat(eye.data(), d * d);
  RealVector b(2 * d * d);
  b << flat.real(), flat.imag();
  RealVector c = a.completeOrthogonalDecomposition().solve(b);
  if ((a * c - b).cwiseAbs().maxCoeff() > 1e-10) return std::nullopt;
  return c;
}

}  // namespace

InitSpec InitSpec::parse(std::string_view text) {
  if (text == "zeros") return {};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error("invalid init '" + std::string(text) + "'");
  const auto kind = text.substr(0, colon);
  const double value = parse_number(text.substr(colon + 1), "init value");
  if (kind == "constant") return {InitKind::constant, value};
  if (kind == "gaussian") {
    if (value < 0.0) throw Error("gaussian init needs a non-negative standard deviation");
    return {InitKind::gaussian, value};
  }
  throw Error("invalid init '" + std::string(text) + "'");
}

std::string InitSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case InitKind::zeros:
      return "zeros";
    case InitKind::constant:
      os << "constant:" << value;
      break;
    case InitKind::gaussian:
      os << "gaussian:" << value;
      break;
  }
  return os.str();
}

void TrainConfig::validate() const {
  if (!(eta0 > 0.0) || !std::isfinite(eta0)) throw Error("eta0 must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw Error("gamma must lie in [0, 1)");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error("alpha must be non-negative");
  if (batch_size < 1) throw Error("batch size must be positive");
  if (states_per_epoch < 1) throw Error("states per epoch must be positive");
  if (states_per_epoch % batch_size != 0)
    throw Error("states per epoch (" + std::to_string(states_per_epoch) + ") is not a multiple of the batch size (" +
                std::to_string(batch_size) + ")");
  if (max_epochs < 1) throw Error("epochs must be positive");
  if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) throw Error("target fidelity must lie in (0, 1]");
  if (stagnation_window < 0) throw Error("stagnation window must be non-negative");
  if (basis_override) {
    if (basis_override->dimension() != gate.dimension()) throw Error("basis dimension does not match the gate");
  } else if (gate.n_qubits() == 0) {
    throw Error("gate '" + gate.name() + "' is not a qubit gate; supply an explicit basis");
  }
}

HamiltonianModel build_search_space(const TrainConfig& cfg, std::mt19937_64& rng) {
  OperatorBasis basis = cfg.basis_override ? *cfg.basis_override : standard_basis(cfg.gate.n_qubits(), cfg.basis_family);
  if (cfg.reduce_by_commutant) {
    basis = commutant_restrict(basis, principal_generator(cfg.gate));
    if (basis.empty()) throw Error("the commutant of the principal generator meets the basis trivially");
  }
  const auto p = static_cast<long>(basis.size());
  RealVector lambda(p);
  switch (cfg.init.kind) {
    case InitKind::zeros:
      lambda.setZero();
      break;
    case InitKind::constant:
      lambda.setConstant(cfg.init.value);
      break;
    case InitKind::gaussian: {
      std::normal_distribution<double> normal(0.0, cfg.init.value);
      for (long i = 0; i < p; ++i) lambda[i] = cfg.init.value > 0.0 ? normal(rng) : 0.0;
      break;
    }
  }
  return HamiltonianModel(std::move(basis), std::move(lambda));
}

double learning_rate(double eta0, double alpha, int epoch) { return eta0 / (1.0 + static_cast<double>(epoch) * alpha); }

double sgd_step(HamiltonianModel& model, RealVector& velocity, const GateTarget& g,
                const std::vector<StateVector>& batch, double eta, double gamma) {
  if (batch.empty()) throw Error("sgd_step: empty batch");
  if (!(eta > 0.0)) throw Error("sgd_step: learning rate must be positive");
  if (velocity.size() != static_cast<long>(model.size())) throw Error("sgd_step: velocity has the wrong length");
  const Propagator prop(model);
  RealVector mean = RealVector::Zero(static_cast<long>(model.size()));
  double fid = 0.0;
  for (const auto& psi : batch) {
    double f = 0.0;
    mean += prop.gradient(g, psi, &f);
    fid += f;
  }
  const auto n = static_cast<double>(batch.size());
  mean /= n;
  if (!mean.allFinite()) throw Error("sgd_step: non-finite gradient");
  velocity = gamma * velocity + eta * mean;
  RealVector next = model.lambda() + velocity;
  if (!next.allFinite()) throw Error("sgd_step: parameters diverged");
  model.set_lambda(std::move(next));
  return fid / n;
}

void align_global_phase(HamiltonianModel& model, const GateTarget& g) {
  const auto coords = identity_coordinates(model.basis());
  if (!coords) return;
  const Complex t = (g.matrix().adjoint() * Propagator(model).unitary()).trace();
  if (std::abs(t) < 1e-12) return;
  model.set_lambda(model.lambda() - std::arg(t) * *coords);
}

TrainingRun train(const TrainConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  HamiltonianModel model = build_search_space(cfg, rng);
  const GateTarget& g = cfg.gate;

  TrainingRun run;
  run.seed = cfg.seed;
  RealVector velocity = RealVector::Zero(static_cast<long>(model.size()));
  double agf = average_gate_fidelity(model, g);
  run.initial_avg_fidelity = agf;
  run.converged = agf >= cfg.target_fidelity;

  const int steps = cfg.states_per_epoch / cfg.batch_size;
  const long d = g.dimension();
  double best = agf;
  double window_best = agf;
  int window_start = 0;
  std::vector<StateVector> batch;
  batch.reserve(static_cast<std::size_t>(cfg.batch_size));

  for (int epoch = 0; epoch < cfg.max_epochs && !run.converged; ++epoch) {
    const double eta = learning_rate(cfg.eta0, cfg.alpha, epoch);
    double batch_fid = 0.0;
    for (int s = 0; s < steps; ++s) {
      batch.clear();
      for (int b = 0; b < cfg.batch_size; ++b) batch.push_back(haar_state(d, rng));
      batch_fid += sgd_step(model, velocity, g, batch, eta, cfg.gamma);
    }
    agf = average_gate_fidelity(model, g);
    run.history.push_back({epoch + 1, batch_fid / steps, agf});
    run.epochs_used = epoch + 1;
    if (agf >= cfg.target_fidelity) {
      run.converged = true;
      break;
    }
    best = std::max(best, agf);
    if (cfg.stagnation_window > 0 && run.epochs_used - window_start >= cfg.stagnation_window) {
      if (best - window_best < cfg.stagnation_tol) {
        run.stagnated = true;
        break;
      }
      window_best = best;
      window_start = run.epochs_used;
    }
  }

  align_global_phase(model, g);
  run.final_avg_fidelity = average_gate_fidelity(model, g);
  run.lambda_final = model.lambda();
  run.velocity_final = velocity;
  run.basis = model.basis();
  return run;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<TrainingRun> train_restarts(const TrainConfig& cfg, int restarts, int jobs) {
  if (restarts < 1) throw Error("restarts must be positive");
  if (jobs < 1) throw Error("jobs must be positive");
  cfg.validate();
  std::vector<TrainingRun> runs(static_cast<std::size_t>(restarts));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < restarts; r = next++) {
      try {
        TrainConfig local = cfg;
        local.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
        runs[static_cast<std::size_t>(r)] = train(local);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n_threads = std::min(jobs, restarts);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return runs;
}

std::vector<SweepRow> sweep(const OperatorBasis& basis, const RealVector& lambda, const GateTarget& g,
                            SweepMode mode, long index, double lo, double hi, int n_points,
                            const std::vector<StateVector>& test_states) {
  if (n_points < 1) throw Error("sweep: need at least one grid point");
  if (!(hi >= lo)) throw Error("sweep: empty range");
  if (lambda.size() != static_cast<long>(basis.size())) throw Error("sweep: parameter vector length mismatch");
  if (mode == SweepMode::single_param && (index < 0 || index >= lambda.size()))
    throw Error("sweep: parameter index " + std::to_string(index) + " out of range");
  HamiltonianModel model(basis, lambda);
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(n_points) * test_states.size());
  for (int k = 0; k < n_points; ++k) {
    const double x = n_points == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_points - 1);
    RealVector l = lambda;
    if (mode == SweepMode::global_scale) {
      l *= x;
    } else {
      l[index] = x;
    }
    model.set_lambda(std::move(l));
    const Propagator prop(model);
    for (std::size_t s = 0; s < test_states.size(); ++s)
      rows.push_back({x, static_cast<int>(s), prop.fidelity(g, test_states[s])});
  }
  return rows;
}

}  // namespace gateforge
