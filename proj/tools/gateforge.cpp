// gateforge: design and check Hamiltonians whose exponential is a target gate.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gateforge/diffexp.hpp"
#include "gateforge/gates.hpp"
#include "gateforge/io.hpp"
#include "gateforge/pauli.hpp"
#include "gateforge/pst.hpp"
#include "gateforge/spectral.hpp"
#include "gateforge/trainer.hpp"

namespace gf = gateforge;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct GateArgs {
  std::string gate;
  std::string gate_file;

  void add(CLI::App* cmd) {
    cmd->add_option("--gate", gate, "Builtin gate: cnot, toffoli, fredkin, ccy, double_fredkin, identity:<n>, reflection:<N>");
    cmd->add_option("--gate-file", gate_file, "Matrix file holding the target unitary");
  }

  std::optional<gf::GateTarget> resolve(const std::string& fallback = {}) const {
    if (!gate_file.empty()) return gf::gate_from_file(gate_file);
    if (!gate.empty()) return gf::builtin_gate(gate);
    if (!fallback.empty()) return gf::builtin_gate(fallback);
    return std::nullopt;
  }
};

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw gf::Error("range must look like lo:hi");
  std::size_t used = 0;
  const std::string lo_text = text.substr(0, colon);
  const std::string hi_text = text.substr(colon + 1);
  double lo = 0.0, hi = 0.0;
  try {
    lo = std::stod(lo_text, &used);
    if (used != lo_text.size()) throw std::invalid_argument("trailing");
    hi = std::stod(hi_text, &used);
    if (used != hi_text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw gf::Error("bad range '" + text + "'");
  }
  if (!(hi >= lo)) throw gf::Error("range '" + text + "' is empty");
  return {lo, hi};
}

std::string fmt(double x, int digits = 12) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

void print_report(const gf::SpectralReport& r) {
  std::cout << "eig(H~ - H_G) / 2pi:";
  for (double e : r.eigenvalues) std::cout << ' ' << fmt(e / gf::kTwoPi, 10);
  std::cout << "\nmax eigenphase residual: " << fmt(r.max_residual, 3) << '\n'
            << "commutator norm:         " << fmt(r.commutator_norm, 3) << '\n'
            << "physical residual:       " << fmt(r.physical_residual, 3) << '\n'
            << "|exp(iH~) - U|_max:      " << fmt(r.unitary_distance, 3) << '\n'
            << "condition physical:      " << (r.verdicts.physical ? "pass" : "FAIL") << '\n'
            << "condition commutes:      " << (r.verdicts.commutes ? "pass" : "FAIL") << '\n'
            << "condition eigenphases:   " << (r.verdicts.eigenphases ? "pass" : "FAIL") << '\n';
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  GateArgs gate;
  std::string solution;
  std::string builtin;
  std::vector<long> nu;
  double eigen_tol = 1e-8;
  std::string out;
  bool force = false;
};

int run_verify(const VerifyArgs& a) {
  const int sources = !a.solution.empty() + !a.builtin.empty() + !a.nu.empty();
  if (sources != 1) throw CLI::ValidationError("verify", "give exactly one of --solution, --builtin, --nu");

  Eigen::MatrixXcd h;
  std::string default_gate;
  if (!a.solution.empty()) {
    const gf::SolutionFile s = gf::read_solution(a.solution);
    h = s.hamiltonian();
    default_gate = s.gate;
  } else if (!a.builtin.empty()) {
    const gf::PauliSum terms = gf::builtin_solution(a.builtin);
    h = gf::dense_matrix(terms, terms.front().n_qubits());
    default_gate = gf::builtin_solution_gate(a.builtin);
  } else {
    if (a.nu.size() != 4) throw CLI::ValidationError("--nu", "needs four integers");
    const gf::PauliSum terms = gf::toffoli_family({a.nu[0], a.nu[1], a.nu[2], a.nu[3]});
    h = gf::dense_matrix(terms, 3);
    default_gate = "toffoli";
  }
  const auto g = a.gate.resolve(default_gate);
  if (!g) throw CLI::ValidationError("verify", "no gate given and the solution does not name one");

  gf::VerifyOptions opts;
  opts.eigen_tol = a.eigen_tol;
  const gf::SpectralReport rep = gf::verify_solution(h, *g, opts);
  std::cout << "gate: " << g->name() << '\n';
  print_report(rep);
  std::cout << (rep.passed() ? "VERIFIED" : "NOT VERIFIED") << '\n';
  if (!a.out.empty()) gf::write_file(fs::path(a.out) / "report.json", gf::to_json(rep), a.force);
  return rep.passed() ? kOk : kNegative;
}

// ----------------------------------------------------------------- train

struct TrainArgs {
  GateArgs gate;
  std::string basis = "full_two_local";
  bool reduce = true;
  std::string init = "zeros";
  double eta0 = 1.0, gamma = 0.5, alpha = 0.005;
  int batch_size = 2, states_per_epoch = 200, epochs = 2000;
  double target = 1.0 - 1e-10;
  std::uint64_t seed = 0;
  int restarts = 1;
  int jobs = 1;
  int stagnation = 50;
  std::string out = "gateforge-train";
  bool force = false;
};

int run_train(const TrainArgs& a) {
  const auto g = a.gate.resolve();
  if (!g) throw CLI::ValidationError("train", "--gate or --gate-file is required");
  gf::TrainConfig cfg(*g);
  cfg.basis_family = gf::parse_basis_family(a.basis);
  cfg.reduce_by_commutant = a.reduce;
  cfg.init = gf::InitSpec::parse(a.init);
  cfg.eta0 = a.eta0;
  cfg.gamma = a.gamma;
  cfg.alpha = a.alpha;
  cfg.batch_size = a.batch_size;
  cfg.states_per_epoch = a.states_per_epoch;
  cfg.max_epochs = a.epochs;
  cfg.target_fidelity = a.target;
  cfg.seed = a.seed;
  cfg.stagnation_window = a.stagnation;
  cfg.validate();

  const fs::path dir(a.out);
  std::vector<std::string> names;
  for (int r = 0; r < a.restarts; ++r) {
    names.push_back("solution_" + std::to_string(r) + ".json");
    names.push_back("history_" + std::to_string(r) + ".csv");
  }
  gf::prepare_output_dir(dir, names, a.force);

  const auto runs = gf::train_restarts(cfg, a.restarts, a.jobs);
  int converged = 0;
  double best = 0.0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& run = runs[r];
    gf::write_file(dir / ("solution_" + std::to_string(r) + ".json"), gf::to_json(gf::solution_from_run(cfg, run)), a.force);
    gf::write_file(dir / ("history_" + std::to_string(r) + ".csv"), gf::history_csv(run.history), a.force);
    converged += run.converged;
    best = std::max(best, run.final_avg_fidelity);
    std::printf("restart %zu: seed %llu, %zu parameters, %d epochs, avg fidelity %.15f, infidelity %.3e%s\n", r,
                static_cast<unsigned long long>(run.seed), run.basis.size(), run.epochs_used, run.final_avg_fidelity,
                1.0 - run.final_avg_fidelity, run.converged ? " (converged)" : run.stagnated ? " (stagnated)" : "");
  }
  std::printf("best average gate fidelity: %.15f (%d of %zu converged)\n", best, converged, runs.size());
  return converged > 0 ? kOk : kNegative;
}

// ----------------------------------------------------------------- sweep

struct SweepArgs {
  GateArgs gate;
  std::string solution;
  std::string mode;
  std::string range;
  long index = 0;
  int points = 201;
  int states = 5;
  std::uint64_t seed = 0;
  std::string out = "gateforge-sweep";
  bool force = false;
};

int run_sweep(const SweepArgs& a) {
  const gf::SolutionFile s = gf::read_solution(a.solution);
  const auto g = a.gate.resolve(s.gate);
  if (!g) throw CLI::ValidationError("sweep", "no gate given and the solution does not name one");
  const gf::OperatorBasis basis = s.operator_basis();
  if (basis.dimension() != g->dimension()) throw gf::Error("solution and gate dimensions differ");

  std::mt19937_64 rng(a.seed);
  std::vector<gf::StateVector> states;
  for (int k = 0; k < a.states; ++k) states.push_back(gf::haar_state(g->dimension(), rng));

  struct Grid {
    gf::SweepMode mode;
    double lo, hi;
    std::string file;
  };
  std::vector<Grid> grids;
  if (a.mode.empty()) {
    grids = {{gf::SweepMode::global_scale, 0.9, 1.1, "sweep_global_0.9_1.1.csv"},
             {gf::SweepMode::global_scale, 0.0, 1.2, "sweep_global_0_1.2.csv"},
             {gf::SweepMode::single_param, -10.0, 10.0, "sweep_single_" + std::to_string(a.index) + ".csv"}};
  } else {
    const gf::SweepMode mode = a.mode == "global" ? gf::SweepMode::global_scale : gf::SweepMode::single_param;
    const auto [lo, hi] = a.range.empty() ? (mode == gf::SweepMode::global_scale ? std::pair{0.9, 1.1} : std::pair{-10.0, 10.0})
                                          : parse_range(a.range);
    grids = {{mode, lo, hi, "sweep.csv"}};
  }
  std::vector<std::string> names;
  for (const auto& gr : grids) names.push_back(gr.file);
  gf::prepare_output_dir(a.out, names, a.force);

  for (const auto& gr : grids) {
    const auto rows = gf::sweep(basis, s.lambda, *g, gr.mode, a.index, gr.lo, gr.hi, a.points, states);
    gf::write_file(fs::path(a.out) / gr.file, gf::sweep_csv(rows), a.force);
    double peak = 0.0, at = gr.lo;
    for (const auto& row : rows) {
      if (row.fidelity > peak) {
        peak = row.fidelity;
        at = row.grid_value;
      }
    }
    std::cout << gr.file << ": " << rows.size() << " rows, peak fidelity " << fmt(peak, 15) << " at " << fmt(at, 6) << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------------- pst

struct PstArgs {
  std::string chain;
  long krawtchouk = 0;
  long uniform = 0;
  double time = gf::kPi / 2.0;
  std::string scan;
  int scan_points = 10000;
  std::string out;
  bool force = false;
};

int run_pst(const PstArgs& a) {
  const int sources = !a.chain.empty() + (a.krawtchouk > 0) + (a.uniform > 0);
  if (sources != 1) throw CLI::ValidationError("pst", "give exactly one of --chain, --krawtchouk, --uniform");
  const gf::WalkChain c = !a.chain.empty() ? gf::read_chain(a.chain)
                          : a.krawtchouk > 0 ? gf::WalkChain::krawtchouk(a.krawtchouk)
                                             : gf::WalkChain::uniform(a.uniform);
  const bool mirror = gf::mirror_symmetric(c);
  std::cout << "N = " << c.length() << ", mirror-symmetric: " << (mirror ? "yes" : "no") << '\n';
  if (!mirror) {
    const gf::SpectralReport design = gf::pst_as_gate_design(c, a.time);
    std::cout << "condition commutes: " << (design.verdicts.commutes ? "pass" : "FAIL") << "\nno perfect state transfer\n";
    return kNegative;
  }
  if (!a.scan.empty()) {
    const auto [lo, hi] = parse_range(a.scan);
    double best_t = 0.0, best = std::numeric_limits<double>::infinity();
    int hits = 0;
    for (int k = 1; k <= a.scan_points; ++k) {
      const double t = lo + (hi - lo) * static_cast<double>(k) / a.scan_points;
      const auto rep = gf::pst_check(c, t);
      hits += rep.transfers;
      if (rep.distance < best) {
        best = rep.distance;
        best_t = t;
      }
    }
    std::cout << "scanned " << a.scan_points << " times in (" << lo << ", " << hi << "]: " << hits
              << " with PST; closest distance " << fmt(best, 6) << " at t = " << fmt(best_t, 10) << '\n';
    return hits > 0 ? kOk : kNegative;
  }
  const gf::PstReport rep = gf::pst_check(c, a.time);
  const gf::SpectralReport design = gf::pst_as_gate_design(c, a.time);
  std::cout << "t = " << fmt(a.time) << "\n|exp(-itH) - e^{i phi} Xi|_max = " << fmt(rep.distance, 3) << '\n';
  for (std::size_t k = 0; k < rep.energies.size(); ++k)
    std::cout << "  E = " << fmt(rep.energies[k], 10) << "  parity " << (rep.parities[k] > 0 ? "+" : "-")
              << "  residual " << fmt(rep.residuals[k], 3) << '\n';
  std::cout << "gate design: commutes " << (design.verdicts.commutes ? "pass" : "FAIL") << ", eigenphases "
            << (design.verdicts.eigenphases ? "pass" : "FAIL") << '\n'
            << (rep.transfers ? "perfect state transfer" : "no perfect state transfer") << '\n';
  if (!a.out.empty()) gf::write_file(fs::path(a.out) / "pst.json", gf::to_json(rep, design), a.force);
  return rep.transfers ? kOk : kNegative;
}

// ---------------------------------------------------------------- reduce

struct ReduceArgs {
  GateArgs gate;
  std::string basis = "full_two_local";
};

int run_reduce(const ReduceArgs& a) {
  const auto g = a.gate.resolve();
  if (!g) throw CLI::ValidationError("reduce", "--gate or --gate-file is required");
  if (g->n_qubits() == 0) throw gf::Error("reduce needs a qubit gate");
  const gf::OperatorBasis full = gf::standard_basis(g->n_qubits(), gf::parse_basis_family(a.basis));
  const gf::OperatorBasis reduced = gf::commutant_restrict(full, gf::principal_generator(*g));
  std::cout << "gate: " << g->name() << ", basis: " << a.basis << '\n'
            << "basis size: " << full.size() << '\n'
            << "commutant dimension: " << reduced.size() << '\n';
  for (std::size_t i = 0; i < reduced.size(); ++i) std::cout << "  [" << i << "] " << reduced.describe(i) << '\n';
  return kOk;
}

// ------------------------------------------------------------------ scan

struct ScanArgs {
  GateArgs gate;
  std::string basis = "one_local";
  long nu_max = 5;
};

int run_scan(const ScanArgs& a) {
  const auto g = a.gate.resolve();
  if (!g) throw CLI::ValidationError("scan", "--gate or --gate-file is required");
  const gf::OperatorBasis full = gf::standard_basis(g->n_qubits(), gf::parse_basis_family(a.basis));
  const gf::OperatorBasis reduced = gf::commutant_restrict(full, gf::principal_generator(*g));
  const gf::FeasibilityReport rep = gf::integer_infeasibility_scan(reduced, *g, a.nu_max);
  std::cout << "reduced basis: " << reduced.size() << " elements, " << rep.slots << " slots, "
            << (rep.commuting_route ? "exact linear scan" : "spectral fit scan") << '\n'
            << "assignments scanned: " << rep.assignments_scanned << " (|nu| <= " << rep.nu_max << ")\n"
            << "best residual: " << fmt(rep.best_residual, 3) << '\n';
  for (const auto& ob : rep.obstructions)
    std::cout << "obstruction: " << ob.equation() << (ob.contradicts_integrality() ? "  (no integer solution)" : "") << '\n';
  if (rep.feasible) {
    std::cout << "feasible, witness nu =";
    for (long v : rep.witness_nu) std::cout << ' ' << v;
    std::cout << '\n';
    return kOk;
  }
  std::cout << "infeasible within the scanned box\n";
  return kNegative;
}

// ------------------------------------------------------------------ gate

struct GateExportArgs {
  GateArgs gate;
  std::string out;
  bool force = false;
};

int run_gate(const GateExportArgs& a) {
  const auto g = a.gate.resolve();
  if (!g) throw CLI::ValidationError("gate", "--gate or --gate-file is required");
  std::ostringstream os;
  gf::write_matrix(os, g->matrix());
  if (a.out.empty()) {
    std::cout << os.str();
  } else {
    gf::write_file(a.out, os.str(), a.force);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gateforge: Hamiltonians whose exponential realizes a target gate"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master seed")->envname("GATEFORGE_SEED");
  };

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check the three spectral conditions for a candidate H~");
  verify.gate.add(v);
  v->add_option("--solution", verify.solution, "Solution JSON file");
  v->add_option("--builtin", verify.builtin, "Closed-form solution: fredkin_eq7, toffoli_alt_sm, toffoli_zplus_sm");
  v->add_option("--nu", verify.nu, "Toffoli family labels nu1 nu2 nu3 nu4")->expected(4);
  v->add_option("--eigen-tol", verify.eigen_tol, "Eigenphase tolerance")->check(CLI::PositiveNumber);
  v->add_option("--out", verify.out, "Directory for report.json");
  v->add_flag("--force", verify.force, "Overwrite existing files");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Stochastic gradient training of H(lambda)");
  train.gate.add(t);
  t->add_option("--basis", train.basis, "Basis family")->capture_default_str();
  t->add_flag("--reduce,!--no-reduce", train.reduce, "Restrict to the commutant of H_G (default on)");
  t->add_option("--init", train.init, "zeros | constant:<c> | gaussian:<sigma>")->capture_default_str();
  t->add_option("--eta0", train.eta0, "Initial learning rate")->capture_default_str();
  t->add_option("--gamma", train.gamma, "Momentum")->capture_default_str();
  t->add_option("--alpha", train.alpha, "Learning-rate decay")->capture_default_str();
  t->add_option("--batch-size", train.batch_size, "States per gradient step")->capture_default_str();
  t->add_option("--states-per-epoch", train.states_per_epoch, "Fresh states per epoch")->capture_default_str();
  t->add_option("--epochs", train.epochs, "Maximum epochs")->capture_default_str();
  t->add_option("--target-fidelity", train.target, "Stop once the average gate fidelity reaches this");
  t->add_option("--restarts", train.restarts, "Independent runs")->check(CLI::PositiveNumber)->capture_default_str();
  t->add_option("--jobs", train.jobs, "Concurrent runs")->check(CLI::PositiveNumber)->capture_default_str();
  t->add_option("--stagnation-window", train.stagnation, "Epochs without progress before stopping; 0 disables")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  t->add_option("--out", train.out, "Output directory")->capture_default_str();
  t->add_flag("--force", train.force, "Overwrite existing files");
  add_seed(t);

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Fidelity along parameter grids around a solution");
  sweep.gate.add(s);
  s->add_option("--solution", sweep.solution, "Solution JSON file")->required();
  s->add_option("--mode", sweep.mode, "global | single (default: all three standard grids)")
      ->check(CLI::IsMember({"global", "single"}));
  s->add_option("--range", sweep.range, "lo:hi");
  s->add_option("--index", sweep.index, "Parameter index for single mode")->capture_default_str();
  s->add_option("--points", sweep.points, "Grid points")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--states", sweep.states, "Random test states")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--out", sweep.out, "Output directory")->capture_default_str();
  s->add_flag("--force", sweep.force, "Overwrite existing files");
  add_seed(s);

  PstArgs pst;
  auto* p = app.add_subcommand("pst", "Perfect state transfer check for a walk chain");
  p->add_option("--chain", pst.chain, "Chain JSON {N, J, B}");
  p->add_option("--krawtchouk", pst.krawtchouk, "Use J_k = sqrt(k(N-k)) on N sites");
  p->add_option("--uniform", pst.uniform, "Use a uniform chain on N sites");
  p->add_option("--time", pst.time, "Evolution time (default pi/2)");
  p->add_option("--scan", pst.scan, "Scan times lo:hi instead of a single time");
  p->add_option("--scan-points", pst.scan_points, "Grid points for --scan")->check(CLI::PositiveNumber);
  p->add_option("--out", pst.out, "Directory for pst.json");
  p->add_flag("--force", pst.force, "Overwrite existing files");

  ReduceArgs reduce;
  auto* r = app.add_subcommand("reduce", "Commutant of H_G inside a basis family");
  reduce.gate.add(r);
  r->add_option("--basis", reduce.basis, "Basis family")->capture_default_str();

  ScanArgs scan;
  auto* sc = app.add_subcommand("scan", "Bounded integer search for the eigenphase condition");
  scan.gate.add(sc);
  sc->add_option("--basis", scan.basis, "Basis family")->capture_default_str();
  sc->add_option("--nu-max", scan.nu_max, "Largest |nu|")->check(CLI::PositiveNumber)->capture_default_str();

  GateExportArgs gate_export;
  auto* ge = app.add_subcommand("gate", "Print a gate in the matrix file format");
  gate_export.gate.add(ge);
  ge->add_option("--out", gate_export.out, "Write to a file instead of stdout");
  ge->add_flag("--force", gate_export.force, "Overwrite existing files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (v->parsed()) return run_verify(verify);
    if (t->parsed()) {
      train.seed = seed;
      return run_train(train);
    }
    if (s->parsed()) {
      sweep.seed = seed;
      return run_sweep(sweep);
    }
    if (p->parsed()) return run_pst(pst);
    if (r->parsed()) return run_reduce(reduce);
    if (sc->parsed()) return run_scan(scan);
    if (ge->parsed()) return run_gate(gate_export);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
