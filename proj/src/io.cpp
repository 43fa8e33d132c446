#include "gateforge/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

namespace gateforge {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

json terms_json(const PauliSum& terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back(t.to_string());
  return out;
}

}  // namespace

int SolutionFile::n_qubits() const {
  for (const auto& element : basis)
    if (!element.empty()) return element.front().n_qubits();
  throw Error("solution has no Pauli terms");
}

OperatorBasis SolutionFile::operator_basis() const { return OperatorBasis(n_qubits(), basis); }

Matrix SolutionFile::hamiltonian() const {
  if (lambda.size() != static_cast<long>(basis.size())) throw Error("solution: lambda and basis lengths differ");
  return operator_basis().combine(lambda);
}

SolutionFile solution_from_terms(std::string gate, const PauliSum& terms) {
  SolutionFile s;
  s.gate = std::move(gate);
  s.basis_family = "closed_form";
  s.lambda.resize(static_cast<long>(terms.size()));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    s.basis.push_back({PauliString(terms[i].factors())});
    s.lambda[static_cast<long>(i)] = terms[i].coefficient();
  }
  return s;
}

SolutionFile solution_from_run(const TrainConfig& cfg, const TrainingRun& run) {
  SolutionFile s;
  s.gate = cfg.gate.name();
  s.basis_family = cfg.basis_override ? "custom" : std::string(to_string(cfg.basis_family));
  s.reduced = cfg.reduce_by_commutant;
  s.basis = run.basis.elements();
  s.lambda = run.lambda_final;
  s.avg_fidelity = run.final_avg_fidelity;
  s.seed = run.seed;
  s.epochs = run.epochs_used;
  return s;
}

std::string to_json(const SolutionFile& s) {
  json j;
  j["gate"] = s.gate;
  j["basis_family"] = s.basis_family;
  j["reduced"] = s.reduced;
  j["basis"] = json::array();
  for (const auto& element : s.basis) j["basis"].push_back(terms_json(element));
  j["lambda"] = std::vector<double>(s.lambda.data(), s.lambda.data() + s.lambda.size());
  j["avg_fidelity"] = s.avg_fidelity ? json(*s.avg_fidelity) : json(nullptr);
  j["seed"] = s.seed;
  j["epochs"] = s.epochs;
  return j.dump(2) + "\n";
}

SolutionFile parse_solution(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("solution file must hold a JSON object");
  SolutionFile s;
  s.gate = j.value("gate", std::string());
  s.basis_family = j.value("basis_family", std::string());
  s.reduced = j.value("reduced", false);
  const auto basis = field<std::vector<std::vector<std::string>>>(j, "basis");
  const auto lambda = field<std::vector<double>>(j, "lambda");
  if (basis.size() != lambda.size()) throw ParseError("basis and lambda lengths differ");
  if (basis.empty()) throw ParseError("empty basis");
  int n = -1;
  for (const auto& element : basis) {
    PauliSum terms;
    for (const auto& text_term : element) {
      try {
        terms.push_back(PauliString::parse(text_term));
      } catch (const Error& e) {
        throw ParseError(e.what());
      }
      if (n < 0) n = terms.back().n_qubits();
      if (terms.back().n_qubits() != n) throw ParseError("Pauli labels of different lengths");
    }
    if (terms.empty()) throw ParseError("empty basis element");
    s.basis.push_back(std::move(terms));
  }
  s.lambda = Eigen::Map<const RealVector>(lambda.data(), static_cast<long>(lambda.size()));
  if (j.contains("avg_fidelity") && j["avg_fidelity"].is_number()) s.avg_fidelity = j["avg_fidelity"].get<double>();
  if (j.contains("seed") && j["seed"].is_number_unsigned()) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("epochs") && j["epochs"].is_number_integer()) s.epochs = j["epochs"].get<long>();
  return s;
}

SolutionFile read_solution(const fs::path& path) { return parse_solution(read_text(path)); }

std::string to_json(const SpectralReport& r) {
  json j;
  json generator = json::array();
  for (const auto& t : pauli_decompose(r.principal_generator, 1e-12)) generator.push_back(t.to_string());
  j["principal_generator"] = generator;
  j["commutant_dimension"] = r.commutant_dimension >= 0 ? json(r.commutant_dimension) : json(nullptr);
  j["eigenvalues"] = r.eigenvalues;
  j["residuals"] = r.residuals;
  j["max_residual"] = r.max_residual;
  j["commutator_norm"] = r.commutator_norm;
  j["physical_residual"] = r.physical_residual;
  j["unitary_distance"] = r.unitary_distance;
  j["verdicts"] = {{"physical", r.verdicts.physical},
                   {"commutes", r.verdicts.commutes},
                   {"eigenphases", r.verdicts.eigenphases},
                   {"passed", r.passed()}};
  return j.dump(2) + "\n";
}

std::string to_json(const PstReport& r, const SpectralReport& design) {
  json j;
  j["transfers"] = r.transfers;
  j["distance"] = r.distance;
  j["global_phase"] = r.global_phase;
  j["energies"] = r.energies;
  j["parities"] = r.parities;
  j["residuals"] = r.residuals;
  j["gate_design"] = json::parse(to_json(design));
  return j.dump(2) + "\n";
}

std::string history_csv(const std::vector<EpochRecord>& history) {
  std::ostringstream os;
  os << "epoch,mean_batch_fidelity,avg_gate_fidelity\n";
  for (const auto& h : history)
    os << h.epoch << ',' << format_double(h.mean_batch_fidelity) << ',' << format_double(h.avg_gate_fidelity) << '\n';
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "grid_value,state_index,fidelity\n";
  for (const auto& r : rows) os << format_double(r.grid_value) << ',' << r.state_index << ',' << format_double(r.fidelity) << '\n';
  return os.str();
}

WalkChain parse_chain(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("chain file must hold a JSON object");
  const long n = field<long>(j, "N");
  const auto couplings = field<std::vector<double>>(j, "J");
  std::vector<double> fields = j.contains("B") ? field<std::vector<double>>(j, "B") : std::vector<double>(static_cast<std::size_t>(std::max(n, 0L)), 0.0);
  if (n < 2) throw ParseError("chain needs N >= 2");
  if (static_cast<long>(couplings.size()) != n - 1) throw ParseError("chain needs N - 1 couplings");
  if (static_cast<long>(fields.size()) != n) throw ParseError("chain needs N fields");
  return WalkChain(Eigen::Map<const RealVector>(couplings.data(), n - 1), Eigen::Map<const RealVector>(fields.data(), n));
}

WalkChain read_chain(const fs::path& path) { return parse_chain(read_text(path)); }

std::string to_json(const WalkChain& c) {
  json j;
  j["N"] = c.length();
  j["J"] = std::vector<double>(c.couplings().data(), c.couplings().data() + c.couplings().size());
  j["B"] = std::vector<double>(c.fields().data(), c.fields().data() + c.fields().size());
  return j.dump(2) + "\n";
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, std::string_view content, bool force) {
  if (fs::exists(path) && !force) throw Error("refusing to overwrite '" + path.string() + "' (use --force)");
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::random_device rd;
  const fs::path tmp = path.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

void prepare_output_dir(const fs::path& dir, const std::vector<std::string>& names, bool force) {
  if (!force)
    for (const auto& name : names)
      if (fs::exists(dir / name)) throw Error("refusing to overwrite '" + (dir / name).string() + "' (use --force)");
  fs::create_directories(dir);
}

}  // namespace gateforge
