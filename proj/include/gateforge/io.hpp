#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gateforge/pauli.hpp"
#include "gateforge/pst.hpp"
#include "gateforge/spectral.hpp"
#include "gateforge/trainer.hpp"
#include "gateforge/types.hpp"

namespace gateforge {

/// Malformed file contents.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Solution file: H~ = sum_i lambda_i * basis_i with each basis element a
/// list of Pauli terms.
struct SolutionFile {
  std::string gate;
  std::string basis_family;
  bool reduced = false;
  std::vector<PauliSum> basis;
  RealVector lambda;
  std::optional<double> avg_fidelity;
  std::uint64_t seed = 0;
  long epochs = 0;

  int n_qubits() const;
  OperatorBasis operator_basis() const;
  Matrix hamiltonian() const;
};

/// One basis element per Pauli term, lambda holding the coefficients.
SolutionFile solution_from_terms(std::string gate, const PauliSum& terms);
SolutionFile solution_from_run(const TrainConfig& cfg, const TrainingRun& run);

std::string to_json(const SolutionFile& s);
SolutionFile parse_solution(std::string_view text);
SolutionFile read_solution(const std::filesystem::path& path);

std::string to_json(const SpectralReport& r);
std::string to_json(const PstReport& r, const SpectralReport& design);

std::string history_csv(const std::vector<EpochRecord>& history);
std::string sweep_csv(const std::vector<SweepRow>& rows);

WalkChain parse_chain(std::string_view text);
WalkChain read_chain(const std::filesystem::path& path);
std::string to_json(const WalkChain& c);

std::string read_text(const std::filesystem::path& path);

/// Writes through a temporary sibling and a rename. Throws Error when the
/// target exists and `force` is false.
void write_file(const std::filesystem::path& path, std::string_view content, bool force);

/// Creates `dir` (and parents). Throws Error if any of `names` already
/// exists inside it and `force` is false.
void prepare_output_dir(const std::filesystem::path& dir, const std::vector<std::string>& names, bool force);

}  // namespace gateforge
