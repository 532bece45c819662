#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mzfisher/correlations.hpp"
#include "mzfisher/estimate.hpp"
#include "mzfisher/fock.hpp"
#include "mzfisher/metrology.hpp"
#include "mzfisher/types.hpp"

namespace mzfisher {

using Json = nlohmann::json;

/// Input document failed schema or invariant checks. Carries every violation
/// found, not just the first.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// "%.12g" formatting used for all CSV and scalar output.
std::string format_significant(double value);

/// n_max with (n+1)(n+2)/2 == dim, or -1 if dim is not of that form.
int n_max_from_dim(int dim);

/// "line L, column C" for a byte offset into a JSON document.
std::string describe_json_location(const std::string& text, size_t byte_offset);

// --- state / operator documents -------------------------------------------
// {"kind": "pure_state"|"mixed_state"|"operator", "n_max": int,
//  "entries": [[re, im], ...]}  (row-major for matrices; operators carry an
//  optional "hermitian" flag)

Json to_json(const PureState& state);
Json to_json(const MixedState& state);
Json to_json(const Operator& op);

PureState pure_state_from_json(const Json& doc, double check_tol = tol::construction);
MixedState mixed_state_from_json(const Json& doc, double check_tol = tol::construction);
Operator operator_from_json(const Json& doc, double check_tol = tol::construction);

using StateDocument = std::variant<PureState, MixedState>;
StateDocument state_from_json(const Json& doc, double check_tol = tol::construction);
MixedState as_mixed(const StateDocument& state);

/// Generator specifications accepted by the CLI: a named operator ("jx",
/// "jy", "jz", "number_a", "number_b", "number_total", "balanced"), an object
/// {"alpha": ...} meaning the Mach-Zehnder generator for that splitter, or a
/// full operator document.
struct GeneratorSpec {
  Operator op;
  std::string tag;
};
GeneratorSpec generator_from_json(const FockSpace& space, const Json& doc);

/// Beam-splitter parameter: a real number or [re, im].
Complex complex_from_json(const Json& value, const std::string& field,
                          std::vector<std::string>& violations);

// --- reports ----------------------------------------------------------------

Json to_json(const FisherReport& report);
Json to_json(const WitnessReport& report);
Json estimation_run_to_json(const EstimationRun& run);

// --- experiment configs ------------------------------------------------------
// {"input_state": <state doc or {"named": ...}>, "alpha": <complex>,
//  "theta_true": number, "shots_per_run": int, "runs": int, "seed": int,
//  "n_max": int (optional), "grid": {"theta_min","theta_max","points"}}

struct ParsedExperiment {
  FockSpace space;
  ExperimentConfig config;
};

ParsedExperiment experiment_from_json(const Json& doc, int default_n_max);
Json experiment_to_json(const FockSpace& space, const ExperimentConfig& config);

// --- CSV ---------------------------------------------------------------------

struct SweepRow {
  int max_photons = 0;
  double nbar = 0.0;
  double fisher_closed = 0.0;
  double fisher_numeric = 0.0;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_estimates_csv(std::ostream& out, const std::vector<double>& estimates);

}  // namespace mzfisher
