#include "mzfisher/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "mzfisher/optimal.hpp"

namespace mzfisher {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out << "; ";
    out << parts[i];
  }
  return out.str();
}

/// Collects violations so a document is checked in full before rejection.
struct Checker {
  std::vector<std::string> violations;

  bool check(bool ok, const std::string& message) {
    if (!ok) violations.push_back(message);
    return ok;
  }

  void reject_unknown_keys(const Json& doc, const std::set<std::string>& known,
                           const std::string& context) {
    for (const auto& [key, value] : doc.items())
      if (!known.count(key)) violations.push_back(context + ": unknown key '" + key + "'");
  }

  void finish() const {
    if (!violations.empty()) throw ValidationError(violations);
  }
};

bool parse_entry_pairs(const Json& entries, size_t expected, Vector& out, Checker& check,
                       const std::string& context) {
  if (!check.check(entries.is_array(), context + ": 'entries' must be an array")) return false;
  if (!check.check(entries.size() == expected,
                   context + ": expected " + std::to_string(expected) + " entries, got " +
                       std::to_string(entries.size())))
    return false;
  out.resize(static_cast<Eigen::Index>(expected));
  for (size_t i = 0; i < expected; ++i) {
    const Json& pair = entries[i];
    if (!check.check(pair.is_array() && pair.size() == 2 && pair[0].is_number() &&
                         pair[1].is_number(),
                     context + ": entry " + std::to_string(i) + " must be [re, im]"))
      return false;
    out[static_cast<Eigen::Index>(i)] =
        Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return true;
}

Json entries_to_json(const Vector& values) {
  Json entries = Json::array();
  for (int i = 0; i < values.size(); ++i)
    entries.push_back(Json::array({values[i].real(), values[i].imag()}));
  return entries;
}

Json matrix_entries_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return entries;
}

int parse_header(const Json& doc, const std::string& expected_kind, Checker& check) {
  if (!check.check(doc.is_object(), expected_kind + ": document must be a JSON object")) {
    check.finish();
    return -1;
  }
  check.check(doc.contains("kind") && doc["kind"].is_string() &&
                  doc["kind"].get<std::string>() == expected_kind,
              expected_kind + ": 'kind' must be \"" + expected_kind + "\"");
  int n_max = -1;
  if (check.check(doc.contains("n_max") && doc["n_max"].is_number_integer() &&
                      doc["n_max"].get<int>() >= 0,
                  expected_kind + ": 'n_max' must be a non-negative integer"))
    n_max = doc["n_max"].get<int>();
  return n_max;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

std::string format_significant(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

int n_max_from_dim(int dim) {
  for (int n = 0; (n + 1) * (n + 2) / 2 <= dim; ++n)
    if ((n + 1) * (n + 2) / 2 == dim) return n;
  return -1;
}

std::string describe_json_location(const std::string& text, size_t byte_offset) {
  size_t line = 1, column = 1;
  for (size_t i = 0; i < byte_offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Json to_json(const PureState& state) {
  return Json{{"kind", "pure_state"},
              {"n_max", n_max_from_dim(state.dim())},
              {"entries", entries_to_json(state.amplitudes())}};
}

Json to_json(const MixedState& state) {
  return Json{{"kind", "mixed_state"},
              {"n_max", n_max_from_dim(state.dim())},
              {"entries", matrix_entries_to_json(state.matrix())}};
}

Json to_json(const Operator& op) {
  return Json{{"kind", "operator"},
              {"n_max", n_max_from_dim(op.dim())},
              {"hermitian", op.hermitian()},
              {"entries", matrix_entries_to_json(op.matrix())}};
}

PureState pure_state_from_json(const Json& doc, double check_tol) {
  Checker check;
  const int n_max = parse_header(doc, "pure_state", check);
  check.reject_unknown_keys(doc, {"kind", "n_max", "entries"}, "pure_state");
  Vector amplitudes;
  if (n_max >= 0 && doc.contains("entries")) {
    const size_t dim = static_cast<size_t>((n_max + 1) * (n_max + 2) / 2);
    if (parse_entry_pairs(doc["entries"], dim, amplitudes, check, "pure_state")) {
      const double norm = amplitudes.norm();
      check.check(std::abs(norm - 1.0) <= check_tol,
                  "pure_state: amplitudes must be normalized (norm = " +
                      format_significant(norm) + ", invariant |norm - 1| <= tolerance)");
    }
  } else {
    check.check(doc.contains("entries"), "pure_state: missing 'entries'");
  }
  check.finish();
  return PureState(std::move(amplitudes), FockSpace(n_max).tag(), check_tol);
}

namespace {

Matrix square_matrix_from_entries(const Json& doc, int n_max, Checker& check,
                                  const std::string& context) {
  Matrix m;
  if (n_max < 0 || !doc.contains("entries")) {
    check.check(doc.contains("entries"), context + ": missing 'entries'");
    return m;
  }
  const int dim = (n_max + 1) * (n_max + 2) / 2;
  Vector flat;
  if (parse_entry_pairs(doc["entries"], static_cast<size_t>(dim) * static_cast<size_t>(dim), flat,
                        check, context)) {
    m.resize(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = flat[r * dim + c];
  }
  return m;
}

}  // namespace

MixedState mixed_state_from_json(const Json& doc, double check_tol) {
  Checker check;
  const int n_max = parse_header(doc, "mixed_state", check);
  check.reject_unknown_keys(doc, {"kind", "n_max", "entries"}, "mixed_state");
  Matrix m = square_matrix_from_entries(doc, n_max, check, "mixed_state");
  if (m.size() > 0) {
    check.check((m - m.adjoint()).cwiseAbs().maxCoeff() <= check_tol,
                "mixed_state: matrix must be Hermitian within tolerance");
    check.check(std::abs(m.trace() - Complex(1.0, 0.0)) <= tol::spectral,
                "mixed_state: trace must be 1 within 1e-10");
  }
  check.finish();
  return MixedState(std::move(m), FockSpace(n_max).tag(), check_tol);
}

Operator operator_from_json(const Json& doc, double check_tol) {
  Checker check;
  const int n_max = parse_header(doc, "operator", check);
  check.reject_unknown_keys(doc, {"kind", "n_max", "hermitian", "entries"}, "operator");
  bool hermitian = false;
  if (doc.contains("hermitian")) {
    if (check.check(doc["hermitian"].is_boolean(), "operator: 'hermitian' must be a boolean"))
      hermitian = doc["hermitian"].get<bool>();
  }
  Matrix m = square_matrix_from_entries(doc, n_max, check, "operator");
  check.finish();
  return Operator(std::move(m), FockSpace(n_max).tag(), hermitian, check_tol);
}

StateDocument state_from_json(const Json& doc, double check_tol) {
  if (doc.is_object() && doc.contains("kind") && doc["kind"].is_string() &&
      doc["kind"].get<std::string>() == "mixed_state")
    return mixed_state_from_json(doc, check_tol);
  return pure_state_from_json(doc, check_tol);
}

MixedState as_mixed(const StateDocument& state) {
  if (std::holds_alternative<MixedState>(state)) return std::get<MixedState>(state);
  return MixedState::projector(std::get<PureState>(state));
}

Complex complex_from_json(const Json& value, const std::string& field,
                          std::vector<std::string>& violations) {
  if (value.is_number()) return Complex(value.get<double>(), 0.0);
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number())
    return Complex(value[0].get<double>(), value[1].get<double>());
  violations.push_back(field + ": must be a number or [re, im]");
  return Complex(0.0, 0.0);
}

GeneratorSpec generator_from_json(const FockSpace& space, const Json& doc) {
  if (doc.is_string()) {
    const std::string name = doc.get<std::string>();
    auto [jx, jy, jz] = schwinger(space);
    auto [na, nb, total] = number_ops(space);
    if (name == "jx") return {jx, "jx"};
    if (name == "jy") return {jy, "jy"};
    if (name == "jz") return {jz, "jz"};
    if (name == "number_a") return {na, "number_a"};
    if (name == "number_b") return {nb, "number_b"};
    if (name == "number_total") return {total, "number_total"};
    if (name == "balanced")
      return {extract_generator(space, BeamSplitterParam::balanced()), "mz_generator(alpha=pi/4)"};
    throw ValidationError({"generator: unknown name '" + name +
                           "' (expected jx, jy, jz, number_a, number_b, number_total, balanced)"});
  }
  if (doc.is_object() && doc.contains("alpha")) {
    Checker check;
    check.reject_unknown_keys(doc, {"alpha"}, "generator");
    const Complex alpha = complex_from_json(doc["alpha"], "generator.alpha", check.violations);
    check.finish();
    return {extract_generator(space, {alpha}),
            "mz_generator(alpha=" + format_significant(alpha.real()) + "+" +
                format_significant(alpha.imag()) + "i)"};
  }
  Operator op = operator_from_json(doc);
  require_same_space(space.tag(), op.space_tag());
  return {std::move(op), "custom_operator"};
}

Json to_json(const FisherReport& report) {
  Json doc{{"qfi", report.qfi}, {"generator", report.generator_tag}};
  doc["cfi"] = report.cfi ? Json(*report.cfi) : Json(nullptr);
  doc["bound"] = std::isfinite(report.bound) ? Json(report.bound) : Json(nullptr);
  return doc;
}

Json to_json(const WitnessReport& report) {
  return Json{{"max_correlator", report.max_correlator},
              {"flag", report.factorizing ? "factorizing" : "correlated"},
              {"trials", report.trials},
              {"degree_cap", report.degree_cap},
              {"seed", report.seed},
              {"worst_pair", report.worst_pair}};
}

Json estimation_run_to_json(const EstimationRun& run) {
  Json doc;
  doc["estimates"] = run.estimates;
  doc["empirical_mse"] = run.empirical_mse;
  doc["bias"] = run.bias;
  doc["qfi"] = run.qfi;
  doc["cfi"] = run.cfi;
  doc["crb_quantum"] = std::isfinite(run.crb_quantum) ? Json(run.crb_quantum) : Json(nullptr);
  doc["crb_classical"] =
      std::isfinite(run.crb_classical) ? Json(run.crb_classical) : Json(nullptr);
  doc["degenerate_runs"] = run.degenerate_runs;
  doc["degenerate_working_point"] = run.degenerate_working_point;
  return doc;
}

namespace {

PureState named_input_state(const FockSpace& space, const Json& doc, Checker& check) {
  const std::string name = doc["named"].get<std::string>();
  if (name == "single_photon") {
    Vector v = Vector::Zero(space.dim());
    v[space.index_of(1, 0)] = 1.0;
    return PureState(std::move(v), space.tag());
  }
  if (name == "noon") {
    const int total = doc.value("N", 2);
    const double chi = doc.value("chi", 0.0);
    return noon_state(space, total, chi, ModePicture::Ab);
  }
  if (name == "on") {
    const int max_photons = doc.value("K", 2);
    const double nbar = doc.value("nbar", max_photons / 2.0);
    const double chi = doc.value("chi", 0.0);
    return on_state(space, max_photons, nbar, chi);
  }
  check.violations.push_back("input_state.named: unknown name '" + name +
                             "' (expected single_photon, noon, on)");
  check.finish();
  throw std::logic_error("unreachable");
}

int named_state_minimum_n_max(const Json& doc) {
  const std::string name = doc.value("named", "");
  if (name == "noon") return doc.value("N", 2);
  if (name == "on") return doc.value("K", 2);
  return 1;
}

}  // namespace

ParsedExperiment experiment_from_json(const Json& doc, int default_n_max) {
  Checker check;
  check.check(doc.is_object(), "experiment: document must be a JSON object");
  check.finish();
  check.reject_unknown_keys(doc,
                            {"input_state", "alpha", "theta_true", "shots_per_run", "runs",
                             "seed", "n_max", "grid"},
                            "experiment");

  Json state_doc = doc.value("input_state", Json{{"named", "single_photon"}});
  const bool named = state_doc.is_object() && state_doc.contains("named");
  int n_max = default_n_max;
  if (doc.contains("n_max")) {
    if (check.check(doc["n_max"].is_number_integer() && doc["n_max"].get<int>() >= 0,
                    "experiment: 'n_max' must be a non-negative integer"))
      n_max = doc["n_max"].get<int>();
  } else if (!named && state_doc.is_object() && state_doc.contains("n_max") &&
             state_doc["n_max"].is_number_integer()) {
    n_max = state_doc["n_max"].get<int>();
  } else if (named) {
    n_max = std::max(n_max, named_state_minimum_n_max(state_doc));
  }

  BeamSplitterParam bs = BeamSplitterParam::balanced();
  if (doc.contains("alpha"))
    bs.alpha = complex_from_json(doc["alpha"], "experiment.alpha", check.violations);

  const double theta_true = doc.value("theta_true", 0.7);
  const int shots = doc.value("shots_per_run", 1000);
  const int runs = doc.value("runs", 50);
  const std::uint64_t seed = doc.value("seed", 0ull);
  check.check(shots >= 1, "experiment: shots_per_run must be >= 1");
  check.check(runs >= 1, "experiment: runs must be >= 1");

  ThetaGrid grid = ExperimentConfig::default_grid(theta_true);
  if (doc.contains("grid")) {
    const Json& grid_doc = doc["grid"];
    if (check.check(grid_doc.is_object(), "experiment.grid: must be an object")) {
      check.reject_unknown_keys(grid_doc, {"theta_min", "theta_max", "points"}, "experiment.grid");
      grid.theta_min = grid_doc.value("theta_min", grid.theta_min);
      grid.theta_max = grid_doc.value("theta_max", grid.theta_max);
      grid.points = grid_doc.value("points", grid.points);
      check.check(grid.points >= 3, "experiment.grid: points must be >= 3");
      check.check(grid.theta_min < grid.theta_max, "experiment.grid: empty interval");
      check.check(theta_true >= grid.theta_min && theta_true <= grid.theta_max,
                  "experiment: theta_true must lie inside the grid");
    }
  }
  check.finish();

  FockSpace space(n_max);
  PureState input = named ? named_input_state(space, state_doc, check)
                          : pure_state_from_json(state_doc);
  require_same_space(space.tag(), input.space_tag());

  ExperimentConfig config{std::move(input), bs, theta_true, shots, runs, seed, grid};
  validate_config(space, config);
  return {std::move(space), std::move(config)};
}

Json experiment_to_json(const FockSpace& space, const ExperimentConfig& config) {
  Json doc;
  doc["n_max"] = space.n_max();
  doc["input_state"] = to_json(config.input_state);
  doc["alpha"] = Json::array({config.bs.alpha.real(), config.bs.alpha.imag()});
  doc["theta_true"] = config.theta_true;
  doc["shots_per_run"] = config.shots_per_run;
  doc["runs"] = config.runs;
  doc["seed"] = config.seed;
  doc["grid"] = Json{{"theta_min", config.grid.theta_min},
                     {"theta_max", config.grid.theta_max},
                     {"points", config.grid.points}};
  return doc;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "K,nbar,F_closed,F_numeric\n";
  for (const auto& row : rows)
    out << row.max_photons << ',' << format_significant(row.nbar) << ','
        << format_significant(row.fisher_closed) << ','
        << format_significant(row.fisher_numeric) << '\n';
}

void write_estimates_csv(std::ostream& out, const std::vector<double>& estimates) {
  out << "run,estimate\n";
  for (size_t i = 0; i < estimates.size(); ++i)
    out << i << ',' << format_significant(estimates[i]) << '\n';
}

}  // namespace mzfisher
