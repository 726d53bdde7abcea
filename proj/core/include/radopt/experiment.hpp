#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radopt/config.hpp"
#include "radopt/dqn.hpp"
#include "radopt/hamiltonian.hpp"
#include "radopt/objective.hpp"
#include "radopt/optimizer.hpp"

namespace radopt {

/// A referenced component name (algorithm, objective, kind) that does not
/// resolve to anything registered.
class UnknownComponentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output directory or file cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  DeterministicObjective,
  StochasticObjective,
  CartPole,
  HamiltonianDiagnostics,
};

ExperimentKind experiment_kind_from_name(const std::string& name);
std::string experiment_kind_name(ExperimentKind kind);

struct OptimizerSpec {
  std::string label;
  OptimizerConfig config;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::DeterministicObjective;
  std::string name = "experiment";
  std::vector<std::uint64_t> seeds;
  std::int64_t budget = 1000;
  std::string out_dir = ".";
  std::int64_t log_every = 1;
  std::vector<OptimizerSpec> optimizers;

  // objective experiments
  std::string objective_type = "quadratic";
  std::size_t dim = 2;
  double condition = 1.0;
  double noise_std = 0.0;
  std::int64_t batch = 1;
  std::string batch_schedule = "constant";
  double init_scale = 1.0;

  // cartpole experiments
  DqnConfig dqn;

  // hamiltonian diagnostics
  KineticKind kinetic = KineticKind::Classical;
  double mass = 1.0;
  double light_speed = 1.0;
  double damping = 0.1;
  double step_size = 0.01;

  /// Builds from parsed config text; throws UnknownComponentError for
  /// unresolvable names and std::runtime_error for other defects.
  static ExperimentConfig from_config(const Config& cfg);
};

/// Parses one [optimizer ...] section. `default_horizon` seeds the annealed
/// zeta schedule's N when the section does not pin one.
OptimizerSpec parse_optimizer_section(const ConfigSection& section,
                                      std::int64_t default_horizon);

struct SummaryRow {
  std::string optimizer;
  std::int64_t seed = 0;  // -1 for aggregate rows
  bool aggregate = false;
  std::string metric;
  double value = 0.0;   // metric value; mean over non-DIV seeds for aggregates
  double stddev = 0.0;  // sample standard deviation (aggregates only)
  double aux = 0.0;     // convergence slope / stability metric, kind-dependent
  std::int64_t div = 0; // DIV flag per seed; DIV count for aggregates
};

struct SummaryReport {
  std::string experiment;
  std::string kind;
  std::vector<SummaryRow> rows;

  std::vector<SummaryRow> aggregates() const;
  std::vector<SummaryRow> seed_rows(const std::string& optimizer) const;

  std::string to_csv() const;
  void write_csv(const std::string& path) const;
  static SummaryReport read_csv(const std::string& path);
};

/// Runs every (optimizer, seed) pair, writes one trace CSV per pair plus a
/// summary CSV, and returns the summary. `parallel` > 1 runs pairs on that
/// many threads; runs share nothing, so results are identical either way.
SummaryReport run_experiment(const ExperimentConfig& cfg, int parallel = 1);

/// Trace filename for one run: <experiment>_<optimizer>_<seed>.csv.
std::string trace_filename(const std::string& experiment, const std::string& optimizer,
                           std::uint64_t seed);

struct CompareReport {
  std::string metric;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double relative_improvement = 0.0;  // (mean_a - mean_b) / |mean_b|
  struct PairedDelta {
    std::int64_t seed;
    double delta;  // value_a - value_b
  };
  std::vector<PairedDelta> paired;
};

/// Compares the first aggregate row of each summary (A relative to B).
/// Throws on experiment-kind or metric mismatch.
CompareReport compare_summaries(const SummaryReport& a, const SummaryReport& b);

}  // namespace radopt
