// radbench: run optimizer experiments from config files, compare summary
// CSVs, and run the acceptance suite.
//
// Exit codes: 0 success (runs tagged DIV still exit 0 and are reported in the
// summary), 1 acceptance failure or internal error, 2 config parse error,
// 3 unknown component name, 4 unwritable output.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radopt/acceptance.hpp"
#include "radopt/config.hpp"
#include "radopt/experiment.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override,
            const std::string& seeds_override, int parallel) {
  radopt::Config cfg = radopt::parse_config_file(config_path);
  radopt::ExperimentConfig exp = radopt::ExperimentConfig::from_config(cfg);
  if (!out_override.empty()) exp.out_dir = out_override;
  if (!seeds_override.empty()) exp.seeds = radopt::parse_seed_list(seeds_override);

  const radopt::SummaryReport report = radopt::run_experiment(exp, parallel);

  std::printf("experiment %s (%s): %zu optimizer(s), %zu seed(s)\n",
              report.experiment.c_str(), report.kind.c_str(),
              report.aggregates().size(), exp.seeds.size());
  for (const auto& row : report.aggregates()) {
    std::printf("  %-16s %s = %.6g (stddev %.3g, aux %.4g, DIV %lld/%zu)\n",
                row.optimizer.c_str(), row.metric.c_str(), row.value, row.stddev,
                row.aux, static_cast<long long>(row.div), exp.seeds.size());
  }
  std::printf("wrote traces and %s_summary.csv to %s\n", exp.name.c_str(),
              exp.out_dir.c_str());
  return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b) {
  const radopt::SummaryReport a = radopt::SummaryReport::read_csv(path_a);
  const radopt::SummaryReport b = radopt::SummaryReport::read_csv(path_b);
  const radopt::CompareReport cmp = radopt::compare_summaries(a, b);

  std::printf("metric: %s\n", cmp.metric.c_str());
  std::printf("A mean %.6g, B mean %.6g, relative improvement %+.4f\n", cmp.mean_a,
              cmp.mean_b, cmp.relative_improvement);
  for (const auto& d : cmp.paired) {
    std::printf("  seed %lld: delta %+.6g\n", static_cast<long long>(d.seed), d.delta);
  }
  return 0;
}

int cmd_accept(int parallel, const std::vector<int>& only, const std::string& out) {
  radopt::AcceptanceOptions opts;
  opts.parallel = parallel;
  opts.only = only;
  if (!out.empty()) opts.work_dir = out;
  const auto results = radopt::run_acceptance(opts);
  return radopt::report_acceptance(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conformal-symplectic optimizer benchmark driver"};
  app.require_subcommand(1);

  std::string config_path, out_dir, seeds;
  int parallel = 1;

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides config)");
  run->add_option("--seeds", seeds, "comma-separated seed list (overrides config)");
  run->add_option("--parallel", parallel, "worker thread count");

  std::string cmp_a, cmp_b;
  auto* compare = app.add_subcommand("compare", "compare two summary CSVs (A vs B)");
  compare->add_option("summary_a", cmp_a, "summary CSV A")->required();
  compare->add_option("summary_b", cmp_b, "summary CSV B")->required();

  std::vector<int> only;
  int accept_parallel = 10;
  std::string accept_out;
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->add_option("--only", only, "criterion ids to run (default: all)");
  accept->add_option("--parallel", accept_parallel, "threads for multi-seed criteria");
  accept->add_option("--out", accept_out, "scratch directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, seeds, parallel);
    if (compare->parsed()) return cmd_compare(cmp_a, cmp_b);
    return cmd_accept(accept_parallel, only, accept_out);
  } catch (const radopt::ConfigParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const radopt::UnknownComponentError& e) {
    std::fprintf(stderr, "unknown component: %s\n", e.what());
    return 3;
  } catch (const radopt::OutputError& e) {
    std::fprintf(stderr, "output error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
