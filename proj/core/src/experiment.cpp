#include "radopt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "radopt/mlp.hpp"
#include "radopt/trace.hpp"

namespace radopt {

namespace fs = std::filesystem;

ExperimentKind experiment_kind_from_name(const std::string& name) {
  if (name == "deterministic-objective") return ExperimentKind::DeterministicObjective;
  if (name == "stochastic-objective") return ExperimentKind::StochasticObjective;
  if (name == "cartpole") return ExperimentKind::CartPole;
  if (name == "hamiltonian-diagnostics") return ExperimentKind::HamiltonianDiagnostics;
  throw UnknownComponentError("unknown experiment kind '" + name + "'");
}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::DeterministicObjective: return "deterministic-objective";
    case ExperimentKind::StochasticObjective: return "stochastic-objective";
    case ExperimentKind::CartPole: return "cartpole";
    case ExperimentKind::HamiltonianDiagnostics: return "hamiltonian-diagnostics";
  }
  throw UnknownComponentError("bad experiment kind");
}

OptimizerSpec parse_optimizer_section(const ConfigSection& section,
                                      std::int64_t default_horizon) {
  OptimizerSpec spec;
  spec.label = section.label.empty() ? section.get("algo") : section.label;
  OptimizerConfig& oc = spec.config;
  try {
    oc.algo = algo_from_name(section.get("algo"));
  } catch (const std::invalid_argument& e) {
    throw UnknownComponentError(e.what());
  }
  oc.alpha = section.get_double_or("alpha", oc.alpha);
  oc.beta1 = section.get_double_or("beta1", oc.beta1);
  oc.beta2 = section.get_double_or("beta2", oc.beta2);
  oc.delta = section.get_double_or("delta", oc.delta);
  oc.eps = section.get_double_or("eps", oc.eps);
  const std::string zeta = section.get_or("zeta", "constant");
  if (zeta == "constant") {
    oc.zeta_schedule = ZetaSchedule::constant(section.get_double_or("zeta_eps", 1e-16));
  } else if (zeta == "annealed") {
    oc.zeta_schedule = ZetaSchedule::annealed(
        section.get_double_or("kappa", 12.0 * 3.14159265358979323846),
        section.get_int_or("zeta_horizon", default_horizon));
  } else {
    throw UnknownComponentError("unknown zeta schedule '" + zeta + "'");
  }
  oc.validate();
  return spec;
}

ExperimentConfig ExperimentConfig::from_config(const Config& cfg) {
  ExperimentConfig ec;
  const ConfigSection* exp = cfg.find("experiment");
  if (!exp) throw std::runtime_error("config is missing the [experiment] section");
  ec.kind = experiment_kind_from_name(exp->get("kind"));
  ec.name = exp->get_or("name", "experiment");
  ec.seeds = parse_seed_list(exp->get("seeds"));
  ec.budget = exp->get_int("budget");
  if (ec.budget <= 0) throw std::runtime_error("budget must be positive");
  ec.out_dir = exp->get_or("out", ".");
  ec.log_every = exp->get_int_or("log_every", 1);
  if (ec.log_every < 1) throw std::runtime_error("log_every must be >= 1");

  for (const ConfigSection* s : cfg.find_all("optimizer")) {
    ec.optimizers.push_back(parse_optimizer_section(*s, ec.budget));
  }

  if (ec.kind == ExperimentKind::DeterministicObjective ||
      ec.kind == ExperimentKind::StochasticObjective) {
    const ConfigSection* obj = cfg.find("objective");
    if (!obj) throw std::runtime_error("objective experiment needs an [objective] section");
    ec.objective_type = obj->get("type");
    if (ec.objective_type != "quadratic" && ec.objective_type != "rosenbrock") {
      throw UnknownComponentError("unknown objective '" + ec.objective_type + "'");
    }
    ec.dim = static_cast<std::size_t>(obj->get_int("dim"));
    ec.condition = obj->get_double_or("condition", 1.0);
    ec.noise_std = obj->get_double_or("noise_std", 0.0);
    ec.batch = obj->get_int_or("batch", 1);
    ec.batch_schedule = obj->get_or("batch_schedule", "constant");
    if (ec.batch_schedule != "constant" && ec.batch_schedule != "linear") {
      throw UnknownComponentError("unknown batch schedule '" + ec.batch_schedule + "'");
    }
    ec.init_scale = obj->get_double_or("init_scale", 1.0);
    if (ec.optimizers.empty()) {
      throw std::runtime_error("objective experiment needs at least one [optimizer] section");
    }
  } else if (ec.kind == ExperimentKind::CartPole) {
    const ConfigSection* env = cfg.find("cartpole");
    DqnConfig& d = ec.dqn;
    if (env) {
      d.gamma = env->get_double_or("gamma", d.gamma);
      d.batch_size = env->get_int_or("batch", d.batch_size);
      d.target_sync_period = env->get_int_or("target_sync", d.target_sync_period);
      d.update_period = env->get_int_or("update_period", d.update_period);
      d.replay_capacity = env->get_int_or("replay_capacity", d.replay_capacity);
      d.warmup_steps = env->get_int_or("warmup", d.warmup_steps);
      d.epsilon_start = env->get_double_or("epsilon_start", d.epsilon_start);
      d.epsilon_floor = env->get_double_or("epsilon_floor", d.epsilon_floor);
      d.epsilon_decay_fraction =
          env->get_double_or("epsilon_decay_fraction", d.epsilon_decay_fraction);
      const std::string loss = env->get_or("loss", "huber");
      if (loss == "huber") {
        d.loss = LossSpec{LossKind::Huber, 1.0};
      } else if (loss == "mse") {
        d.loss = LossSpec{LossKind::Mse, 1.0};
      } else {
        throw UnknownComponentError("unknown loss '" + loss + "'");
      }
      if (env->has("hidden")) {
        d.hidden_layers.clear();
        for (std::uint64_t h : parse_seed_list(env->get("hidden"))) {
          d.hidden_layers.push_back(static_cast<std::size_t>(h));
        }
      }
    }
    if (ec.optimizers.empty()) {
      throw std::runtime_error("cartpole experiment needs at least one [optimizer] section");
    }
  } else {
    const ConfigSection* sys = cfg.find("system");
    if (sys) {
      const std::string kinetic = sys->get_or("kinetic", "classical");
      if (kinetic == "classical") {
        ec.kinetic = KineticKind::Classical;
      } else if (kinetic == "relativistic") {
        ec.kinetic = KineticKind::Relativistic;
      } else {
        throw UnknownComponentError("unknown kinetic energy '" + kinetic + "'");
      }
      ec.mass = sys->get_double_or("m", ec.mass);
      ec.light_speed = sys->get_double_or("c", ec.light_speed);
      ec.damping = sys->get_double_or("r", ec.damping);
      ec.step_size = sys->get_double_or("h", ec.step_size);
    }
  }
  return ec;
}

std::string trace_filename(const std::string& experiment, const std::string& optimizer,
                           std::uint64_t seed) {
  return experiment + "_" + optimizer + "_" + std::to_string(seed) + ".csv";
}

namespace {

bool has_momentum_semantics(Algo algo) { return algo != Algo::SGD; }

struct RunOutput {
  Trace trace{std::vector<std::string>{"placeholder"}};
  double metric = 0.0;
  double aux = 0.0;
  bool div = false;
};

RunOutput run_objective_case(const ExperimentConfig& ec, const OptimizerSpec& opt,
                             std::uint64_t seed) {
  const Objective obj = ec.objective_type == "quadratic"
                            ? make_quadratic(ec.dim, ec.condition)
                            : make_rosenbrock(ec.dim);
  const bool stochastic = ec.kind == ExperimentKind::StochasticObjective;
  std::optional<StochasticObjective> sobj;
  if (stochastic) {
    const auto schedule = ec.batch_schedule == "linear" ? BatchSchedule::linear(ec.batch)
                                                        : BatchSchedule::constant(ec.batch);
    sobj = make_noisy(obj, Vec(ec.dim, ec.noise_std), schedule);
  }

  Rng rng(seed);
  OptState state = OptState::init(rng.gaussian_vec(ec.dim, 0.0, ec.init_scale));

  const bool log_h = has_momentum_semantics(opt.config.algo) && opt.config.beta1 > 0.0;
  std::vector<std::int64_t> steps;
  std::vector<double> j_vals, gns_vals, h_vals, max_steps;
  std::vector<double> gns_full;  // every step, feeds the slope fit
  gns_full.reserve(static_cast<std::size_t>(ec.budget));

  for (std::int64_t k = 0; k < ec.budget; ++k) {
    const Vec g =
        stochastic ? minibatch_grad(*sobj, state.theta, k, rng) : obj.grad(state.theta);
    const Vec prev = state.theta;
    state = step(opt.config, state, g);

    const double j = obj.value(state.theta);
    const Vec true_grad = obj.grad(state.theta);
    const double gns = dot(true_grad, true_grad);
    gns_full.push_back(gns);
    if (k % ec.log_every == 0 || k + 1 == ec.budget) {
      steps.push_back(k);
      j_vals.push_back(j);
      gns_vals.push_back(gns);
      h_vals.push_back(log_h ? network_hamiltonian(state, opt.config, j)
                             : std::numeric_limits<double>::quiet_NaN());
      max_steps.push_back(max_abs(sub(state.theta, prev)));
    }
  }

  double min_h = std::numeric_limits<double>::infinity();
  for (double h : h_vals) {
    if (std::isfinite(h)) min_h = std::min(min_h, h);
  }

  RunOutput out;
  out.trace = Trace({"objective", "grad_norm_sq", "hamiltonian", "delta_h", "max_step"});
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double dh = std::isfinite(h_vals[i]) ? h_vals[i] - min_h
                                               : std::numeric_limits<double>::quiet_NaN();
    out.trace.append(steps[i], {j_vals[i], gns_vals[i], h_vals[i], dh, max_steps[i]});
  }
  // Running-mean slope over the final half of the run.
  double acc = 0.0;
  bool all_zero = true;
  for (double g : gns_full) {
    acc += g;
    if (g > 0.0) all_zero = false;
  }
  out.metric = acc / static_cast<double>(gns_full.size());
  out.aux = all_zero ? 0.0 : convergence_slope(gns_full, gns_full.size() / 2);
  return out;
}

RunOutput run_cartpole_case(const ExperimentConfig& ec, const OptimizerSpec& opt,
                            std::uint64_t seed) {
  DqnConfig dqn = ec.dqn;
  dqn.optimizer = opt.config;
  const DqnResult res = train_dqn(dqn, ec.budget, seed);
  RunOutput out;
  out.trace = res.episode_trace;
  out.metric = res.final_mean_return;
  out.aux = stability_metric(res.hamiltonian_trace, res.zeta_switch_step);
  out.div = res.diverged;
  return out;
}

RunOutput run_hamiltonian_case(const ExperimentConfig& ec, const std::string& integrator,
                               std::uint64_t seed) {
  // Damped oscillator U(q) = 1/2 ||q||^2, dimension 1, seeded initial state.
  HamiltonianSystem sys;
  sys.potential = [](const Vec& q) { return 0.5 * dot(q, q); };
  sys.potential_grad = [](const Vec& q) { return q; };
  sys.kinetic = KineticEnergy{ec.kinetic, ec.mass, ec.light_speed};
  sys.r = ec.damping;

  const IntegratorOrder order =
      integrator == "second_order" ? IntegratorOrder::Second : IntegratorOrder::First;
  Rng rng(seed);
  PhasePoint z{rng.gaussian_vec(1), rng.gaussian_vec(1)};
  const double expected_det = std::exp(-ec.damping * ec.step_size);

  RunOutput out;
  out.trace = Trace({"hamiltonian", "jacobian_det", "det_error"});
  double worst = 0.0;
  for (std::int64_t k = 0; k < ec.budget; ++k) {
    const double det = phase_area_contraction(sys, z, ec.step_size, order);
    const double err = std::fabs(det - expected_det);
    worst = std::max(worst, err);
    if (k % ec.log_every == 0 || k + 1 == ec.budget) {
      out.trace.append(k, {hamiltonian_value(sys, z), det, err});
    }
    z = order == IntegratorOrder::First ? step_first_order(sys, z, ec.step_size)
                                        : step_second_order(sys, z, ec.step_size);
  }
  out.metric = worst;
  out.aux = hamiltonian_value(sys, z);
  return out;
}

std::string metric_name_for(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::DeterministicObjective:
    case ExperimentKind::StochasticObjective:
      return "running_mean_grad_norm_sq";
    case ExperimentKind::CartPole:
      return "final_mean_return";
    case ExperimentKind::HamiltonianDiagnostics:
      return "max_det_error";
  }
  return "metric";
}

}  // namespace

std::vector<SummaryRow> SummaryReport::aggregates() const {
  std::vector<SummaryRow> out;
  for (const auto& r : rows) {
    if (r.aggregate) out.push_back(r);
  }
  return out;
}

std::vector<SummaryRow> SummaryReport::seed_rows(const std::string& optimizer) const {
  std::vector<SummaryRow> out;
  for (const auto& r : rows) {
    if (!r.aggregate && r.optimizer == optimizer) out.push_back(r);
  }
  return out;
}

std::string SummaryReport::to_csv() const {
  std::string out = "experiment,kind,row_type,optimizer,seed,metric,value,stddev,aux,div\n";
  for (const auto& r : rows) {
    out += experiment + ',' + kind + ',' + (r.aggregate ? "aggregate" : "seed") + ',' +
           r.optimizer + ',' + std::to_string(r.seed) + ',' + r.metric + ',' +
           format_double(r.value) + ',' + format_double(r.stddev) + ',' +
           format_double(r.aux) + ',' + std::to_string(r.div) + '\n';
  }
  return out;
}

void SummaryReport::write_csv(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw OutputError("cannot open '" + path + "' for writing");
  f << to_csv();
  if (!f) throw OutputError("write failed for '" + path + "'");
}

SummaryReport SummaryReport::read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open summary '" + path + "'");
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty summary '" + path + "'");
  SummaryReport rep;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 10) throw std::runtime_error("malformed summary row in '" + path + "'");
    rep.experiment = cells[0];
    rep.kind = cells[1];
    SummaryRow row;
    row.aggregate = cells[2] == "aggregate";
    row.optimizer = cells[3];
    row.seed = std::stoll(cells[4]);
    row.metric = cells[5];
    row.value = std::stod(cells[6]);
    row.stddev = std::stod(cells[7]);
    row.aux = std::stod(cells[8]);
    row.div = std::stoll(cells[9]);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

SummaryReport run_experiment(const ExperimentConfig& cfg, int parallel) {
  if (cfg.seeds.empty()) throw std::runtime_error("experiment needs at least one seed");

  std::error_code ec_fs;
  fs::create_directories(cfg.out_dir, ec_fs);
  if (!fs::is_directory(cfg.out_dir)) {
    throw OutputError("cannot create output directory '" + cfg.out_dir + "'");
  }

  // Flatten (optimizer/integrator, seed) into independent cases.
  std::vector<std::string> labels;
  if (cfg.kind == ExperimentKind::HamiltonianDiagnostics) {
    labels = {"first_order", "second_order"};
  } else {
    for (const auto& opt : cfg.optimizers) labels.push_back(opt.label);
  }

  struct Case {
    std::size_t label_idx;
    std::uint64_t seed;
    RunOutput out;
  };
  std::vector<Case> cases;
  for (std::size_t li = 0; li < labels.size(); ++li) {
    for (std::uint64_t seed : cfg.seeds) cases.push_back(Case{li, seed, {}});
  }

  auto run_case = [&](Case& c) {
    switch (cfg.kind) {
      case ExperimentKind::DeterministicObjective:
      case ExperimentKind::StochasticObjective:
        c.out = run_objective_case(cfg, cfg.optimizers[c.label_idx], c.seed);
        break;
      case ExperimentKind::CartPole:
        c.out = run_cartpole_case(cfg, cfg.optimizers[c.label_idx], c.seed);
        break;
      case ExperimentKind::HamiltonianDiagnostics:
        c.out = run_hamiltonian_case(cfg, labels[c.label_idx], c.seed);
        break;
    }
  };

  if (parallel <= 1) {
    for (auto& c : cases) run_case(c);
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mtx;
    for (int t = 0; t < parallel; ++t) {
      pool.emplace_back([&]() {
        while (true) {
          std::size_t idx;
          {
            std::lock_guard<std::mutex> lock(mtx);
            if (next >= cases.size()) return;
            idx = next++;
          }
          run_case(cases[idx]);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  const std::string metric = metric_name_for(cfg.kind);
  SummaryReport report;
  report.experiment = cfg.name;
  report.kind = experiment_kind_name(cfg.kind);

  for (auto& c : cases) {
    const fs::path path =
        fs::path(cfg.out_dir) / trace_filename(cfg.name, labels[c.label_idx], c.seed);
    c.out.trace.write_csv(path.string());
    SummaryRow row;
    row.optimizer = labels[c.label_idx];
    row.seed = static_cast<std::int64_t>(c.seed);
    row.metric = metric;
    row.value = c.out.metric;
    row.aux = c.out.aux;
    row.div = c.out.div ? 1 : 0;
    report.rows.push_back(row);
  }

  // Aggregates over non-DIV seeds; DIV counted separately.
  for (const std::string& label : labels) {
    std::vector<double> values, auxes;
    std::int64_t div_count = 0;
    for (const auto& c : cases) {
      if (labels[c.label_idx] != label) continue;
      if (c.out.div) {
        ++div_count;
        continue;
      }
      values.push_back(c.out.metric);
      auxes.push_back(c.out.aux);
    }
    SummaryRow agg;
    agg.optimizer = label;
    agg.seed = -1;
    agg.aggregate = true;
    agg.metric = metric;
    agg.div = div_count;
    if (!values.empty()) {
      double mean = 0.0, aux_mean = 0.0;
      for (double v : values) mean += v;
      for (double a : auxes) aux_mean += a;
      mean /= static_cast<double>(values.size());
      aux_mean /= static_cast<double>(auxes.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      agg.value = mean;
      agg.aux = aux_mean;
      agg.stddev =
          values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
    }
    report.rows.push_back(agg);
  }

  const fs::path summary_path = fs::path(cfg.out_dir) / (cfg.name + "_summary.csv");
  report.write_csv(summary_path.string());
  return report;
}

CompareReport compare_summaries(const SummaryReport& a, const SummaryReport& b) {
  if (a.kind != b.kind) {
    throw std::runtime_error("cannot compare summaries of different experiment kinds");
  }
  const auto agg_a = a.aggregates();
  const auto agg_b = b.aggregates();
  if (agg_a.empty() || agg_b.empty()) {
    throw std::runtime_error("summary has no aggregate row");
  }
  if (agg_a.front().metric != agg_b.front().metric) {
    throw std::runtime_error("metric mismatch: '" + agg_a.front().metric + "' vs '" +
                             agg_b.front().metric + "'");
  }
  CompareReport rep;
  rep.metric = agg_a.front().metric;
  rep.mean_a = agg_a.front().value;
  rep.mean_b = agg_b.front().value;
  if (rep.mean_b == 0.0) {
    rep.relative_improvement = rep.mean_a == 0.0 ? 0.0
                               : std::numeric_limits<double>::infinity();
  } else {
    rep.relative_improvement = (rep.mean_a - rep.mean_b) / std::fabs(rep.mean_b);
  }
  const auto rows_a = a.seed_rows(agg_a.front().optimizer);
  for (const auto& ra : rows_a) {
    for (const auto& rb : b.seed_rows(agg_b.front().optimizer)) {
      if (rb.seed == ra.seed) {
        rep.paired.push_back({ra.seed, ra.value - rb.value});
        break;
      }
    }
  }
  return rep;
}

}  // namespace radopt
