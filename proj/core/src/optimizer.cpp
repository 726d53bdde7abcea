#include "radopt/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace radopt {

Algo algo_from_name(const std::string& name) {
  if (name == "SGD") return Algo::SGD;
  if (name == "HB") return Algo::HB;
  if (name == "NAG") return Algo::NAG;
  if (name == "DLPF") return Algo::DLPF;
  if (name == "RGD") return Algo::RGD;
  if (name == "RAD1_ORIGINAL") return Algo::RAD1_ORIGINAL;
  if (name == "RAD1") return Algo::RAD1;
  if (name == "RAD2") return Algo::RAD2;
  if (name == "ADAM") return Algo::ADAM;
  if (name == "ADAM_ORIGINAL") return Algo::ADAM_ORIGINAL;
  throw std::invalid_argument("unknown optimizer algorithm '" + name + "'");
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::SGD: return "SGD";
    case Algo::HB: return "HB";
    case Algo::NAG: return "NAG";
    case Algo::DLPF: return "DLPF";
    case Algo::RGD: return "RGD";
    case Algo::RAD1_ORIGINAL: return "RAD1_ORIGINAL";
    case Algo::RAD1: return "RAD1";
    case Algo::RAD2: return "RAD2";
    case Algo::ADAM: return "ADAM";
    case Algo::ADAM_ORIGINAL: return "ADAM_ORIGINAL";
  }
  throw std::invalid_argument("unknown algorithm tag");
}

ZetaSchedule ZetaSchedule::constant(double eps) {
  if (eps <= 0.0) throw std::invalid_argument("constant zeta must be positive");
  ZetaSchedule s;
  s.kind = Kind::Constant;
  s.eps = eps;
  return s;
}

ZetaSchedule ZetaSchedule::annealed(double kappa, std::int64_t horizon) {
  if (kappa <= 0.0) throw std::invalid_argument("annealed zeta requires kappa > 0");
  if (horizon <= 0) throw std::invalid_argument("annealed zeta requires horizon > 0");
  ZetaSchedule s;
  s.kind = Kind::Annealed;
  s.kappa = kappa;
  s.horizon = horizon;
  return s;
}

double ZetaSchedule::value(std::int64_t k, double beta2) const {
  if (k < 0) throw std::invalid_argument("zeta: step must be nonnegative");
  if (kind == Kind::Constant) return eps;
  const double ramp = std::exp(kappa * (static_cast<double>(k) / horizon - 1.0));
  const double ceiling = 1.0 - std::pow(beta2, static_cast<double>(k + 1));
  return std::min(ramp, ceiling);
}

std::int64_t ZetaSchedule::switch_step(double beta2) const {
  if (kind == Kind::Constant) return 0;
  for (std::int64_t k = 0; k <= horizon; ++k) {
    const double ramp = std::exp(kappa * (static_cast<double>(k) / horizon - 1.0));
    const double ceiling = 1.0 - std::pow(beta2, static_cast<double>(k + 1));
    if (ramp >= ceiling) return k;
  }
  return horizon;
}

void OptimizerConfig::validate() const {
  if (alpha <= 0.0) throw std::invalid_argument("learning rate must be positive");
  if (beta1 < 0.0 || beta1 >= 1.0) throw std::invalid_argument("beta1 must be in [0,1)");
  if (beta2 <= 0.0 || beta2 >= 1.0) throw std::invalid_argument("beta2 must be in (0,1)");
  if (delta <= 0.0) throw std::invalid_argument("speed coefficient must be positive");
  if (eps <= 0.0) throw std::invalid_argument("rational factor must be positive");
}

OptState OptState::init(Vec theta0) {
  OptState s;
  s.v = zeros(theta0.size());
  s.y = zeros(theta0.size());
  s.theta = std::move(theta0);
  s.k = 0;
  return s;
}

OptState step(const OptimizerConfig& cfg, const OptState& state, const Vec& grad) {
  const std::size_t n = state.theta.size();
  if (grad.size() != n) throw std::invalid_argument("gradient length mismatch");
  if (!all_finite(grad)) throw std::domain_error("non-finite gradient");

  const double a = cfg.alpha;
  const double b1 = cfg.beta1;
  const double b2 = cfg.beta2;
  const double d = cfg.delta;
  const std::int64_t k = state.k;

  OptState out = state;
  out.k = k + 1;
  Vec& th = out.theta;
  Vec& v = out.v;
  Vec& y = out.y;

  switch (cfg.algo) {
    case Algo::SGD:
      for (std::size_t i = 0; i < n; ++i) th[i] -= a * grad[i];
      break;

    case Algo::HB:
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        th[i] -= a * v[i];
      }
      break;

    case Algo::NAG:
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        th[i] -= a * 0.5 * (b1 * v[i] + (1.0 - b1) * grad[i]);
      }
      break;

    case Algo::DLPF:
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        th[i] -= a * 0.5 * (b1 + 1.0) * v[i];
      }
      break;

    case Algo::RGD: {
      double nrm2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        nrm2 += v[i] * v[i];
      }
      const double ak = a / std::sqrt(d * d * nrm2 + 1.0);
      for (std::size_t i = 0; i < n; ++i) th[i] -= ak * v[i];
      break;
    }

    case Algo::RAD1_ORIGINAL:
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        th[i] -= a * v[i] / std::sqrt(d * d * v[i] * v[i] + 1.0);
      }
      break;

    case Algo::RAD1: {
      const double bias1 = 1.0 - std::pow(b1, static_cast<double>(k + 1));
      const double bias2 = 1.0 - std::pow(b2, static_cast<double>(k + 1));
      const double zk = cfg.zeta_schedule.value(k, b2);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        y[i] = b2 * y[i] + (1.0 - b2) * grad[i] * grad[i];
        const double gk = v[i] / bias1;
        const double ak = a * std::sqrt(bias2) / std::sqrt(d * d * y[i] + zk);
        th[i] -= ak * gk;
      }
      break;
    }

    case Algo::RAD2:
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        const double dv2 = d * d * v[i] * v[i];
        th[i] -= 0.5 * a * v[i] *
                 (1.0 / std::sqrt(dv2 + 1.0) + 1.0 / std::sqrt(dv2 + 1.0 / (b1 * b1)));
      }
      break;

    case Algo::ADAM: {
      // RAD1 with delta = 1 and constant zeta = eps (eps inside the root).
      const double bias1 = 1.0 - std::pow(b1, static_cast<double>(k + 1));
      const double bias2 = 1.0 - std::pow(b2, static_cast<double>(k + 1));
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        y[i] = b2 * y[i] + (1.0 - b2) * grad[i] * grad[i];
        const double gk = v[i] / bias1;
        const double ak = a * std::sqrt(bias2) / std::sqrt(y[i] + cfg.eps);
        th[i] -= ak * gk;
      }
      break;
    }

    case Algo::ADAM_ORIGINAL: {
      // Bias-corrected moments with eps outside the square root.
      const double bias1 = 1.0 - std::pow(b1, static_cast<double>(k + 1));
      const double bias2 = 1.0 - std::pow(b2, static_cast<double>(k + 1));
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = b1 * v[i] + (1.0 - b1) * grad[i];
        y[i] = b2 * y[i] + (1.0 - b2) * grad[i] * grad[i];
        const double vhat = v[i] / bias1;
        const double yhat = y[i] / bias2;
        th[i] -= a * vhat / (std::sqrt(yhat) + cfg.eps);
      }
      break;
    }
  }
  return out;
}

HyperParams physics_to_hyper(const PhysicalParams& phys) {
  if (phys.h <= 0.0 || phys.r <= 0.0 || phys.m <= 0.0 || phys.c <= 0.0) {
    throw std::invalid_argument("physical parameters must be positive");
  }
  const double b1 = std::exp(-phys.r * phys.h);
  HyperParams hp;
  hp.beta1 = b1;
  hp.alpha = phys.h * phys.h / (phys.m * (1.0 - b1));
  hp.delta = phys.h / (phys.c * phys.m * (1.0 - b1));
  return hp;
}

PhysicalParams hyper_to_physics(double alpha, double beta1, double delta) {
  if (alpha <= 0.0 || delta <= 0.0 || beta1 <= 0.0 || beta1 >= 1.0) {
    throw std::invalid_argument("hyperparameters out of range");
  }
  PhysicalParams p;
  p.h = 1.0;
  p.r = -std::log(beta1);
  p.m = 1.0 / (alpha * (1.0 - beta1));
  p.c = alpha / delta;
  return p;
}

Vec momenta_from_v(const Vec& v, double beta1) {
  if (beta1 <= 0.0 || beta1 >= 1.0) throw std::invalid_argument("beta1 must be in (0,1)");
  return scale(v, -1.0 / (1.0 - beta1));
}

ConvergenceReport check_convergence_conditions(const OptimizerConfig& cfg, double L, double M,
                                       double zeta0) {
  if (L <= 0.0 || M <= 0.0) throw std::invalid_argument("L and M must be positive");
  if (zeta0 <= 0.0) throw std::invalid_argument("zeta0 must be positive");
  ConvergenceReport rep;
  rep.alpha_bound = std::sqrt(zeta0) / (2.0 * L);
  rep.alpha_margin = rep.alpha_bound - cfg.alpha;
  rep.alpha_ok = cfg.alpha <= rep.alpha_bound;
  rep.beta2_bound = 1.0 - zeta0 / (16.0 * M * M * cfg.delta * cfg.delta);
  rep.beta2_margin = cfg.beta2 - rep.beta2_bound;
  rep.beta2_ok = cfg.beta2 >= rep.beta2_bound;
  return rep;
}

}  // namespace radopt
