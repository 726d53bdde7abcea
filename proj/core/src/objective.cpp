#include "radopt/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace radopt {

Objective make_quadratic(std::size_t n, double condition_number) {
  if (n == 0) throw std::invalid_argument("quadratic needs dim >= 1");
  if (condition_number < 1.0) throw std::invalid_argument("condition number must be >= 1");
  Vec eig(n);
  if (n == 1) {
    eig[0] = condition_number;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      eig[i] = std::exp(std::log(condition_number) * static_cast<double>(i) /
                        static_cast<double>(n - 1));
    }
  }
  Objective obj;
  obj.dim = n;
  obj.smoothness = condition_number;
  obj.optimum = zeros(n);
  obj.value = [eig](const Vec& th) {
    double s = 0.0;
    for (std::size_t i = 0; i < eig.size(); ++i) s += 0.5 * eig[i] * th[i] * th[i];
    return s;
  };
  obj.grad = [eig](const Vec& th) {
    Vec g(eig.size());
    for (std::size_t i = 0; i < eig.size(); ++i) g[i] = eig[i] * th[i];
    return g;
  };
  return obj;
}

Objective make_rosenbrock(std::size_t n) {
  if (n < 2) throw std::invalid_argument("rosenbrock needs dim >= 2");
  Objective obj;
  obj.dim = n;
  obj.optimum = Vec(n, 1.0);
  obj.value = [n](const Vec& th) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double a = th[i + 1] - th[i] * th[i];
      const double b = 1.0 - th[i];
      s += 100.0 * a * a + b * b;
    }
    return s;
  };
  obj.grad = [n](const Vec& th) {
    Vec g = zeros(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double a = th[i + 1] - th[i] * th[i];
      g[i] += -400.0 * th[i] * a - 2.0 * (1.0 - th[i]);
      g[i + 1] += 200.0 * a;
    }
    return g;
  };
  return obj;
}

BatchSchedule BatchSchedule::constant(std::int64_t b) {
  if (b < 1) throw std::invalid_argument("batch size must be positive");
  return BatchSchedule{Kind::Constant, b};
}

BatchSchedule BatchSchedule::linear(std::int64_t b) {
  if (b < 1) throw std::invalid_argument("batch size must be positive");
  return BatchSchedule{Kind::Linear, b};
}

std::int64_t BatchSchedule::size_at(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("batch schedule: step must be nonnegative");
  return kind == Kind::Constant ? base : base * (k + 1);
}

StochasticObjective make_noisy(Objective base, Vec sigma, BatchSchedule schedule) {
  if (sigma.size() != base.dim) throw std::invalid_argument("sigma length mismatch");
  for (double s : sigma) {
    if (s < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  }
  StochasticObjective sobj;
  sobj.base = std::move(base);
  sobj.sigma = std::move(sigma);
  sobj.batch_schedule = schedule;
  return sobj;
}

StochasticObjective make_dataset(Objective base,
                                 std::vector<std::function<Vec(const Vec&)>> samples,
                                 BatchSchedule schedule) {
  if (samples.empty()) throw std::invalid_argument("dataset must be nonempty");
  StochasticObjective sobj;
  sobj.base = std::move(base);
  sobj.dataset = std::move(samples);
  sobj.batch_schedule = schedule;
  return sobj;
}

Vec minibatch_grad(const StochasticObjective& sobj, const Vec& theta, std::int64_t k,
                   Rng& rng) {
  const std::int64_t bk = sobj.batch_schedule.size_at(k);
  if (!sobj.dataset.empty()) {
    Vec g = zeros(sobj.base.dim);
    for (std::int64_t j = 0; j < bk; ++j) {
      const auto& sample = sobj.dataset[rng.uniform_int(sobj.dataset.size())];
      const Vec gs = sample(theta);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += gs[i];
    }
    for (double& gi : g) gi /= static_cast<double>(bk);
    return g;
  }
  // Additive noise: the mean of B_k i.i.d. noisy gradients is distributed as
  // grad + N(0, diag(sigma^2) / B_k); draw it directly.
  Vec g = sobj.base.grad(theta);
  const double shrink = 1.0 / std::sqrt(static_cast<double>(bk));
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] += rng.gaussian(0.0, sobj.sigma[i] * shrink);
  }
  return g;
}

SecondMomentReport verify_second_moment_bound(const StochasticObjective& sobj, const Vec& theta,
                           std::int64_t k, std::int64_t trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  const std::size_t n = sobj.base.dim;
  const std::int64_t bk = sobj.batch_schedule.size_at(k);
  const Vec full_grad = sobj.base.grad(theta);

  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
  for (std::int64_t t = 0; t < trials; ++t) {
    const Vec g = minibatch_grad(sobj, theta, k, rng);
    for (std::size_t i = 0; i < n; ++i) {
      const double gi2 = g[i] * g[i];
      sum[i] += gi2;
      sum_sq[i] += gi2 * gi2;
    }
  }

  SecondMomentReport rep;
  rep.moment_estimate.resize(n);
  rep.bound.resize(n);
  rep.standard_error.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = sum[i] / static_cast<double>(trials);
    const double var =
        std::max(0.0, sum_sq[i] / static_cast<double>(trials) - mean * mean);
    rep.moment_estimate[i] = mean;
    rep.standard_error[i] = std::sqrt(var / static_cast<double>(trials));
    double sigma_i = 0.0;
    if (!sobj.sigma.empty()) {
      sigma_i = sobj.sigma[i];
    } else {
      // Dataset mode: per-sample variance around the full gradient.
      double v = 0.0;
      for (const auto& sample : sobj.dataset) {
        const double d = sample(theta)[i] - full_grad[i];
        v += d * d;
      }
      sigma_i = std::sqrt(v / static_cast<double>(sobj.dataset.size()));
    }
    rep.bound[i] = sigma_i * sigma_i / static_cast<double>(bk) + full_grad[i] * full_grad[i];
    if (rep.moment_estimate[i] > rep.bound[i] + 3.0 * rep.standard_error[i]) {
      rep.holds_within_3se = false;
    }
  }
  return rep;
}

double convergence_slope(const std::vector<double>& trace, std::size_t window) {
  if (trace.empty()) throw std::invalid_argument("empty trace");
  if (window < 2) throw std::invalid_argument("window must be >= 2");
  if (window > trace.size()) window = trace.size();

  // Running (Cesaro) mean at every prefix length.
  std::vector<double> running(trace.size());
  double acc = 0.0;
  bool any_positive = false;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    acc += trace[i];
    running[i] = acc / static_cast<double>(i + 1);
    if (running[i] > 0.0) any_positive = true;
  }
  if (!any_positive) throw std::domain_error("degenerate all-zero trace");

  // Least squares on (log N, log running mean) over the final window.
  const std::size_t start = trace.size() - window;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = start; i < trace.size(); ++i) {
    if (running[i] <= 0.0) continue;
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(running[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw std::domain_error("too few usable points for slope fit");
  const double m = static_cast<double>(count);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double gradcheck_max_rel_error(const Objective& obj, std::size_t points, Rng& rng,
                               double perturbation) {
  double worst = 0.0;
  for (std::size_t t = 0; t < points; ++t) {
    Vec th = rng.gaussian_vec(obj.dim, 0.0, 1.0);
    const Vec g = obj.grad(th);
    Vec fd(obj.dim);
    for (std::size_t i = 0; i < obj.dim; ++i) {
      const double orig = th[i];
      th[i] = orig + perturbation;
      const double fp = obj.value(th);
      th[i] = orig - perturbation;
      const double fm = obj.value(th);
      th[i] = orig;
      fd[i] = (fp - fm) / (2.0 * perturbation);
    }
    const double denom = std::max(norm(g), 1e-12);
    worst = std::max(worst, norm(sub(fd, g)) / denom);
  }
  return worst;
}

}  // namespace radopt
