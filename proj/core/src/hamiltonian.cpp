#include "radopt/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace radopt {

double KineticEnergy::value(const Vec& p) const {
  double t = 0.0;
  if (kind == KineticKind::Classical) {
    for (double pi : p) t += pi * pi / (2.0 * m);
  } else {
    const double mc2 = m * m * c * c;
    for (double pi : p) t += c * std::sqrt(pi * pi + mc2);
  }
  return t;
}

Vec KineticEnergy::grad(const Vec& p) const {
  Vec g(p.size());
  if (kind == KineticKind::Classical) {
    for (std::size_t i = 0; i < p.size(); ++i) g[i] = p[i] / m;
  } else {
    const double mc2 = m * m * c * c;
    for (std::size_t i = 0; i < p.size(); ++i) {
      g[i] = c * p[i] / std::sqrt(p[i] * p[i] + mc2);
    }
  }
  return g;
}

double hamiltonian_value(const HamiltonianSystem& sys, const PhasePoint& z) {
  if (z.q.size() != z.p.size()) {
    throw std::invalid_argument("phase point q/p length mismatch");
  }
  const double h = sys.kinetic.value(z.p) + sys.potential(z.q);
  if (!std::isfinite(h)) throw std::domain_error("non-finite Hamiltonian value");
  return h;
}

PhasePoint step_first_order(const HamiltonianSystem& sys, const PhasePoint& z, double h) {
  if (h <= 0.0) throw std::invalid_argument("step size must be positive");
  const double damp = std::exp(-sys.r * h);
  const Vec gU = sys.potential_grad(z.q);
  PhasePoint out;
  out.p.resize(z.p.size());
  for (std::size_t i = 0; i < z.p.size(); ++i) out.p[i] = damp * z.p[i] - h * gU[i];
  const Vec gT = sys.kinetic.grad(out.p);
  out.q.resize(z.q.size());
  for (std::size_t i = 0; i < z.q.size(); ++i) out.q[i] = z.q[i] + h * gT[i];
  return out;
}

PhasePoint step_second_order(const HamiltonianSystem& sys, const PhasePoint& z, double h) {
  if (h <= 0.0) throw std::invalid_argument("step size must be positive");
  const double half_damp = std::exp(-0.5 * sys.r * h);
  const std::size_t n = z.q.size();

  // Half-step damping.
  Vec p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = half_damp * z.p[i];

  // Leapfrog core: q-half, p-full, q-half. For separable H both q-gradient
  // evaluations in the p-update collapse to grad U at the midpoint.
  Vec q(n);
  Vec gT = sys.kinetic.grad(p);
  for (std::size_t i = 0; i < n; ++i) q[i] = z.q[i] + 0.5 * h * gT[i];
  const Vec gU = sys.potential_grad(q);
  for (std::size_t i = 0; i < n; ++i) p[i] -= h * gU[i];
  gT = sys.kinetic.grad(p);
  for (std::size_t i = 0; i < n; ++i) q[i] += 0.5 * h * gT[i];

  // Half-step damping.
  for (std::size_t i = 0; i < n; ++i) p[i] *= half_damp;
  return PhasePoint{std::move(q), std::move(p)};
}

double phase_area_contraction(const HamiltonianSystem& sys, const PhasePoint& z, double h,
                              IntegratorOrder order) {
  if (z.q.size() != 1 || z.p.size() != 1) {
    throw std::invalid_argument("phase_area_contraction requires a 1-D system");
  }
  const double eps = 1e-6;
  auto step = [&](double q, double p) {
    PhasePoint zz{Vec{q}, Vec{p}};
    return order == IntegratorOrder::First ? step_first_order(sys, zz, h)
                                           : step_second_order(sys, zz, h);
  };
  const PhasePoint qp = step(z.q[0] + eps, z.p[0]);
  const PhasePoint qm = step(z.q[0] - eps, z.p[0]);
  const PhasePoint pp = step(z.q[0], z.p[0] + eps);
  const PhasePoint pm = step(z.q[0], z.p[0] - eps);
  const double dq_dq = (qp.q[0] - qm.q[0]) / (2.0 * eps);
  const double dq_dp = (pp.q[0] - pm.q[0]) / (2.0 * eps);
  const double dp_dq = (qp.p[0] - qm.p[0]) / (2.0 * eps);
  const double dp_dp = (pp.p[0] - pm.p[0]) / (2.0 * eps);
  return dq_dq * dp_dp - dq_dp * dp_dq;
}

}  // namespace radopt
