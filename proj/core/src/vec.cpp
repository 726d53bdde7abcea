#include "radopt/vec.hpp"

#include <cmath>
#include <stdexcept>

namespace radopt {

namespace {

void require_same_length(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vector length mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

void require_finite(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("non-finite result in vector operation");
  }
}

}  // namespace

Vec add(const Vec& a, const Vec& b) {
  require_same_length(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + b[i];
    require_finite(out[i]);
  }
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  require_same_length(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] - b[i];
    require_finite(out[i]);
  }
  return out;
}

Vec mul(const Vec& a, const Vec& b) {
  require_same_length(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] * b[i];
    require_finite(out[i]);
  }
  return out;
}

Vec div(const Vec& a, const Vec& b) {
  require_same_length(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] == 0.0) {
      throw std::domain_error("division by zero at index " + std::to_string(i));
    }
    out[i] = a[i] / b[i];
    require_finite(out[i]);
  }
  return out;
}

Vec scale(const Vec& a, double s) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] * s;
    require_finite(out[i]);
  }
  return out;
}

Vec sqrt(const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0.0) {
      throw std::domain_error("sqrt of negative element at index " + std::to_string(i));
    }
    out[i] = std::sqrt(a[i]);
  }
  return out;
}

Vec square(const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] * a[i];
    require_finite(out[i]);
  }
  return out;
}

double dot(const Vec& a, const Vec& b) {
  require_same_length(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  require_finite(s);
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

bool all_finite(const Vec& a) {
  for (double x : a) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Vec zeros(std::size_t n) { return Vec(n, 0.0); }

}  // namespace radopt
