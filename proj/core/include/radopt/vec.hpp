#pragma once

#include <cstddef>
#include <vector>

namespace radopt {

/// Dense real vector. All library operations are pure and length-checked;
/// a non-finite result (overflow, 0/0, ...) raises instead of propagating NaN.
using Vec = std::vector<double>;

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec mul(const Vec& a, const Vec& b);
Vec div(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double s);
Vec sqrt(const Vec& a);
Vec square(const Vec& a);
double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);

/// Largest |a_i|; 0 for the empty vector.
double max_abs(const Vec& a);

bool all_finite(const Vec& a);

Vec zeros(std::size_t n);

}  // namespace radopt
