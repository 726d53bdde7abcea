// Runs the full acceptance suite, one PASS/FAIL line per criterion.
// Thread count and scratch directory come from the environment so CI can
// tune them: ACCEPT_PARALLEL, ACCEPT_WORKDIR.

#include <cstdlib>
#include <string>

#include "radopt/acceptance.hpp"

int main() {
  radopt::AcceptanceOptions opts;
  if (const char* p = std::getenv("ACCEPT_PARALLEL")) opts.parallel = std::atoi(p);
  if (const char* d = std::getenv("ACCEPT_WORKDIR")) opts.work_dir = d;
  const auto results = radopt::run_acceptance(opts);
  return radopt::report_acceptance(results) ? 0 : 1;
}
