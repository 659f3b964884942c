#ifndef GAPFIELD_VALIDATE_HPP
#define GAPFIELD_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

// Named invariant suites for every module, runnable from the CLI. Each check
// reports the measured quantity against its requirement; quick mode restricts
// to eps >= 1e-4 cases.

namespace gapfield::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double required = 0.0;
  std::string note;
};

struct Options {
  double tol = 1e-9;
  unsigned seed = 1234;
  bool quick = false;
  double perturb_q = 0.0;  // fault injection: scales family-1 charges post Q
};

std::vector<CheckResult> run_all(const Options& opt);

}  // namespace gapfield::validate

#endif
