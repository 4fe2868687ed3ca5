#pragma once

#include <string>

namespace chenholo {

// Outcome of one identity check. `exact` distinguishes rational-arithmetic
// checks (zero means identically zero) from float-mode checks, where max_abs
// carries the observed magnitude.
struct ResidualReport {
  std::string identity;
  bool exact = true;
  bool zero = false;
  double max_abs = 0.0;
  std::string witness;

  bool passed(double tol = 0.0) const { return exact ? zero : max_abs <= tol; }
};

}  // namespace chenholo
