#pragma once

#include <string>
#include <vector>

#include "core/qfamily.hpp"

namespace qortho {

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool pass = false;
  double worst = 0.0;      // worst measured value across the n-range
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  int n_max = 0;  // 0: family's n_max
  double tol_ode = 1e-8;
  double tol_orthogonality = 1e-8;
  double tol_tail = 1e-9;
  double tol_recurrence = 1e-7;
  double tol_recurrence_exact = 1e-9;  // m == 0, where the table is banded exactly
  double tol_window = 1e-8;
  bool interlacing = true;
};

// The named invariant suite behind `verify`: ode, orthogonality, b-tail,
// existence-flip, recurrence, structure-window, interlacing.
std::vector<CheckResult> run_verify(QFamily& fam, const VerifyOptions& opt);

}  // namespace qortho
