#pragma once

#include <string>
#include <vector>

#include "airgeom/workbench/config.hpp"

namespace airgeom::workbench {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
  std::string to_text() const;
};

struct ValidationOptions {
  // Test hook: bias added to the closed-form path-loss exponent so the
  // quadrature cross-check fails loudly. Must stay 0 in real runs.
  double exponent_bias = 0.0;
  std::size_t mc_realizations = 20000;
};

/// Runs the quadrature-vs-closed-form and Monte-Carlo-vs-closed-form
/// oracle suites over the reference parameter sets and the configured
/// grid, and reports pass/fail per check with tolerances.
ValidationReport run_validation(const RunConfig& config,
                                const ValidationOptions& options = {});

/// (beta, h0) pairs of the published per-campaign fits, used as the
/// reference sweep for the oracle suites.
std::vector<LosTransition> reference_transitions();

}  // namespace airgeom::workbench
