#pragma once

// Invariant sweeps behind the `verify` command.

#include <string>
#include <vector>

#include "lemni/curves.hpp"

namespace lemni {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::size_t samples = 0;

  bool passed() const noexcept { return max_residual <= threshold; }
};

struct VerifyOptions {
  std::size_t samples = 10000;
  int grid = 512;
  unsigned threads = 0;
};

/// Residuals are normalized to unit half focal distance, so thresholds do
/// not depend on the size of the configuration.
std::vector<CheckResult> run_verification(const BernoulliConfig& cfg, const VerifyOptions& options = {});

}  // namespace lemni
