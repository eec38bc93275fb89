#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nakanc {

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t trials = 10000;  // per Monte-Carlo cell
  std::uint64_t seed = 7;
  int workers = 0;
  bool inject_fault = false;  // perturbs Q(a, x) by a relative 1e-6
};

/// Identity checks on a Q(a, x) implementation: Q(1,x) = e^-x,
/// Q(1/2,x) = erfc(sqrt x) to 1e-12 relative and the upward recurrence to
/// 1e-10 relative, on a log grid x in [0.01, 100].
SuiteResult check_gamma_identities(const std::function<double(double, double)>& q);

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts);

}  // namespace nakanc
