#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fcedge {

enum class VerifyProfile { quick, full };

/// "quick" or "full"; std::invalid_argument otherwise.
VerifyProfile parse_profile(const std::string& text);

struct StirlingFault {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
};

struct VerifyOptions {
  VerifyProfile profile = VerifyProfile::quick;
  /// Adds one to a single entry of the Stirling table the suite checks.
  std::optional<StirlingFault> stirling_fault;
};

/// One failed check, with whichever of (m, n, k, r) apply.
struct VerifyFailure {
  std::string suite;
  std::string check;
  std::optional<std::uint64_t> m, n, k, r;
  std::string detail;
};

struct SuiteSummary {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
};

struct VerifyReport {
  VerifyProfile profile = VerifyProfile::quick;
  std::vector<SuiteSummary> suites;
  std::vector<VerifyFailure> failures;

  bool pass() const { return failures.empty(); }
};

/// Runs the identity suites: cross_formula, beta_bounds, stirling, dominance,
/// asymptotic.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace fcedge
