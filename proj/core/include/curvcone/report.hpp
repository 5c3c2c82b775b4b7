#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curvcone {

struct MarginRow {
  double n = 0.0;
  double worst_margin = 0.0;
  bool success = false;
};

struct SampleSummary {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// Outcome of one experiment. The verdict passes only if every named check passed.
struct VerificationReport {
  std::string task;
  std::string config_echo;  // serialized config, re-parseable
  std::string case_tag;
  std::optional<double> n_found;
  std::vector<MarginRow> margin_profile;
  /// Smallest generalized eigenvalue per grid point (normalized form, at n_found).
  std::vector<double> point_min_eigenvalues;
  SampleSummary eigen_extremes;
  /// Sectional curvatures of the locally rescaled metric e^{-2u(x0)} g_u at x0.
  std::vector<double> sectional_samples;
  SampleSummary sectional_summary;
  double weyl_residual = 0.0;
  std::map<std::string, bool> checks;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  double wall_clock_seconds = 0.0;

  bool passed() const {
    if (checks.empty()) return false;
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return true;
  }
};

SampleSummary summarize(const std::vector<double>& values);

}  // namespace curvcone
