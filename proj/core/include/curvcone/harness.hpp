#pragma once

// Experiment configuration, task dispatch and report persistence.
//
// Configs and reports are JSON (schema_version 1); tables are CSV.

#include "curvcone/ansatz.hpp"
#include "curvcone/catalog.hpp"
#include "curvcone/cones.hpp"
#include "curvcone/geometry.hpp"
#include "curvcone/report.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace curvcone {

inline constexpr int kSchemaVersion = 1;

/// One monomial c * prod x_i^{p_i} of a custom polynomial v.
struct Monomial {
  double coefficient = 0.0;
  std::vector<int> powers;
};

struct VSpec {
  enum class Kind { Radial, Linear, CustomPolynomial };

  Kind kind = Kind::Radial;
  std::vector<double> center;        // radial: |x - center|, origin when empty
  std::vector<double> coefficients;  // linear: sum a_i x_i
  std::vector<Monomial> terms;       // custom_polynomial
  std::optional<double> normalize_band = 0.5;
};

ScalarField make_v(const VSpec& spec, int dim);

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  ManifoldSpec manifold;
  VSpec v;
  std::string task;
  std::optional<ConeSpec> cone;
  int grid_resolution = 9;
  double n_max = 1e4;
  double margin_req = 1e-6;
  DerivativeProvider provider;
  std::uint64_t seed = 20240601;
  std::string output_dir = "out";
  double tolerance = 1e-6;
  int formula_fields = 20;   // formula_check: random conformal factors
  int formula_points = 50;   // formula_check: points per factor
};

const std::vector<std::string>& task_names();

/// Parses and validates. Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& config);
std::string to_json(const ExperimentConfig& config);

DerivativeProvider parse_provider(const std::string& name);

struct RunOutcome {
  VerificationReport report;
  int exit_code = 1;  // 0 pass, 1 pipeline failure or failed check
};

/// Validates, then dispatches on config.task. Pipeline errors are caught
/// and recorded in the report (exit 1); validation errors propagate.
RunOutcome run(const ExperimentConfig& config);

std::string report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& json_text);

/// Writes report.json into dir, creating it. Returns the path.
std::filesystem::path write_report(const VerificationReport& report, const std::filesystem::path& dir);
VerificationReport load_report(const std::filesystem::path& path);

/// margin.csv (N, worst_margin), eigen.csv (point_index, min_eigenvalue) and
/// sectional.csv (plane_index, K). Each starts with a '#' line documenting
/// the columns, then a header row.
std::vector<std::filesystem::path> emit_plotdata(const VerificationReport& report, const std::filesystem::path& dir);

}  // namespace curvcone
