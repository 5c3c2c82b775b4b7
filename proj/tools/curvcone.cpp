// curvcone: batch driver for the curvature and conformal-construction experiments.

#include "curvcone/error.hpp"
#include "curvcone/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string provider;
  std::optional<std::uint64_t> seed;
  std::string report;
};

constexpr int kExitConfig = 2;

// Tasks each subcommand accepts; verify runs whatever the config names.
std::vector<std::string> allowed_tasks(const std::string& sub) {
  if (sub == "curvature") return {"curvature", "formula_check"};
  if (sub == "cone") return {"cone"};
  if (sub == "construct") return {"thm12", "thm13"};
  return curvcone::task_names();
}

void print_summary(const curvcone::VerificationReport& r, const std::string& where) {
  std::printf("verdict: %s  task=%s", r.passed() ? "pass" : "fail", r.task.c_str());
  if (!r.case_tag.empty()) std::printf("  case=%s", r.case_tag.c_str());
  if (r.n_found) std::printf("  N=%.6g", *r.n_found);
  std::printf("  -> %s\n", where.c_str());
  for (const auto& [name, ok] : r.checks) std::printf("  %-28s %s\n", name.c_str(), ok ? "ok" : "FAILED");
  for (const auto& note : r.notes) std::printf("  note: %s\n", note.c_str());
}

int run_experiment(const std::string& sub, const Options& opt) {
  curvcone::ExperimentConfig config;
  try {
    config = curvcone::load_config(opt.config);
    if (!opt.provider.empty()) config.provider = curvcone::parse_provider(opt.provider);
    if (opt.seed) config.seed = *opt.seed;
    if (!opt.out.empty()) config.output_dir = opt.out;
    curvcone::validate(config);
    const auto allowed = allowed_tasks(sub);
    if (std::find(allowed.begin(), allowed.end(), config.task) == allowed.end()) {
      std::cerr << "curvcone " << sub << ": task '" << config.task << "' belongs to another subcommand\n";
      return kExitConfig;
    }
  } catch (const curvcone::Error& e) {
    std::cerr << "curvcone: " << e.what() << '\n';
    return e.code() == curvcone::ErrorCode::IoError ? 1 : kExitConfig;
  }

  const curvcone::RunOutcome outcome = curvcone::run(config);
  try {
    const auto path = curvcone::write_report(outcome.report, config.output_dir);
    curvcone::emit_plotdata(outcome.report, config.output_dir);
    print_summary(outcome.report, path.string());
  } catch (const curvcone::Error& e) {
    std::cerr << "curvcone: " << e.what() << '\n';
    return 1;
  }
  return outcome.exit_code;
}

int show_report(const Options& opt) {
  try {
    const auto report = curvcone::load_report(opt.report);
    if (!report.config_echo.empty()) (void)curvcone::parse_config(report.config_echo);
    if (!opt.out.empty()) curvcone::emit_plotdata(report, opt.out);
    print_summary(report, opt.report);
    return report.passed() ? 0 : 1;
  } catch (const curvcone::Error& e) {
    std::cerr << "curvcone: " << e.what() << '\n';
    return e.code() == curvcone::ErrorCode::IoError ? 1 : kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature cones and conformal constructions on chart metrics"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, std::string>> runners = {
      {"curvature", "curvature battery or conformal formula check"},
      {"cone", "ansatz search for -A_{g_u} in a chosen cone"},
      {"construct", "negative sectional (thm13) or positive Einstein (thm12) construction"},
      {"verify", "run any config and report its verdict"},
  };
  for (const auto& [name, help] : runners) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory (overrides output_dir)");
    sub->add_option("--provider", opt.provider, "derivative provider: taylor, fd, fd2, fd4");
    sub->add_option("--seed", opt.seed, "random seed (overrides seed)");
  }
  auto* report = app.add_subcommand("report", "summarize a report.json and optionally re-emit its CSVs");
  report->add_option("--report", opt.report, "report.json path")->required()->check(CLI::ExistingFile);
  report->add_option("--out", opt.out, "directory for regenerated CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub == "report") return show_report(opt);
  return run_experiment(sub, opt);
}
