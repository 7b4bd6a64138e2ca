#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scatcert/json_io.hpp"

namespace scatcert {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitInconsistent = 2,
  kExitNotCertifiable = 3,
  kExitSearchExhausted = 4,
  kExitChainViolation = 5,
};

struct RunConfig {
  std::filesystem::path potential;
  std::optional<std::filesystem::path> out;
  std::uint64_t seed = 20120426;
  std::int64_t samples = 1000000;
  std::optional<double> l_max;
  double tol = 1e-6;
  int grid_n = 2048;
  ProfileKind profile = ProfileKind::cos2_bump;
  std::vector<int> lattice_N{2, 3, 4, 5};
  std::vector<double> lattice_L{5.0, 10.0, 20.0};

  // Test hook for validate-mc: scales term_kinetic of every compared bound.
  double kinetic_scale = 1.0;
};

struct CommandResult {
  int exit_code = kExitOk;
  Json report;
};

/// Each command loads the potential, runs, and returns the JSON report; none
/// of them write files except cmd_report.
CommandResult cmd_scatlen(const RunConfig& config);
CommandResult cmd_twobody(const RunConfig& config);
CommandResult cmd_certify(const RunConfig& config);
CommandResult cmd_validate_mc(const RunConfig& config);
/// Writes summary.txt, a_R_curve.csv, bound_sweep.csv and report.json into
/// config.out (default "report").
CommandResult cmd_report(const RunConfig& config);

/// Removes the volatile "timestamp" field, for comparing reruns.
Json strip_timestamp(Json report);

int run_cli(int argc, char** argv);

}  // namespace scatcert
