#pragma once

// Scenario execution shared by the CLI and the Python bindings.

#include <iosfwd>
#include <optional>
#include <string>

#include "silsrob/errors.hpp"
#include "silsrob/scenario.hpp"
#include "silsrob/timehistory.hpp"
#include "silsrob/trajectory.hpp"

namespace silsrob {

/// Process exit codes. Stable contract of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitUnreachable = 2,
  kExitSingular = 3,
  kExitValidationFailed = 4,
};

/// Unreachable and JointLimit -> 2, SingularConfiguration -> 3, everything
/// else is an input problem -> 1.
int exit_code_for(ErrorKind kind);

MotionPlan plan_scenario(const Scenario& s);

struct RunOptions {
  std::optional<double> dt;
  std::optional<std::string> out;
  std::optional<IkBranch> branch;
  PlotData columns = PlotData::Full;
};

/// Plans the scenario and writes the CSV to the configured output path, or
/// to `out` when no path is configured. Failures are reported on `err` with
/// the sample time; the return value is an ExitCode.
int run_scenario(const Scenario& s, const RunOptions& options, std::ostream& out,
                 std::ostream& err);

}  // namespace silsrob
