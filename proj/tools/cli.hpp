#pragma once

namespace nevpick::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kNumericalFailure = 3,
  kPartialMonteCarlo = 4,
};

/// 0 when at least half of the runs succeed, 4 when some but fewer than half
/// do, 3 when none do.
int monte_carlo_exit_code(int succeeded, int total);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv);

}  // namespace nevpick::cli
