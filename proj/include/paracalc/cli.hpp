#pragma once

namespace paracalc {

/// Experiment runner; exit codes: 0 pass, 1 tolerance failure,
/// 2 usage/config error.
int run_cli(int argc, const char* const* argv);

}  // namespace paracalc
