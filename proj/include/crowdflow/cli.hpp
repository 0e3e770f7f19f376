#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "crowdflow/driver.hpp"
#include "crowdflow/io.hpp"

namespace crowdflow {

/// Bad command line or config file; the program exits with kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Help was requested; the formatted text is in what().
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CliCommand { Run, Sweep, ListScenarios };

struct CliInvocation {
  CliCommand command = CliCommand::Run;
  RunConfig config;
  Provenance provenance;
  std::vector<double> sweep_epsilons;
  std::string output_dir;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNewton = 3;
inline constexpr int kExitCfl = 4;

/// Parses argv without the program name. Values resolve flag > config file >
/// per-scenario defaults, and the provenance map records which layer won.
auto parse_cli(const std::vector<std::string>& args) -> CliInvocation;

/// Executes a parsed invocation, writing outputs under invocation.output_dir.
/// Returns the process exit code.
int execute(const CliInvocation&, std::ostream& out);

}  // namespace crowdflow
