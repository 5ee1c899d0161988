// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace critickit::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kIoError = 3,
    kTransportError = 4,
};

/// Runs the command line @p args (args[0] is the program name). Standard input is only
/// read by `parse-trace`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Long flag names per subcommand ("" for global flags), for help-surface checks.
std::map<std::string, std::vector<std::string>> flag_surface();

} // namespace critickit::cli
