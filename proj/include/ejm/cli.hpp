// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace ejm {

/// Entry point of the `ejmsim` command line tool. `args` excludes the program
/// name. Returns 0 on success, 1 on verification or I/O failure, 2 on usage
/// errors. The EJMSIM_SEED environment variable supplies the default seed,
/// overridable with --seed.
int run_cli(const std::vector<std::string>& args);

}  // namespace ejm
