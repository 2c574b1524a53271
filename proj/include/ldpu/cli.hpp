// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface. run() parses argv-style arguments and executes one
// subcommand; exit code 0 on success, 2 on validation errors (bad flags,
// malformed inputs/model files), 1 on runtime errors (infeasible target,
// non-monotone configuration, I/O failures).

#pragma once

#include <string>
#include <vector>

namespace ldpu {

inline constexpr const char* kToolVersion = "0.1.0";

int run(const std::vector<std::string>& args);

}  // namespace ldpu
