// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Error taxonomy: ValidationError for rejected inputs (bad parameters, malformed
// files, shape mismatches), ComputationError for failures arising during an
// otherwise well-formed computation (infeasible target, non-monotone probe, I/O).

#pragma once

#include <stdexcept>
#include <string>

namespace ldpu {

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldpu
