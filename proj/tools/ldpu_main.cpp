// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "ldpu/cli.hpp"

int main(int argc, char** argv) {
  return ldpu::run(std::vector<std::string>(argv + 1, argv + argc));
}
