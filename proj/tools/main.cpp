// Copyright 2026 The pinchopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "pinchopt/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return pinchopt::cli::cli_main(args, std::cout, std::cerr);
}
