// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include "proxdual/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return proxdual::io::cli_dispatch(args);
}
