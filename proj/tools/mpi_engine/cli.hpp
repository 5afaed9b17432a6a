// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mpie::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kValidation = 2,
  kGeometry = 3,
  kIo = 4,
};

/// Runs one mpi_engine invocation in-process. `args` excludes the program
/// name. Machine output (metrics, planes with `--out -`) goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mpie::cli
