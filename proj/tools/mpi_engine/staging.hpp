// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <utility>
#include <vector>

namespace mpie::cli {

/// Collects outputs under temporary names next to their destinations and
/// moves them into place on commit(). Anything not committed is deleted.
class Staging {
 public:
  Staging() = default;
  Staging(const Staging&) = delete;
  Staging& operator=(const Staging&) = delete;
  ~Staging();

  /// Temporary path for a file; keeps the extension so format dispatch
  /// still works.
  std::filesystem::path file(const std::filesystem::path& dest);

  /// Temporary directory for a directory output. An existing destination
  /// must be empty or hold a scene manifest; it is replaced on commit.
  std::filesystem::path directory(const std::filesystem::path& dest);

  void commit();

 private:
  struct Entry {
    std::filesystem::path temp;
    std::filesystem::path dest;
    bool is_dir;
  };
  std::vector<Entry> entries_;
};

}  // namespace mpie::cli
