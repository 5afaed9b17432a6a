// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mpie {

/// Base for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad shapes, out-of-range values, malformed inputs. Raised before any
/// output is produced.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numeric or geometric failure, e.g. a camera centre lying on an MPI plane.
class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what,
                         std::optional<std::size_t> plane_index = std::nullopt)
      : Error(what), plane_index_(plane_index) {}

  std::optional<std::size_t> plane_index() const { return plane_index_; }

 private:
  std::optional<std::size_t> plane_index_;
};

/// File-system or format failure. `path()` names the offending file.
class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path)
      : Error(what), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace mpie
