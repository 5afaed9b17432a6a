// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mpi_engine/staging.hpp"

#include <string>

#include <unistd.h>

#include "mpie/error.hpp"
#include "mpie/scene_io.hpp"

namespace mpie::cli {

namespace fs = std::filesystem;

namespace {

fs::path temp_sibling(const fs::path& dest, std::size_t n) {
  const fs::path parent = dest.parent_path().empty() ? fs::path(".") : dest.parent_path();
  std::string name = "." + dest.stem().string() + ".tmp" + std::to_string(::getpid()) + "_" +
                     std::to_string(n) + dest.extension().string();
  return parent / name;
}

void ensure_parent(const fs::path& dest) {
  const fs::path parent = dest.parent_path();
  if (parent.empty() || fs::is_directory(parent)) return;
  throw ValidationError("output directory does not exist: " + parent.string());
}

}  // namespace

Staging::~Staging() {
  std::error_code ec;
  for (const Entry& e : entries_) fs::remove_all(e.temp, ec);
}

fs::path Staging::file(const fs::path& dest) {
  ensure_parent(dest);
  if (fs::is_directory(dest)) throw ValidationError("output is a directory: " + dest.string());
  entries_.push_back({temp_sibling(dest, entries_.size()), dest, false});
  return entries_.back().temp;
}

fs::path Staging::directory(const fs::path& dest) {
  ensure_parent(dest);
  if (fs::exists(dest)) {
    if (!fs::is_directory(dest)) throw ValidationError("output exists and is not a directory: " + dest.string());
    if (!fs::is_empty(dest) && !fs::exists(dest / kManifestName)) {
      throw ValidationError("refusing to replace non-scene directory " + dest.string());
    }
  }
  entries_.push_back({temp_sibling(dest, entries_.size()), dest, true});
  return entries_.back().temp;
}

void Staging::commit() {
  try {
    for (const Entry& e : entries_) {
      if (e.is_dir && fs::exists(e.dest)) fs::remove_all(e.dest);
      fs::rename(e.temp, e.dest);
    }
  } catch (const fs::filesystem_error& err) {
    throw IoError(std::string("cannot move output into place: ") + err.what(), err.path1().string());
  }
  entries_.clear();
}

}  // namespace mpie::cli
