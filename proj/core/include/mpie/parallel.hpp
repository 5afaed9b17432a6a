// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace mpie {

/// Number of worker threads used by the row-parallel kernels. 0 selects
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs `fn(row)` for every row in [0, rows). Rows are split into contiguous
/// blocks, one per worker. Callers must make per-row work independent; the
/// kernels in this library then produce bit-identical output for any thread
/// count.
void parallel_rows(std::size_t rows, const std::function<void(std::size_t)>& fn);

}  // namespace mpie
