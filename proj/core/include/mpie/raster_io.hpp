// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mpie/raster.hpp"

namespace mpie {

/// `.raw` raster layout, all little-endian:
///   bytes 0..7   magic "MPIR1\0\0\0"
///   bytes 8..19  u32 width, u32 height, u32 channels
///   bytes 20..   width*height*channels IEEE-754 binary32, row-major,
///                channel-interleaved
inline constexpr std::array<char, 8> kRawMagic = {'M', 'P', 'I', 'R', '1', '\0', '\0', '\0'};

std::vector<std::uint8_t> encode_raw(const Raster& r);
Raster decode_raw(std::span<const std::uint8_t> bytes, const std::filesystem::path& source = {});

void write_raw(const std::filesystem::path& path, const Raster& r);
Raster read_raw(const std::filesystem::path& path);

/// Portable float map. Writes 1 channel as "Pf", 3 channels as "PF", scale
/// -1.0 (little-endian), rows bottom to top. Reads either endianness.
void write_pfm(const std::filesystem::path& path, const Raster& r);
Raster read_pfm(const std::filesystem::path& path);

/// Label PNG: 8-bit palette image, palette index = label. Labels must be in
/// [0, 255]; pass `void_value` to store negative labels as that index.
void write_label_png(const std::filesystem::path& path, const LabelMap& labels,
                     std::int32_t void_value = 255);
/// Reads 8-bit palette or grayscale PNGs; other bit depths throw IoError.
/// Pixels equal to `void_value` (if >= 0) come back as -1.
LabelMap read_label_png(const std::filesystem::path& path, std::int32_t void_value = -1);

/// Preview PNG: 1, 3 or 4 channels, byte = floor(clamp(v, 0, 1) * 255 + 0.5).
void write_preview_png(const std::filesystem::path& path, const Raster& r);
/// Reads an 8-bit gray/RGB/RGBA PNG into [0, 1] floats (byte / 255).
Raster read_preview_png(const std::filesystem::path& path);

/// Quantisation used by write_preview_png.
std::uint8_t quantize_unit(float v);

/// Dispatch on extension: .raw, .pfm, .png (preview).
Raster read_raster(const std::filesystem::path& path);
void write_raster(const std::filesystem::path& path, const Raster& r);

}  // namespace mpie
