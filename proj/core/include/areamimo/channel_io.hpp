// SPDX-License-Identifier: Apache-2.0
//
// areamimo: area-throughput evaluation of spatially consistent massive MIMO channels
// Copyright (C) 2026 The areamimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <string>

#include "areamimo/channel_map.hpp"

namespace areamimo
{

/// On-disk channel map container, format_version 1.
///
/// A map stored under base path P occupies two files:
///
///   P.meta.json    JSON object: format="areamimo-channel-map", format_version=1,
///                  nx, ny, delta_m, x0, y0, fc_hz, M, row_order="row-major",
///                  payload_dtype="c128le", source, optional seed, optional params
///   P.payload.bin  nx*ny*M complex values, each two little-endian IEEE-754
///                  binary64 (real, then imaginary); position-major
///                  (row-major over (i, j)), antenna-minor
///
/// The payload is exactly nx*ny*M*16 bytes.
inline constexpr int channel_map_format_version = 1;

struct MapFilePaths
{
    std::filesystem::path meta;
    std::filesystem::path payload;
};

/// Resolves a base path, or a path ending in ".meta.json" / ".payload.bin",
/// to both container files.
MapFilePaths map_file_paths(const std::filesystem::path &path);

/// Throws IoError if a file cannot be written.
void write_map(const ChannelMap &map, const std::filesystem::path &path);

/// Throws IoError for missing/unreadable files and FormatError for any
/// metadata or payload that fails validation.
ChannelMap read_map(const std::filesystem::path &path);

/// Centroid container: same payload layout with the k centroids as rows.
/// Meta: format="areamimo-centroids", format_version=1, k, M, payload_dtype.
void write_centroids(const CMatrix &centroids, const std::filesystem::path &path);
CMatrix read_centroids(const std::filesystem::path &path);

/// Raw payload codec shared by both containers.
std::string encode_c128le(const CMatrix &m);
CMatrix decode_c128le(const std::string &bytes, std::size_t rows, std::size_t cols);

} // namespace areamimo
