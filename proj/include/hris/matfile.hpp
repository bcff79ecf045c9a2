// SPDX-License-Identifier: Apache-2.0
//
// hris-sim: link-level simulator for hybrid reflecting and sensing metasurfaces
// Copyright (C) 2026 The hris-sim Authors
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

#include <cstdint>
#include <filesystem>

#include "hris/common.hpp"

namespace hris::channel {

/// Binary matrix dump used to pin channel draws in regression tests.
///
/// Layout (all integers little-endian uint64):
///   magic "HRISMAT\0", version, rows, cols, dtype code, seed, stream id,
///   checksum (FNV-1a 64 over the payload bytes)
/// followed by rows*cols row-major complex64 values, each as two
/// little-endian IEEE-754 float32 (real, imag).
struct MatrixFile
{
    static constexpr std::uint64_t magic = 0x005441'4D53495248ull; // "HRISMAT\0" read as LE u64
    static constexpr std::uint64_t version = 1;
    static constexpr std::uint64_t dtype_complex64 = 1;
    static constexpr std::size_t header_bytes = 64;

    cmat data;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

void write_matrix_file(const std::filesystem::path &path, const cmat &m, std::uint64_t seed, std::uint64_t stream_id);

/// Throws hris::Error on bad magic, version, dtype, size or checksum.
MatrixFile read_matrix_file(const std::filesystem::path &path);

} // namespace hris::channel
