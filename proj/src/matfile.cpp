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

#include "hris/matfile.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace hris::channel {

namespace {

void put_u64(std::vector<unsigned char> &buf, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_f32(std::vector<unsigned char> &buf, float f)
{
    const auto bits = std::bit_cast<std::uint32_t>(f);
    for (int i = 0; i < 4; ++i)
        buf.push_back(static_cast<unsigned char>(bits >> (8 * i)));
}

std::uint64_t get_u64(const unsigned char *p)
{
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}

float get_f32(const unsigned char *p)
{
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i)
        v = (v << 8) | p[i];
    return std::bit_cast<float>(v);
}

std::uint64_t fnv1a64(const unsigned char *data, std::size_t n)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace

void write_matrix_file(const std::filesystem::path &path, const cmat &m, std::uint64_t seed, std::uint64_t stream_id)
{
    std::vector<unsigned char> payload;
    payload.reserve(static_cast<std::size_t>(m.size()) * 8);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            put_f32(payload, static_cast<float>(m(r, c).real()));
            put_f32(payload, static_cast<float>(m(r, c).imag()));
        }

    std::vector<unsigned char> header;
    header.reserve(MatrixFile::header_bytes);
    put_u64(header, MatrixFile::magic);
    put_u64(header, MatrixFile::version);
    put_u64(header, static_cast<std::uint64_t>(m.rows()));
    put_u64(header, static_cast<std::uint64_t>(m.cols()));
    put_u64(header, MatrixFile::dtype_complex64);
    put_u64(header, seed);
    put_u64(header, stream_id);
    put_u64(header, fnv1a64(payload.data(), payload.size()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char *>(header.data()), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char *>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (!out)
        throw Error("write failed for '" + path.string() + "'");
}

MatrixFile read_matrix_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < MatrixFile::header_bytes)
        throw Error(path.string() + ": truncated header");

    const unsigned char *h = bytes.data();
    if (get_u64(h) != MatrixFile::magic)
        throw Error(path.string() + ": bad magic");
    if (get_u64(h + 8) != MatrixFile::version)
        throw Error(path.string() + ": unsupported version " + std::to_string(get_u64(h + 8)));
    const std::uint64_t rows = get_u64(h + 16);
    const std::uint64_t cols = get_u64(h + 24);
    if (get_u64(h + 32) != MatrixFile::dtype_complex64)
        throw Error(path.string() + ": unsupported dtype code");

    const std::size_t payload_bytes = static_cast<std::size_t>(rows * cols * 8);
    if (bytes.size() != MatrixFile::header_bytes + payload_bytes)
        throw Error(path.string() + ": payload size does not match header");
    const unsigned char *p = bytes.data() + MatrixFile::header_bytes;
    if (fnv1a64(p, payload_bytes) != get_u64(h + 56))
        throw Error(path.string() + ": checksum mismatch");

    MatrixFile f;
    f.seed = get_u64(h + 40);
    f.stream_id = get_u64(h + 48);
    f.data.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::uint64_t r = 0; r < rows; ++r)
        for (std::uint64_t c = 0; c < cols; ++c) {
            const unsigned char *q = p + 8 * (r * cols + c);
            f.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {get_f32(q), get_f32(q + 4)};
        }
    return f;
}

} // namespace hris::channel
