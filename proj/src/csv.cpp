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

#include "hris/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hris/common.hpp"

namespace hris::sim {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    // %g honours LC_NUMERIC only after setlocale(); the library never calls it.
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_number(std::size_t v)
{
    return std::to_string(v);
}

void CsvTable::add_row(std::vector<std::string> row)
{
    if (row.size() != header_.size())
        throw DimensionError("CsvTable: row has " + std::to_string(row.size()) + " fields, header has " +
                             std::to_string(header_.size()));
    for (const auto &f : row)
        if (f.find_first_of(",\n\"") != std::string::npos)
            throw ParameterError("CsvTable: field '" + f + "' contains a separator");
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const
{
    std::string out;
    auto emit = [&](const std::vector<std::string> &fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i)
                out += ',';
            out += fields[i];
        }
        out += '\n';
    };
    emit(header_);
    for (const auto &r : rows_)
        emit(r);
    return out;
}

void CsvTable::write(const std::filesystem::path &path) const
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error("cannot open '" + path.string() + "' for writing");
    const std::string s = str();
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!f)
        throw Error("write failed for '" + path.string() + "'");
}

} // namespace hris::sim
