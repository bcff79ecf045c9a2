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

#include <filesystem>
#include <string>
#include <vector>

namespace hris::sim {

/// Locale-independent number formatting used for every emitted file:
/// 12 significant digits, "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double v);
std::string format_number(std::size_t v);

/// Comma-separated, '.' decimal point, header row, LF line endings.
class CsvTable
{
  public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);

    const std::vector<std::string> &header() const noexcept { return header_; }
    std::size_t n_rows() const noexcept { return rows_.size(); }

    std::string str() const;
    void write(const std::filesystem::path &path) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace hris::sim
