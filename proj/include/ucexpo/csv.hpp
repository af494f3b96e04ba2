// SPDX-License-Identifier: Apache-2.0
//
// ucexpo - rate and exposure statistics of user-centric cell-free networks
// Copyright (C) 2026 The ucexpo authors
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

#ifndef UCEXPO_CSV_HPP
#define UCEXPO_CSV_HPP

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ucexpo/bounds.hpp"
#include "ucexpo/simulator.hpp"

namespace ucexpo
{

/// Metadata written as "# key: value" lines ahead of the column header.
using CsvMeta = std::vector<std::pair<std::string, std::string>>;

/// Column-oriented numeric table.
struct Table
{
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data; // data[c][row]

    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
    const std::vector<double> &column(const std::string &name) const;
    void add_column(const std::string &name, std::vector<double> values);
};

void write_table(std::ostream &os, const CsvMeta &meta, const Table &table);
/// Throws IoError for unreadable or malformed input.
Table read_table(std::istream &is);
Table read_table_file(const std::string &path);
void write_table_file(const std::string &path, const CsvMeta &meta, const Table &table);

/// Long format: one row per (theta, theta_p) with lower, upper and, for
/// empirical surfaces, the estimate.
Table surface_table(const JointSurface &surface);
Table samples_table(const std::vector<TrialResult> &samples);

/// Standard header entries: version, parameter hash and values, plus extras.
CsvMeta make_meta(const SystemParams &params, CsvMeta extra = {});

} // namespace ucexpo

#endif // UCEXPO_CSV_HPP
