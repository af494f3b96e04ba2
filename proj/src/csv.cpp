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

#include "ucexpo/csv.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#ifndef UCEXPO_VERSION
#define UCEXPO_VERSION "unknown"
#endif

namespace ucexpo
{

const std::vector<double> &Table::column(const std::string &name) const
{
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name)
            return data[c];
    throw std::out_of_range("table has no column '" + name + "'");
}

void Table::add_column(const std::string &name, std::vector<double> values)
{
    if (!data.empty() && values.size() != rows())
        throw std::invalid_argument("column '" + name + "' has " + std::to_string(values.size()) + " rows, table has " +
                                    std::to_string(rows()));
    columns.push_back(name);
    data.push_back(std::move(values));
}

namespace
{

std::string format(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

void write_table(std::ostream &os, const CsvMeta &meta, const Table &table)
{
    for (const auto &[k, v] : meta)
        os << "# " << k << ": " << v << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
    os << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r)
    {
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            os << (c ? "," : "") << format(table.data[c][r]);
        os << '\n';
    }
    if (!os)
        throw IoError("failed writing CSV output");
}

Table read_table(std::istream &is)
{
    Table t;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.rfind("# ", 0) == 0)
        {
            const auto colon = line.find(": ");
            if (colon != std::string::npos)
                t.meta[line.substr(2, colon - 2)] = line.substr(colon + 2);
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            cells.push_back(cell);
        if (!header)
        {
            t.columns = cells;
            t.data.resize(cells.size());
            header = true;
            continue;
        }
        if (cells.size() != t.columns.size())
            throw IoError("CSV line " + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) +
                          " fields, got " + std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c)
        {
            try
            {
                t.data[c].push_back(cells[c] == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(cells[c]));
            }
            catch (const std::logic_error &)
            {
                throw IoError("CSV line " + std::to_string(lineno) + ": bad number '" + cells[c] + "'");
            }
        }
    }
    if (!header)
        throw IoError("CSV input has no header row");
    return t;
}

Table read_table_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return read_table(in);
}

void write_table_file(const std::string &path, const CsvMeta &meta, const Table &table)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    write_table(out, meta, table);
}

Table surface_table(const JointSurface &s)
{
    const bool single = s.kind == SurfaceKind::ConditionalMean;
    const bool empirical = s.estimate.size() > 0;
    std::vector<double> th, thp, lo, up, est;
    for (std::size_t i = 0; i < s.theta.size(); ++i)
        for (Eigen::Index j = 0; j < s.lower.cols(); ++j)
        {
            th.push_back(s.theta[i]);
            if (!single)
                thp.push_back(s.theta_p[j]);
            lo.push_back(s.lower(i, j));
            up.push_back(s.upper(i, j));
            if (empirical)
                est.push_back(s.estimate(i, j));
        }
    Table t;
    t.add_column(s.rate_kind == CurveKind::RateCcdf ? "theta" : "theta_db", std::move(th));
    if (!single)
        t.add_column("theta_p_dbm", std::move(thp));
    if (empirical)
        t.add_column("estimate", std::move(est));
    t.add_column("lower", std::move(lo));
    t.add_column("upper", std::move(up));
    return t;
}

Table samples_table(const std::vector<TrialResult> &samples)
{
    std::vector<double> ps, pi1, pi2, rate, ipd, nr;
    for (const auto &s : samples)
    {
        ps.push_back(s.P_S);
        pi1.push_back(s.P_I1);
        pi2.push_back(s.P_I2);
        rate.push_back(s.rate);
        ipd.push_back(s.ipd);
        nr.push_back(s.n_R);
    }
    Table t;
    t.add_column("P_S", std::move(ps));
    t.add_column("P_I1", std::move(pi1));
    t.add_column("P_I2", std::move(pi2));
    t.add_column("rate", std::move(rate));
    t.add_column("ipd", std::move(ipd));
    t.add_column("n_R", std::move(nr));
    return t;
}

CsvMeta make_meta(const SystemParams &params, CsvMeta extra)
{
    CsvMeta meta{{"ucexpo", UCEXPO_VERSION}, {"params_hash", params_hash(params)}, {"params", to_string(params)}};
    meta.insert(meta.end(), extra.begin(), extra.end());
    return meta;
}

} // namespace ucexpo
