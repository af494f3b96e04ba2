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

#ifndef UCEXPO_EXPERIMENT_HPP
#define UCEXPO_EXPERIMENT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ucexpo/bounds.hpp"
#include "ucexpo/csv.hpp"
#include "ucexpo/simulator.hpp"

namespace ucexpo
{

enum class Task
{
    Simulate,
    Analyze,
    Ablation,
    Figure,
    Sweep,
    Compare,
    Report
};

Task parse_task(const std::string &name);
const char *to_string(Task task);

struct ExperimentSpec
{
    Task task = Task::Analyze;
    SystemParams params = {};
    std::string figure; // fig3, fig5, fig6, fig8, fig9

    std::vector<double> theta_db = default_theta_db_grid();
    std::vector<double> theta_p_dbm = default_theta_p_dbm_grid();

    long trials = 100000;
    std::uint64_t seed = 1;
    InterferenceModel model = InterferenceModel::Exact;
    Variant variant = Variant::Full;
    SimOptions sim = {};
    AnalyticOptions analytic = {};
    InversionOptions inversion = {};

    /// Output path; tasks writing several tables derive names from it.
    std::string out = "ucexpo";
    bool gnuplot = false;
    bool write_samples = false;

    // sweep
    SurfaceKind metric = SurfaceKind::G;
    double sweep_theta_db = 5.0;
    double sweep_theta_p_dbm = -55.0;
    std::vector<double> densities; // n_av_R values; empty selects 1..30

    // report
    std::vector<std::string> inputs; // two CSV files
    std::string column_a, column_b;  // defaults: second column of each
    double tolerance = 0.05;
};

/// Caption parameters of the reproduced figures: fig3, fig5, fig6a, fig6b,
/// fig8 (n_av_R must still be chosen) and fig9. Throws on unknown names.
SystemParams preset_params(const std::string &name);

/// Deviation between two curves sampled on the same grid.
struct Deviation
{
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double sup_gap = 0.0; // max over the grid of |a - b|, NaN points skipped
    std::size_t points = 0;
    bool pass = true;
};

Deviation compare_curves(const std::vector<double> &grid_a, const std::vector<double> &a,
                         const std::vector<double> &grid_b, const std::vector<double> &b, double tolerance);

/// "first:last:step" or a comma-separated list.
std::vector<double> parse_grid(const std::string &text);
/// Number with an optional unit suffix (dB, dBm), e.g. "5dB" or "-55dBm".
double parse_level(const std::string &text);

/// Path for one of several outputs: "run.csv" + "ipd" -> "run_ipd.csv".
std::string derived_path(const std::string &out, const std::string &name);

/// True when the largest finite value is neither the first nor the last.
bool interior_maximum(const std::vector<double> &values);

/// Executes the task, writing CSV artifacts and a short summary to `log`.
/// Throws ValidationError, NumericsError or IoError.
void run(const ExperimentSpec &spec, std::ostream &log);

} // namespace ucexpo

#endif // UCEXPO_EXPERIMENT_HPP
