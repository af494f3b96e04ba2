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

#ifndef UCEXPO_SIMULATOR_HPP
#define UCEXPO_SIMULATOR_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ucexpo/bounds.hpp"
#include "ucexpo/config.hpp"
#include "ucexpo/geometry.hpp"
#include "ucexpo/rng.hpp"

namespace ucexpo
{

/// One sampled topology. The typical UE is the last row of `ues`, at the origin.
struct Realization
{
    PointSet<double> rrhs;
    PointSet<double> ues;
    ClusterMap clusters;

    Eigen::Index typical() const { return ues.size() - 1; }
};

/// Small-scale fading, unit-power Rayleigh per antenna. `pairs.col(offset[u] + k)`
/// is the channel from RRH C_u[u][k] to UE u; `typical.col(i)` is the channel
/// from RRH i to the typical UE (shared by all beams RRH i radiates).
struct Fading
{
    std::vector<Eigen::Index> offset;
    Eigen::MatrixXcd pairs;   // M x (number of associated pairs)
    Eigen::MatrixXcd typical; // M x (number of RRHs)
};

struct SimOptions
{
    /// Simulation window radius in units of r_1; at least 3 so that every
    /// cluster overlapping the typical UE's is complete.
    double window_factor = 10.0;
    /// Add the mean interference of the UEs outside the window to P_I2.
    bool far_field_correction = true;
    int threads = 1;
};

enum class InterferenceModel
{
    Exact, // coherent MRT beams with Rayleigh fading
    Gamma  // moment-matched gamma coefficient per (RRH, UE) pair
};

const char *to_string(InterferenceModel m);
InterferenceModel parse_model(const std::string &name);

struct TrialResult
{
    double P_S = 0.0;
    double P_I = 0.0;
    double P_I1 = 0.0; // from RRHs serving the typical UE
    double P_I2 = 0.0; // from the other RRHs
    double sinr = 0.0;
    double rate = 0.0; // bit/s/Hz
    double ipd = 0.0;  // P_S + P_I, watts
    int n_R = 0;       // size of the typical UE's cluster
};

struct EmpiricalStats
{
    std::vector<TrialResult> samples;
    DistCurve coverage; // default SIR grid, dB
    DistCurve ipd;      // default IPD grid, dBm
    Moments centric;    // P_S + P_I1
    Moments outer;      // P_I2
    Moments total;      // P_S + P_I
};

double window_radius(const SystemParams &params, const SimOptions &opts = {});

Realization sample_realization(const SystemParams &params, double window_radius, Rng &rng);
/// With `typical_only`, only the channels of the typical UE are drawn and
/// `pairs` holds no columns for the other UEs.
Fading sample_fading(const Realization &realization, int M, Rng &rng, bool typical_only = false);

/// Powers at the typical UE for one realization. `far_field` is added to P_I2.
TrialResult evaluate_exact(const SystemParams &params, const Realization &realization, const Fading &fading,
                           double far_field = 0.0);
TrialResult evaluate_gamma(const SystemParams &params, const Realization &realization, const Fading &fading,
                           Rng &rng, double far_field = 0.0);

/// Mean interference at the origin from served UEs beyond `radius`.
double far_field_mean(const SystemParams &params, double radius);

/// One complete trial from its own stream.
TrialResult run_trial(const SystemParams &params, InterferenceModel model, std::uint64_t seed, std::uint64_t index,
                      const SimOptions &opts = {});

EmpiricalStats run_trials(const SystemParams &params, long n_trials, InterferenceModel model, std::uint64_t seed,
                          const SimOptions &opts = {});

struct BudgetReport
{
    std::vector<Eigen::Index> ues;  // UEs with a non-empty cluster
    std::vector<double> totals;     // sum_i P_t |g_iu|^2 / |g_u|^2
    std::vector<Eigen::Index> idle; // UEs with an empty cluster
};

BudgetReport power_budget_check(const SystemParams &params, const Realization &realization, const Fading &fading);

// ---- Empirical distributions -------------------------------------------

DistCurve empirical_coverage(const std::vector<TrialResult> &samples, const std::vector<double> &theta_db);
DistCurve empirical_rate_ccdf(const std::vector<TrialResult> &samples, const std::vector<double> &theta);
DistCurve empirical_ipd_cdf(const std::vector<TrialResult> &samples, const std::vector<double> &theta_p_dbm);

/// Empirical F and G with 95% binomial (Wilson) bands in lower/upper.
std::pair<JointSurface, JointSurface> empirical_joint(const std::vector<TrialResult> &samples,
                                                      const std::vector<double> &theta_db,
                                                      const std::vector<double> &theta_p_dbm);

/// Half-width of the 95% normal-approximation interval of a proportion.
double binomial_half_width(double p, long n);

} // namespace ucexpo

#endif // UCEXPO_SIMULATOR_HPP
