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

#ifndef UCEXPO_BOUNDS_HPP
#define UCEXPO_BOUNDS_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ucexpo/inversion.hpp"

namespace ucexpo
{

enum class SurfaceKind
{
    F,              // P[rate > theta, IPD > theta']
    G,              // P[rate > theta, IPD < theta']
    K,              // P[IPD < theta' | rate > theta]
    ConditionalMean // E[IPD | rate > theta], watts, single column
};

const char *to_string(SurfaceKind kind);

/// Lower and upper bound surfaces; row i is theta[i], column j is theta_p[j].
struct JointSurface
{
    SurfaceKind kind = SurfaceKind::G;
    CurveKind rate_kind = CurveKind::CoverageCcdf;
    std::vector<double> theta;   // unit of the rate curve
    std::vector<double> theta_p; // dBm
    Eigen::MatrixXd lower, upper;
    Eigen::MatrixXd estimate;        // empirical surfaces only; lower/upper are then 95% bands
    std::vector<std::string> errors; // per theta row, empty when fine
};

/// Pointwise Frechet bounds on F and G from the two marginals.
std::pair<JointSurface, JointSurface> frechet_bounds(const DistCurve &rate, const DistCurve &ipd);

enum class ConditionalKind
{
    K,
    Mean
};

/// Bounds conditioned on the rate event. For the mean, the IPD curve must
/// extend far enough that both integrands have dropped below `tail` at its
/// last point (see extend_ipd_curve); rows with P_r(theta) = 0 are NaN.
JointSurface conditional_bounds(const DistCurve &rate, const DistCurve &ipd, ConditionalKind kind,
                                double tail = 1e-6);

/// Appends points to an IPD CDF (same step as its last two points) until
/// 1 - P_e < tail * min_rate, so conditional mean bounds can be integrated.
DistCurve extend_ipd_curve(const Analyzer &analyzer, DistCurve ipd, double min_rate, double tail = 1e-6,
                           int max_points = 400);

} // namespace ucexpo

#endif // UCEXPO_BOUNDS_HPP
