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

#include "ucexpo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ucexpo
{

const char *to_string(SurfaceKind kind)
{
    switch (kind)
    {
    case SurfaceKind::F: return "F";
    case SurfaceKind::G: return "G";
    case SurfaceKind::K: return "K";
    case SurfaceKind::ConditionalMean: return "conditional_mean";
    }
    return "unknown";
}

namespace
{

void check_curves(const DistCurve &rate, const DistCurve &ipd)
{
    if (rate.kind == CurveKind::IpdCdf)
        throw std::invalid_argument("bounds: first curve must be a rate or coverage CCDF");
    if (ipd.kind != CurveKind::IpdCdf)
        throw std::invalid_argument("bounds: second curve must be an IPD CDF");
    for (const DistCurve *c : {&rate, &ipd})
    {
        if (c->thresholds.empty() || c->thresholds.size() != c->values.size())
            throw std::invalid_argument("bounds: curve thresholds and values differ in length");
        if (!std::is_sorted(c->thresholds.begin(), c->thresholds.end()))
            throw std::invalid_argument("bounds: curve thresholds must be ascending");
    }
}

JointSurface empty_surface(SurfaceKind kind, const DistCurve &rate, const DistCurve &ipd)
{
    JointSurface s;
    s.kind = kind;
    s.rate_kind = rate.kind;
    s.theta = rate.thresholds;
    s.theta_p = ipd.thresholds;
    s.lower.resize(rate.values.size(), ipd.values.size());
    s.upper.resizeLike(s.lower);
    s.errors.resize(rate.values.size());
    return s;
}

} // namespace

std::pair<JointSurface, JointSurface> frechet_bounds(const DistCurve &rate, const DistCurve &ipd)
{
    check_curves(rate, ipd);
    JointSurface F = empty_surface(SurfaceKind::F, rate, ipd);
    JointSurface G = empty_surface(SurfaceKind::G, rate, ipd);
    for (std::size_t i = 0; i < rate.values.size(); ++i)
        for (std::size_t j = 0; j < ipd.values.size(); ++j)
        {
            const double pr = rate.values[i], pe = ipd.values[j];
            // the outer min only absorbs rounding when a marginal is 0 or 1
            F.upper(i, j) = std::min(pr, 1.0 - pe);
            F.lower(i, j) = std::min(std::max(0.0, pr - pe), F.upper(i, j));
            G.upper(i, j) = std::min(pr, pe);
            G.lower(i, j) = std::min(std::max(0.0, pr + pe - 1.0), G.upper(i, j));
        }
    return {F, G};
}

JointSurface conditional_bounds(const DistCurve &rate, const DistCurve &ipd, ConditionalKind kind, double tail)
{
    check_curves(rate, ipd);
    const auto [F, G] = frechet_bounds(rate, ipd);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    if (kind == ConditionalKind::K)
    {
        JointSurface K = empty_surface(SurfaceKind::K, rate, ipd);
        for (std::size_t i = 0; i < rate.values.size(); ++i)
        {
            const double pr = rate.values[i];
            if (!(pr > 0.0))
            {
                K.lower.row(i).setConstant(nan);
                K.upper.row(i).setConstant(nan);
                K.errors[i] = "conditioning event has zero probability";
                continue;
            }
            K.lower.row(i) = G.lower.row(i) / pr;
            K.upper.row(i) = G.upper.row(i) / pr;
        }
        return K;
    }

    // E[X | A] = int_0^inf (1 - P[X < w | A]) dw, trapezoid in watts with the
    // CDF equal to 0 at w = 0. The lower bound on K gives the upper bound on
    // the mean and vice versa.
    JointSurface m;
    m.kind = SurfaceKind::ConditionalMean;
    m.rate_kind = rate.kind;
    m.theta = rate.thresholds;
    m.lower.resize(rate.values.size(), 1);
    m.upper.resizeLike(m.lower);
    m.errors.resize(rate.values.size());

    std::vector<double> w{0.0};
    for (double dbm : ipd.thresholds)
        w.push_back(dbm_to_watts(dbm));

    for (std::size_t i = 0; i < rate.values.size(); ++i)
    {
        const double pr = rate.values[i];
        if (!(pr > 0.0))
        {
            m.lower(i, 0) = m.upper(i, 0) = nan;
            m.errors[i] = "conditioning event has zero probability";
            continue;
        }
        double from_lower = 0.0, from_upper = 0.0;
        double prev_l = 1.0, prev_u = 1.0;
        for (std::size_t j = 1; j < w.size(); ++j)
        {
            const double l = 1.0 - G.lower(i, j - 1) / pr, u = 1.0 - G.upper(i, j - 1) / pr;
            const double h = 0.5 * (w[j] - w[j - 1]);
            from_lower += h * (prev_l + l);
            from_upper += h * (prev_u + u);
            prev_l = l;
            prev_u = u;
        }
        if (prev_l >= tail || prev_u >= tail)
            m.errors[i] = "IPD grid too short: integrand " + std::to_string(std::max(prev_l, prev_u)) +
                          " at the last point";
        m.lower(i, 0) = std::min(from_lower, from_upper);
        m.upper(i, 0) = std::max(from_lower, from_upper);
    }
    return m;
}

DistCurve extend_ipd_curve(const Analyzer &analyzer, DistCurve ipd, double min_rate, double tail, int max_points)
{
    if (ipd.kind != CurveKind::IpdCdf || ipd.thresholds.size() < 2)
        throw std::invalid_argument("extend_ipd_curve: need an IPD CDF with at least two points");
    const double step = ipd.thresholds.back() - ipd.thresholds[ipd.thresholds.size() - 2];
    for (int k = 0; k < max_points && 1.0 - ipd.values.back() >= tail * min_rate; ++k)
    {
        const double dbm = ipd.thresholds.back() + step;
        ipd.thresholds.push_back(dbm);
        ipd.values.push_back(analyzer.ipd_cdf(dbm_to_watts(dbm)));
        ipd.errors.emplace_back();
    }
    return ipd;
}

} // namespace ucexpo
