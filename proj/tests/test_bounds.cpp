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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "ucexpo/bounds.hpp"

using namespace ucexpo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

DistCurve curve(CurveKind kind, std::vector<double> thresholds, std::vector<double> values)
{
    DistCurve c;
    c.kind = kind;
    c.thresholds = std::move(thresholds);
    c.values = std::move(values);
    c.errors.resize(c.values.size());
    return c;
}

// Exponential IPD with mean w0 watts on a dBm grid.
DistCurve exponential_ipd(double w0, double first, double last, double step)
{
    DistCurve c = curve(CurveKind::IpdCdf, linear_grid(first, last, step), {});
    for (double dbm : c.thresholds)
        c.values.push_back(-std::expm1(-dbm_to_watts(dbm) / w0));
    c.errors.resize(c.values.size());
    return c;
}

} // namespace

TEST_CASE("Frechet bounds from the marginals")
{
    const DistCurve rate = curve(CurveKind::CoverageCcdf, {5.0}, {0.7});
    const DistCurve ipd = curve(CurveKind::IpdCdf, {-55.0}, {0.6});
    const auto [F, G] = frechet_bounds(rate, ipd);
    CHECK(F.kind == SurfaceKind::F);
    CHECK(G.kind == SurfaceKind::G);
    CHECK_THAT(G.lower(0, 0), WithinAbs(0.3, 1e-15));
    CHECK_THAT(G.upper(0, 0), WithinAbs(0.6, 1e-15));
    CHECK_THAT(F.lower(0, 0), WithinAbs(0.1, 1e-15));
    CHECK_THAT(F.upper(0, 0), WithinAbs(0.4, 1e-15));
}

TEST_CASE("bound surfaces are consistent on a grid")
{
    std::vector<double> pr, pe;
    for (int k = 0; k <= 10; ++k)
    {
        pr.push_back(1.0 - 0.1 * k);
        pe.push_back(0.1 * k);
    }
    const DistCurve rate = curve(CurveKind::RateCcdf, linear_grid(0.0, 5.0, 0.5), pr);
    const DistCurve ipd = curve(CurveKind::IpdCdf, linear_grid(-70.0, -20.0, 5.0), pe);
    const auto [F, G] = frechet_bounds(rate, ipd);
    CHECK(F.rate_kind == CurveKind::RateCcdf);
    for (Eigen::Index i = 0; i < F.lower.rows(); ++i)
        for (Eigen::Index j = 0; j < F.lower.cols(); ++j)
        {
            CHECK(F.lower(i, j) <= F.upper(i, j));
            CHECK(G.lower(i, j) <= G.upper(i, j));
            CHECK(F.lower(i, j) >= 0.0);
            CHECK(G.upper(i, j) <= 1.0);
            CHECK(F.upper(i, j) + G.upper(i, j) >= pr[i] - 1e-15);
            CHECK(F.lower(i, j) + G.lower(i, j) <= pr[i] + 1e-15);
        }

    const JointSurface K = conditional_bounds(rate, ipd, ConditionalKind::K);
    CHECK(K.kind == SurfaceKind::K);
    for (Eigen::Index i = 0; i + 1 < K.lower.rows(); ++i)
    {
        CHECK(K.errors[i].empty());
        CHECK((K.upper.row(i).array() <= 1.0 + 1e-15).all());
        CHECK((K.lower.row(i).array() <= K.upper.row(i).array()).all());
    }
    // last rate value is 0
    CHECK(std::isnan(K.lower(K.lower.rows() - 1, 0)));
    CHECK_FALSE(K.errors.back().empty());
}

TEST_CASE("conditional mean bounds")
{
    const double w0 = 1e-6;
    const DistCurve ipd = exponential_ipd(w0, -100.0, 10.0, 0.1);
    const DistCurve rate = curve(CurveKind::CoverageCcdf, {-5.0, 0.0, 5.0, 10.0}, {0.9, 0.7, 0.4, 0.1});
    const JointSurface m = conditional_bounds(rate, ipd, ConditionalKind::Mean);
    CHECK(m.kind == SurfaceKind::ConditionalMean);
    REQUIRE(m.lower.cols() == 1);
    for (Eigen::Index i = 0; i < m.lower.rows(); ++i)
    {
        CHECK(m.errors[i].empty());
        CHECK(m.lower(i, 0) <= m.upper(i, 0));
        // independent events: the conditional mean is the plain mean
        CHECK(m.lower(i, 0) <= w0 * 1.001);
        CHECK(m.upper(i, 0) >= w0 * 0.999);
    }
    // with the rate event certain, the bounds collapse onto the mean
    const JointSurface sure =
        conditional_bounds(curve(CurveKind::CoverageCcdf, {0.0}, {1.0}), ipd, ConditionalKind::Mean);
    CHECK_THAT(sure.lower(0, 0), WithinRel(w0, 2e-3));
    CHECK_THAT(sure.upper(0, 0), WithinRel(w0, 2e-3));

    SECTION("short grid is flagged")
    {
        const DistCurve short_ipd = exponential_ipd(w0, -100.0, -30.0, 0.1);
        const JointSurface s = conditional_bounds(rate, short_ipd, ConditionalKind::Mean);
        CHECK_FALSE(s.errors.front().empty());
    }
}

TEST_CASE("bounds reject malformed input")
{
    const DistCurve rate = curve(CurveKind::CoverageCcdf, {0.0, 1.0}, {0.8, 0.5});
    const DistCurve ipd = curve(CurveKind::IpdCdf, {-60.0, -50.0}, {0.2, 0.6});
    CHECK_THROWS_AS(frechet_bounds(ipd, ipd), std::invalid_argument);
    CHECK_THROWS_AS(frechet_bounds(rate, rate), std::invalid_argument);
    CHECK_THROWS_AS(frechet_bounds(rate, curve(CurveKind::IpdCdf, {}, {})), std::invalid_argument);
    CHECK_THROWS_AS(frechet_bounds(rate, curve(CurveKind::IpdCdf, {-50.0, -60.0}, {0.6, 0.2})), std::invalid_argument);
    CHECK_THROWS_AS(frechet_bounds(rate, curve(CurveKind::IpdCdf, {-50.0}, {0.6, 0.2})), std::invalid_argument);
}

TEST_CASE("IPD curve extension")
{
    SystemParams p = with_cluster_averages(SystemParams{}, 4.0, 2.5);
    p.M = 4;
    const Analyzer analyzer(p);
    const DistCurve ipd = ipd_distribution(analyzer, {-60.0, -50.0});
    const DistCurve longer = extend_ipd_curve(analyzer, ipd, 0.3);
    REQUIRE(longer.thresholds.size() > ipd.thresholds.size());
    CHECK(1.0 - longer.values.back() < 1e-6 * 0.3);
    CHECK_THAT(longer.thresholds[2] - longer.thresholds[1], WithinAbs(10.0, 1e-12));
    CHECK_THROWS_AS(extend_ipd_curve(analyzer, curve(CurveKind::IpdCdf, {-50.0}, {0.5}), 0.3), std::invalid_argument);
}
