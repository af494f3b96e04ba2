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

#include "ucexpo/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ucexpo
{

namespace
{

constexpr double pi = std::numbers::pi;

} // namespace

InversionResult gil_pelaez(const CharFn &cf, double x, const InversionOptions &opts)
{
    const double scale = cf.scale;
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("gil_pelaez: CharFn scale must be positive and finite");

    // Mean by central difference; the integrand tends to (mean - x) as t -> 0.
    const double h = 1e-6 / scale;
    const double mean = (cf.eval(h) - cf.eval(-h)).imag() / (2.0 * h);
    const auto integrand = [&](double t) {
        if (t < 1e-9 / scale)
            return mean - x;
        return (cf.eval(t) * std::exp(cplx(0.0, -t * x))).imag() / t;
    };

    InversionResult res;
    double total = 0.0;
    const auto segment = [&](double a, double b) {
        if (++res.segments > opts.max_segments)
            throw NumericsError("gil_pelaez(" + cf.tag + "): no convergence after " + std::to_string(opts.max_segments) +
                                " segments at t = " + std::to_string(a) +
                                ", partial ccdf = " + std::to_string(0.5 + total / pi) +
                                ", tail bound = " + std::to_string(std::abs(cf.eval(a)) / pi));
        total += quad::adaptive_kronrod(integrand, a, b, opts.segment_tol, opts.max_depth, res.splits).value;
    };

    const double t_osc = x != 0.0 ? 2.0 * pi / std::abs(x) : std::numeric_limits<double>::infinity();
    double t = std::min(opts.t_start / scale, t_osc);
    segment(0.0, t);

    // Log-spaced segments until the tail is negligible or the oscillation of
    // e^{-jtx} takes over.
    const auto log_integrand = [&](double u) {
        const double s = std::exp(u);
        return integrand(s) * s;
    };
    double mod_prev = std::abs(cf.eval(t));
    while (t < t_osc)
    {
        const double next = std::min(t * std::exp(opts.log_step), t_osc);
        if (++res.segments > opts.max_segments)
            throw NumericsError("gil_pelaez(" + cf.tag + "): no convergence after " + std::to_string(opts.max_segments) +
                                " segments at t = " + std::to_string(t) +
                                ", partial ccdf = " + std::to_string(0.5 + total / pi) +
                                ", tail bound = " + std::to_string(mod_prev / pi));
        total += quad::adaptive_kronrod(log_integrand, std::log(t), std::log(next), opts.segment_tol, opts.max_depth,
                                        res.splits)
                     .value;
        const double mod = std::abs(cf.eval(next));
        // |phi| ~ t^-p locally: the remaining tail is at most |phi(t)| / (pi p).
        const double p = std::max(std::log(mod_prev / mod) / std::log(next / t), 0.05);
        t = next;
        mod_prev = mod;
        if (std::isfinite(p) && mod / (pi * p) < opts.tail_tol)
        {
            res.ccdf = 0.5 + total / pi;
            break;
        }
        if (mod == 0.0)
            break;
    }

    if (t >= t_osc)
    {
        const double period = 2.0 * pi / std::abs(x);
        for (int k = 0; k < opts.periods; ++k, t += period)
            segment(t, t + period);
        // Two integration-by-parts terms of the remaining oscillatory tail.
        const auto f = [&](double s) { return cf.eval(s) / s; };
        const double d = 1e-3 * period;
        const cplx df = (f(t + d) - f(t - d)) / (2.0 * d);
        const cplx jx(0.0, x);
        total += (std::exp(cplx(0.0, -x * t)) * (f(t) / jx + df / (jx * jx))).imag();
    }

    res.ccdf = 0.5 + total / pi;
    if (!std::isfinite(res.ccdf))
        throw NumericsError("gil_pelaez(" + cf.tag + "): non-finite result");
    res.clamped = res.ccdf < 0.0 || res.ccdf > 1.0;
    return res;
}

double gil_pelaez_ccdf(const CharFn &cf, double x, const InversionOptions &opts)
{
    return std::clamp(gil_pelaez(cf, x, opts).ccdf, 0.0, 1.0);
}

const char *to_string(Variant v)
{
    switch (v)
    {
    case Variant::Full: return "full";
    case Variant::NoIntra: return "no-intra";
    case Variant::IndependentIntra: return "indep-intra";
    }
    return "unknown";
}

Variant parse_variant(const std::string &name)
{
    if (name == "full")
        return Variant::Full;
    if (name == "no-intra" || name == "no_intra")
        return Variant::NoIntra;
    if (name == "indep-intra" || name == "independent_intra" || name == "independent-intra")
        return Variant::IndependentIntra;
    throw std::invalid_argument("unknown variant '" + name + "' (expected full, no-intra or indep-intra)");
}

const char *to_string(CurveKind kind)
{
    switch (kind)
    {
    case CurveKind::RateCcdf: return "rate_ccdf";
    case CurveKind::CoverageCcdf: return "coverage_ccdf";
    case CurveKind::IpdCdf: return "ipd_cdf";
    }
    return "unknown";
}

Analyzer::Analyzer(const SystemParams &params, Variant variant, const AnalyticOptions &analytic,
                   const InversionOptions &inversion)
    : params_(validate(params)), variant_(variant), inv_(inversion), centric_(params, analytic),
      outer_(params, analytic, variant == Variant::IndependentIntra ? params.r_0 : params.r_1),
      centric_moments_(centric_.moments()), outer_moments_(outer_.moments())
{
}

CharFn Analyzer::success_cf(double theta) const
{
    const double eta = variant_ == Variant::Full ? -theta : 0.0;
    const double served = 1.0 - centric_.prob_empty();
    const double useful = centric_.useful_mean() / served;
    const double intra = (centric_moments_.mean - centric_.useful_mean()) / served;
    CharFn cf;
    cf.eval = [this, theta, eta](double t) { return centric_.cf_served(t, eta) * std::conj(outer_.cf(theta * t)); };
    cf.scale = std::max(useful, theta * (outer_moments_.mean + intra));
    cf.tag = "success";
    return cf;
}

CharFn Analyzer::ipd_cf() const
{
    const double eta = variant_ == Variant::Full ? 1.0 : 0.0;
    CharFn cf;
    cf.eval = [this, eta](double t) { return centric_.cf_served(t, eta) * outer_.cf(t); };
    cf.scale = centric_moments_.mean / (1.0 - centric_.prob_empty()) + outer_moments_.mean;
    cf.tag = "ipd";
    return cf;
}

double Analyzer::success_probability(double theta) const
{
    if (!(theta >= 0.0))
        throw std::invalid_argument("success_probability: threshold must be non-negative");
    const InversionResult r = gil_pelaez(success_cf(theta), theta * params_.N_0, inv_);
    clamped_ += r.clamped;
    return (1.0 - centric_.prob_empty()) * std::clamp(r.ccdf, 0.0, 1.0);
}

double Analyzer::ipd_cdf(double watts) const
{
    if (!(watts > 0.0))
        return 0.0;
    const double p0 = centric_.prob_empty();
    double empty = 1.0;
    if (params_.lambda_U > 0.0)
    {
        CharFn outer{[this](double t) { return outer_.cf(t); }, outer_moments_.mean, "outer"};
        const InversionResult r = gil_pelaez(outer, watts, inv_);
        clamped_ += r.clamped;
        empty = 1.0 - std::clamp(r.ccdf, 0.0, 1.0);
    }
    const InversionResult r = gil_pelaez(ipd_cf(), watts, inv_);
    clamped_ += r.clamped;
    return p0 * empty + (1.0 - p0) * (1.0 - std::clamp(r.ccdf, 0.0, 1.0));
}

Moments Analyzer::ipd_moments() const
{
    return moments_total(centric_moments_, outer_moments_);
}

namespace
{

template <typename Eval>
DistCurve sample_curve(CurveKind kind, const std::vector<double> &thresholds, const Analyzer &analyzer, Eval &&eval)
{
    DistCurve curve;
    curve.kind = kind;
    curve.thresholds = thresholds;
    curve.values.resize(thresholds.size());
    curve.errors.resize(thresholds.size());
    const int before = analyzer.clamp_count();
    for (std::size_t i = 0; i < thresholds.size(); ++i)
    {
        try
        {
            curve.values[i] = eval(thresholds[i]);
        }
        catch (const NumericsError &e)
        {
            curve.values[i] = std::numeric_limits<double>::quiet_NaN();
            curve.errors[i] = e.what();
        }
    }
    curve.clamped = analyzer.clamp_count() - before;
    return curve;
}

} // namespace

DistCurve rate_distribution(const Analyzer &analyzer, const std::vector<double> &theta)
{
    return sample_curve(CurveKind::RateCcdf, theta, analyzer, [&](double se) {
        return analyzer.success_probability(std::exp2(se) - 1.0);
    });
}

DistCurve coverage_probability(const Analyzer &analyzer, const std::vector<double> &theta_db)
{
    return sample_curve(CurveKind::CoverageCcdf, theta_db, analyzer,
                        [&](double db) { return analyzer.success_probability(db_to_linear(db)); });
}

DistCurve ipd_distribution(const Analyzer &analyzer, const std::vector<double> &theta_p_dbm)
{
    return sample_curve(CurveKind::IpdCdf, theta_p_dbm, analyzer,
                        [&](double dbm) { return analyzer.ipd_cdf(dbm_to_watts(dbm)); });
}

DistCurve rate_distribution(const SystemParams &params, const std::vector<double> &theta)
{
    return rate_distribution(Analyzer(params), theta);
}

DistCurve coverage_probability(const SystemParams &params, const std::vector<double> &theta_db)
{
    return coverage_probability(Analyzer(params), theta_db);
}

DistCurve ipd_distribution(const SystemParams &params, const std::vector<double> &theta_p_dbm)
{
    return ipd_distribution(Analyzer(params), theta_p_dbm);
}

DistCurve ablation_rate_distribution(const SystemParams &params, const std::vector<double> &theta, Variant variant)
{
    return rate_distribution(Analyzer(params, variant), theta);
}

std::vector<double> linear_grid(double first, double last, double step)
{
    if (!(step > 0.0) || last < first)
        throw std::invalid_argument("linear_grid: need step > 0 and last >= first");
    const auto n = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = first + static_cast<double>(i) * step;
    return grid;
}

std::vector<double> default_theta_db_grid()
{
    return linear_grid(-10.0, 20.0, 0.5);
}

std::vector<double> default_theta_p_dbm_grid()
{
    return linear_grid(-70.0, -30.0, 0.5);
}

} // namespace ucexpo
