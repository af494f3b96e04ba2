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

#include "ucexpo/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "ucexpo/analytic.hpp"

namespace ucexpo
{

const char *to_string(InterferenceModel m)
{
    return m == InterferenceModel::Exact ? "exact" : "gamma";
}

InterferenceModel parse_model(const std::string &name)
{
    if (name == "exact")
        return InterferenceModel::Exact;
    if (name == "gamma" || name == "gamma_approx")
        return InterferenceModel::Gamma;
    throw std::invalid_argument("unknown model '" + name + "' (expected exact or gamma)");
}

double window_radius(const SystemParams &params, const SimOptions &opts)
{
    if (!(opts.window_factor >= 3.0))
        throw ValidationError(ValidationCode::WindowTooSmall,
                              "simulation window must be at least 3 r_1, got " + std::to_string(opts.window_factor) +
                                  " r_1");
    return opts.window_factor * params.r_1;
}

Realization sample_realization(const SystemParams &params, double window_radius, Rng &rng)
{
    Realization real;
    // The typical UE sits at the origin, so no RRH may lie within r_0 of it.
    real.rrhs = exclude_origin(sample_ppp(params.lambda_R, window_radius, rng), params.r_0);
    real.ues = sample_ues(params.lambda_U, window_radius, real.rrhs, params.r_0, rng);
    real.clusters = build_association(real.rrhs, real.ues, params.r_1);
    return real;
}

namespace
{

// Circularly symmetric CN(0, 1) entries. Boost's ziggurat sampler is several
// times faster than std::normal_distribution, which dominates the trial cost.
template <typename Block>
void fill_gaussian(Block &&m, Rng &rng)
{
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
        {
            const double re = normal(rng);
            m(i, j) = cplx(re, normal(rng));
        }
}

} // namespace

Fading sample_fading(const Realization &real, int M, Rng &rng, bool typical_only)
{
    Fading fad;
    const auto &C = real.clusters.C_u;
    const Eigen::Index star = real.typical();
    fad.offset.resize(C.size() + 1);
    Eigen::Index n = 0;
    for (std::size_t u = 0; u < C.size(); ++u)
    {
        fad.offset[u] = n;
        if (!typical_only || Eigen::Index(u) == star)
            n += static_cast<Eigen::Index>(C[u].size());
    }
    fad.offset[C.size()] = n;

    fad.typical.resize(M, real.rrhs.size());
    fill_gaussian(fad.typical, rng);
    fad.pairs.resize(M, n);
    for (std::size_t u = 0; u < C.size(); ++u)
    {
        if (typical_only && Eigen::Index(u) != star)
            continue;
        auto block = fad.pairs.middleCols(fad.offset[u], C[u].size());
        if (Eigen::Index(u) == star)
            for (std::size_t k = 0; k < C[u].size(); ++k)
                block.col(k) = fad.typical.col(C[u][k]);
        else
            fill_gaussian(block, rng);
    }
    return fad;
}

namespace
{

double path_gain(const SystemParams &params, double kappa, double r)
{
    return std::pow(r, -params.alpha) / kappa;
}

TrialResult finish(const SystemParams &params, TrialResult t, double far_field)
{
    t.P_I2 += far_field;
    t.P_I = t.P_I1 + t.P_I2;
    const double denom = t.P_I + params.N_0;
    if (denom > 0.0)
        t.sinr = t.P_S / denom;
    else
        t.sinr = t.P_S > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    t.rate = std::log2(1.0 + t.sinr);
    t.ipd = t.P_S + t.P_I;
    return t;
}

// P_S = P_t |g_u*|^2 under MRT with the full budget on the typical UE.
double useful_power(const SystemParams &params, double kappa, const Realization &real, const Fading &fad)
{
    const Eigen::Index star = real.typical();
    const auto &dist = real.clusters.distances[star];
    double acc = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k)
        acc += path_gain(params, kappa, dist[k]) * fad.pairs.col(fad.offset[star] + k).squaredNorm();
    return params.P_t * acc;
}

std::vector<char> centric_mask(const Realization &real)
{
    std::vector<char> mask(real.rrhs.size(), 0);
    for (int i : real.clusters.C_u[real.typical()])
        mask[i] = 1;
    return mask;
}

} // namespace

TrialResult evaluate_exact(const SystemParams &params, const Realization &real, const Fading &fad, double far_field)
{
    const double kappa = derive(params).kappa;
    const Eigen::Index star = real.typical();
    const auto mask = centric_mask(real);

    TrialResult t;
    t.n_R = static_cast<int>(real.clusters.C_u[star].size());
    t.P_S = useful_power(params, kappa, real, fad);

    // Amplitude gain of each RRH towards the typical UE
    Eigen::VectorXd amp(real.rrhs.size());
    for (Eigen::Index i = 0; i < real.rrhs.size(); ++i)
        amp[i] = std::sqrt(path_gain(params, kappa, real.rrhs.points.row(i).norm()));

    for (Eigen::Index u = 0; u < star; ++u)
    {
        const auto &C = real.clusters.C_u[u];
        if (C.empty())
            continue;
        const auto &dist = real.clusters.distances[u];
        double norm2 = 0.0;
        cplx a1(0.0, 0.0), a2(0.0, 0.0);
        for (std::size_t k = 0; k < C.size(); ++k)
        {
            const auto h = fad.pairs.col(fad.offset[u] + k);
            const double l = path_gain(params, kappa, dist[k]);
            norm2 += l * h.squaredNorm();
            // g_iu^H g_iu*: beam of UE u seen through the channel of the typical UE
            const cplx term = std::sqrt(l) * amp[C[k]] * h.dot(fad.typical.col(C[k]));
            (mask[C[k]] ? a1 : a2) += term;
        }
        // Coherent sum over the cluster of u, split between the two RRH groups in
        // proportion to their own coherent powers.
        const double total = params.P_t * std::norm(a1 + a2) / norm2;
        const double p1 = std::norm(a1), p2 = std::norm(a2);
        if (p1 + p2 > 0.0)
        {
            t.P_I1 += total * p1 / (p1 + p2);
            t.P_I2 += total * p2 / (p1 + p2);
        }
    }
    return finish(params, t, far_field);
}

TrialResult evaluate_gamma(const SystemParams &params, const Realization &real, const Fading &fad, Rng &rng,
                           double far_field)
{
    const double kappa = derive(params).kappa;
    const Eigen::Index star = real.typical();
    const auto mask = centric_mask(real);

    TrialResult t;
    t.n_R = static_cast<int>(real.clusters.C_u[star].size());
    t.P_S = useful_power(params, kappa, real, fad);

    std::vector<GammaApprox> fits;
    for (Eigen::Index u = 0; u < star; ++u)
    {
        const auto &C = real.clusters.C_u[u];
        const int n = static_cast<int>(C.size());
        if (n == 0)
            continue;
        while (static_cast<int>(fits.size()) < n)
            fits.push_back(gamma_mm(static_cast<int>(fits.size()) + 1, params.M));
        std::gamma_distribution<double> gamma(fits[n - 1].k, fits[n - 1].s);
        for (int i : C)
        {
            const double p = params.P_t * path_gain(params, kappa, real.rrhs.points.row(i).norm()) * gamma(rng);
            (mask[i] ? t.P_I1 : t.P_I2) += p;
        }
    }
    return finish(params, t, far_field);
}

double far_field_mean(const SystemParams &params, double radius)
{
    constexpr double pi = std::numbers::pi;
    const double r0 = params.r_0, r1 = params.r_1;
    // UEs outside every exclusion disk, with at least one RRH in range
    const double served = params.lambda_U * std::exp(-params.lambda_R * pi * r0 * r0) *
                          (1.0 - std::exp(-params.lambda_R * pi * (r1 * r1 - r0 * r0)));
    return params.P_t / derive(params).kappa * served * 2.0 * pi * std::pow(radius, 2.0 - params.alpha) /
           (params.alpha - 2.0);
}

TrialResult run_trial(const SystemParams &params, InterferenceModel model, std::uint64_t seed, std::uint64_t index,
                      const SimOptions &opts)
{
    const double R = window_radius(params, opts);
    const double far = opts.far_field_correction ? far_field_mean(params, R) : 0.0;
    Rng rng = make_stream(seed, index);
    const Realization real = sample_realization(params, R, rng);
    if (model == InterferenceModel::Exact)
        return evaluate_exact(params, real, sample_fading(real, params.M, rng), far);
    const Fading fad = sample_fading(real, params.M, rng, true);
    return evaluate_gamma(params, real, fad, rng, far);
}

namespace
{

Moments sample_moments(const std::vector<TrialResult> &s, double (*get)(const TrialResult &))
{
    double mean = 0.0;
    for (const auto &t : s)
        mean += get(t);
    mean /= static_cast<double>(s.size());
    double var = 0.0;
    for (const auto &t : s)
        var += (get(t) - mean) * (get(t) - mean);
    return {mean, s.size() > 1 ? var / static_cast<double>(s.size() - 1) : 0.0};
}

} // namespace

EmpiricalStats run_trials(const SystemParams &params, long n_trials, InterferenceModel model, std::uint64_t seed,
                          const SimOptions &opts)
{
    validate(params);
    if (n_trials < 1)
        throw std::invalid_argument("run_trials: need at least one trial");
    window_radius(params, opts);

    EmpiricalStats stats;
    stats.samples.resize(n_trials);
    const int workers = std::clamp(opts.threads, 1, static_cast<int>(std::min<long>(n_trials, 256)));
    const auto work = [&](long begin, long end) {
        for (long k = begin; k < end; ++k)
            stats.samples[k] = run_trial(params, model, seed, static_cast<std::uint64_t>(k), opts);
    };
    if (workers == 1)
        work(0, n_trials);
    else
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work, n_trials * w / workers, n_trials * (w + 1) / workers);
        for (auto &th : pool)
            th.join();
    }

    stats.centric = sample_moments(stats.samples, [](const TrialResult &t) { return t.P_S + t.P_I1; });
    stats.outer = sample_moments(stats.samples, [](const TrialResult &t) { return t.P_I2; });
    stats.total = sample_moments(stats.samples, [](const TrialResult &t) { return t.ipd; });
    stats.coverage = empirical_coverage(stats.samples, default_theta_db_grid());
    stats.ipd = empirical_ipd_cdf(stats.samples, default_theta_p_dbm_grid());
    return stats;
}

BudgetReport power_budget_check(const SystemParams &params, const Realization &real, const Fading &fad)
{
    const double kappa = derive(params).kappa;
    BudgetReport report;
    for (Eigen::Index u = 0; u < real.ues.size(); ++u)
    {
        const auto &dist = real.clusters.distances[u];
        if (dist.empty())
        {
            report.idle.push_back(u);
            continue;
        }
        if (fad.offset[u + 1] - fad.offset[u] != static_cast<Eigen::Index>(dist.size()))
            throw std::invalid_argument("power_budget_check: fading lacks the channels of UE " + std::to_string(u));
        Eigen::VectorXd g2(dist.size());
        for (std::size_t k = 0; k < dist.size(); ++k)
            g2[k] = path_gain(params, kappa, dist[k]) * fad.pairs.col(fad.offset[u] + k).squaredNorm();
        // power allocated to RRH i: P_t |w_iu|^2 = P_t |g_iu|^2 / |g_u|^2
        report.ues.push_back(u);
        report.totals.push_back((params.P_t * g2.array() / g2.sum()).sum());
    }
    return report;
}

// ---- Empirical distributions -------------------------------------------

namespace
{

std::vector<double> sorted_values(const std::vector<TrialResult> &s, double TrialResult::*field)
{
    std::vector<double> v;
    v.reserve(s.size());
    for (const auto &t : s)
        v.push_back(t.*field);
    std::sort(v.begin(), v.end());
    return v;
}

DistCurve tail_curve(CurveKind kind, const std::vector<double> &sorted, const std::vector<double> &thresholds,
                     double (*to_value)(double))
{
    if (sorted.empty())
        throw std::invalid_argument("empirical curve: no samples");
    DistCurve c;
    c.kind = kind;
    c.thresholds = thresholds;
    c.errors.resize(thresholds.size());
    const double n = static_cast<double>(sorted.size());
    for (double th : thresholds)
    {
        const double x = to_value(th);
        if (kind == CurveKind::IpdCdf)
            c.values.push_back(double(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) / n);
        else
            c.values.push_back(double(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x)) / n);
    }
    return c;
}

} // namespace

DistCurve empirical_coverage(const std::vector<TrialResult> &samples, const std::vector<double> &theta_db)
{
    return tail_curve(CurveKind::CoverageCcdf, sorted_values(samples, &TrialResult::sinr), theta_db, db_to_linear);
}

DistCurve empirical_rate_ccdf(const std::vector<TrialResult> &samples, const std::vector<double> &theta)
{
    return tail_curve(CurveKind::RateCcdf, sorted_values(samples, &TrialResult::rate), theta,
                      [](double x) { return x; });
}

DistCurve empirical_ipd_cdf(const std::vector<TrialResult> &samples, const std::vector<double> &theta_p_dbm)
{
    return tail_curve(CurveKind::IpdCdf, sorted_values(samples, &TrialResult::ipd), theta_p_dbm, dbm_to_watts);
}

double binomial_half_width(double p, long n)
{
    return 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

namespace
{

// Wilson score interval at 95%
std::pair<double, double> wilson(double p, double n)
{
    constexpr double z = 1.959963984540054;
    const double d = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / d;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / d;
    // the interval always contains p; clamping guards the p = 0 and p = 1 rounding
    return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

} // namespace

std::pair<JointSurface, JointSurface> empirical_joint(const std::vector<TrialResult> &samples,
                                                      const std::vector<double> &theta_db,
                                                      const std::vector<double> &theta_p_dbm)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_joint: no samples");
    if (theta_db.empty() || theta_p_dbm.empty())
        throw std::invalid_argument("empirical_joint: empty threshold grid");

    JointSurface F, G;
    F.kind = SurfaceKind::F;
    G.kind = SurfaceKind::G;
    for (JointSurface *s : {&F, &G})
    {
        s->rate_kind = CurveKind::CoverageCcdf;
        s->theta = theta_db;
        s->theta_p = theta_p_dbm;
        s->estimate.resize(theta_db.size(), theta_p_dbm.size());
        s->lower.resizeLike(s->estimate);
        s->upper.resizeLike(s->estimate);
        s->errors.resize(theta_db.size());
    }

    const double n = static_cast<double>(samples.size());
    std::vector<double> ipd;
    for (std::size_t i = 0; i < theta_db.size(); ++i)
    {
        const double th = db_to_linear(theta_db[i]);
        ipd.clear();
        for (const auto &t : samples)
            if (t.sinr > th)
                ipd.push_back(t.ipd);
        std::sort(ipd.begin(), ipd.end());
        for (std::size_t j = 0; j < theta_p_dbm.size(); ++j)
        {
            const double w = dbm_to_watts(theta_p_dbm[j]);
            const auto below = std::lower_bound(ipd.begin(), ipd.end(), w) - ipd.begin();
            const auto above = ipd.end() - std::upper_bound(ipd.begin(), ipd.end(), w);
            G.estimate(i, j) = double(below) / n;
            F.estimate(i, j) = double(above) / n;
            std::tie(G.lower(i, j), G.upper(i, j)) = wilson(G.estimate(i, j), n);
            std::tie(F.lower(i, j), F.upper(i, j)) = wilson(F.estimate(i, j), n);
        }
    }
    return {F, G};
}

} // namespace ucexpo
