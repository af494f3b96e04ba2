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

#include <cmath>
#include <numbers>

#include "ucexpo/analytic.hpp"

namespace ucexpo
{

OuterModel::OuterModel(const SystemParams &params, const AnalyticOptions &opts, double inner_radius)
    : params_(validate(params)), opts_(opts), pmfs_(cluster_pmfs(params, opts.tail)),
      power_scale_(params.P_t / derive(params).kappa), inner_radius_(inner_radius < 0.0 ? params.r_1 : inner_radius),
      mu_U_(derive(params).n_av_U)
{
    if (!(inner_radius_ > 0.0))
        throw std::invalid_argument("OuterModel: inner radius must be positive");
    mean_ks_ = 0.0;
    mean_rho_ = 0.0;
    const CondPmf &served = pmfs_.p_R_trunc;
    for (int m = 1; m <= served.last(); ++m)
    {
        gamma_.push_back(gamma_mm(m, params_.M));
        mean_ks_ += served(m) * gamma_.back().mean();
        mean_rho_ += served(m) * gamma_.back().rho();
    }
}

cplx OuterModel::mixture_cf(double x) const
{
    const CondPmf &served = pmfs_.p_R_trunc;
    cplx acc(0.0, 0.0);
    for (int m = served.first(); m <= served.last(); ++m)
        acc += served(m) * gamma_[m - 1].cf(x);
    return acc;
}

template <typename Integrand>
cplx OuterModel::log_cf(double t, Integrand &&one_minus) const
{
    constexpr double pi = std::numbers::pi;
    const double rho0 = inner_radius_, alpha = params_.alpha, b = power_scale_;

    // Numerical range: up to the radius where t b r^-alpha drops to far_field_tol.
    const double far = std::pow(std::abs(t) * b / opts_.far_field_tol, 1.0 / alpha);
    const double v_max = far > rho0 ? std::log(far / rho0) : 0.0;
    const double R = rho0 * std::exp(v_max);

    cplx integral(0.0, 0.0);
    if (v_max > 0.0)
    {
        const int panels = std::max(1, static_cast<int>(std::ceil(v_max / 0.5)));
        const quad::Rule rule = quad::composite_gauss(0.0, v_max, panels);
        for (Eigen::Index j = 0; j < rule.nodes.size(); ++j)
        {
            const double r = rho0 * std::exp(rule.nodes[j]);
            integral += rule.weights[j] * r * r * one_minus(mixture_cf(t * b * std::pow(r, -alpha)));
        }
    }

    // Beyond R the per-RRH term is expanded to second order in t.
    const double mu = mu_U_;
    const double tb = t * b;
    integral += cplx(0.0, -mu * tb * mean_ks_) * std::pow(R, 2.0 - alpha) / (alpha - 2.0);
    integral += 0.5 * tb * tb * (mu * mean_rho_ + mu * mu * mean_ks_ * mean_ks_) * std::pow(R, 2.0 - 2.0 * alpha) /
                (2.0 * alpha - 2.0);

    return -2.0 * pi * params_.lambda_R * integral;
}

cplx OuterModel::cf(double t) const
{
    if (t == 0.0 || mu_U_ == 0.0)
        return 1.0;
    const double mu = mu_U_;
    return std::exp(log_cf(t, [mu](cplx psi) { return 1.0 - std::exp(-mu * (1.0 - psi)); }));
}

cplx OuterModel::cf_truncated_product(double t) const
{
    if (t == 0.0 || mu_U_ == 0.0)
        return 1.0;
    const CondPmf &load = pmfs_.p_U;
    return std::exp(log_cf(t, [&load](cplx psi) {
        cplx acc(0.0, 0.0), power(1.0, 0.0);
        for (int n = 0; n <= load.last(); ++n)
        {
            acc += load(n) * (1.0 - power);
            power *= psi;
        }
        return acc;
    }));
}

Moments OuterModel::moments() const
{
    constexpr double pi = std::numbers::pi;
    const double rho0 = inner_radius_, alpha = params_.alpha, b = power_scale_;
    const double r0 = params_.r_0, r1 = params_.r_1;
    const double mu = pi * params_.lambda_U * (r1 * r1 - r0 * r0);
    const CondPmf &load = pmfs_.p_U;
    const double factorial2 = load.variance() + load.mean() * load.mean() - load.mean();

    const double mean = 2.0 * pi * b * std::pow(rho0, 2.0 - alpha) / (alpha - 2.0) * params_.lambda_R * mu * mean_ks_;
    const double variance = 2.0 * pi * b * b * std::pow(rho0, 2.0 - 2.0 * alpha) / (2.0 * alpha - 2.0) *
                            params_.lambda_R * (mu * mean_rho_ + factorial2 * mean_ks_ * mean_ks_);
    return {mean, variance};
}

cplx cf_PI2(double t, const SystemParams &params, const AnalyticOptions &opts)
{
    return OuterModel(params, opts).cf(t);
}

Moments moments_outer(const SystemParams &params, const AnalyticOptions &opts)
{
    return OuterModel(params, opts).moments();
}

Moments moments_total(const Moments &centric, const Moments &outer)
{
    return {centric.mean + outer.mean, centric.variance + outer.variance};
}

Moments moments_total(const SystemParams &params, const AnalyticOptions &opts)
{
    return moments_total(moments_centric(params, opts), moments_outer(params, opts));
}

} // namespace ucexpo
