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
#include <stdexcept>

#include "ucexpo/analytic.hpp"
#include "ucexpo/geometry.hpp"

namespace ucexpo
{

double CondPmf::mean() const
{
    double m = 0.0;
    for (Eigen::Index i = 0; i < probabilities.size(); ++i)
        m += (offset + i) * probabilities[i];
    return m;
}

double CondPmf::variance() const
{
    const double m = mean();
    double v = 0.0;
    for (Eigen::Index i = 0; i < probabilities.size(); ++i)
        v += (offset + i - m) * (offset + i - m) * probabilities[i];
    return v;
}

namespace
{

double poisson_log_pmf(int k, double mean)
{
    return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
}

// Smallest N with P[X > N] < tail for X ~ Poisson(mean), using the geometric
// bound P[X > N] <= p(N + 1) / (1 - mean / (N + 2)).
int poisson_cutoff(double mean, double tail)
{
    if (mean <= 0.0)
        return 0;
    for (int n = 0;; ++n)
    {
        if (n + 2 > mean)
        {
            const double bound = std::exp(poisson_log_pmf(n + 1, mean)) / (1.0 - mean / (n + 2));
            if (bound < tail)
                return n;
        }
    }
}

Eigen::VectorXd poisson_vector(double mean, int last)
{
    Eigen::VectorXd p(last + 1);
    if (mean <= 0.0)
    {
        p.setZero();
        p[0] = 1.0;
        return p;
    }
    for (int k = 0; k <= last; ++k)
        p[k] = std::exp(poisson_log_pmf(k, mean));
    return p;
}

} // namespace

CondPmf poisson_pmf(double mean, double tail)
{
    if (mean < 0.0)
        throw std::domain_error("poisson_pmf: negative mean");
    CondPmf pmf;
    pmf.probabilities = poisson_vector(mean, poisson_cutoff(mean, tail));
    pmf.probabilities /= pmf.probabilities.sum();
    return pmf;
}

CondPmf zero_truncated_poisson_pmf(double mean, double tail)
{
    if (!(mean > 0.0))
        throw std::domain_error("zero_truncated_poisson_pmf: mean must be positive");
    const int last = std::max(1, poisson_cutoff(mean, tail * -std::expm1(-mean)));
    const Eigen::VectorXd p = poisson_vector(mean, last);
    CondPmf pmf;
    pmf.offset = 1;
    pmf.probabilities = p.tail(last);
    pmf.probabilities /= pmf.probabilities.sum();
    return pmf;
}

CondPmf binomial_poisson_pmf(int n, double q, double nu, double tail)
{
    if (n < 0 || q < 0.0 || q > 1.0 || nu < 0.0)
        throw std::domain_error("binomial_poisson_pmf: bad arguments");
    Eigen::VectorXd binom(n + 1);
    for (int k = 0; k <= n; ++k)
    {
        if (q == 0.0)
            binom[k] = k == 0 ? 1.0 : 0.0;
        else if (q == 1.0)
            binom[k] = k == n ? 1.0 : 0.0;
        else
            binom[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                                k * std::log(q) + (n - k) * std::log1p(-q));
    }
    const Eigen::VectorXd pois = poisson_vector(nu, poisson_cutoff(nu, tail));

    CondPmf pmf;
    pmf.probabilities = Eigen::VectorXd::Zero(binom.size() + pois.size() - 1);
    for (Eigen::Index i = 0; i < binom.size(); ++i)
        pmf.probabilities.segment(i, pois.size()) += binom[i] * pois;
    pmf.probabilities /= pmf.probabilities.sum();
    return pmf;
}

ClusterPmfs cluster_pmfs(const SystemParams &params, double tail)
{
    const DerivedParams d = derive(params);
    return {poisson_pmf(d.n_av_R, tail), poisson_pmf(d.n_av_U, tail), zero_truncated_poisson_pmf(d.n_av_R, tail)};
}

namespace
{

void check_radius(double r, const SystemParams &params)
{
    if (!(r >= params.r_0 && r <= params.r_1))
        throw std::domain_error("conditional PMF: r must lie in [r_0, r_1]");
}

} // namespace

CondPmf cond_pmf_nU(int n_U, double r, const SystemParams &params, AreaModel area, double tail)
{
    check_radius(r, params);
    if (n_U < 0)
        throw std::domain_error("cond_pmf_nU: n_U must be >= 0");
    const double disk = std::numbers::pi * params.r_1 * params.r_1;
    const double overlap =
        area == AreaModel::Exact ? lens_area(r, params.r_1) : lens_area_linearized(r, params.r_1);
    // Given n_U points in the centric disk, each lies in the overlap with
    // probability overlap / disk; the rest of the RRH disk is an independent Poisson field.
    return binomial_poisson_pmf(n_U, overlap / disk, params.lambda_U * (disk - overlap), tail);
}

CondPmf cond_pmf_nR(int n_R, double r, const SystemParams &params, double tail)
{
    check_radius(r, params);
    if (n_R < 1)
        throw std::domain_error("cond_pmf_nR: n_R must be >= 1");
    const double disk = std::numbers::pi * params.r_1 * params.r_1;
    const double overlap = s_area(r, params.r_1);
    CondPmf full = binomial_poisson_pmf(n_R, overlap / disk, params.lambda_R * (disk - overlap), tail);

    CondPmf pmf;
    pmf.offset = 1;
    pmf.probabilities = full.probabilities.tail(full.probabilities.size() - 1);
    if (pmf.probabilities.size() == 0 || pmf.probabilities.sum() <= 0.0)
    {
        pmf.probabilities = Eigen::VectorXd::Ones(1);
        return pmf;
    }
    pmf.probabilities /= pmf.probabilities.sum();
    return pmf;
}

} // namespace ucexpo
