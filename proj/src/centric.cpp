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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ucexpo/analytic.hpp"

namespace ucexpo
{

namespace
{

cplx ipow(cplx z, int n)
{
    cplx out(1.0, 0.0);
    while (n > 0)
    {
        if (n & 1)
            out *= z;
        z *= z;
        n >>= 1;
    }
    return out;
}

} // namespace

cplx cf_T(double t, double r, const SystemParams &params)
{
    const double x = t * params.P_t / derive(params).kappa * std::pow(r, -params.alpha);
    return ipow(1.0 / cplx(1.0, -x), params.M);
}

cplx cf_V(double t, int n_R, int n_U, double r, const SystemParams &params, const AnalyticOptions &opts)
{
    const double x = t * params.P_t / derive(params).kappa * std::pow(r, -params.alpha);
    const CondPmf servers = cond_pmf_nR(n_R, r, params, opts.tail);
    cplx inner(0.0, 0.0);
    for (int m = servers.first(); m <= servers.last(); ++m)
        inner += servers(m) * gamma_mm(m, params.M).cf(x);

    const CondPmf load = cond_pmf_nU(n_U, r, params, opts.area, opts.tail);
    cplx out(0.0, 0.0);
    for (int n = load.first(); n <= load.last(); ++n)
        out += load(n) * ipow(inner, n);
    return out;
}

CentricModel::CentricModel(const SystemParams &params, const AnalyticOptions &opts)
    : params_(validate(params)), opts_(opts), pmfs_(cluster_pmfs(params, opts.tail)),
      power_scale_(params.P_t / derive(params).kappa)
{
    n_R_max_ = std::max(1, pmfs_.p_R.last());
    n_U_max_ = pmfs_.p_U.last();

    const double r0 = params_.r_0, r1 = params_.r_1;
    rule_ = quad::composite_gauss(std::log(r0), std::log(r1), opts_.radial_panels);
    const Eigen::Index nodes = rule_.nodes.size();
    path_gain_.resize(nodes);
    for (Eigen::Index j = 0; j < nodes; ++j)
    {
        const double r = std::exp(rule_.nodes[j]);
        rule_.nodes[j] = r;
        // dr = r dv and the distance pdf 2r / (r_1^2 - r_0^2)
        rule_.weights[j] *= 2.0 * r * r / (r1 * r1 - r0 * r0);
        path_gain_[j] = std::pow(r, -params_.alpha);
    }

    std::vector<std::vector<CondPmf>> servers(nodes), loads(nodes);
    m_max_ = 1;
    n_U_prime_max_ = 0;
    for (Eigen::Index j = 0; j < nodes; ++j)
    {
        const double r = rule_.nodes[j];
        for (int n = 1; n <= n_R_max_; ++n)
        {
            servers[j].push_back(cond_pmf_nR(n, r, params_, opts_.tail));
            m_max_ = std::max(m_max_, servers[j].back().last());
        }
        for (int n = 0; n <= n_U_max_; ++n)
        {
            loads[j].push_back(cond_pmf_nU(n, r, params_, opts_.area, opts_.tail));
            n_U_prime_max_ = std::max(n_U_prime_max_, loads[j].back().last());
        }
    }

    for (int m = 1; m <= m_max_; ++m)
        gamma_.push_back(gamma_mm(m, params_.M));

    p_nR_real_.resize(nodes);
    p_nU_real_.resize(nodes);
    for (Eigen::Index j = 0; j < nodes; ++j)
    {
        Eigen::MatrixXd pr = Eigen::MatrixXd::Zero(n_R_max_, m_max_);
        for (int n = 1; n <= n_R_max_; ++n)
        {
            const CondPmf &p = servers[j][n - 1];
            pr.row(n - 1).segment(p.first() - 1, p.probabilities.size()) = p.probabilities.transpose();
        }
        Eigen::MatrixXd pu = Eigen::MatrixXd::Zero(n_U_prime_max_ + 1, n_U_max_ + 1);
        for (int n = 0; n <= n_U_max_; ++n)
        {
            const CondPmf &p = loads[j][n];
            pu.col(n).segment(p.first(), p.probabilities.size()) = p.probabilities;
        }
        p_nR_real_[j] = std::move(pr);
        p_nU_real_[j] = std::move(pu);
        p_nR_.push_back(p_nR_real_[j].cast<cplx>());
        p_nU_t_.push_back(p_nU_real_[j].cast<cplx>());
    }
}

Eigen::MatrixXcd CentricModel::radial_average(double t, double eta) const
{
    const bool intra = eta != 0.0 && params_.lambda_U > 0.0;
    const Eigen::Index nodes = rule_.nodes.size();

    if (!intra)
    {
        cplx acc(0.0, 0.0);
        for (Eigen::Index j = 0; j < nodes; ++j)
            acc += rule_.weights[j] * ipow(1.0 / cplx(1.0, -t * power_scale_ * path_gain_[j]), params_.M);
        return Eigen::MatrixXcd::Constant(n_R_max_, n_U_max_ + 1, acc);
    }

    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n_R_max_, n_U_max_ + 1);
    Eigen::VectorXcd g(m_max_);
    Eigen::MatrixXcd powers(n_R_max_, n_U_prime_max_ + 1);
    for (Eigen::Index j = 0; j < nodes; ++j)
    {
        const double x = t * power_scale_ * path_gain_[j];
        const cplx phi_t = ipow(1.0 / cplx(1.0, -x), params_.M);
        for (int m = 0; m < m_max_; ++m)
            g[m] = gamma_[m].cf(eta * x);

        const Eigen::VectorXcd inner = p_nR_[j] * g;
        powers.col(0).setOnes();
        for (int n = 1; n <= n_U_prime_max_; ++n)
            powers.col(n) = powers.col(n - 1).cwiseProduct(inner);
        q.noalias() += (rule_.weights[j] * phi_t) * (powers * p_nU_t_[j]);
    }
    return q;
}

cplx CentricModel::cf_conditional(double t, double eta, int n_R, int n_U) const
{
    if (n_R < 0 || n_R > n_R_max_ || n_U < 0 || n_U > n_U_max_)
        throw std::out_of_range("cf_conditional: (n_R, n_U) outside the truncated support");
    if (n_R == 0)
        return 1.0;
    return ipow(radial_average(t, eta)(n_R - 1, n_U), n_R);
}

cplx CentricModel::cf_served(double t, double eta) const
{
    const Eigen::MatrixXcd q = radial_average(t, eta);
    cplx acc(0.0, 0.0);
    double mass = 0.0;
    for (int n_R = 1; n_R <= n_R_max_; ++n_R)
    {
        const double pr = pmfs_.p_R(n_R);
        if (pr == 0.0)
            continue;
        mass += pr;
        cplx row(0.0, 0.0);
        for (int n_U = 0; n_U <= n_U_max_; ++n_U)
            row += pmfs_.p_U(n_U) * ipow(q(n_R - 1, n_U), n_R);
        acc += pr * row;
    }
    return acc / mass;
}

cplx CentricModel::cf(double t, double eta) const
{
    const double p0 = prob_empty();
    return p0 + (1.0 - p0) * cf_served(t, eta);
}

double CentricModel::useful_mean() const
{
    const double radial = rule_.weights.dot(path_gain_);
    return power_scale_ * params_.M * pmfs_.p_R.mean() * radial;
}

Moments CentricModel::moments() const
{
    const Eigen::Index nodes = rule_.nodes.size();
    const double M = params_.M;

    // Per node: E[1/n_R'] and E[rho] by n_R, E[n_U'] and E[n_U'(n_U'-1)] by n_U.
    Eigen::VectorXd inv_m(m_max_), rho(m_max_);
    for (int m = 0; m < m_max_; ++m)
    {
        inv_m[m] = gamma_[m].mean();
        rho[m] = gamma_[m].rho();
    }
    Eigen::VectorXd n1(n_U_prime_max_ + 1), n2(n_U_prime_max_ + 1);
    for (int n = 0; n <= n_U_prime_max_; ++n)
    {
        n1[n] = n;
        n2[n] = double(n) * (n - 1);
    }

    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n_R_max_, n_U_max_ + 1);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_R_max_, n_U_max_ + 1);
    for (Eigen::Index j = 0; j < nodes; ++j)
    {
        const Eigen::VectorXd e_inv = p_nR_real_[j] * inv_m;                      // by n_R
        const Eigen::VectorXd e_rho = p_nR_real_[j] * rho;                        // by n_R
        const Eigen::RowVectorXd e_n1 = (p_nU_real_[j].transpose() * n1).transpose(); // by n_U
        const Eigen::RowVectorXd e_n2 = (p_nU_real_[j].transpose() * n2).transpose();
        const double w = rule_.weights[j], g = path_gain_[j];

        const Eigen::MatrixXd cross = e_inv * e_n1; // E[n_U'] E[1/n_R']
        L.array() += w * g * (M + cross.array());
        A.array() += w * g * g *
                     (M * (M + 1.0) + 2.0 * M * cross.array() + (e_rho * e_n1).array() +
                      (e_inv.cwiseProduct(e_inv) * e_n2).array());
    }

    double first = 0.0, second = 0.0;
    for (int n_R = 1; n_R <= n_R_max_; ++n_R)
        for (int n_U = 0; n_U <= n_U_max_; ++n_U)
        {
            const double w = pmfs_.p_R(n_R) * pmfs_.p_U(n_U) * n_R;
            const double l = L(n_R - 1, n_U);
            first += w * l;
            second += w * (A(n_R - 1, n_U) + (n_R - 1) * l * l);
        }
    const double mean = power_scale_ * first;
    return {mean, power_scale_ * power_scale_ * second - mean * mean};
}

cplx cf_PS_eta(double t, double eta, const SystemParams &params, const AnalyticOptions &opts)
{
    return CentricModel(params, opts).cf(t, eta);
}

Moments moments_centric(const SystemParams &params, const AnalyticOptions &opts)
{
    return CentricModel(params, opts).moments();
}

} // namespace ucexpo
