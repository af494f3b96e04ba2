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

#ifndef UCEXPO_ANALYTIC_HPP
#define UCEXPO_ANALYTIC_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ucexpo/config.hpp"
#include "ucexpo/quadrature.hpp"

namespace ucexpo
{

using cplx = std::complex<double>;

// ---- Gamma moment matching -----------------------------------------------

/// Gamma law (shape k, scale s) fitted to the normalized interference
/// coefficient of a UE served by n RRHs with M antennas each.
struct GammaApprox
{
    double k = 1.0;
    double s = 1.0;

    double mean() const { return k * s; }
    double variance() const { return k * s * s; }
    /// Second raw moment s^2 Gamma(k + 2) / Gamma(k).
    double rho() const { return s * s * k * (k + 1.0); }
    /// Characteristic function (1 - j t s)^(-k).
    cplx cf(double t) const { return std::pow(cplx(1.0, -t * s), -k); }
};

GammaApprox gamma_mm(int n, int M);

// ---- Probability mass functions ----------------------------------------

/// PMF on the integer support {offset, ..., offset + size - 1}.
struct CondPmf
{
    int offset = 0;
    Eigen::VectorXd probabilities;

    int first() const { return offset; }
    int last() const { return offset + static_cast<int>(probabilities.size()) - 1; }
    double operator()(int n) const
    {
        return n < first() || n > last() ? 0.0 : probabilities[n - offset];
    }
    double sum() const { return probabilities.sum(); }
    double mean() const;
    double variance() const;
};

inline constexpr double default_tail = 1e-8;

/// Poisson(mean) truncated where the upper tail mass drops below `tail`, renormalized.
CondPmf poisson_pmf(double mean, double tail = default_tail);

/// Poisson(mean) conditioned on being at least 1.
CondPmf zero_truncated_poisson_pmf(double mean, double tail = default_tail);

/// Binomial(n, q) convolved with Poisson(nu), truncated and renormalized.
CondPmf binomial_poisson_pmf(int n, double q, double nu, double tail = default_tail);

struct ClusterPmfs
{
    CondPmf p_R;       // RRHs in the centric cluster
    CondPmf p_U;       // other UEs in the centric disk
    CondPmf p_R_trunc; // cluster size of a served UE (>= 1)
};

ClusterPmfs cluster_pmfs(const SystemParams &params, double tail = default_tail);

enum class AreaModel
{
    Exact,
    Linearized
};

/// Number of UEs (other than the typical one) served by a centric-cluster RRH at
/// distance r, given n_U UEs in the centric disk.
CondPmf cond_pmf_nU(int n_U, double r, const SystemParams &params, AreaModel area = AreaModel::Exact,
                    double tail = default_tail);

/// Cluster size of a UE served by a centric-cluster RRH at distance r, given
/// n_R RRHs in the centric cluster. Support starts at 1.
CondPmf cond_pmf_nR(int n_R, double r, const SystemParams &params, double tail = default_tail);

// ---- Characteristic functions and moments --------------------------------

struct Moments
{
    double mean = 0.0;
    double variance = 0.0;
};

struct AnalyticOptions
{
    AreaModel area = AreaModel::Exact;
    double tail = default_tail;
    /// Gauss-Legendre panels (10 nodes each) over log r in [r_0, r_1].
    int radial_panels = 10;
    /// Relative size of the neglected far-field term in the inter-cluster integral.
    double far_field_tol = 1e-9;
};

/// Useful power of one RRH at distance r: (1 - j t P_t r^-alpha / kappa)^(-M).
cplx cf_T(double t, double r, const SystemParams &params);

/// Intra-cluster interference radiated by one centric RRH at distance r,
/// conditioned on (n_R, n_U). Direct evaluation from the conditional PMFs.
cplx cf_V(double t, int n_R, int n_U, double r, const SystemParams &params, const AnalyticOptions &opts = {});

/// Joint statistics of P_S + eta P_I1 at the typical UE. Conditional PMF tables
/// are built once on the radial quadrature grid; evaluation is then a handful
/// of dense matrix products per node.
class CentricModel
{
  public:
    explicit CentricModel(const SystemParams &params, const AnalyticOptions &opts = {});

    /// CF of P_S + eta P_I1, averaged over (n_R, n_U).
    cplx cf(double t, double eta) const;
    /// Same, conditioned on a non-empty centric cluster.
    cplx cf_served(double t, double eta) const;
    cplx cf_conditional(double t, double eta, int n_R, int n_U) const;

    /// Mean and variance of P_S + P_I1.
    Moments moments() const;
    /// Mean of P_S alone.
    double useful_mean() const;

    double prob_empty() const { return pmfs_.p_R(0); }
    const ClusterPmfs &pmfs() const { return pmfs_; }
    const SystemParams &params() const { return params_; }

  private:
    // Row n_R - 1, column n_U: radial average of phi_T(t) phi_V(eta t).
    Eigen::MatrixXcd radial_average(double t, double eta) const;

    SystemParams params_;
    AnalyticOptions opts_;
    ClusterPmfs pmfs_;
    double power_scale_; // P_t / kappa
    int n_R_max_, n_U_max_, m_max_, n_U_prime_max_;

    quad::Rule rule_;                      // over log r, weights include the distance pdf
    Eigen::VectorXd path_gain_;            // r^-alpha at the nodes
    std::vector<GammaApprox> gamma_;       // index m - 1
    std::vector<Eigen::MatrixXcd> p_nR_;   // per node: (n_R - 1, n_R' - 1)
    std::vector<Eigen::MatrixXcd> p_nU_t_; // per node: (n_U', n_U)
    std::vector<Eigen::MatrixXd> p_nR_real_;
    std::vector<Eigen::MatrixXd> p_nU_real_;
};

/// Inter-cluster interference: RRHs outside radius `inner_radius` (r_1 by default).
class OuterModel
{
  public:
    explicit OuterModel(const SystemParams &params, const AnalyticOptions &opts = {}, double inner_radius = -1.0);

    /// Closed-form PGF of the number of served UEs per RRH.
    cplx cf(double t) const;
    /// Reference route: explicit product over per-load RRH subprocesses,
    /// truncated where the load PMF tail drops below the tail tolerance.
    cplx cf_truncated_product(double t) const;

    Moments moments() const;
    double inner_radius() const { return inner_radius_; }

  private:
    template <typename Integrand>
    cplx log_cf(double t, Integrand &&one_minus) const;
    cplx mixture_cf(double x) const; // sum_m p~(m) (1 - j x s_m)^(-k_m)

    SystemParams params_;
    AnalyticOptions opts_;
    ClusterPmfs pmfs_;
    double power_scale_, inner_radius_, mu_U_;
    std::vector<GammaApprox> gamma_;
    double mean_ks_, mean_rho_;
};

/// Convenience wrappers building the models from scratch.
cplx cf_PS_eta(double t, double eta, const SystemParams &params, const AnalyticOptions &opts = {});
cplx cf_PI2(double t, const SystemParams &params, const AnalyticOptions &opts = {});
Moments moments_centric(const SystemParams &params, const AnalyticOptions &opts = {});
Moments moments_outer(const SystemParams &params, const AnalyticOptions &opts = {});
Moments moments_total(const SystemParams &params, const AnalyticOptions &opts = {});
Moments moments_total(const Moments &centric, const Moments &outer);

} // namespace ucexpo

#endif // UCEXPO_ANALYTIC_HPP
