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

#ifndef UCEXPO_QUADRATURE_HPP
#define UCEXPO_QUADRATURE_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ucexpo::quad
{

/// Nodes and weights of a fixed quadrature rule.
struct Rule
{
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Composite 10-point Gauss-Legendre rule on [a, b] with `panels` equal panels.
inline Rule composite_gauss(double a, double b, int panels)
{
    using GL = boost::math::quadrature::gauss<double, 10>;
    const auto &x = GL::abscissa(); // positive half, 5 nodes
    const auto &w = GL::weights();
    Rule rule;
    rule.nodes.resize(10 * panels);
    rule.weights.resize(10 * panels);
    const double h = (b - a) / panels;
    int k = 0;
    for (int p = 0; p < panels; ++p)
    {
        const double mid = a + (p + 0.5) * h, half = 0.5 * h;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            rule.nodes[k] = mid - half * x[i];
            rule.weights[k++] = half * w[i];
            rule.nodes[k] = mid + half * x[i];
            rule.weights[k++] = half * w[i];
        }
    }
    return rule;
}

/// One 15-point Gauss-Kronrod estimate of a real integral, with error estimate.
struct PanelEstimate
{
    double value;
    double error;
};

template <typename F>
PanelEstimate kronrod15(F &&f, double a, double b)
{
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    return {v, err};
}

/// Adaptive bisection with an absolute tolerance. Returns the integral and
/// accumulates the number of bisections into `splits`.
template <typename F>
PanelEstimate adaptive_kronrod(F &&f, double a, double b, double abs_tol, int max_depth, int &splits)
{
    const PanelEstimate whole = kronrod15(f, a, b);
    if (whole.error <= abs_tol || max_depth <= 0 || !std::isfinite(whole.value))
        return whole;
    ++splits;
    const double m = 0.5 * (a + b);
    const PanelEstimate left = adaptive_kronrod(f, a, m, 0.5 * abs_tol, max_depth - 1, splits);
    const PanelEstimate right = adaptive_kronrod(f, m, b, 0.5 * abs_tol, max_depth - 1, splits);
    return {left.value + right.value, left.error + right.error};
}

} // namespace ucexpo::quad

#endif // UCEXPO_QUADRATURE_HPP
