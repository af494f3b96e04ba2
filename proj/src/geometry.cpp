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

#include "ucexpo/geometry.hpp"

#include "ucexpo/rng.hpp"

namespace ucexpo
{

PointSet<double> sample_ppp(double intensity, double window_radius, std::uint64_t seed)
{
    auto rng = make_rng(seed);
    return sample_ppp<double>(intensity, window_radius, rng);
}

PointSet<double> sample_ues(double intensity, double window_radius, const PointSet<double> &rrhs, double r_0,
                            std::uint64_t seed)
{
    auto rng = make_rng(seed);
    return sample_ues(intensity, window_radius, rrhs, r_0, rng);
}

GridIndex::GridIndex(const PointSet<double> &points, double cell)
    : pts_(&points), cell_(cell), origin_(points.window_radius)
{
    double extent = points.window_radius;
    for (Eigen::Index i = 0; i < points.size(); ++i)
        extent = std::max(extent, points.points.row(i).cwiseAbs().maxCoeff());
    origin_ = extent;
    n_ = std::max(1, static_cast<int>(std::ceil(2.0 * extent / cell_)));

    std::vector<int> cell_of(points.size());
    start_.assign(static_cast<std::size_t>(n_) * n_ + 1, 0);
    for (Eigen::Index i = 0; i < points.size(); ++i)
    {
        cell_of[i] = cell_coord(points.points(i, 1)) * n_ + cell_coord(points.points(i, 0));
        ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c)
        start_[c] += start_[c - 1];
    order_.resize(points.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (Eigen::Index i = 0; i < points.size(); ++i)
        order_[fill[cell_of[i]]++] = static_cast<int>(i);
}

ClusterMap build_association(const PointSet<double> &rrhs, const PointSet<double> &ues, double r_1)
{
    ClusterMap map;
    map.C_u.resize(ues.size());
    map.distances.resize(ues.size());
    map.B_i.resize(rrhs.size());
    if (rrhs.size() == 0)
        return map;

    const GridIndex index(rrhs, r_1);
    // Reserving avoids repeated reallocation, which otherwise dominates the cost.
    const double window_area = std::numbers::pi * rrhs.window_radius * rrhs.window_radius;
    const auto expected = static_cast<std::size_t>(
        2.0 * double(rrhs.size()) * std::numbers::pi * r_1 * r_1 / std::max(window_area, 1.0) + 4.0);
    for (Eigen::Index u = 0; u < ues.size(); ++u)
    {
        map.C_u[u].reserve(expected);
        map.distances[u].reserve(expected);
        index.for_each_within(ues.points(u, 0), ues.points(u, 1), r_1, [&](int i, double d) {
            map.C_u[u].push_back(i);
            map.distances[u].push_back(d);
        });
    }
    // B_i filled in UE order so it is sorted
    std::vector<int> load(rrhs.size(), 0);
    for (const auto &c : map.C_u)
        for (int i : c)
            ++load[i];
    for (Eigen::Index i = 0; i < rrhs.size(); ++i)
        map.B_i[i].reserve(load[i]);
    for (Eigen::Index u = 0; u < ues.size(); ++u)
        for (int i : map.C_u[u])
            map.B_i[i].push_back(static_cast<int>(u));
    return map;
}

void write_realization_csv(std::ostream &os, const PointSet<double> &rrhs, const PointSet<double> &ues,
                           const ClusterMap &clusters)
{
    os << "x,y,kind,index\n";
    for (Eigen::Index i = 0; i < rrhs.size(); ++i)
        os << rrhs.points(i, 0) << ',' << rrhs.points(i, 1) << ",rrh," << i << '\n';
    for (Eigen::Index u = 0; u < ues.size(); ++u)
        os << ues.points(u, 0) << ',' << ues.points(u, 1) << ",ue," << u << '\n';
    os << "\nue,rrh,distance\n";
    for (std::size_t u = 0; u < clusters.C_u.size(); ++u)
        for (std::size_t k = 0; k < clusters.C_u[u].size(); ++k)
            os << u << ',' << clusters.C_u[u][k] << ',' << clusters.distances[u][k] << '\n';
}

} // namespace ucexpo
