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

#ifndef UCEXPO_GEOMETRY_HPP
#define UCEXPO_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ucexpo
{

/// Points of a realization in a disk window centered at the origin (one row per point).
template <typename Scalar = double>
struct PointSet
{
    using Points = Eigen::Matrix<Scalar, Eigen::Dynamic, 2, Eigen::RowMajor>;

    Points points;
    Scalar window_radius = Scalar(0);

    Eigen::Index size() const { return points.rows(); }
};

/// Distance-based association. C_u[u] lists the RRHs within r_1 of UE u,
/// `distances[u][k]` is the distance to RRH C_u[u][k]; B_i[i] lists the UEs RRH i serves.
struct ClusterMap
{
    std::vector<std::vector<int>> C_u;
    std::vector<std::vector<double>> distances;
    std::vector<std::vector<int>> B_i;
};

// ---- Disk intersection areas -------------------------------------------

/// Area of the intersection of two disks of radius R whose centers are d apart.
template <typename Scalar>
Scalar lens_area(Scalar d, Scalar R)
{
    if (d < Scalar(0))
        throw std::domain_error("lens_area: negative center distance");
    if (d >= Scalar(2) * R)
        return Scalar(0);
    using std::acos;
    using std::sqrt;
    return Scalar(2) * R * R * acos(d / (Scalar(2) * R)) - d / Scalar(2) * sqrt(Scalar(4) * R * R - d * d);
}

/// First-order expansion of lens_area(r, r_1) around r = 0, clamped at 0.
template <typename Scalar>
Scalar lens_area_linearized(Scalar r, Scalar r_1)
{
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar a = pi * r_1 * r_1 * (Scalar(1) - Scalar(2) * r / (pi * r_1));
    return a > Scalar(0) ? a : Scalar(0);
}

/// Overlap area between the centric disk and the disk of a UE served by an RRH
/// at distance r, linear in r. The fit passes through the exact lens areas at
/// the center distances r_1/2 (r = 0) and sqrt(5) r_1/2 (r = r_1), which are
/// those of a UE at distance r_1/2 from the RRH in the perpendicular direction.
template <typename Scalar>
Scalar s_area(Scalar r, Scalar r_1)
{
    using std::sqrt;
    const Scalar a = lens_area(r_1 / Scalar(2), r_1);
    const Scalar b = lens_area(sqrt(Scalar(5)) * r_1 / Scalar(2), r_1) - a;
    const Scalar s = a + b * r / r_1;
    const Scalar full = std::numbers::pi_v<Scalar> * r_1 * r_1;
    return s < Scalar(0) ? Scalar(0) : (s > full ? full : s);
}

// ---- Point processes ---------------------------------------------------

/// Homogeneous PPP in the disk of radius `window_radius`.
template <typename Scalar, typename Rng>
PointSet<Scalar> sample_ppp(Scalar intensity, Scalar window_radius, Rng &rng)
{
    if (intensity < Scalar(0) || !(window_radius > Scalar(0)))
        throw std::invalid_argument("sample_ppp: need intensity >= 0 and window_radius > 0");
    const double mean = double(intensity) * std::numbers::pi * double(window_radius * window_radius);
    const auto n = mean > 0.0 ? std::poisson_distribution<long>(mean)(rng) : 0L;

    PointSet<Scalar> out;
    out.window_radius = window_radius;
    out.points.resize(n, 2);
    std::uniform_real_distribution<Scalar> unif(Scalar(0), Scalar(1));
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    for (long k = 0; k < n; ++k)
    {
        const Scalar rho = window_radius * std::sqrt(unif(rng));
        const Scalar phi = two_pi * unif(rng);
        out.points(k, 0) = rho * std::cos(phi);
        out.points(k, 1) = rho * std::sin(phi);
    }
    return out;
}

PointSet<double> sample_ppp(double intensity, double window_radius, std::uint64_t seed);

/// Removes the points within `radius` of the origin; for a PPP this yields the
/// process conditioned on an empty ball around the origin.
template <typename Scalar>
PointSet<Scalar> exclude_origin(const PointSet<Scalar> &in, Scalar radius)
{
    PointSet<Scalar> out;
    out.window_radius = in.window_radius;
    out.points.resize(in.size(), 2);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < in.size(); ++i)
        if (in.points.row(i).squaredNorm() >= radius * radius)
            out.points.row(k++) = in.points.row(i);
    out.points.conservativeResize(k, 2);
    return out;
}

/// Uniform grid over a point set for fixed-radius neighbor queries.
class GridIndex
{
  public:
    GridIndex(const PointSet<double> &points, double cell);

    /// Calls fn(index, distance) for every point within `radius` (<= cell) of (x, y).
    template <typename Fn>
    void for_each_within(double x, double y, double radius, Fn &&fn) const
    {
        const double r2 = radius * radius;
        const int cx = cell_coord(x), cy = cell_coord(y);
        for (int gy = std::max(cy - 1, 0); gy <= std::min(cy + 1, n_ - 1); ++gy)
            for (int gx = std::max(cx - 1, 0); gx <= std::min(cx + 1, n_ - 1); ++gx)
            {
                const int c = gy * n_ + gx;
                for (int k = start_[c]; k < start_[c + 1]; ++k)
                {
                    const int i = order_[k];
                    const double dx = pts_->points(i, 0) - x, dy = pts_->points(i, 1) - y;
                    const double d2 = dx * dx + dy * dy;
                    if (d2 <= r2)
                        fn(i, std::sqrt(d2));
                }
            }
    }

  private:
    int cell_coord(double v) const
    {
        const int c = static_cast<int>(std::floor((v + origin_) / cell_));
        return std::clamp(c, 0, n_ - 1);
    }

    const PointSet<double> *pts_;
    double cell_, origin_;
    int n_;
    std::vector<int> start_, order_;
};

/// UE PPP on the window minus the exclusion disks of radius r_0 around every
/// RRH, with the typical UE appended last at the origin.
template <typename Rng>
PointSet<double> sample_ues(double intensity, double window_radius, const PointSet<double> &rrhs, double r_0, Rng &rng)
{
    auto candidates = sample_ppp(intensity, window_radius, rng);
    PointSet<double> out;
    out.window_radius = window_radius;
    out.points.resize(candidates.size() + 1, 2);
    Eigen::Index k = 0;
    if (rrhs.size() > 0)
    {
        const GridIndex index(rrhs, std::max(r_0, window_radius / 32.0));
        for (Eigen::Index u = 0; u < candidates.size(); ++u)
        {
            bool excluded = false;
            index.for_each_within(candidates.points(u, 0), candidates.points(u, 1), r_0,
                                  [&](int, double) { excluded = true; });
            if (!excluded)
                out.points.row(k++) = candidates.points.row(u);
        }
    }
    else
    {
        out.points.topRows(candidates.size()) = candidates.points;
        k = candidates.size();
    }
    out.points.row(k++).setZero();
    out.points.conservativeResize(k, 2);
    return out;
}

PointSet<double> sample_ues(double intensity, double window_radius, const PointSet<double> &rrhs, double r_0,
                            std::uint64_t seed);

/// Every UE is associated with the RRHs at distance <= r_1.
ClusterMap build_association(const PointSet<double> &rrhs, const PointSet<double> &ues, double r_1);

/// Debug dump: one row per point (x, y, kind, index) followed by the association edges.
void write_realization_csv(std::ostream &os, const PointSet<double> &rrhs, const PointSet<double> &ues,
                           const ClusterMap &clusters);

} // namespace ucexpo

#endif // UCEXPO_GEOMETRY_HPP
