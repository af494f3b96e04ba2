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

#ifndef UCEXPO_INVERSION_HPP
#define UCEXPO_INVERSION_HPP

#include <functional>
#include <string>
#include <vector>

#include "ucexpo/analytic.hpp"

namespace ucexpo
{

/// Characteristic function of a real random variable. `scale` is the typical
/// magnitude of the variable; it sets where the integration in t starts and
/// how t is partitioned.
struct CharFn
{
    std::function<cplx(double)> eval;
    double scale = 1.0;
    std::string tag;
};

struct InversionOptions
{
    /// Absolute tolerance per integration segment.
    double segment_tol = 1e-9;
    /// The integral is truncated once the bound on the remaining tail falls below this.
    double tail_tol = 1e-6;
    /// The first segment covers [0, t_start / scale].
    double t_start = 1e-3;
    /// Width in log t of the segments before the oscillation sets in.
    double log_step = 0.5;
    /// Number of full oscillation periods integrated before the asymptotic tail.
    int periods = 24;
    int max_segments = 2000;
    int max_depth = 14;
};

struct InversionResult
{
    double ccdf = 0.0; // unclamped
    int segments = 0;
    int splits = 0;
    bool clamped = false;
};

/// P[X > x] by Gil-Pelaez inversion, clamped to [0, 1]. Throws NumericsError
/// when the tail fails to converge within the segment cap.
double gil_pelaez_ccdf(const CharFn &cf, double x, const InversionOptions &opts = {});
InversionResult gil_pelaez(const CharFn &cf, double x, const InversionOptions &opts = {});

enum class Variant
{
    Full,
    NoIntra,          // intra-cluster interference ignored
    IndependentIntra, // intra-cluster interferers treated like the outer ones
};

const char *to_string(Variant v);
Variant parse_variant(const std::string &name);

enum class CurveKind
{
    RateCcdf,
    CoverageCcdf,
    IpdCdf
};

const char *to_string(CurveKind kind);

/// Sampled marginal distribution. `thresholds` are in the unit of the curve
/// (bit/s/Hz for rate, dB for coverage, dBm for IPD). Points whose inversion
/// failed hold NaN and a message in `errors`.
struct DistCurve
{
    CurveKind kind = CurveKind::CoverageCcdf;
    std::vector<double> thresholds;
    std::vector<double> values;
    std::vector<std::string> errors;
    int clamped = 0;
};

/// Rate and exposure statistics of the typical UE. Builds the CF models once.
class Analyzer
{
  public:
    explicit Analyzer(const SystemParams &params, Variant variant = Variant::Full, const AnalyticOptions &analytic = {},
                      const InversionOptions &inversion = {});

    /// P[P_S > theta (P_I + N_0)] for a linear SIR threshold theta.
    double success_probability(double theta) const;
    /// CDF of the incident power P_S + P_I at `watts`.
    double ipd_cdf(double watts) const;

    /// CF of P_S - theta P_I for a served UE (n_R >= 1).
    CharFn success_cf(double theta) const;
    /// CF of P_S + P_I for a served UE.
    CharFn ipd_cf() const;

    Moments ipd_moments() const;
    double void_probability() const { return centric_.prob_empty(); }

    const CentricModel &centric() const { return centric_; }
    const OuterModel &outer() const { return outer_; }
    const SystemParams &params() const { return params_; }
    Variant variant() const { return variant_; }
    const InversionOptions &inversion_options() const { return inv_; }
    /// Number of inversions whose raw result fell outside [0, 1].
    int clamp_count() const { return clamped_; }

  private:
    SystemParams params_;
    Variant variant_;
    InversionOptions inv_;
    CentricModel centric_;
    OuterModel outer_;
    Moments centric_moments_, outer_moments_;
    mutable int clamped_ = 0;
};

/// Spectral efficiency CCDF; thresholds in bit/s/Hz, SIR threshold 2^theta - 1.
DistCurve rate_distribution(const Analyzer &analyzer, const std::vector<double> &theta);
/// Coverage CCDF; thresholds are SIR values in dB.
DistCurve coverage_probability(const Analyzer &analyzer, const std::vector<double> &theta_db);
/// IPD CDF; thresholds in dBm.
DistCurve ipd_distribution(const Analyzer &analyzer, const std::vector<double> &theta_p_dbm);

DistCurve rate_distribution(const SystemParams &params, const std::vector<double> &theta);
DistCurve coverage_probability(const SystemParams &params, const std::vector<double> &theta_db);
DistCurve ipd_distribution(const SystemParams &params, const std::vector<double> &theta_p_dbm);
DistCurve ablation_rate_distribution(const SystemParams &params, const std::vector<double> &theta, Variant variant);

/// Evenly spaced grid from `first` to `last` inclusive.
std::vector<double> linear_grid(double first, double last, double step);
std::vector<double> default_theta_db_grid();   // -10 ... 20 dB, step 0.5
std::vector<double> default_theta_p_dbm_grid(); // -70 ... -30 dBm, step 0.5

} // namespace ucexpo

#endif // UCEXPO_INVERSION_HPP
