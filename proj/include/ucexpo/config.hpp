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

#ifndef UCEXPO_CONFIG_HPP
#define UCEXPO_CONFIG_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace ucexpo
{

inline constexpr double speed_of_light = 299792458.0; // m/s

/// Physical and deployment parameters of the network. Powers in watts,
/// distances in meters, densities in points per square meter.
struct SystemParams
{
    double P_t = 0.1;      // transmit power budget per UE
    double f = 3e9;        // carrier frequency
    double alpha = 2.5;    // path-loss exponent
    double r_0 = 1.0;      // exclusion radius
    double r_1 = 100.0;    // cluster radius
    double lambda_R = 0.0; // RRH density
    double lambda_U = 0.0; // UE density
    int M = 1;             // antennas per RRH
    double N_0 = 0.0;      // noise power
};

struct DerivedParams
{
    double kappa = 0.0;  // reference path loss at 1 m
    double n_av_R = 0.0; // mean RRHs per cluster annulus
    double n_av_U = 0.0; // mean UEs per cluster disk
};

enum class ValidationCode
{
    AlphaTooSmall,
    RadiusOrdering,
    NonPositiveExclusionRadius,
    NonPositivePower,
    NonPositiveFrequency,
    NonPositiveRrhDensity,
    NegativeUeDensity,
    NegativeNoise,
    TooFewAntennas,
    NotFinite,
    WindowTooSmall
};

const char *to_string(ValidationCode code);

class ValidationError : public std::invalid_argument
{
  public:
    ValidationError(ValidationCode code, const std::string &what)
        : std::invalid_argument(std::string(to_string(code)) + ": " + what), code_(code) {}
    ValidationCode code() const noexcept { return code_; }

  private:
    ValidationCode code_;
};

/// Raised when a quadrature or inversion fails to converge.
class NumericsError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// File or stream failure.
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Returns `params` unchanged iff every invariant holds; throws ValidationError otherwise.
const SystemParams &validate(const SystemParams &params);

DerivedParams derive(const SystemParams &params);

/// lambda_R such that lambda_R * pi * (r_1^2 - r_0^2) = n_av_R.
double rrh_density_from_average(double n_av_R, double r_0, double r_1);

/// lambda_U such that lambda_U * pi * r_1^2 = n_av_U.
double ue_density_from_average(double n_av_U, double r_1);

/// Builds parameters from per-cluster averages instead of densities.
SystemParams with_cluster_averages(SystemParams params, double n_av_R, double n_av_U);

// Unit conversions. dBm is referenced to 1 mW.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

/// Parses a parameter file. Accepts a JSON object or `key = value` lines
/// (`#` starts a comment). Keys match the SystemParams field names;
/// optional `n_av_R` / `n_av_U` override the densities.
SystemParams parse_params(const std::string &text);
SystemParams load_params(const std::string &path);

/// Stable short hash of the parameter set, recorded in output headers.
std::string params_hash(const SystemParams &params);
std::string to_string(const SystemParams &params);

} // namespace ucexpo

#endif // UCEXPO_CONFIG_HPP
