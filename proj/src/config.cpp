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

#include "ucexpo/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ucexpo
{

const char *to_string(ValidationCode code)
{
    switch (code)
    {
    case ValidationCode::AlphaTooSmall: return "AlphaTooSmall";
    case ValidationCode::RadiusOrdering: return "RadiusOrdering";
    case ValidationCode::NonPositiveExclusionRadius: return "NonPositiveExclusionRadius";
    case ValidationCode::NonPositivePower: return "NonPositivePower";
    case ValidationCode::NonPositiveFrequency: return "NonPositiveFrequency";
    case ValidationCode::NonPositiveRrhDensity: return "NonPositiveRrhDensity";
    case ValidationCode::NegativeUeDensity: return "NegativeUeDensity";
    case ValidationCode::NegativeNoise: return "NegativeNoise";
    case ValidationCode::TooFewAntennas: return "TooFewAntennas";
    case ValidationCode::NotFinite: return "NotFinite";
    case ValidationCode::WindowTooSmall: return "WindowTooSmall";
    }
    return "Unknown";
}

const SystemParams &validate(const SystemParams &p)
{
    for (double v : {p.P_t, p.f, p.alpha, p.r_0, p.r_1, p.lambda_R, p.lambda_U, p.N_0})
        if (!std::isfinite(v))
            throw ValidationError(ValidationCode::NotFinite, "all parameters must be finite");

    if (!(p.alpha > 2.0))
        throw ValidationError(ValidationCode::AlphaTooSmall, "alpha must exceed 2, got " + std::to_string(p.alpha));
    if (!(p.r_0 > 0.0))
        throw ValidationError(ValidationCode::NonPositiveExclusionRadius, "r_0 must be positive");
    if (!(p.r_0 < p.r_1))
        throw ValidationError(ValidationCode::RadiusOrdering, "r_0 must be smaller than r_1");
    if (!(p.P_t > 0.0))
        throw ValidationError(ValidationCode::NonPositivePower, "P_t must be positive");
    if (!(p.f > 0.0))
        throw ValidationError(ValidationCode::NonPositiveFrequency, "f must be positive");
    if (!(p.lambda_R > 0.0))
        throw ValidationError(ValidationCode::NonPositiveRrhDensity, "lambda_R must be positive");
    if (p.lambda_U < 0.0)
        throw ValidationError(ValidationCode::NegativeUeDensity, "lambda_U must be non-negative");
    if (p.N_0 < 0.0)
        throw ValidationError(ValidationCode::NegativeNoise, "N_0 must be non-negative");
    if (p.M < 1)
        throw ValidationError(ValidationCode::TooFewAntennas, "M must be at least 1");
    return p;
}

DerivedParams derive(const SystemParams &p)
{
    constexpr double pi = std::numbers::pi;
    const double k = 4.0 * pi * p.f / speed_of_light;
    return {k * k, p.lambda_R * pi * (p.r_1 * p.r_1 - p.r_0 * p.r_0), p.lambda_U * pi * p.r_1 * p.r_1};
}

double rrh_density_from_average(double n_av_R, double r_0, double r_1)
{
    return n_av_R / (std::numbers::pi * (r_1 * r_1 - r_0 * r_0));
}

double ue_density_from_average(double n_av_U, double r_1)
{
    return n_av_U / (std::numbers::pi * r_1 * r_1);
}

SystemParams with_cluster_averages(SystemParams params, double n_av_R, double n_av_U)
{
    params.lambda_R = rrh_density_from_average(n_av_R, params.r_0, params.r_1);
    params.lambda_U = ue_density_from_average(n_av_U, params.r_1);
    return params;
}

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n\"'");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n\"',");
    return s.substr(b, e - b + 1);
}

SystemParams from_map(const std::map<std::string, double> &kv)
{
    SystemParams p;
    std::optional<double> n_av_R, n_av_U;
    for (const auto &[key, value] : kv)
    {
        if (key == "P_t") p.P_t = value;
        else if (key == "f") p.f = value;
        else if (key == "alpha") p.alpha = value;
        else if (key == "r_0") p.r_0 = value;
        else if (key == "r_1") p.r_1 = value;
        else if (key == "lambda_R") p.lambda_R = value;
        else if (key == "lambda_U") p.lambda_U = value;
        else if (key == "M")
        {
            if (value != std::floor(value))
                throw ValidationError(ValidationCode::TooFewAntennas, "M must be an integer");
            p.M = static_cast<int>(value);
        }
        else if (key == "N_0") p.N_0 = value;
        else if (key == "n_av_R") n_av_R = value;
        else if (key == "n_av_U") n_av_U = value;
        else
            throw std::invalid_argument("unknown parameter key '" + key + "'");
    }
    // Averages are converted after r_0/r_1 are known, whatever the key order.
    if (n_av_R)
        p.lambda_R = rrh_density_from_average(*n_av_R, p.r_0, p.r_1);
    if (n_av_U)
        p.lambda_U = ue_density_from_average(*n_av_U, p.r_1);
    return p;
}

} // namespace

SystemParams parse_params(const std::string &text)
{
    std::map<std::string, double> kv;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
    {
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object())
            throw std::invalid_argument("JSON parameters must be an object");
        for (const auto &[key, value] : j.items())
        {
            if (!value.is_number())
                throw std::invalid_argument("parameter '" + key + "' must be numeric");
            kv[key] = value.get<double>();
        }
        return from_map(kv);
    }

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        if (trim(line).empty() || trim(line).front() == '[')
            continue;
        const auto eq = line.find_first_of("=:");
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try
        {
            std::size_t used = 0;
            kv[key] = std::stod(value, &used);
            if (used != value.size())
                throw std::invalid_argument(value);
        }
        catch (const std::logic_error &)
        {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad number '" + value + "'");
        }
    }
    return from_map(kv);
}

SystemParams load_params(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_params(buf.str());
}

std::string to_string(const SystemParams &p)
{
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "P_t=%.17g f=%.17g alpha=%.17g r_0=%.17g r_1=%.17g lambda_R=%.17g lambda_U=%.17g M=%d N_0=%.17g",
                  p.P_t, p.f, p.alpha, p.r_0, p.r_1, p.lambda_R, p.lambda_U, p.M, p.N_0);
    return buf;
}

std::string params_hash(const SystemParams &p)
{
    // FNV-1a over the canonical text form
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : to_string(p))
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace ucexpo
