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

// Command-line front end: runs simulations, analytic evaluations and the
// figure presets, writing CSV tables.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucexpo/experiment.hpp"

namespace
{

enum ExitCode
{
    Ok = 0,
    Validation = 1,
    Numerics = 2,
    Io = 3
};

} // namespace

int main(int argc, char **argv)
{
    using namespace ucexpo;

    CLI::App app{"Rate and exposure statistics of user-centric cell-free networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", UCEXPO_VERSION);

    ExperimentSpec spec;
    std::string config, preset, model = "exact", variant = "full", theta_grid, theta_p_grid;
    std::vector<std::string> overrides;
    double n_av_R = -1.0, n_av_U = -1.0;

    app.add_option("--config", config, "Parameter file (JSON object or key = value lines)");
    app.add_option("--preset", preset, "Start from figure caption parameters: fig3, fig5, fig6a, fig6b, fig8, fig9");
    app.add_option("--set", overrides, "Override one parameter, e.g. --set M=2 (repeatable)");
    app.add_option("--n-av-R", n_av_R, "Mean RRHs per cluster (sets lambda_R)");
    app.add_option("--n-av-U", n_av_U, "Mean UEs per cluster disk (sets lambda_U)");
    app.add_option("--seed", spec.seed, "Base seed of the per-trial random streams");
    app.add_option("--trials", spec.trials, "Monte Carlo trials (0 skips simulation in figures)");
    app.add_option("--out", spec.out, "Output path or prefix");
    app.add_option("--model", model, "Simulator interference model: exact or gamma");
    app.add_option("--variant", variant, "Analytic variant: full, no-intra or indep-intra");
    app.add_option("--theta-grid", theta_grid, "SIR thresholds in dB: first:last:step or a list");
    app.add_option("--theta-p-grid", theta_p_grid, "IPD thresholds in dBm: first:last:step or a list");
    app.add_option("--threads", spec.sim.threads, "Simulation worker threads");
    app.add_option("--window-factor", spec.sim.window_factor, "Simulation window radius in units of r_1");
    app.add_option("--radial-panels", spec.analytic.radial_panels, "Gauss-Legendre panels of the radial integral");
    app.add_flag("--gnuplot", spec.gnuplot, "Also write a gnuplot script next to every table");
    app.add_flag("--samples", spec.write_samples, "simulate: also write the per-trial samples");

    app.add_subcommand("simulate", "Monte Carlo coverage and IPD distributions");
    app.add_subcommand("analyze", "Analytic coverage, IPD, moments and joint bounds");
    app.add_subcommand("ablation", "Analytic coverage of the three interference variants");
    auto *figure = app.add_subcommand("figure", "Reproduce the data of a figure preset");
    figure->add_option("id", spec.figure, "fig3, fig5, fig6, fig8 or fig9")->required();
    auto *sweep = app.add_subcommand("sweep", "Joint-metric bounds versus RRH density");
    std::string metric = "G", theta = "5dB", theta_p = "-55dBm", densities;
    sweep->add_option("--metric", metric, "F, G or K");
    sweep->add_option("--theta", theta, "SIR threshold, e.g. 5dB");
    sweep->add_option("--theta-p", theta_p, "IPD threshold, e.g. -55dBm");
    sweep->add_option("--densities", densities, "n_av_R values: first:last:step or a list (default 1:30:1)");
    auto *compare = app.add_subcommand("compare", "Overlay analytic and simulated curves");
    compare->add_option("--tolerance", spec.tolerance, "Sup-gap tolerance");
    auto *report = app.add_subcommand("report", "Deviation between two curve files");
    report->add_option("inputs", spec.inputs, "Two CSV files sharing a threshold grid")->required()->expected(2);
    report->add_option("--column-a", spec.column_a, "Value column of the first file");
    report->add_option("--column-b", spec.column_b, "Value column of the second file");
    report->add_option("--tolerance", spec.tolerance, "Sup-gap tolerance");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? Ok : Validation;
    }

    try
    {
        spec.task = parse_task(app.get_subcommands().front()->get_name());

        spec.params = preset_params(preset.empty() ? "fig3" : preset);
        if (!config.empty())
            spec.params = load_params(config);
        if (!overrides.empty())
        {
            std::string text = to_string(spec.params);
            for (char &c : text)
                if (c == ' ')
                    c = '\n';
            for (const auto &o : overrides)
                text += "\n" + o;
            spec.params = parse_params(text);
        }
        if (n_av_R >= 0.0 || n_av_U >= 0.0)
        {
            const DerivedParams d = derive(spec.params);
            spec.params = with_cluster_averages(spec.params, n_av_R >= 0.0 ? n_av_R : d.n_av_R,
                                                n_av_U >= 0.0 ? n_av_U : d.n_av_U);
        }

        spec.model = parse_model(model);
        spec.variant = parse_variant(variant);
        if (!theta_grid.empty())
            spec.theta_db = parse_grid(theta_grid);
        if (!theta_p_grid.empty())
            spec.theta_p_dbm = parse_grid(theta_p_grid);
        if (metric == "F")
            spec.metric = SurfaceKind::F;
        else if (metric == "G")
            spec.metric = SurfaceKind::G;
        else if (metric == "K")
            spec.metric = SurfaceKind::K;
        else
            throw std::invalid_argument("unknown metric '" + metric + "' (expected F, G or K)");
        spec.sweep_theta_db = parse_level(theta);
        spec.sweep_theta_p_dbm = parse_level(theta_p);
        if (!densities.empty())
            spec.densities = parse_grid(densities);

        run(spec, std::cout);
        return Ok;
    }
    catch (const IoError &e)
    {
        std::cerr << "I/O error: " << e.what() << '\n';
        return Io;
    }
    catch (const NumericsError &e)
    {
        std::cerr << "numerics error: " << e.what() << '\n';
        return Numerics;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return Validation;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return Validation;
    }
}
