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

#include "ucexpo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace ucexpo
{

Task parse_task(const std::string &name)
{
    static const std::pair<const char *, Task> names[] = {
        {"simulate", Task::Simulate}, {"analyze", Task::Analyze}, {"ablation", Task::Ablation},
        {"figure", Task::Figure},     {"sweep", Task::Sweep},     {"compare", Task::Compare},
        {"report", Task::Report}};
    for (const auto &[n, t] : names)
        if (name == n)
            return t;
    throw std::invalid_argument("unknown task '" + name + "'");
}

const char *to_string(Task task)
{
    switch (task)
    {
    case Task::Simulate: return "simulate";
    case Task::Analyze: return "analyze";
    case Task::Ablation: return "ablation";
    case Task::Figure: return "figure";
    case Task::Sweep: return "sweep";
    case Task::Compare: return "compare";
    case Task::Report: return "report";
    }
    return "unknown";
}

SystemParams preset_params(const std::string &name)
{
    SystemParams p;
    p.P_t = 0.1;
    p.r_0 = 1.0;
    p.r_1 = 100.0;
    p.alpha = 2.5;
    p.N_0 = 0.0;
    if (name == "fig3")
    {
        p.f = 3e9;
        p.M = 4;
        return with_cluster_averages(p, 4.0, 2.5);
    }
    p.f = 4e9;
    p.M = 1;
    if (name == "fig5" || name == "fig8" || name == "fig9")
        return with_cluster_averages(p, 4.0, 0.5); // n_av_R is swept
    if (name == "fig6a")
        return with_cluster_averages(p, 8.0, 0.5);
    if (name == "fig6b")
        return with_cluster_averages(p, 4.0, 0.5);
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig3, fig5, fig6a, fig6b, fig8 or fig9)");
}

Deviation compare_curves(const std::vector<double> &grid_a, const std::vector<double> &a,
                         const std::vector<double> &grid_b, const std::vector<double> &b, double tolerance)
{
    if (grid_a.size() != a.size() || grid_b.size() != b.size())
        throw std::invalid_argument("compare_curves: grid and values differ in length");
    if (grid_a.size() != grid_b.size())
        throw std::invalid_argument("compare_curves: grids differ in length");
    Deviation d;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (std::abs(grid_a[i] - grid_b[i]) > 1e-9 * std::max(1.0, std::abs(grid_a[i])))
            throw std::invalid_argument("compare_curves: grids differ at index " + std::to_string(i));
        if (std::isnan(a[i]) || std::isnan(b[i]))
            continue;
        const double e = std::abs(a[i] - b[i]);
        d.max_abs = std::max(d.max_abs, e);
        sum += e;
        ++d.points;
    }
    d.mean_abs = d.points ? sum / static_cast<double>(d.points) : 0.0;
    d.sup_gap = d.max_abs;
    d.pass = d.sup_gap <= tolerance;
    return d;
}

std::vector<double> parse_grid(const std::string &text)
{
    const auto number = [&](const std::string &s) {
        try
        {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return v;
        }
        catch (const std::logic_error &)
        {
            throw std::invalid_argument("bad grid '" + text + "'");
        }
    };
    std::vector<std::string> parts;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, sep);)
        parts.push_back(part);
    if (sep == ':')
    {
        if (parts.size() != 3)
            throw std::invalid_argument("bad grid '" + text + "', expected first:last:step");
        return linear_grid(number(parts[0]), number(parts[1]), number(parts[2]));
    }
    std::vector<double> grid;
    for (const auto &p : parts)
        grid.push_back(number(p));
    if (grid.empty())
        throw std::invalid_argument("empty grid");
    return grid;
}

double parse_level(const std::string &text)
{
    std::string s = text;
    for (const char *unit : {"dBm", "dB"})
    {
        const std::string u(unit);
        if (s.size() > u.size() && s.compare(s.size() - u.size(), u.size(), u) == 0)
        {
            s.resize(s.size() - u.size());
            break;
        }
    }
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(s, &used);
    }
    catch (const std::logic_error &)
    {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw std::invalid_argument("bad level '" + text + "'");
    return v;
}

std::string derived_path(const std::string &out, const std::string &name)
{
    if (out.size() > 4 && out.compare(out.size() - 4, 4, ".csv") == 0)
        return out.substr(0, out.size() - 4) + "_" + name + ".csv";
    return out + "_" + name + ".csv";
}

bool interior_maximum(const std::vector<double> &values)
{
    std::size_t best = 0;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
        if (std::isfinite(values[i]) && values[i] > top)
        {
            top = values[i];
            best = i;
        }
    return values.size() >= 3 && best > 0 && best + 1 < values.size();
}

namespace
{

struct Runner
{
    const ExperimentSpec &spec;
    std::ostream &log;
    int failed_points = 0;

    CsvMeta meta(const SystemParams &p, const std::string &what) const
    {
        CsvMeta extra{{"task", to_string(spec.task)},
                      {"table", what},
                      {"seed", std::to_string(spec.seed)},
                      {"trials", std::to_string(spec.trials)},
                      {"model", to_string(spec.model)},
                      {"variant", to_string(spec.variant)},
                      {"window_factor", std::to_string(spec.sim.window_factor)},
                      {"pmf_tail", std::to_string(spec.analytic.tail)},
                      {"radial_panels", std::to_string(spec.analytic.radial_panels)},
                      {"segment_tol", std::to_string(spec.inversion.segment_tol)},
                      {"tail_tol", std::to_string(spec.inversion.tail_tol)}};
        return make_meta(p, extra);
    }

    void write(const SystemParams &p, const std::string &name, const Table &table) const
    {
        const std::string path = derived_path(spec.out, name);
        write_table_file(path, meta(p, name), table);
        log << "wrote " << path << " (" << table.rows() << " rows)\n";
        if (spec.gnuplot)
            write_gnuplot(path, table);
    }

    void write_gnuplot(const std::string &csv, const Table &table) const
    {
        std::ofstream gp(csv + ".gp");
        if (!gp)
            throw IoError("cannot write '" + csv + ".gp'");
        gp << "set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\n";
        const bool surface = table.columns.size() > 1 && table.columns[1] == "theta_p_dbm";
        gp << "set xlabel '" << table.columns[0] << "'\n";
        if (surface)
            gp << "set ylabel 'theta_p_dbm'\nsplot for [i=3:" << table.columns.size() << "] '" << csv
               << "' using 1:2:i with points\n";
        else
            gp << "plot for [i=2:" << table.columns.size() << "] '" << csv << "' using 1:i with lines\n";
    }

    std::vector<double> values(const DistCurve &c)
    {
        for (std::size_t i = 0; i < c.errors.size(); ++i)
            if (!c.errors[i].empty())
            {
                ++failed_points;
                log << "numerics error at " << c.thresholds[i] << ": " << c.errors[i] << '\n';
            }
        if (c.clamped > 0)
            log << "note: " << c.clamped << " inverted probabilities clamped to [0, 1]\n";
        return c.values;
    }

    EmpiricalStats simulate(const SystemParams &p, InterferenceModel model) const
    {
        log << "simulating " << spec.trials << " trials (" << to_string(model) << " model, n_av_R = "
            << derive(p).n_av_R << ")\n";
        return run_trials(p, spec.trials, model, spec.seed, spec.sim);
    }

    Analyzer analyzer(const SystemParams &p, Variant v) const
    {
        return Analyzer(p, v, spec.analytic, spec.inversion);
    }

    static Table moments_table(const Moments &centric, const Moments &outer, const Moments &total)
    {
        Table t;
        t.add_column("centric_mean", {centric.mean});
        t.add_column("centric_var", {centric.variance});
        t.add_column("outer_mean", {outer.mean});
        t.add_column("outer_var", {outer.variance});
        t.add_column("total_mean", {total.mean});
        t.add_column("total_var", {total.variance});
        return t;
    }

    void report_gap(const std::string &what, const std::vector<double> &grid, const std::vector<double> &a,
                    const std::vector<double> &b) const
    {
        const Deviation d = compare_curves(grid, a, grid, b, spec.tolerance);
        log << what << ": sup gap " << d.sup_gap << ", mean gap " << d.mean_abs << " over " << d.points
            << " points (" << (d.pass ? "within" : "above") << " tolerance " << spec.tolerance << ")\n";
    }

    // ---- tasks --------------------------------------------------------------

    void simulate_task()
    {
        const SystemParams &p = spec.params;
        const EmpiricalStats s = simulate(p, spec.model);
        Table cov;
        cov.add_column("theta_db", spec.theta_db);
        cov.add_column("coverage", empirical_coverage(s.samples, spec.theta_db).values);
        write(p, "coverage", cov);
        Table ipd;
        ipd.add_column("theta_p_dbm", spec.theta_p_dbm);
        ipd.add_column("ipd_cdf", empirical_ipd_cdf(s.samples, spec.theta_p_dbm).values);
        write(p, "ipd", ipd);
        write(p, "moments", moments_table(s.centric, s.outer, s.total));
        if (spec.write_samples)
            write(p, "samples", samples_table(s.samples));
    }

    void analyze_task()
    {
        const SystemParams &p = spec.params;
        const Analyzer a = analyzer(p, spec.variant);
        const DistCurve cov = coverage_probability(a, spec.theta_db);
        const DistCurve ipd = ipd_distribution(a, spec.theta_p_dbm);
        Table c;
        c.add_column("theta_db", spec.theta_db);
        c.add_column("coverage", values(cov));
        write(p, "coverage", c);
        Table e;
        e.add_column("theta_p_dbm", spec.theta_p_dbm);
        e.add_column("ipd_cdf", values(ipd));
        write(p, "ipd", e);
        const Moments mc = a.centric().moments(), mo = a.outer().moments();
        write(p, "moments", moments_table(mc, mo, moments_total(mc, mo)));
        const auto [F, G] = frechet_bounds(cov, ipd);
        write(p, "F", surface_table(F));
        write(p, "G", surface_table(G));
    }

    void ablation_task()
    {
        const SystemParams &p = spec.params;
        Table t;
        t.add_column("theta_db", spec.theta_db);
        for (Variant v : {Variant::Full, Variant::NoIntra, Variant::IndependentIntra})
            t.add_column(std::string("sg_") + to_string(v), values(coverage_probability(analyzer(p, v), spec.theta_db)));
        write(p, "ablation", t);
    }

    void compare_task()
    {
        const SystemParams &p = spec.params;
        const Analyzer a = analyzer(p, spec.variant);
        const EmpiricalStats s = simulate(p, spec.model);
        Table c;
        c.add_column("theta_db", spec.theta_db);
        c.add_column("analytic", values(coverage_probability(a, spec.theta_db)));
        c.add_column("simulated", empirical_coverage(s.samples, spec.theta_db).values);
        report_gap("coverage", spec.theta_db, c.data[1], c.data[2]);
        write(p, "compare_coverage", c);
        Table e;
        e.add_column("theta_p_dbm", spec.theta_p_dbm);
        e.add_column("analytic", values(ipd_distribution(a, spec.theta_p_dbm)));
        e.add_column("simulated", empirical_ipd_cdf(s.samples, spec.theta_p_dbm).values);
        report_gap("ipd", spec.theta_p_dbm, e.data[1], e.data[2]);
        write(p, "compare_ipd", e);
    }

    void report_task() const
    {
        if (spec.inputs.size() != 2)
            throw std::invalid_argument("report needs exactly two input files");
        const Table a = read_table_file(spec.inputs[0]);
        const Table b = read_table_file(spec.inputs[1]);
        const auto pick = [](const Table &t, const std::string &name) -> const std::vector<double> & {
            if (!name.empty())
                return t.column(name);
            if (t.columns.size() < 2)
                throw IoError("report: input needs a threshold column and a value column");
            return t.data[1];
        };
        const Deviation d = compare_curves(a.data.at(0), pick(a, spec.column_a), b.data.at(0), pick(b, spec.column_b),
                                           spec.tolerance);
        log << "points " << d.points << "\nmax_abs " << d.max_abs << "\nmean_abs " << d.mean_abs << "\nsup_gap "
            << d.sup_gap << "\ntolerance " << spec.tolerance << "\n"
            << (d.pass ? "PASS" : "FAIL") << '\n';
    }

    std::vector<double> density_list() const
    {
        if (!spec.densities.empty())
            return spec.densities;
        return linear_grid(1.0, 30.0, 1.0);
    }

    // Bounds of the sweep metric at one (theta, theta') pair.
    std::pair<double, double> point_bounds(const Analyzer &a, SurfaceKind metric, double theta_db,
                                           double theta_p_dbm)
    {
        const DistCurve pr = coverage_probability(a, {theta_db});
        const DistCurve pe = ipd_distribution(a, {theta_p_dbm});
        values(pr);
        values(pe);
        if (metric == SurfaceKind::K)
        {
            const JointSurface k = conditional_bounds(pr, pe, ConditionalKind::K);
            return {k.lower(0, 0), k.upper(0, 0)};
        }
        const auto [F, G] = frechet_bounds(pr, pe);
        const JointSurface &s = metric == SurfaceKind::F ? F : G;
        return {s.lower(0, 0), s.upper(0, 0)};
    }

    void sweep_task()
    {
        if (spec.metric == SurfaceKind::ConditionalMean)
            throw std::invalid_argument("sweep supports the metrics F, G and K");
        const auto densities = density_list();
        std::vector<double> lower, upper;
        SystemParams p = spec.params;
        for (double n : densities)
        {
            p = with_cluster_averages(p, n, derive(spec.params).n_av_U);
            const auto [lo, up] = point_bounds(analyzer(p, spec.variant), spec.metric, spec.sweep_theta_db,
                                               spec.sweep_theta_p_dbm);
            lower.push_back(lo);
            upper.push_back(up);
            log << "n_av_R " << n << ": [" << lo << ", " << up << "]\n";
        }
        Table t;
        t.add_column("n_av_R", densities);
        t.add_column("lower", lower);
        t.add_column("upper", upper);
        log << "interior maximum: lower " << (interior_maximum(lower) ? "yes" : "no") << ", upper "
            << (interior_maximum(upper) ? "yes" : "no") << '\n';
        write(spec.params, std::string("sweep_") + to_string(spec.metric), t);
    }

    // ---- figures ------------------------------------------------------------

    void fig3()
    {
        const SystemParams p = preset_params("fig3");
        Table t;
        t.add_column("theta_db", spec.theta_db);
        if (spec.trials > 0)
        {
            t.add_column("mc_exact", empirical_coverage(simulate(p, InterferenceModel::Exact).samples, spec.theta_db).values);
            t.add_column("mc_gamma", empirical_coverage(simulate(p, InterferenceModel::Gamma).samples, spec.theta_db).values);
        }
        for (Variant v : {Variant::Full, Variant::NoIntra, Variant::IndependentIntra})
            t.add_column(std::string("sg_") + to_string(v), values(coverage_probability(analyzer(p, v), spec.theta_db)));
        if (spec.trials > 0)
        {
            report_gap("full vs exact MC", spec.theta_db, t.column("sg_full"), t.column("mc_exact"));
            report_gap("full vs gamma MC", spec.theta_db, t.column("sg_full"), t.column("mc_gamma"));
        }
        write(p, "fig3", t);
    }

    void fig5()
    {
        const SystemParams base = preset_params("fig5");
        Table ipd, cov;
        ipd.add_column("theta_p_dbm", spec.theta_p_dbm);
        cov.add_column("theta_db", spec.theta_db);
        for (double n : {2.0, 8.0, 18.0, 28.0})
        {
            const SystemParams p = with_cluster_averages(base, n, 0.5);
            const std::string tag = "nR" + std::to_string(static_cast<int>(n));
            const Analyzer a = analyzer(p, Variant::Full);
            ipd.add_column("sg_" + tag, values(ipd_distribution(a, spec.theta_p_dbm)));
            cov.add_column("sg_" + tag, values(coverage_probability(a, spec.theta_db)));
            if (spec.trials > 0)
            {
                const EmpiricalStats s = simulate(p, spec.model);
                ipd.add_column("mc_" + tag, empirical_ipd_cdf(s.samples, spec.theta_p_dbm).values);
                cov.add_column("mc_" + tag, empirical_coverage(s.samples, spec.theta_db).values);
            }
        }
        write(base, "fig5_ipd", ipd);
        write(base, "fig5_coverage", cov);
    }

    // G bounds (and the empirical G when trials > 0) on the given grids.
    Table g_surface(const SystemParams &p, const std::vector<double> &theta_db, const std::vector<double> &theta_p)
    {
        const Analyzer a = analyzer(p, Variant::Full);
        DistCurve pr = coverage_probability(a, theta_db);
        DistCurve pe = ipd_distribution(a, theta_p);
        values(pr);
        values(pe);
        Table t = surface_table(frechet_bounds(pr, pe).second);
        if (spec.trials > 0)
        {
            const auto G = empirical_joint(simulate(p, spec.model).samples, theta_db, theta_p).second;
            t.add_column("mc", surface_table(G).column("estimate"));
        }
        return t;
    }

    void fig6()
    {
        write(preset_params("fig6a"), "fig6a", g_surface(preset_params("fig6a"), spec.theta_db, spec.theta_p_dbm));
        write(preset_params("fig6b"), "fig6b",
              g_surface(preset_params("fig6b"), {-10.0, -5.0, 0.0, 5.0, 10.0}, spec.theta_p_dbm));
    }

    void fig8()
    {
        const SystemParams base = preset_params("fig8");
        Table all;
        for (double n : {1.0, 6.0, 30.0})
        {
            const Table t = g_surface(with_cluster_averages(base, n, 0.5), spec.theta_db, spec.theta_p_dbm);
            if (all.columns.empty())
            {
                all.columns.push_back("n_av_R");
                all.data.emplace_back();
                for (const auto &c : t.columns)
                    all.columns.push_back(c);
                all.data.resize(all.columns.size());
            }
            for (std::size_t r = 0; r < t.rows(); ++r)
            {
                all.data[0].push_back(n);
                for (std::size_t c = 0; c < t.columns.size(); ++c)
                    all.data[c + 1].push_back(t.data[c][r]);
            }
        }
        write(base, "fig8", all);
    }

    void fig9()
    {
        const SystemParams base = preset_params("fig9");
        const auto densities = density_list();
        const std::pair<double, double> targets[] = {{5.0, -55.0}, {10.0, -52.0}};
        Table t;
        t.add_column("n_av_R", densities);
        for (const auto &[th, thp] : targets)
        {
            std::vector<double> lower, upper, mc;
            for (double n : densities)
            {
                const SystemParams p = with_cluster_averages(base, n, 0.5);
                const auto [lo, up] = point_bounds(analyzer(p, Variant::Full), SurfaceKind::G, th, thp);
                lower.push_back(lo);
                upper.push_back(up);
                if (spec.trials > 0)
                    mc.push_back(empirical_joint(simulate(p, spec.model).samples, {th}, {thp}).second.estimate(0, 0));
            }
            std::ostringstream tag;
            tag << th << "dB_" << thp << "dBm";
            t.add_column("lower_" + tag.str(), lower);
            t.add_column("upper_" + tag.str(), upper);
            if (spec.trials > 0)
                t.add_column("mc_" + tag.str(), mc);
            log << "(" << th << " dB, " << thp << " dBm): interior maximum of lower bound "
                << (interior_maximum(lower) ? "yes" : "no") << ", upper bound " << (interior_maximum(upper) ? "yes" : "no")
                << '\n';
        }
        write(base, "fig9", t);
    }
};

} // namespace

void run(const ExperimentSpec &spec, std::ostream &log)
{
    Runner r{spec, log};
    switch (spec.task)
    {
    case Task::Simulate: validate(spec.params); r.simulate_task(); break;
    case Task::Analyze: validate(spec.params); r.analyze_task(); break;
    case Task::Ablation: validate(spec.params); r.ablation_task(); break;
    case Task::Compare: validate(spec.params); r.compare_task(); break;
    case Task::Sweep: validate(spec.params); r.sweep_task(); break;
    case Task::Report: r.report_task(); break;
    case Task::Figure:
        if (spec.figure == "fig3") r.fig3();
        else if (spec.figure == "fig5") r.fig5();
        else if (spec.figure == "fig6") r.fig6();
        else if (spec.figure == "fig8") r.fig8();
        else if (spec.figure == "fig9") r.fig9();
        else throw std::invalid_argument("unknown figure '" + spec.figure + "' (expected fig3, fig5, fig6, fig8 or fig9)");
        break;
    }
    if (r.failed_points > 0)
        throw NumericsError(std::to_string(r.failed_points) + " grid point(s) failed to invert; see the log above");
}

} // namespace ucexpo
