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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "ucexpo/experiment.hpp"

using namespace ucexpo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace fs = std::filesystem;

namespace
{

struct CliRun
{
    int status;
    std::string output;
};

// Runs the command-line tool with stdout and stderr captured.
CliRun cli(const std::string &args)
{
    const fs::path log = fs::temp_directory_path() / "ucexpo_cli_test.log";
    const std::string cmd = std::string(UCEXPO_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream text;
    text << in.rdbuf();
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, text.str()};
}

fs::path scratch_dir()
{
    const fs::path dir = fs::temp_directory_path() / "ucexpo_test_experiment";
    fs::create_directories(dir);
    return dir;
}

void write_curve(const fs::path &path, const std::vector<double> &grid, const std::vector<double> &values)
{
    Table t;
    t.add_column("theta_db", grid);
    t.add_column("coverage", values);
    write_table_file(path.string(), {{"source", "test"}}, t);
}

} // namespace

TEST_CASE("grid and level parsing")
{
    CHECK(parse_grid("0:1:0.5") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(parse_grid("1, 2,3") == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(parse_grid("-10:20:0.5").size() == 61);
    CHECK_THROWS_AS(parse_grid("1:x:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
    CHECK(parse_level("5dB") == 5.0);
    CHECK(parse_level("-55dBm") == -55.0);
    CHECK(parse_level("3") == 3.0);
    CHECK_THROWS_AS(parse_level("5 parsecs"), std::invalid_argument);
    CHECK(parse_task("figure") == Task::Figure);
    CHECK_THROWS_AS(parse_task("plot"), std::invalid_argument);
}

TEST_CASE("output naming and maxima")
{
    CHECK(derived_path("run.csv", "ipd") == "run_ipd.csv");
    CHECK(derived_path("out/run", "coverage") == "out/run_coverage.csv");
    CHECK(interior_maximum({0.1, 0.3, 0.2}));
    CHECK_FALSE(interior_maximum({0.1, 0.2, 0.3}));
    CHECK_FALSE(interior_maximum({0.3, 0.2, 0.1}));
    CHECK(interior_maximum({std::nan(""), 0.1, 0.4, 0.2, std::nan("")}) == true);
}

TEST_CASE("presets follow the captions")
{
    const SystemParams p3 = preset_params("fig3");
    const DerivedParams d3 = derive(p3);
    CHECK(p3.M == 4);
    CHECK(p3.f == 3e9);
    CHECK(p3.P_t == 0.1);
    CHECK_THAT(d3.n_av_R, WithinRel(4.0, 1e-12));
    CHECK_THAT(d3.n_av_U, WithinRel(2.5, 1e-12));
    const SystemParams p5 = preset_params("fig5");
    CHECK(p5.M == 1);
    CHECK(p5.f == 4e9);
    CHECK_THAT(derive(p5).n_av_U, WithinRel(0.5, 1e-12));
    CHECK_THAT(derive(preset_params("fig6a")).n_av_R, WithinRel(8.0, 1e-12));
    CHECK_THROWS_AS(preset_params("fig4"), std::invalid_argument);
}

TEST_CASE("curve comparison")
{
    const std::vector<double> grid{0.0, 1.0, 2.0}, a{0.9, 0.5, 0.1};
    const Deviation same = compare_curves(grid, a, grid, a, 0.05);
    CHECK(same.sup_gap == 0.0);
    CHECK(same.pass);
    const Deviation shifted = compare_curves(grid, a, grid, {1.0, 0.6, 0.2}, 0.05);
    CHECK_THAT(shifted.sup_gap, WithinAbs(0.1, 1e-12));
    CHECK_THAT(shifted.mean_abs, WithinAbs(0.1, 1e-12));
    CHECK_FALSE(shifted.pass);
    CHECK(shifted.points == 3);
    CHECK_THROWS_AS(compare_curves(grid, a, {0.0, 1.0, 3.0}, a, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(compare_curves(grid, a, {0.0, 1.0}, {0.9, 0.5}, 0.05), std::invalid_argument);
}

TEST_CASE("CSV tables")
{
    Table t;
    t.add_column("theta_db", {-1.5, 0.0, 2.25});
    t.add_column("coverage", {0.875, 0.5, 1e-17});
    std::stringstream io;
    write_table(io, {{"version", "x"}, {"note", "round trip"}}, t);
    const Table back = read_table(io);
    CHECK(back.columns == t.columns);
    CHECK(back.data == t.data);
    CHECK(back.meta.at("note") == "round trip");
    CHECK(back.column("coverage")[2] == 1e-17);
    CHECK_THROWS(back.column("nope"));

    std::stringstream ragged("a,b\n1,2\n3\n");
    CHECK_THROWS_AS(read_table(ragged), IoError);
    std::stringstream garbage("a,b\n1,zz\n");
    CHECK_THROWS_AS(read_table(garbage), IoError);
    CHECK_THROWS_AS(read_table_file("/nonexistent/file.csv"), IoError);

    const CsvMeta meta = make_meta(preset_params("fig3"), {{"seed", "7"}});
    bool has_hash = false, has_seed = false;
    for (const auto &[k, v] : meta)
    {
        has_hash |= k == "params_hash" && v == params_hash(preset_params("fig3"));
        has_seed |= k == "seed" && v == "7";
    }
    CHECK(has_hash);
    CHECK(has_seed);
}

TEST_CASE("command-line report")
{
    const fs::path dir = scratch_dir();
    const std::vector<double> grid{0.0, 5.0, 10.0};
    write_curve(dir / "a.csv", grid, {0.9, 0.5, 0.1});
    write_curve(dir / "b.csv", grid, {1.0, 0.6, 0.2});
    write_curve(dir / "c.csv", {0.0, 5.0, 11.0}, {0.9, 0.5, 0.1});

    const CliRun same = cli("report " + (dir / "a.csv").string() + " " + (dir / "a.csv").string());
    CHECK(same.status == 0);
    CHECK(same.output.find("PASS") != std::string::npos);

    const CliRun off = cli("report --tolerance 0.05 " + (dir / "a.csv").string() + " " + (dir / "b.csv").string());
    CHECK(off.status == 0);
    CHECK(off.output.find("sup_gap 0.1") != std::string::npos);
    CHECK(off.output.find("FAIL") != std::string::npos);

    CHECK(cli("report " + (dir / "a.csv").string() + " " + (dir / "c.csv").string()).status == 1);
    CHECK(cli("report " + (dir / "a.csv").string() + " " + (dir / "missing.csv").string()).status == 3);
}

TEST_CASE("command-line errors")
{
    CHECK(cli("").status == 1);
    CHECK(cli("frobnicate").status == 1);
    CHECK(cli("--preset fig4 analyze").status == 1);
    CHECK(cli("--set alpha=2 analyze").status == 1);
    CHECK(cli("--config /nonexistent/params.json analyze").status == 3);
    CHECK(cli("--window-factor 2 --trials 10 simulate --out /tmp/x").status != 0);
    CHECK(cli("--version").status == 0);
}

TEST_CASE("command-line analyze without other UEs")
{
    const fs::path dir = scratch_dir();
    const std::string out = (dir / "quiet.csv").string();
    const CliRun run = cli("--set lambda_U=0 --theta-grid 0,10 --theta-p-grid -60,-50 --out " + out + " analyze");
    REQUIRE(run.status == 0);
    for (const char *name : {"coverage", "ipd", "moments", "F", "G"})
        CHECK(fs::exists(derived_path(out, name)));

    // no interference: every served UE is covered
    const Table cov = read_table_file(derived_path(out, "coverage"));
    for (double v : cov.column("coverage"))
        CHECK_THAT(v, WithinAbs(1.0 - std::exp(-4.0), 2e-3));
    CHECK(cov.meta.count("params_hash") == 1);

    const Table ipd = read_table_file(derived_path(out, "ipd"));
    CHECK(ipd.column("ipd_cdf")[0] <= ipd.column("ipd_cdf")[1]);
}

TEST_CASE("command-line simulate")
{
    const fs::path dir = scratch_dir();
    const std::string out = (dir / "sim.csv").string();
    const CliRun run = cli("--trials 200 --seed 3 --window-factor 3 --theta-grid 0:10:5 --samples --gnuplot --out " +
                           out + " simulate");
    REQUIRE(run.status == 0);
    const Table samples = read_table_file(derived_path(out, "samples"));
    CHECK(samples.rows() == 200);
    CHECK(fs::exists(derived_path(out, "coverage") + ".gp"));
    const Table cov = read_table_file(derived_path(out, "coverage"));
    CHECK(cov.rows() == 3);
    CHECK(cov.meta.at("seed") == "3");

    // same seed, same samples
    const std::string again = (dir / "sim2.csv").string();
    REQUIRE(cli("--trials 200 --seed 3 --window-factor 3 --theta-grid 0:10:5 --samples --out " + again + " simulate")
                .status == 0);
    CHECK(read_table_file(derived_path(again, "samples")).data == samples.data);
}
