// SPDX-License-Identifier: Apache-2.0
//
// mpir - multi-pulse impulse radio link simulator
// Copyright (C) 2026 The mpir authors
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

#include "mpir/analysis.hpp"
#include "mpir/cli/commands.hpp"
#include "mpir/cli/experiment.hpp"
#include "mpir/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mpir;
using namespace mpir::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

Errc code_of(const std::function<void()> &f)
{
    try
    {
        f();
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("expected an mpir::Error");
    return Errc::usage;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch_dir(const std::string &name)
{
    const auto dir = fs::temp_directory_path() / ("mpir_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

ExperimentConfig small_experiment()
{
    auto doc = json::parse(R"({
        "seed": 5,
        "system": {"users": 3},
        "sweep": {"ebn0_db": [0, 6]},
        "trials": {"bits_per_realization": 100, "max_bits": 1200, "min_errors": 20, "batch_size": 4},
        "theory": {"realizations": 8}
    })");
    return parse_experiment(doc);
}

int run(std::vector<std::string> args, std::string &out, std::string &err)
{
    args.insert(args.begin(), "uwbsim");
    std::vector<char *> argv;
    for (auto &a : args)
        argv.push_back(a.data());
    std::ostringstream o, e;
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    err = e.str();
    return rc;
}

} // namespace

TEST_CASE("default experiment is valid and round-trips through JSON")
{
    const auto c = default_experiment();
    CHECK_NOTHROW(c.check());
    REQUIRE(c.plans.size() == 2);
    CHECK(c.plans[1].pulses.size() == 2);
    const auto doc = to_json(c);
    CHECK(to_json(parse_experiment(doc)) == doc);
}

TEST_CASE("unknown keys and bad values are usage errors")
{
    CHECK(code_of([] { parse_experiment(json::parse(R"({"sistem": {}})")); }) == Errc::usage);
    CHECK(code_of([] { parse_experiment(json::parse(R"({"system": {"user": 3}})")); }) == Errc::usage);
    CHECK(code_of([] { parse_experiment(json::parse(R"({"system": {"users": "many"}})")); }) == Errc::usage);
    CHECK(code_of([] { parse_experiment(json::parse(R"({"version": 2})")); }) == Errc::usage);
    CHECK(code_of([] {
              parse_experiment(json::parse(R"({"pulse_plans": [{"name": "x", "pulses": [{"type": "gauss"}]}]})"));
          }) == Errc::usage);
    CHECK(code_of([] { parse_experiment(json::parse(R"({"system": {"users": 0}})")); }) == Errc::invalid_parameter);
}

TEST_CASE("missing config file is an IO error naming the path")
{
    try
    {
        load_experiment("/nonexistent/mpir.json");
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::io);
        CHECK(std::string(e.what()).find("/nonexistent/mpir.json") != std::string::npos);
    }
}

TEST_CASE("zero pulse is rejected as degenerate")
{
    SystemConfig c;
    const std::vector<Pulse> zero{Pulse{std::vector<double>(11, 0.0), kDefaultDt, -5 * kDefaultDt, "zero"}};
    CHECK(code_of([&] { validate_pulses(c, zero); }) == Errc::degenerate_input);
}

TEST_CASE("empty sweep is a usage error")
{
    auto c = small_experiment();
    c.ebn0_db.clear();
    std::ostringstream log;
    CHECK(code_of([&] { cmd_bep(c, scratch_dir("empty"), 1, log); }) == Errc::usage);
    CHECK(code_of([&] { cmd_sim(c, scratch_dir("empty"), 1, log); }) == Errc::usage);
}

TEST_CASE("simulation output is byte-identical across runs and thread counts")
{
    const auto c = small_experiment();
    const auto d1 = scratch_dir("sim1"), d2 = scratch_dir("sim2");
    std::ostringstream log;
    CHECK(cmd_sim(c, d1, 1, log) == 0);
    CHECK(cmd_sim(c, d2, 3, log) == 0);
    for (const auto &plan : c.plans)
    {
        const auto a = slurp(d1 / plan.name / "ber.csv");
        CHECK(!a.empty());
        CHECK(a == slurp(d2 / plan.name / "ber.csv"));
        CHECK(a.find("# seed: 5\n") != std::string::npos);
        const auto pos = a.find("# config: ");
        REQUIRE(pos != std::string::npos);
        const auto line = a.substr(pos + 10, a.find('\n', pos) - pos - 10);
        CHECK(json::parse(line) == to_json(c));
        CHECK(a.find("ebn0_db,ber,ci95_halfwidth,bits,errors\n") != std::string::npos);
    }
}

TEST_CASE("theory without interference reduces to the matched-filter bound")
{
    auto c = small_experiment();
    c.system.users = 1;
    c.channel.paths = 1;
    c.channel.sigma2 = 0.0;
    c.ebn0_db = {0.0, 5.0, 10.0};
    const auto curves = compute_bep(c, 1);
    for (const auto &curve : curves)
        for (std::size_t i = 0; i < c.ebn0_db.size(); ++i)
        {
            const double expected = q_function(std::sqrt(2.0 * std::pow(10.0, c.ebn0_db[i] / 10.0)));
            CHECK(curve.points[i].pe == doctest::Approx(expected).epsilon(1e-12));
        }
}

TEST_CASE("bep and psd commands write their CSV files")
{
    auto c = small_experiment();
    c.psd.segments = 40;
    const auto dir = scratch_dir("files");
    std::ostringstream log;
    CHECK(cmd_bep(c, dir, 1, log) == 0);
    CHECK(cmd_psd(c, dir, 1, log) == 0);
    const auto bep = slurp(dir / "double" / "bep.csv");
    CHECK(bep.find("ebn0_db,pe_theory,stderr\n") != std::string::npos);
    const auto psd = slurp(dir / "single" / "psd.csv");
    CHECK(psd.find("freq_GHz,psd_analytic,psd_empirical\n") != std::string::npos);
    CHECK(psd.find("# mismatch: ") != std::string::npos);
}

TEST_CASE("validation flags a mis-scaled noise convention")
{
    auto c = small_experiment();
    c.plans.resize(1);
    c.psd.segments = 20;
    c.validate.channel_draws = 100;
    c.validate.mai_pairs = 1;
    c.validate.mai_samples = 10000;
    c.validate.noise_trials = 100000;
    c.validate.reduction_configs = 2;
    auto noise_check = [](const std::vector<CheckResult> &results) {
        for (const auto &r : results)
            if (r.name.rfind("noise[", 0) == 0)
                return r;
        FAIL("no noise check");
        return CheckResult{};
    };
    CHECK(noise_check(run_validation(c, 1)).pass);
    c.validate.noise_convention = NoiseConvention::per_sample;
    const auto bad = noise_check(run_validation(c, 1));
    CHECK_FALSE(bad.pass);
    std::ostringstream log;
    CHECK(cmd_validate(c, 1, log) == 1);
    CHECK(log.str().find("FAIL noise[single]") != std::string::npos);
}

TEST_CASE("command line front end")
{
    std::string out, err;
    CHECK(run({"--help"}, out, err) == 0);
    CHECK(run({}, out, err) != 0);
    CHECK(run({"--config", "/nonexistent/x.json", "bep"}, out, err) == 1);
    CHECK(err.find("/nonexistent/x.json") != std::string::npos);

    const auto dir = scratch_dir("front");
    fs::create_directories(dir);
    const auto cfg = dir / "exp.json";
    std::ofstream(cfg) << R"({"seed": 3, "system": {"users": 2}, "sweep": {"ebn0_db": [5]},
                             "theory": {"realizations": 4}})";
    CHECK(run({"--config", cfg.string(), "--seed", "11", "--out", (dir / "o").string(), "bep"}, out, err) == 0);
    const auto csv = slurp(dir / "o" / "single" / "bep.csv");
    CHECK(csv.find("# seed: 11\n") != std::string::npos);
    std::ofstream(cfg) << R"({"sweep": {"ebn0_db": []}})";
    CHECK(run({"--config", cfg.string(), "--out", (dir / "o").string(), "bep"}, out, err) == 2);
}
