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

#include "mpir/cli/commands.hpp"

#include "mpir/channel.hpp"
#include "mpir/errors.hpp"
#include "mpir/rng.hpp"
#include "mpir/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace mpir::cli
{

namespace fs = std::filesystem;

namespace
{

constexpr double kPsdTolerance = 0.05;
constexpr double kChannelTolerance = 0.02;
constexpr double kMaiTolerance = 0.03;
constexpr double kNoiseTolerance = 0.02;
constexpr double kReductionTolerance = 1e-12;

// Stream sub-indices of the validation draws, kept clear of the per-frame MAI oracle streams.
constexpr std::uint32_t kSubDesired = 0x8000;
constexpr std::uint32_t kSubInterferer = 0x8100;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string header(const ExperimentConfig &config, const std::string &command, const std::string &plan)
{
    std::ostringstream os;
    os << "# mpir " << command << "\n";
    os << "# seed: " << config.seed << "\n";
    os << "# plan: " << plan << "\n";
    os << "# config: " << to_json(config).dump() << "\n";
    return os.str();
}

void write_file(const fs::path &path, const std::string &content)
{
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec)
        throw Error(Errc::io, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw Error(Errc::io, "cannot open '" + path.string() + "' for writing");
    os << content;
    os.flush();
    if (!os)
        throw Error(Errc::io, "write to '" + path.string() + "' failed");
}

std::vector<double> sweep_sigmas(const ExperimentConfig &config)
{
    if (config.ebn0_db.empty())
        throw Error(Errc::usage, "the Eb/N0 sweep list is empty");
    std::vector<double> s;
    for (double db : config.ebn0_db)
        s.push_back(noise_sigma_for_ebn0(db));
    return s;
}

TrialPlan trials_for(const ExperimentConfig &config)
{
    TrialPlan plan = config.trials;
    plan.master_seed = config.seed;
    return plan;
}

CheckResult make_check(std::string name, double measured, double limit, std::string detail)
{
    return {std::move(name), measured, limit, measured <= limit, std::move(detail)};
}

double rel_diff(double a, double ref)
{
    if (a == ref)
        return 0.0;
    return std::abs(a - ref) / std::max(std::abs(ref), std::numeric_limits<double>::min());
}

} // namespace

CheckResult check_channel_energy(const ExperimentConfig &config, double scale, std::uint32_t sub)
{
    ChannelParams params = config.channel;
    params.power_scale = scale;
    auto rng = make_rng(config.seed, 0, StreamRole::channel_stats, sub);
    double sum = 0.0;
    for (std::size_t i = 0; i < config.validate.channel_draws; ++i)
        sum += sample_channel(params, config.system, rng).energy();
    const double mean = sum / static_cast<double>(config.validate.channel_draws);
    return make_check("channel_energy[scale=" + num(scale) + "]", rel_diff(mean, scale), kChannelTolerance,
              "mean=" + num(mean) + " expected=" + num(scale) + " draws=" + std::to_string(config.validate.channel_draws));
}

std::vector<CheckResult> check_mai(const ExperimentConfig &config, std::size_t plan_index, int threads)
{
    std::vector<CheckResult> out;
    const auto &plan = config.plans[plan_index];
    const auto sys = config.system_for(plan);
    const auto pulses = config.pulses_for(plan);
    ChannelParams interferer_params = config.channel;
    interferer_params.power_scale = sys.interferer_power;
    const auto sub = static_cast<std::uint32_t>(plan_index);
    for (std::size_t p = 0; p < config.validate.mai_pairs; ++p)
    {
        auto drng = make_rng(config.seed, p, StreamRole::mai_oracle, kSubDesired + sub);
        auto irng = make_rng(config.seed, p, StreamRole::mai_oracle, kSubInterferer + sub);
        const auto desired = sample_channel(config.channel, sys, drng);
        const auto interferer = sample_channel(interferer_params, sys, irng);
        const auto rc = select_combiner(desired, config.combiner.scheme, config.combiner.selection);
        std::vector<Waveform> v;
        std::vector<std::vector<Waveform>> u(1);
        for (const auto &pulse : pulses)
        {
            v.push_back(composite_waveform(pulse, desired, rc.beta));
            u[0].push_back(composite_waveform(pulse, interferer, interferer.gains));
        }
        const auto mai = mai_variance_multi(u, v, sys);
        const int frame = static_cast<int>(p % static_cast<std::size_t>(sys.frames_per_symbol));
        const double nh = sys.th_alphabet;
        const double analytic = mai.per_frame[0][static_cast<std::size_t>(frame % sys.pulse_types)] / (nh * nh);
        // Oracle key distinct per plan and pair.
        const std::uint64_t oracle_seed = config.seed ^ (0xA3C59AC2ULL << 32 | (plan_index << 16) | p);
        const auto mc = estimate_mai_variance(sys, pulses, desired, interferer, config.combiner, frame,
                                              config.validate.mai_samples, oracle_seed, threads);
        out.push_back(make_check("mai[" + plan.name + ",pair=" + std::to_string(p) + ",frame=" + std::to_string(frame) + "]",
                  rel_diff(mc.variance, analytic), kMaiTolerance,
                  "analytic=" + num(analytic) + " monte_carlo=" + num(mc.variance) + " stderr=" +
                      num(mc.variance_stderr)));
    }
    return out;
}

CheckResult check_noise(const ExperimentConfig &config, std::size_t plan_index, int threads)
{
    const auto &plan = config.plans[plan_index];
    auto sys = config.system_for(plan);
    sys.noise_sigma = noise_sigma_for_ebn0(config.validate.noise_ebn0_db);
    const auto pulses = config.pulses_for(plan);
    const auto scenario = draw_scenario(sys, config.channel, config.dt, config.seed, plan_index);
    const auto link = build_link_waveforms(scenario, pulses, config.combiner);
    const double analytic = noise_variance(link.template_v, sys);
    const auto mc = estimate_noise_variance(sys, link.template_v, config.validate.noise_trials, config.seed,
                                            config.validate.noise_convention, threads);
    return make_check("noise[" + plan.name + "]", rel_diff(mc.variance, analytic), kNoiseTolerance,
              "analytic=" + num(analytic) + " monte_carlo=" + num(mc.variance) + " trials=" +
                  std::to_string(config.validate.noise_trials));
}

CheckResult check_reduction(const ExperimentConfig &config)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < config.validate.reduction_configs; ++i)
    {
        auto rng = make_rng(config.seed, i, StreamRole::generic, 0);
        auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
        auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

        SystemConfig sys;
        sys.users = pick(2, 12);
        sys.frames_per_symbol = pick(1, 4);
        sys.th_alphabet = pick(1, 5);
        sys.chips_per_frame = sys.th_alphabet + pick(30, 45);
        sys.pulse_types = 1;
        sys.noise_sigma = uni(0.0, 1.0);
        sys.interferer_power = uni(0.5, 5.0);
        ChannelParams params;
        params.paths = pick(1, 12);
        params.decay = uni(0.2, 1.0);
        params.sigma2 = uni(0.0, 1.5);
        params.mean_interarrival = uni(0.3e-9, 1.5e-9);
        const std::vector<Pulse> pulses{make_mhp(pick(0, 5), kDefaultTauP, kDefaultDt)};

        const auto scenario = draw_scenario(sys, params, kDefaultDt, config.seed, i);
        const auto link = build_link_waveforms(scenario, pulses, config.combiner);
        const auto terms = analyze_link(link, sys);
        const auto multi = bep_multi(terms.desired_corr, terms.mai, terms.template_energy, sys);
        std::vector<double> classical;
        for (const auto &u : link.interferer_u)
            classical.push_back(mai_variance_classical(u[0], link.template_v[0], sys));
        const auto single = bep_single(terms.desired_corr[0], classical, terms.template_energy[0], sys);
        const double arg_multi = multi.signal_term / std::sqrt(multi.mai_term + multi.noise_term);
        const double arg_single = single.signal_term / std::sqrt(single.mai_term + single.noise_term);
        worst = std::max({worst, rel_diff(multi.pe, single.pe), rel_diff(arg_multi, arg_single)});
    }
    return make_check("reduction", worst, kReductionTolerance,
              "configs=" + std::to_string(config.validate.reduction_configs));
}

std::vector<PsdResult> compute_psd(const ExperimentConfig &config, int threads)
{
    (void)threads;
    std::vector<PsdResult> out;
    for (std::size_t pi = 0; pi < config.plans.size(); ++pi)
    {
        const auto &plan = config.plans[pi];
        const auto sys = config.system_for(plan);
        const auto pulses = config.pulses_for(plan);
        const auto grid = SampleGrid::make(sys, config.dt);
        const std::size_t symbols = config.psd.symbols_per_segment * config.psd.segments;

        auto crng = make_rng(config.seed, pi, StreamRole::psd_signal, 0);
        auto brng = make_rng(config.seed, pi, StreamRole::psd_signal, 1);
        const auto codes = generate_codes(sys, symbols * static_cast<std::size_t>(sys.frames_per_symbol), crng);
        const auto bits = generate_bits(symbols, brng);
        const auto signal = transmit_block(sys, std::span<const Pulse>(pulses), bits, codes);

        const auto symbol_len = static_cast<std::size_t>(grid.symbol);
        const std::size_t segment_len = config.psd.symbols_per_segment * symbol_len;
        PsdResult r;
        r.plan = plan.name;
        r.analytic = analytic_psd(pulses, sys, segment_len);
        r.empirical = empirical_psd(signal, segment_len, config.psd.segments, symbol_len);
        r.band = power_bandwidth(r.analytic, config.psd.power_fraction);
        r.mismatch = psd_mismatch(r.analytic, r.empirical, {0.0, r.band});
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<TheoryCurve> compute_bep(const ExperimentConfig &config, int threads)
{
    const auto sigmas = sweep_sigmas(config);
    std::vector<TheoryCurve> out;
    for (const auto &plan : config.plans)
    {
        auto sys = config.system_for(plan);
        const auto pulses = config.pulses_for(plan);
        const auto ensemble = analyze_ensemble(sys, pulses, config.channel, config.combiner,
                                               config.theory_realizations, config.seed, threads);
        TheoryCurve curve;
        curve.plan = plan.name;
        for (double s : sigmas)
        {
            sys.noise_sigma = s;
            curve.points.push_back(bep_averaged(ensemble, sys));
        }
        out.push_back(std::move(curve));
    }
    return out;
}

std::vector<SimCurve> compute_sim(const ExperimentConfig &config, int threads, std::ostream *progress)
{
    const auto sigmas = sweep_sigmas(config);
    const auto plan_trials = trials_for(config);
    std::vector<SimCurve> out;
    for (const auto &plan : config.plans)
    {
        const auto sys = config.system_for(plan);
        const auto pulses = config.pulses_for(plan);
        PointCallback cb;
        if (progress)
            cb = [&](std::size_t i, const BerEstimate &e) {
                *progress << plan.name << "," << num(config.ebn0_db[i]) << "," << num(e.ber) << ","
                          << num(e.ci95) << "," << e.bits << "," << e.errors << (e.capped ? ",capped" : "")
                          << std::endl;
            };
        SimCurve curve;
        curve.plan = plan.name;
        curve.points = run_ber_sweep(sys, pulses, config.channel, config.combiner, plan_trials, sigmas, threads, cb);
        out.push_back(std::move(curve));
    }
    return out;
}

std::vector<CheckResult> run_validation(const ExperimentConfig &config, int threads)
{
    std::vector<CheckResult> out;
    for (const auto &r : compute_psd(config, threads))
        out.push_back(
            make_check("psd[" + r.plan + "]", r.mismatch, kPsdTolerance, "band_GHz=" + num(r.band * 1e-9)));
    out.push_back(check_channel_energy(config, 1.0, 0));
    out.push_back(check_channel_energy(config, config.system.interferer_power, 1));
    for (std::size_t pi = 0; pi < config.plans.size(); ++pi)
    {
        const auto mai = check_mai(config, pi, threads);
        out.insert(out.end(), mai.begin(), mai.end());
    }
    for (std::size_t pi = 0; pi < config.plans.size(); ++pi)
        out.push_back(check_noise(config, pi, threads));
    out.push_back(check_reduction(config));
    return out;
}

int cmd_psd(const ExperimentConfig &config, const fs::path &out, int threads, std::ostream &log)
{
    for (const auto &r : compute_psd(config, threads))
    {
        std::ostringstream os;
        os << header(config, "psd", r.plan);
        os << "# one-sided PSD (twice the two-sided value for f > 0), W/Hz for unit bit energy\n";
        os << "# band_GHz: " << num(r.band * 1e-9) << "\n";
        os << "# mismatch: " << num(r.mismatch) << "\n";
        os << "freq_GHz,psd_analytic,psd_empirical\n";
        for (std::size_t i = 0; i < r.analytic.freqs.size(); ++i)
        {
            const double f = r.analytic.freqs[i];
            if (f < 0.0)
                continue;
            const double w = f > 0.0 ? 2.0 : 1.0;
            os << num(f * 1e-9) << "," << num(w * r.analytic.psd[i]) << "," << num(w * r.empirical.psd[i]) << "\n";
        }
        const auto path = out / r.plan / "psd.csv";
        write_file(path, os.str());
        log << r.plan << ": mismatch " << num(r.mismatch) << " over |f| <= " << num(r.band * 1e-9) << " GHz -> "
            << path.string() << "\n";
    }
    return 0;
}

int cmd_bep(const ExperimentConfig &config, const fs::path &out, int threads, std::ostream &log)
{
    for (const auto &curve : compute_bep(config, threads))
    {
        std::ostringstream os;
        os << header(config, "bep", curve.plan);
        os << "# Eb/N0 = -10 log10(2 sigma_n^2) with unit desired bit energy\n";
        os << "# realizations: " << config.theory_realizations << "\n";
        os << "# mai_decision_variance: " << num(curve.points.front().mai_decision_variance) << "\n";
        os << "ebn0_db,pe_theory,stderr\n";
        for (std::size_t i = 0; i < curve.points.size(); ++i)
            os << num(config.ebn0_db[i]) << "," << num(curve.points[i].pe) << "," << num(curve.points[i].pe_stderr)
               << "\n";
        const auto path = out / curve.plan / "bep.csv";
        write_file(path, os.str());
        log << curve.plan << ": " << curve.points.size() << " points -> " << path.string() << "\n";
    }
    return 0;
}

int cmd_sim(const ExperimentConfig &config, const fs::path &out, int threads, std::ostream &log)
{
    log << "plan,ebn0_db,ber,ci95_halfwidth,bits,errors\n";
    for (const auto &curve : compute_sim(config, threads, &log))
    {
        std::ostringstream os;
        os << header(config, "sim", curve.plan);
        os << "# Eb/N0 = -10 log10(2 sigma_n^2) with unit desired bit energy\n";
        os << "# stop: min_errors=" << config.trials.stop.min_errors << " max_bits=" << config.trials.stop.max_bits
           << " min_realizations=" << config.trials.min_realizations << "\n";
        os << "ebn0_db,ber,ci95_halfwidth,bits,errors\n";
        for (std::size_t i = 0; i < curve.points.size(); ++i)
        {
            const auto &e = curve.points[i];
            os << num(config.ebn0_db[i]) << "," << num(e.ber) << "," << num(e.ci95) << "," << e.bits << ","
               << e.errors << "\n";
        }
        const auto capped = std::count_if(curve.points.begin(), curve.points.end(),
                                          [](const BerEstimate &e) { return e.capped; });
        if (capped > 0)
            os << "# capped points (fewer than min_errors errors): " << capped << "\n";
        write_file(out / curve.plan / "ber.csv", os.str());
    }
    return 0;
}

int cmd_validate(const ExperimentConfig &config, int threads, std::ostream &log)
{
    const auto results = run_validation(config, threads);
    bool all = true;
    for (const auto &r : results)
    {
        log << (r.pass ? "PASS " : "FAIL ") << r.name << " measured=" << num(r.measured) << " limit=" << num(r.limit)
            << " " << r.detail << "\n";
        all = all && r.pass;
    }
    log << (all ? "all checks passed" : "validation failed") << "\n";
    return all ? 0 : 1;
}

int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Multi-pulse impulse radio link simulator"};
    app.require_subcommand(1);
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    int threads = 0;
    app.add_option("--config", config_path, "Experiment configuration (JSON); built-in defaults when omitted");
    auto *seed_opt = app.add_option("--seed", seed, "Master seed, overrides the configuration file");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    auto *psd = app.add_subcommand("psd", "Analytic and empirical power spectral density");
    auto *bep = app.add_subcommand("bep", "Channel-averaged analytic bit error probability");
    auto *sim = app.add_subcommand("sim", "Waveform-level bit error rate simulation");
    auto *val = app.add_subcommand("validate", "Oracle checks of the analytic expressions");
    for (auto *sub : {psd, bep, sim, val})
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e, out, err);
    }

    try
    {
        ExperimentConfig config = config_path.empty() ? default_experiment() : load_experiment(config_path);
        if (*seed_opt)
            config.seed = seed;
        config.trials.master_seed = config.seed;
        config.check();
        if (*psd)
            return cmd_psd(config, out_dir, threads, out);
        if (*bep)
            return cmd_bep(config, out_dir, threads, out);
        if (*sim)
            return cmd_sim(config, out_dir, threads, out);
        return cmd_validate(config, threads, out);
    }
    catch (const Error &e)
    {
        err << e.what() << "\n";
        return e.code() == Errc::usage ? 2 : 1;
    }
}

} // namespace mpir::cli
