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

#include "mpir/cli/experiment.hpp"

#include "mpir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

namespace mpir::cli
{

using nlohmann::json;

namespace
{

constexpr double kNs = 1e-9;

void expect_object(const json &j, const std::string &where)
{
    if (!j.is_object())
        throw Error(Errc::usage, where + " must be an object");
}

void reject_unknown(const json &j, std::initializer_list<const char *> allowed, const std::string &where)
{
    expect_object(j, where);
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto &item : j.items())
        if (!keys.count(item.key()))
            throw Error(Errc::usage, "unknown key '" + item.key() + "' in " + where);
}

template <typename T>
void read(const json &j, const char *key, T &out, const std::string &where)
{
    if (!j.contains(key))
        return;
    try
    {
        out = j.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw Error(Errc::usage, std::string("bad value for '") + key + "' in " + where);
    }
}

void read_ns(const json &j, const char *key, double &seconds, const std::string &where)
{
    double ns = seconds / kNs;
    read(j, key, ns, where);
    seconds = ns * kNs;
}

CombiningScheme parse_scheme(const std::string &s)
{
    if (s == "mrc")
        return CombiningScheme::mrc;
    if (s == "egc")
        return CombiningScheme::egc;
    throw Error(Errc::usage, "combiner scheme must be 'mrc' or 'egc'");
}

std::string scheme_name(CombiningScheme s)
{
    return s == CombiningScheme::mrc ? "mrc" : "egc";
}

PathSelection::Kind parse_selection(const std::string &s)
{
    if (s == "all")
        return PathSelection::Kind::all;
    if (s == "partial")
        return PathSelection::Kind::partial;
    if (s == "selective")
        return PathSelection::Kind::selective;
    throw Error(Errc::usage, "combiner selection must be 'all', 'partial' or 'selective'");
}

std::string selection_name(PathSelection::Kind k)
{
    switch (k)
    {
    case PathSelection::Kind::partial:
        return "partial";
    case PathSelection::Kind::selective:
        return "selective";
    default:
        return "all";
    }
}

NoiseConvention parse_convention(const std::string &s)
{
    if (s == "continuous")
        return NoiseConvention::continuous;
    if (s == "per_sample")
        return NoiseConvention::per_sample;
    throw Error(Errc::usage, "noise_convention must be 'continuous' or 'per_sample'");
}

PulsePlan parse_plan(const json &j, std::size_t index)
{
    const std::string where = "pulse_plans[" + std::to_string(index) + "]";
    reject_unknown(j, {"name", "pulses"}, where);
    PulsePlan plan;
    read(j, "name", plan.name, where);
    if (!j.contains("pulses") || !j.at("pulses").is_array())
        throw Error(Errc::usage, where + " needs a 'pulses' array");
    std::size_t i = 0;
    for (const auto &p : j.at("pulses"))
    {
        const std::string pw = where + ".pulses[" + std::to_string(i++) + "]";
        reject_unknown(p, {"type", "order", "tau_p_ns"}, pw);
        PulseSpec spec;
        read(p, "type", spec.type, pw);
        read(p, "order", spec.order, pw);
        read_ns(p, "tau_p_ns", spec.tau_p, pw);
        plan.pulses.push_back(spec);
    }
    return plan;
}

} // namespace

SystemConfig ExperimentConfig::system_for(const PulsePlan &plan) const
{
    SystemConfig c = system;
    c.pulse_types = static_cast<int>(plan.pulses.size());
    return c;
}

std::vector<Pulse> ExperimentConfig::pulses_for(const PulsePlan &plan) const
{
    std::vector<Pulse> out;
    for (const auto &spec : plan.pulses)
    {
        if (spec.type != "mhp")
            throw Error(Errc::usage, "unsupported pulse type '" + spec.type + "'");
        out.push_back(make_mhp(spec.order, spec.tau_p, dt));
    }
    return out;
}

void ExperimentConfig::check() const
{
    system.validate();
    channel.validate();
    trials.validate();
    if (!(dt > 0.0))
        throw Error(Errc::invalid_parameter, "sampling dt must be positive");
    SampleGrid::make(system, dt);
    if (plans.empty())
        throw Error(Errc::usage, "at least one pulse plan is required");
    std::set<std::string> names;
    for (const auto &plan : plans)
    {
        if (plan.name.empty() || plan.name.find_first_of("/\\") != std::string::npos || plan.name == "." ||
            plan.name == "..")
            throw Error(Errc::usage, "pulse plan names must be non-empty plain directory names");
        if (!names.insert(plan.name).second)
            throw Error(Errc::usage, "duplicate pulse plan name '" + plan.name + "'");
        if (plan.pulses.empty())
            throw Error(Errc::usage, "pulse plan '" + plan.name + "' has no pulses");
        validate_pulses(system_for(plan), pulses_for(plan));
    }
    for (double db : ebn0_db)
        if (!std::isfinite(db))
            throw Error(Errc::usage, "Eb/N0 values must be finite");
    if (theory_realizations < 1)
        throw Error(Errc::invalid_parameter, "theory realizations must be positive");
    if (psd.symbols_per_segment < 1 || psd.segments < 1)
        throw Error(Errc::invalid_parameter, "psd segment counts must be positive");
    if (!(psd.power_fraction > 0.0 && psd.power_fraction < 1.0))
        throw Error(Errc::invalid_parameter, "psd power_fraction must lie in (0, 1)");
    if (validate.channel_draws < 2 || validate.mai_pairs < 1 || validate.mai_samples < 10'000 ||
        validate.noise_trials < 2 || validate.reduction_configs < 1)
        throw Error(Errc::invalid_parameter, "validation sample counts are too small");
}

ExperimentConfig default_experiment()
{
    ExperimentConfig c;
    c.plans = {{"single", {{"mhp", 4, kDefaultTauP}}}, {"double", {{"mhp", 4, kDefaultTauP}, {"mhp", 5, kDefaultTauP}}}};
    c.ebn0_db = {0.0, 4.0, 8.0, 12.0, 16.0, 20.0};
    return c;
}

ExperimentConfig parse_experiment(const json &doc)
{
    reject_unknown(doc, {"version", "seed", "system", "sampling", "pulse_plans", "channel", "combiner", "sweep",
                         "trials", "theory", "psd", "validate"},
                   "config");
    int version = kConfigVersion;
    read(doc, "version", version, "config");
    if (version != kConfigVersion)
        throw Error(Errc::usage, "unsupported config version " + std::to_string(version));

    ExperimentConfig c = default_experiment();
    read(doc, "seed", c.seed, "config");

    if (doc.contains("system"))
    {
        const auto &s = doc.at("system");
        reject_unknown(s, {"users", "frames_per_symbol", "chips_per_frame", "th_alphabet", "chip_time_ns",
                           "interferer_power"},
                       "system");
        read(s, "users", c.system.users, "system");
        read(s, "frames_per_symbol", c.system.frames_per_symbol, "system");
        read(s, "chips_per_frame", c.system.chips_per_frame, "system");
        read(s, "th_alphabet", c.system.th_alphabet, "system");
        read_ns(s, "chip_time_ns", c.system.chip_time, "system");
        read(s, "interferer_power", c.system.interferer_power, "system");
    }
    if (doc.contains("sampling"))
    {
        const auto &s = doc.at("sampling");
        reject_unknown(s, {"dt_ns"}, "sampling");
        read_ns(s, "dt_ns", c.dt, "sampling");
    }
    if (doc.contains("pulse_plans"))
    {
        const auto &p = doc.at("pulse_plans");
        if (!p.is_array())
            throw Error(Errc::usage, "pulse_plans must be an array");
        c.plans.clear();
        for (std::size_t i = 0; i < p.size(); ++i)
            c.plans.push_back(parse_plan(p.at(i), i));
    }
    if (doc.contains("channel"))
    {
        const auto &s = doc.at("channel");
        reject_unknown(s, {"paths", "decay", "sigma2", "mean_interarrival_ns"}, "channel");
        read(s, "paths", c.channel.paths, "channel");
        read(s, "decay", c.channel.decay, "channel");
        read(s, "sigma2", c.channel.sigma2, "channel");
        read_ns(s, "mean_interarrival_ns", c.channel.mean_interarrival, "channel");
    }
    if (doc.contains("combiner"))
    {
        const auto &s = doc.at("combiner");
        reject_unknown(s, {"scheme", "selection", "paths"}, "combiner");
        std::string scheme = scheme_name(c.combiner.scheme), selection = "all";
        read(s, "scheme", scheme, "combiner");
        read(s, "selection", selection, "combiner");
        read(s, "paths", c.combiner.selection.count, "combiner");
        c.combiner.scheme = parse_scheme(scheme);
        c.combiner.selection.kind = parse_selection(selection);
    }
    if (doc.contains("sweep"))
    {
        const auto &s = doc.at("sweep");
        reject_unknown(s, {"ebn0_db"}, "sweep");
        read(s, "ebn0_db", c.ebn0_db, "sweep");
    }
    if (doc.contains("trials"))
    {
        const auto &s = doc.at("trials");
        reject_unknown(s, {"min_realizations", "bits_per_realization", "max_bits", "min_errors", "batch_size"},
                       "trials");
        read(s, "min_realizations", c.trials.min_realizations, "trials");
        read(s, "bits_per_realization", c.trials.bits_per_realization, "trials");
        read(s, "max_bits", c.trials.stop.max_bits, "trials");
        read(s, "min_errors", c.trials.stop.min_errors, "trials");
        read(s, "batch_size", c.trials.batch_size, "trials");
    }
    if (doc.contains("theory"))
    {
        const auto &s = doc.at("theory");
        reject_unknown(s, {"realizations"}, "theory");
        read(s, "realizations", c.theory_realizations, "theory");
    }
    if (doc.contains("psd"))
    {
        const auto &s = doc.at("psd");
        reject_unknown(s, {"symbols_per_segment", "segments", "power_fraction"}, "psd");
        read(s, "symbols_per_segment", c.psd.symbols_per_segment, "psd");
        read(s, "segments", c.psd.segments, "psd");
        read(s, "power_fraction", c.psd.power_fraction, "psd");
    }
    if (doc.contains("validate"))
    {
        const auto &s = doc.at("validate");
        reject_unknown(s, {"channel_draws", "mai_pairs", "mai_samples", "noise_trials", "noise_ebn0_db",
                           "noise_convention", "reduction_configs"},
                       "validate");
        read(s, "channel_draws", c.validate.channel_draws, "validate");
        read(s, "mai_pairs", c.validate.mai_pairs, "validate");
        read(s, "mai_samples", c.validate.mai_samples, "validate");
        read(s, "noise_trials", c.validate.noise_trials, "validate");
        read(s, "noise_ebn0_db", c.validate.noise_ebn0_db, "validate");
        std::string conv = "continuous";
        read(s, "noise_convention", conv, "validate");
        c.validate.noise_convention = parse_convention(conv);
        read(s, "reduction_configs", c.validate.reduction_configs, "validate");
    }
    c.trials.master_seed = c.seed;
    c.check();
    return c;
}

ExperimentConfig load_experiment(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io, "cannot open config file '" + path + "'");
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw Error(Errc::usage, "cannot parse '" + path + "': " + e.what());
    }
    return parse_experiment(doc);
}

json to_json(const ExperimentConfig &c)
{
    json plans = json::array();
    for (const auto &plan : c.plans)
    {
        json pulses = json::array();
        for (const auto &p : plan.pulses)
            pulses.push_back({{"type", p.type}, {"order", p.order}, {"tau_p_ns", p.tau_p / kNs}});
        plans.push_back({{"name", plan.name}, {"pulses", pulses}});
    }
    return {
        {"version", kConfigVersion},
        {"seed", c.seed},
        {"system",
         {{"users", c.system.users},
          {"frames_per_symbol", c.system.frames_per_symbol},
          {"chips_per_frame", c.system.chips_per_frame},
          {"th_alphabet", c.system.th_alphabet},
          {"chip_time_ns", c.system.chip_time / kNs},
          {"interferer_power", c.system.interferer_power}}},
        {"sampling", {{"dt_ns", c.dt / kNs}}},
        {"pulse_plans", plans},
        {"channel",
         {{"paths", c.channel.paths},
          {"decay", c.channel.decay},
          {"sigma2", c.channel.sigma2},
          {"mean_interarrival_ns", c.channel.mean_interarrival / kNs}}},
        {"combiner",
         {{"scheme", scheme_name(c.combiner.scheme)},
          {"selection", selection_name(c.combiner.selection.kind)},
          {"paths", c.combiner.selection.count}}},
        {"sweep", {{"ebn0_db", c.ebn0_db}}},
        {"trials",
         {{"min_realizations", c.trials.min_realizations},
          {"bits_per_realization", c.trials.bits_per_realization},
          {"max_bits", c.trials.stop.max_bits},
          {"min_errors", c.trials.stop.min_errors},
          {"batch_size", c.trials.batch_size}}},
        {"theory", {{"realizations", c.theory_realizations}}},
        {"psd",
         {{"symbols_per_segment", c.psd.symbols_per_segment},
          {"segments", c.psd.segments},
          {"power_fraction", c.psd.power_fraction}}},
        {"validate",
         {{"channel_draws", c.validate.channel_draws},
          {"mai_pairs", c.validate.mai_pairs},
          {"mai_samples", c.validate.mai_samples},
          {"noise_trials", c.validate.noise_trials},
          {"noise_ebn0_db", c.validate.noise_ebn0_db},
          {"noise_convention",
           c.validate.noise_convention == NoiseConvention::continuous ? "continuous" : "per_sample"},
          {"reduction_configs", c.validate.reduction_configs}}},
    };
}

} // namespace mpir::cli
