// SPDX-License-Identifier: Apache-2.0
//
// risisac: joint active and passive beamforming for RIS-assisted ISAC
// Copyright (C) 2026 The risisac authors
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

// Command-line front end: Monte-Carlo sum-rate sweeps and beampattern export.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include <risisac/risisac.hpp>

namespace
{
    void emit(const std::string &path, const auto &result)
    {
        if (path.empty() || path == "-")
        {
            risisac::write_csv(result, std::cout);
            return;
        }
        std::ofstream os(path);
        if (!os)
            throw risisac::ConfigError("cannot open output file '" + path + "'");
        risisac::write_csv(result, os);
    }

    void report_audit(const risisac::ConstraintAudit &a)
    {
        nlohmann::json j{{"solves", a.solves},
                         {"infeasible", a.infeasible},
                         {"not_converged", a.not_converged},
                         {"max_power_ratio", a.max_power_ratio},
                         {"max_mse_ratio", a.max_mse_ratio},
                         {"max_modulus_deviation", a.max_modulus_deviation}};
        std::cerr << nlohmann::json{{"audit", j}}.dump() << '\n';
    }

    int fail(const std::string &kind, const std::string &message)
    {
        std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
        return 1;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Joint active and passive beamforming for RIS-assisted ISAC"};
    app.require_subcommand(1);

    std::string config_path, out_path, schemes_text;
    std::vector<double> values;
    int trials = 10, threads = 0, max_outer = 100;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::optional<double> epsilon_ratio;
    std::string report_path;

    const auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("-c,--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
        cmd->add_option("-o,--out", out_path, "CSV output path ('-' for stdout)");
        cmd->add_option("--schemes", schemes_text, "comma-separated: proposed,no_ris,random_ris,com_only,radar_only");
        cmd->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t &s) { seed = s; seed_given = true; },
                                                "master random seed");
        cmd->add_option("--epsilon-ratio", epsilon_ratio, "MSE bound as a multiple of the radar-only floor");
        cmd->add_option("--max-outer", max_outer, "outer iteration cap")->check(CLI::PositiveNumber);
    };

    auto *power = app.add_subcommand("power-sweep", "average sum rate versus transmit power");
    add_common(power);
    power->add_option("--values", values, "transmit powers in dBm")->required()->delimiter(',');
    power->add_option("-t,--trials", trials, "channel realizations per point")->check(CLI::PositiveNumber);
    power->add_option("-j,--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

    auto *ris = app.add_subcommand("ris-sweep", "average sum rate versus number of RIS elements");
    add_common(ris);
    ris->add_option("--values", values, "RIS element counts")->required()->delimiter(',');
    ris->add_option("-t,--trials", trials, "channel realizations per point")->check(CLI::PositiveNumber);
    ris->add_option("-j,--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

    auto *beam = app.add_subcommand("beampattern", "transmit beampattern of each scheme for one realization");
    add_common(beam);
    beam->add_option("--report", report_path, "per-iteration CSV of the first listed scheme");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return fail("usage", e.what());
    }

    try
    {
        risisac::ExperimentSpec spec;
        if (!config_path.empty())
            spec.base = risisac::load_config(config_path);
        if (seed_given)
            spec.base.seed = seed;
        if (epsilon_ratio)
        {
            spec.base.epsilon_ratio = *epsilon_ratio;
            spec.base.epsilon.reset();
        }
        spec.trials = trials;
        spec.threads = threads;
        spec.sweep = values;
        spec.output = out_path;
        spec.solver.max_outer = max_outer;

        if (power->parsed())
        {
            spec.kind = risisac::ExperimentKind::power_sweep;
            if (!schemes_text.empty())
                spec.schemes = risisac::parse_schemes(schemes_text);
            const auto res = risisac::run_power_sweep(spec);
            emit(out_path, res);
            report_audit(res.audit);
        }
        else if (ris->parsed())
        {
            spec.kind = risisac::ExperimentKind::ris_size_sweep;
            if (!schemes_text.empty())
                spec.schemes = risisac::parse_schemes(schemes_text);
            const auto res = risisac::run_ris_size_sweep(spec);
            emit(out_path, res);
            report_audit(res.audit);
        }
        else
        {
            spec.kind = risisac::ExperimentKind::beampattern;
            spec.schemes = schemes_text.empty()
                               ? std::vector<risisac::Scheme>{risisac::Scheme::proposed, risisac::Scheme::no_ris,
                                                              risisac::Scheme::radar_only}
                               : risisac::parse_schemes(schemes_text);
            const auto res = risisac::run_beampattern(spec);
            emit(out_path, res);
            if (!report_path.empty())
            {
                std::ofstream os(report_path);
                if (!os)
                    throw risisac::ConfigError("cannot open report file '" + report_path + "'");
                risisac::write_csv(res.reports.front(), os);
            }
            report_audit(res.audit);
        }
    }
    catch (const risisac::ConfigError &e)
    {
        return fail("config", e.what());
    }
    catch (const risisac::DimensionError &e)
    {
        return fail("dimension", e.what());
    }
    catch (const risisac::DomainError &e)
    {
        return fail("domain", e.what());
    }
    catch (const std::exception &e)
    {
        return fail("runtime", e.what());
    }
    return 0;
}
