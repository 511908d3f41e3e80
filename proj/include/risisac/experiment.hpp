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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "config_io.hpp"
#include "optimizer.hpp"

// Monte-Carlo experiment runner behind the command-line tool.

namespace risisac
{
    enum class ExperimentKind
    {
        power_sweep,
        ris_size_sweep,
        beampattern
    };

    enum class Scheme
    {
        proposed,
        no_ris,
        random_ris,
        com_only,
        radar_only
    };

    inline std::string to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::proposed:
            return "proposed";
        case Scheme::no_ris:
            return "no_ris";
        case Scheme::random_ris:
            return "random_ris";
        case Scheme::com_only:
            return "com_only";
        case Scheme::radar_only:
            return "radar_only";
        }
        return "unknown";
    }

    inline Scheme parse_scheme(const std::string &name)
    {
        for (Scheme s : {Scheme::proposed, Scheme::no_ris, Scheme::random_ris, Scheme::com_only, Scheme::radar_only})
            if (to_string(s) == name)
                return s;
        throw ConfigError("unknown scheme '" + name + "'");
    }

    inline std::vector<Scheme> parse_schemes(const std::string &list)
    {
        std::vector<Scheme> out;
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            item = detail::trim(item);
            if (item.empty())
                continue;
            const Scheme s = parse_scheme(item);
            if (std::find(out.begin(), out.end(), s) == out.end())
                out.push_back(s);
        }
        if (out.empty())
            throw ConfigError("scheme list is empty");
        return out;
    }

    struct ExperimentSpec
    {
        ExperimentKind kind = ExperimentKind::power_sweep;
        std::vector<double> sweep; // P in dBm or N, depending on kind
        int trials = 10;
        std::vector<Scheme> schemes{Scheme::proposed, Scheme::no_ris, Scheme::random_ris, Scheme::com_only};
        std::string output;
        SystemConfig base;
        int threads = 0; // 0: hardware concurrency
        SolverOptions solver;

        void validate() const
        {
            base.validate();
            if (trials < 1)
                throw ConfigError("trials must be >= 1");
            if (schemes.empty())
                throw ConfigError("scheme list is empty");
            if (kind != ExperimentKind::beampattern)
            {
                if (sweep.empty())
                    throw ConfigError("sweep values must be non-empty");
                if (!std::is_sorted(sweep.begin(), sweep.end()))
                    throw ConfigError("sweep values must be sorted");
                if (kind == ExperimentKind::ris_size_sweep)
                    for (double n : sweep)
                        if (n < 1.0 || n != std::floor(n))
                            throw ConfigError("RIS sizes must be positive integers");
            }
        }
    };

    // Constraint bookkeeping over every solve in an experiment.
    struct ConstraintAudit
    {
        int solves = 0;
        int infeasible = 0;
        int not_converged = 0;
        double max_power_ratio = 0.0;   // final_power / P
        double max_mse_ratio = 0.0;     // final_mse / eps, constrained schemes only
        double max_modulus_deviation = 0.0;

        void add(const SolveReport &rep, double power, bool constrained)
        {
            ++solves;
            infeasible += rep.termination == Termination::infeasible;
            not_converged += rep.termination == Termination::max_iter;
            max_power_ratio = std::max(max_power_ratio, rep.final_power / power);
            if (constrained && rep.termination != Termination::infeasible)
                max_mse_ratio = std::max(max_mse_ratio, rep.final_mse / rep.epsilon);
            max_modulus_deviation = std::max(max_modulus_deviation, rep.max_modulus_deviation);
        }

        void merge(const ConstraintAudit &o)
        {
            solves += o.solves;
            infeasible += o.infeasible;
            not_converged += o.not_converged;
            max_power_ratio = std::max(max_power_ratio, o.max_power_ratio);
            max_mse_ratio = std::max(max_mse_ratio, o.max_mse_ratio);
            max_modulus_deviation = std::max(max_modulus_deviation, o.max_modulus_deviation);
        }
    };

    // Runs body(i) for i in [0, count) on a pool of worker threads.
    template <typename Body>
    void parallel_for(std::size_t count, int threads, Body &&body)
    {
        std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
        workers = std::min(workers, count);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                body(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++)
                {
                    try
                    {
                        body(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                    }
                }
            });
        pool.clear();
        if (error)
            std::rethrow_exception(error);
    }

    struct SchemeOutcome
    {
        double rate = 0.0;
        SolveReport report;
    };

    // All requested schemes on one channel realization (common random numbers).
    inline std::vector<SchemeOutcome> run_trial(const SystemConfig &cfg, const SolveContext &ctx, std::uint64_t trial,
                                                const std::vector<Scheme> &schemes, const SolverOptions &opts)
    {
        const ChannelSet ch = generate_channels(cfg, trial);
        const PhaseProfile phi0 = initial_phases(cfg, trial);
        std::vector<SchemeOutcome> out;
        out.reserve(schemes.size());
        for (Scheme s : schemes)
        {
            SolveResult r;
            switch (s)
            {
            case Scheme::proposed:
                r = bcd_solve(cfg, ch, ctx, phi0, opts);
                break;
            case Scheme::no_ris:
                r = baseline_no_ris(cfg, ch, ctx, opts);
                break;
            case Scheme::random_ris:
                r = baseline_random_ris(cfg, ch, ctx, phi0, opts);
                break;
            case Scheme::com_only:
                r = baseline_com_only(cfg, ch, ctx, phi0, opts);
                break;
            case Scheme::radar_only:
                r = radar_only_solution(cfg, ch, ctx);
                break;
            }
            out.push_back({r.report.final_rate, std::move(r.report)});
        }
        return out;
    }

    struct SweepRow
    {
        double value = 0.0;
        Scheme scheme = Scheme::proposed;
        double mean = 0.0;
        double stderr_ = 0.0;
        int trials = 0;
        double gap_vs_random = std::numeric_limits<double>::quiet_NaN(); // paired mean(proposed - random_ris)
    };

    struct SweepResult
    {
        ExperimentKind kind = ExperimentKind::power_sweep;
        std::vector<double> values;
        std::vector<Scheme> schemes;
        std::vector<std::vector<std::vector<double>>> rates; // [value][scheme][trial]
        std::vector<SweepRow> rows;
        ConstraintAudit audit;

        const SweepRow &row(std::size_t value_index, Scheme s) const
        {
            for (const auto &r : rows)
                if (r.value == values.at(value_index) && r.scheme == s)
                    return r;
            throw ConfigError("scheme " + to_string(s) + " was not part of the sweep");
        }
    };

    namespace detail
    {
        inline double mean_of(const std::vector<double> &x)
        {
            double s = 0.0;
            for (double v : x)
                s += v;
            return s / static_cast<double>(x.size());
        }

        inline double stderr_of(const std::vector<double> &x)
        {
            if (x.size() < 2)
                return 0.0;
            const double m = mean_of(x);
            double ss = 0.0;
            for (double v : x)
                ss += (v - m) * (v - m);
            return std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
        }

        inline SweepResult run_sweep(const ExperimentSpec &spec)
        {
            spec.validate();
            SweepResult res;
            res.kind = spec.kind;
            res.values = spec.sweep;
            res.schemes = spec.schemes;

            // Neither the transmit power nor N changes the array/grid context.
            const SolveContext ctx = make_context(spec.base, spec.solver.radar);

            const std::size_t V = spec.sweep.size(), S = spec.schemes.size(), T = static_cast<std::size_t>(spec.trials);
            std::vector<std::vector<SchemeOutcome>> outcomes(V * T);
            std::vector<SystemConfig> configs(V, spec.base);
            for (std::size_t v = 0; v < V; ++v)
            {
                if (spec.kind == ExperimentKind::power_sweep)
                    configs[v].power_dbm = spec.sweep[v];
                else
                    configs[v].ris_elements = static_cast<int>(spec.sweep[v]);
                configs[v].validate();
            }

            parallel_for(V * T, spec.threads, [&](std::size_t i) {
                const std::size_t v = i / T, t = i % T;
                outcomes[i] = run_trial(configs[v], ctx, t, spec.schemes, spec.solver);
            });

            res.rates.assign(V, std::vector<std::vector<double>>(S, std::vector<double>(T)));
            for (std::size_t v = 0; v < V; ++v)
                for (std::size_t t = 0; t < T; ++t)
                    for (std::size_t s = 0; s < S; ++s)
                    {
                        const auto &o = outcomes[v * T + t][s];
                        res.rates[v][s][t] = o.rate;
                        const bool constrained = spec.schemes[s] != Scheme::com_only && spec.schemes[s] != Scheme::radar_only;
                        res.audit.add(o.report, configs[v].power_watts(), constrained);
                    }

            const auto pos = [&](Scheme s) -> std::ptrdiff_t {
                const auto it = std::find(spec.schemes.begin(), spec.schemes.end(), s);
                return it == spec.schemes.end() ? -1 : it - spec.schemes.begin();
            };
            const auto ip = pos(Scheme::proposed), ir = pos(Scheme::random_ris);
            for (std::size_t v = 0; v < V; ++v)
            {
                double gap = std::numeric_limits<double>::quiet_NaN();
                if (ip >= 0 && ir >= 0)
                {
                    std::vector<double> diff(T);
                    for (std::size_t t = 0; t < T; ++t)
                        diff[t] = res.rates[v][ip][t] - res.rates[v][ir][t];
                    gap = mean_of(diff);
                }
                for (std::size_t s = 0; s < S; ++s)
                {
                    SweepRow row;
                    row.value = spec.sweep[v];
                    row.scheme = spec.schemes[s];
                    row.mean = mean_of(res.rates[v][s]);
                    row.stderr_ = stderr_of(res.rates[v][s]);
                    row.trials = spec.trials;
                    row.gap_vs_random = gap;
                    res.rows.push_back(row);
                }
            }
            return res;
        }
    } // namespace detail

    inline SweepResult run_power_sweep(const ExperimentSpec &spec)
    {
        if (spec.kind != ExperimentKind::power_sweep)
            throw ConfigError("run_power_sweep: experiment kind must be power_sweep");
        return detail::run_sweep(spec);
    }

    inline SweepResult run_ris_size_sweep(const ExperimentSpec &spec)
    {
        if (spec.kind != ExperimentKind::ris_size_sweep)
            throw ConfigError("run_ris_size_sweep: experiment kind must be ris_size_sweep");
        return detail::run_sweep(spec);
    }

    // power-sweep: power_dbm,scheme,mean_rate_bps_hz,stderr_bps_hz,trials
    // ris-sweep:   ris_elements,scheme,mean_rate_bps_hz,stderr_bps_hz,trials,gap_proposed_random_bps_hz
    inline void write_csv(const SweepResult &res, std::ostream &os)
    {
        const bool ris = res.kind == ExperimentKind::ris_size_sweep;
        os << (ris ? "ris_elements" : "power_dbm") << ",scheme,mean_rate_bps_hz,stderr_bps_hz,trials";
        if (ris)
            os << ",gap_proposed_random_bps_hz";
        os << '\n' << std::setprecision(8);
        for (const auto &r : res.rows)
        {
            if (ris)
                os << static_cast<long long>(r.value);
            else
                os << r.value;
            os << ',' << to_string(r.scheme) << ',' << r.mean << ',' << r.stderr_ << ',' << r.trials;
            if (ris)
            {
                os << ',';
                if (!std::isnan(r.gap_vs_random))
                    os << r.gap_vs_random;
            }
            os << '\n';
        }
    }

    struct BeampatternResult
    {
        RVec angles;
        RVec desired;  // P_d scaled by the radar-only alpha
        RVec ideal;    // P_d
        double epsilon = 0.0;
        std::vector<Scheme> schemes;
        std::vector<BeampatternReport> patterns;
        std::vector<SolveReport> reports;
        ConstraintAudit audit;

        const BeampatternReport &pattern(Scheme s) const
        {
            for (std::size_t i = 0; i < schemes.size(); ++i)
                if (schemes[i] == s)
                    return patterns[i];
            throw ConfigError("scheme " + to_string(s) + " was not part of the run");
        }

        const SolveReport &report(Scheme s) const
        {
            for (std::size_t i = 0; i < schemes.size(); ++i)
                if (schemes[i] == s)
                    return reports[i];
            throw ConfigError("scheme " + to_string(s) + " was not part of the run");
        }
    };

    // Single configuration, channel realization of trial 0.
    inline BeampatternResult run_beampattern(const ExperimentSpec &spec)
    {
        if (spec.kind != ExperimentKind::beampattern)
            throw ConfigError("run_beampattern: experiment kind must be beampattern");
        spec.validate();
        const SystemConfig &cfg = spec.base;
        const SolveContext ctx = make_context(cfg, spec.solver.radar);
        const ChannelSet ch = generate_channels(cfg, std::uint64_t{0});
        const PhaseProfile phi0 = initial_phases(cfg, 0);

        BeampatternResult res;
        res.schemes = spec.schemes;
        res.angles = ctx.quad.grid.angles_deg;
        res.ideal = ctx.quad.grid.ideal;
        res.epsilon = resolve_epsilon(cfg, ctx);
        const CMat radar_w = std::sqrt(cfg.power_watts()) * ctx.radar.embedded(cfg.users);
        res.desired = optimal_alpha(radar_w, ctx.quad.grid) * res.ideal;

        for (Scheme s : spec.schemes)
        {
            SolveResult r;
            switch (s)
            {
            case Scheme::proposed:
                r = bcd_solve(cfg, ch, ctx, phi0, spec.solver);
                break;
            case Scheme::no_ris:
                r = baseline_no_ris(cfg, ch, ctx, spec.solver);
                break;
            case Scheme::random_ris:
                r = baseline_random_ris(cfg, ch, ctx, phi0, spec.solver);
                break;
            case Scheme::com_only:
                r = baseline_com_only(cfg, ch, ctx, phi0, spec.solver);
                break;
            case Scheme::radar_only:
                r = radar_only_solution(cfg, ch, ctx);
                break;
            }
            res.patterns.push_back(beampattern_report(r.W.matrix, ctx.quad.grid));
            const bool constrained = s != Scheme::com_only && s != Scheme::radar_only;
            res.audit.add(r.report, cfg.power_watts(), constrained);
            res.reports.push_back(std::move(r.report));
        }
        return res;
    }

    // 10 log10(x / max x), floored at -100 dB.
    inline RVec normalized_db(const RVec &x)
    {
        const double peak = x.maxCoeff();
        RVec out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out(i) = peak > 0.0 && x(i) > 0.0 ? std::max(-100.0, 10.0 * std::log10(x(i) / peak)) : -100.0;
        return out;
    }

    // angle_deg,desired_watts,desired_db,<scheme>_watts,<scheme>_db,...
    inline void write_csv(const BeampatternResult &res, std::ostream &os)
    {
        os << "angle_deg,desired_watts,desired_db";
        for (Scheme s : res.schemes)
            os << ',' << to_string(s) << "_watts," << to_string(s) << "_db";
        os << '\n' << std::setprecision(8);
        const RVec desired_db = normalized_db(res.desired);
        std::vector<RVec> db;
        for (const auto &p : res.patterns)
            db.push_back(normalized_db(p.designed));
        for (Eigen::Index l = 0; l < res.angles.size(); ++l)
        {
            os << res.angles(l) << ',' << res.desired(l) << ',' << desired_db(l);
            for (std::size_t s = 0; s < res.schemes.size(); ++s)
                os << ',' << res.patterns[s].designed(l) << ',' << db[s](l);
            os << '\n';
        }
    }

} // namespace risisac
