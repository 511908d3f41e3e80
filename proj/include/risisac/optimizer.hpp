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

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "fp.hpp"
#include "metrics.hpp"
#include "phasesolver.hpp"
#include "scenario.hpp"
#include "types.hpp"
#include "wsolver.hpp"

namespace risisac
{
    enum class Termination
    {
        converged,
        max_iter,
        infeasible
    };

    inline std::string to_string(Termination t)
    {
        switch (t)
        {
        case Termination::converged:
            return "converged";
        case Termination::max_iter:
            return "max_iter";
        case Termination::infeasible:
            return "infeasible";
        }
        return "unknown";
    }

    struct SolverOptions
    {
        int max_outer = 100;
        double rate_tol = 1e-4; // relative sum-rate change between outer iterations
        int mm_steps = 1;       // MM beamformer updates per outer iteration
        RcgOptions rcg;
        WSolveOptions wsolve;
        RadarOptions radar;
    };

    struct SolveReport
    {
        int iterations = 0;
        std::vector<double> rate_trace; // bits/s/Hz, entry 0 is the starting point
        std::vector<double> fp_trace;   // nats, FP objective at refreshed auxiliaries
        std::vector<double> mse_trace;  // W^2
        double final_rate = 0.0;
        double final_mse = 0.0;
        double final_power = 0.0;
        double epsilon = 0.0;     // W^2, +inf when the beampattern constraint is dropped
        double radar_floor = 0.0; // W^2, radar-only MSE at full power
        Termination termination = Termination::max_iter;
        double wall_time = 0.0;

        // Smallest change of the FP objective over any single block update
        // (auxiliaries, W or phi); non-negative up to rounding.
        double min_block_gain = std::numeric_limits<double>::infinity();
        double max_power_violation = 0.0; // max over W updates of (||W||^2 - P) / P
        double max_mse_violation = 0.0;   // max over W updates of (E - eps) / eps
        double max_modulus_deviation = 0.0;
    };

    struct SolveResult
    {
        Beamformer W;
        PhaseProfile phi;
        SolveReport report;
    };

    // Quantities that depend on the array and angle grid but not on the
    // channels or the power budget. The radar design is normalized to unit
    // power; the floor at power P is P^2 times radar.mse.
    struct SolveContext
    {
        MseQuadratic quad;
        RadarDesign radar;
    };

    inline SolveContext make_context(const SystemConfig &cfg, const RadarOptions &opts = {})
    {
        SolveContext ctx;
        ctx.quad = build_mse_quadratic(cfg);
        ctx.radar = radar_only_design(ctx.quad, 1.0, opts);
        return ctx;
    }

    inline double radar_floor(const SystemConfig &cfg, const SolveContext &ctx)
    {
        const double p = cfg.power_watts();
        return p * p * ctx.radar.mse;
    }

    inline double resolve_epsilon(const SystemConfig &cfg, const SolveContext &ctx)
    {
        return cfg.epsilon ? *cfg.epsilon : cfg.epsilon_ratio * radar_floor(cfg, ctx);
    }

    namespace detail
    {
        struct Mode
        {
            bool use_ris = true;
            bool optimize_phase = true;
            bool beam_constraint = true;
        };

        inline void check_channels(const SystemConfig &cfg, const ChannelSet &ch)
        {
            ch.check();
            require_dims(ch.antennas() == cfg.antennas && ch.users() == cfg.users && ch.ris_elements() == cfg.ris_elements,
                         "channel dimensions do not match the configuration");
        }

        // Everything runs on a normalized copy: channels scaled by sqrt(P)/sigma
        // so that the noise power and the power budget are both 1, and the MSE
        // bound divided by P^2.
        inline SolveResult solve(const SystemConfig &cfg, const ChannelSet &ch, const SolveContext &ctx,
                                 const PhaseProfile &phi0, Mode mode, const SolverOptions &opts)
        {
            const auto t0 = std::chrono::steady_clock::now();
            cfg.validate();
            check_channels(cfg, ch);
            require_dims(phi0.size() == cfg.ris_elements, "initial phase profile length must equal N");
            require_dims(ctx.quad.antennas() == cfg.antennas && ctx.quad.grid.size() == cfg.grid_size(),
                         "solve context was built for a different array or grid");

            const double P = cfg.power_watts();
            const double noise = cfg.noise_watts();
            const double scale = std::sqrt(P) / std::sqrt(noise);
            const int K = cfg.users;

            ChannelSet chn = ch;
            chn.ris_user *= scale;
            chn.bs_user *= scale;
            if (!mode.use_ris)
                chn.bs_ris.setZero();

            SolveResult out;
            SolveReport &rep = out.report;
            rep.radar_floor = P * P * ctx.radar.mse;
            const double eps_phys = mode.beam_constraint ? resolve_epsilon(cfg, ctx) : std::numeric_limits<double>::infinity();
            rep.epsilon = eps_phys;
            const double eps = eps_phys / (P * P);

            CMat W = ctx.radar.spread(K);
            if (!mode.beam_constraint)
                W.rightCols(cfg.antennas).setZero();
            PhaseProfile phi = mode.use_ris ? phi0 : PhaseProfile::ones(cfg.ris_elements);

            auto finish = [&](Termination term) {
                out.W = Beamformer{std::sqrt(P) * W, K};
                out.phi = phi;
                rep.termination = term;
                const CMat H = mode.use_ris ? composite_channels(ch, phi) : direct_channels(ch);
                rep.final_rate = sum_rate(H, out.W.matrix, noise);
                rep.final_mse = beampattern_mse(out.W.matrix, ctx.quad.grid);
                rep.final_power = out.W.power();
                rep.max_modulus_deviation = std::max(rep.max_modulus_deviation, phi.modulus_deviation());
                rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                return out;
            };

            if (mode.beam_constraint && ctx.radar.mse > eps * (1.0 + 1e-9))
                return finish(Termination::infeasible);

            CMat H = composite_channels(chn, phi);
            double rate = sum_rate(H, W, 1.0);
            rep.rate_trace.push_back(rate);
            rep.fp_trace.push_back(ln2 * rate);
            rep.mse_trace.push_back(P * P * quadratic_mse(ctx.quad, W));

            auto note_gain = [&](double before, double after) {
                rep.min_block_gain = std::min(rep.min_block_gain, after - before);
            };

            double curvature = 0.0;
            for (int it = 1; it <= opts.max_outer; ++it)
            {
                const FpAuxiliaries aux = optimal_auxiliaries(H, W, 1.0);
                const double fp_start = fp_objective(H, W, aux, 1.0);
                note_gain(rep.fp_trace.back(), fp_start);

                double fp_now = fp_start;
                for (int s = 0; s < opts.mm_steps; ++s)
                {
                    const MmStep step = beamformer_mm_step(H, aux, ctx.quad, W, 1.0, eps, curvature, opts.wsolve);
                    if (step.status == WSolveStatus::infeasible)
                        return finish(Termination::infeasible);
                    curvature = step.curvature;
                    W = step.W;
                    rep.max_power_violation = std::max(rep.max_power_violation, W.squaredNorm() - 1.0);
                    if (std::isfinite(eps))
                        rep.max_mse_violation = std::max(rep.max_mse_violation, (step.mse - eps) / eps);
                    const double fp_w = fp_objective(H, W, aux, 1.0);
                    note_gain(fp_now, fp_w);
                    fp_now = fp_w;
                    if (!step.moved)
                        break;
                }

                if (mode.use_ris && mode.optimize_phase)
                {
                    const PhaseQuadratic pq = build_phase_quadratic(chn, W, aux);
                    const RcgResult rcg = rcg_minimize(pq, phi, opts.rcg);
                    rep.max_modulus_deviation = std::max(rep.max_modulus_deviation, rcg.max_modulus_deviation);
                    phi = rcg.phi;
                    H = composite_channels(chn, phi);
                    const double fp_phi = fp_objective(H, W, aux, 1.0);
                    note_gain(fp_now, fp_phi);
                    fp_now = fp_phi;
                }

                const double prev_rate = rate;
                rate = sum_rate(H, W, 1.0);
                const FpAuxiliaries fresh = optimal_auxiliaries(H, W, 1.0);
                const double fp_fresh = fp_objective(H, W, fresh, 1.0);
                note_gain(fp_now, fp_fresh);

                rep.iterations = it;
                rep.rate_trace.push_back(rate);
                rep.fp_trace.push_back(fp_fresh);
                rep.mse_trace.push_back(P * P * quadratic_mse(ctx.quad, W));

                if (std::abs(rate - prev_rate) <= opts.rate_tol * std::max(std::abs(prev_rate), 1e-12))
                    return finish(Termination::converged);
            }
            return finish(Termination::max_iter);
        }
    } // namespace detail

    // Starting phases for trial `trial`; the random-RIS baseline holds the
    // same draw fixed.
    inline PhaseProfile initial_phases(const SystemConfig &cfg, std::uint64_t trial)
    {
        auto rng = make_stream(cfg.seed, trial, 1);
        return PhaseProfile::uniform_random(cfg.ris_elements, rng);
    }

    // Alternating FP / MM / RCG optimization of W and phi.
    inline SolveResult bcd_solve(const SystemConfig &cfg, const ChannelSet &ch, const SolveContext &ctx,
                                 const PhaseProfile &phi0, const SolverOptions &opts = {})
    {
        return detail::solve(cfg, ch, ctx, phi0, {true, true, true}, opts);
    }

    inline SolveResult bcd_solve(const SystemConfig &cfg, const ChannelSet &ch, const SolverOptions &opts = {})
    {
        return bcd_solve(cfg, ch, make_context(cfg, opts.radar), initial_phases(cfg, 0), opts);
    }

    // Reflected path removed: h_k = h_d,k, only W is optimized.
    inline SolveResult baseline_no_ris(const SystemConfig &cfg, const ChannelSet &ch, const SolveContext &ctx,
                                       const SolverOptions &opts = {})
    {
        return detail::solve(cfg, ch, ctx, PhaseProfile::ones(cfg.ris_elements), {false, false, true}, opts);
    }

    // RIS phases held at `phi`, only W is optimized.
    inline SolveResult baseline_random_ris(const SystemConfig &cfg, const ChannelSet &ch, const SolveContext &ctx,
                                           const PhaseProfile &phi, const SolverOptions &opts = {})
    {
        return detail::solve(cfg, ch, ctx, phi, {true, false, true}, opts);
    }

    inline SolveResult baseline_random_ris(const SystemConfig &cfg, const ChannelSet &ch, const SolveContext &ctx,
                                           std::mt19937_64 &rng, const SolverOptions &opts = {})
    {
        return baseline_random_ris(cfg, ch, ctx, PhaseProfile::uniform_random(cfg.ris_elements, rng), opts);
    }

    // Beampattern constraint dropped and radar columns held at zero.
    inline SolveResult baseline_com_only(const SystemConfig &cfg, const ChannelSet &ch, const SolveContext &ctx,
                                         const PhaseProfile &phi0, const SolverOptions &opts = {})
    {
        return detail::solve(cfg, ch, ctx, phi0, {true, true, false}, opts);
    }

    // Radar-only transmission (no communication columns) at full power.
    inline SolveResult radar_only_solution(const SystemConfig &cfg, const ChannelSet &ch, const SolveContext &ctx)
    {
        const auto t0 = std::chrono::steady_clock::now();
        detail::check_channels(cfg, ch);
        const double P = cfg.power_watts();
        SolveResult out;
        out.W = Beamformer{std::sqrt(P) * ctx.radar.embedded(cfg.users), cfg.users};
        out.phi = PhaseProfile::ones(cfg.ris_elements);
        SolveReport &rep = out.report;
        rep.radar_floor = P * P * ctx.radar.mse;
        rep.epsilon = resolve_epsilon(cfg, ctx);
        rep.final_rate = sum_rate(composite_channels(ch, out.phi), out.W.matrix, cfg.noise_watts());
        rep.final_mse = beampattern_mse(out.W.matrix, ctx.quad.grid);
        rep.final_power = out.W.power();
        rep.iterations = ctx.radar.iterations;
        rep.termination = ctx.radar.converged ? Termination::converged : Termination::max_iter;
        for (double m : ctx.radar.mse_trace)
            rep.mse_trace.push_back(P * P * m);
        rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }

    // One row per outer iteration, then a summary row.
    inline void write_csv(const SolveReport &rep, std::ostream &os)
    {
        os << "row,iteration,rate_bps_hz,fp_nats,mse_w2,final_power_w,epsilon_w2,radar_floor_w2,termination,wall_time_s\n";
        os << std::setprecision(12);
        for (std::size_t i = 0; i < rep.rate_trace.size(); ++i)
        {
            os << "iter," << i << ',' << rep.rate_trace[i] << ',' << rep.fp_trace[i] << ',';
            if (i < rep.mse_trace.size())
                os << rep.mse_trace[i];
            os << ",,,,,\n";
        }
        os << "summary," << rep.iterations << ',' << rep.final_rate << ',' << ln2 * rep.final_rate << ',' << rep.final_mse
           << ',' << rep.final_power << ',' << rep.epsilon << ',' << rep.radar_floor << ',' << to_string(rep.termination)
           << ',' << rep.wall_time << '\n';
    }

} // namespace risisac
