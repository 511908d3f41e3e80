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

// Acceptance gate: one PASS/FAIL line per criterion, exit code 1 on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <risisac/experiment.hpp>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace risisac;
using namespace risisac::testing;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::string detail;
    };

    struct Discipline
    {
        int solves = 0;
        int power_violations = 0;
        int modulus_violations = 0;
        double worst_power_ratio = 0.0;
        double worst_modulus = 0.0;

        void add_power(double power, double budget)
        {
            ++solves;
            worst_power_ratio = std::max(worst_power_ratio, power / budget);
            power_violations += power > budget * (1.0 + 1e-6);
        }

        void add_modulus(double deviation)
        {
            worst_modulus = std::max(worst_modulus, deviation);
            modulus_violations += deviation > 1e-10;
        }

        void add(const SolveReport &rep, double budget)
        {
            add_power(rep.final_power, budget);
            add_modulus(rep.max_modulus_deviation);
        }
    };

    Discipline discipline;

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    // Indices of local maxima (not below either neighbour).
    std::vector<Eigen::Index> local_maxima(const RVec &x)
    {
        std::vector<Eigen::Index> out;
        for (Eigen::Index l = 0; l < x.size(); ++l)
        {
            const bool left = l == 0 || x(l) >= x(l - 1);
            const bool right = l + 1 == x.size() || x(l) >= x(l + 1);
            if (left && right)
                out.push_back(l);
        }
        return out;
    }

    bool peak_near(const RVec &pattern, const RVec &angles, double target, double step)
    {
        for (Eigen::Index l : local_maxima(pattern))
            if (std::abs(angles(l) - target) <= step + 1e-9)
                return true;
        return false;
    }

    // 1. FP tightness at optimal auxiliaries.
    Outcome fp_tightness()
    {
        SystemConfig cfg;
        cfg.antennas = 4;
        cfg.users = 2;
        cfg.ris_elements = 8;
        std::mt19937_64 rng(101);
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 100; ++i)
        {
            const ChannelSet ch = generate_channels(cfg, i);
            const PhaseProfile phi(random_phases(cfg.ris_elements, rng));
            const CMat W = random_in_power_ball(cfg.antennas, cfg.beam_columns(), cfg.power_watts(), rng);
            const CMat H = composite_channels(ch, phi);
            const double noise = cfg.noise_watts();
            const double fp = fp_objective(H, W, optimal_auxiliaries(H, W, noise), noise);
            const double ref = ln2 * sum_rate(H, W, noise);
            worst = std::max(worst, std::abs(fp - ref) / std::abs(ref));
        }
        return {worst <= 1e-9, fmt("worst relative gap %.2e over 100 instances", worst)};
    }

    // 2. The surrogate majorizes the beampattern MSE.
    Outcome mm_majorization()
    {
        SystemConfig cfg;
        cfg.antennas = 4;
        cfg.users = 2;
        const MseQuadratic q = build_mse_quadratic(cfg);
        const double P = cfg.power_watts();
        std::mt19937_64 rng(202);
        double worst = 0.0, worst_psd = 0.0, worst_nsd = 0.0;
        for (int t = 0; t < 20; ++t)
        {
            const CMat Wt = random_in_power_ball(4, 6, P, rng);
            const MmSurrogate s = build_surrogate(q, Wt, P);
            Eigen::SelfAdjointEigenSolver<CMat> e1(s.bound.B1), e2(s.B2);
            worst_psd = std::max(worst_psd, -e1.eigenvalues().minCoeff() / s.bound.B1.norm());
            worst_nsd = std::max(worst_nsd, e2.eigenvalues().maxCoeff() / s.B2.norm());
            for (int i = 0; i < 100; ++i)
            {
                const CMat W = random_in_power_ball(4, 6, P, rng);
                const double E = quadratic_mse(q, W);
                worst = std::max(worst, (E - s.bound.value(W)) / std::max(1.0, E));
            }
        }
        const bool ok = worst <= 1e-8 && worst_psd <= 1e-8 && worst_nsd <= 1e-8;
        return {ok, fmt("worst violation %.2e, B1 min eig %.2e, B2 max eig %.2e (relative)", worst, -worst_psd, worst_nsd)};
    }

    // 3. Subproblem solver against the projected-gradient oracle.
    Outcome subproblem()
    {
        std::mt19937_64 rng(303);
        double worst_obj = 0.0, worst_kkt = 0.0;
        int infeasible = 0;
        for (int i = 0; i < 20; ++i)
        {
            const SmallInstance s = random_small_instance(rng);
            const WSolveResult res = solve_w_subproblem(s.H, s.aux, s.bound, s.power, s.eps);
            infeasible += res.status != WSolveStatus::optimal;
            discipline.add_power(res.W.squaredNorm(), s.power);
            const double oracle = projected_gradient_oracle(s.H, s.aux, s.bound, s.eps, s.power, s.start);
            worst_obj = std::max(worst_obj, std::abs(res.objective - oracle) / std::max(std::abs(oracle), 1e-300));
            worst_kkt = std::max(worst_kkt, res.kkt.max());
        }
        const bool ok = infeasible == 0 && worst_obj <= 1e-4 && worst_kkt <= 1e-6;
        return {ok, fmt("worst objective gap %.2e, worst KKT residual %.2e", worst_obj, worst_kkt)};
    }

    // 4. RCG: gradient check, manifold feasibility and grid search.
    Outcome rcg()
    {
        SystemConfig cfg;
        std::mt19937_64 rng(404);
        double worst_fd = 0.0;
        for (std::uint64_t t = 0; t < 5; ++t)
        {
            const ChannelSet ch = generate_channels(cfg, t);
            const CMat W = std::sqrt(cfg.power_watts()) * make_context(cfg).radar.spread(cfg.users);
            const PhaseProfile phi0(random_phases(cfg.ris_elements, rng));
            const FpAuxiliaries aux = optimal_auxiliaries(composite_channels(ch, phi0), W, cfg.noise_watts());
            const PhaseQuadratic pq = build_phase_quadratic(ch, W, aux);
            const CVec grad = riemannian_gradient(pq, phi0.values());
            for (int i = 0; i < 10; ++i)
            {
                const CVec d = project_tangent(phi0.values(), random_cvec(cfg.ris_elements, rng));
                const double h = 1e-6;
                const double fd = (pq.value(retract(phi0.values() + h * d)) - pq.value(retract(phi0.values() - h * d))) / (2.0 * h);
                const double exact = tangent_inner(grad, d);
                worst_fd = std::max(worst_fd, std::abs(fd - exact) / std::abs(exact));
            }
            const RcgResult r = rcg_minimize(pq, phi0);
            discipline.add_modulus(r.max_modulus_deviation);
        }

        double worst_excess = 0.0;
        bool within = true;
        for (int rep = 0; rep < 5; ++rep)
        {
            const int N = 4;
            PhaseQuadratic pq;
            const CMat X = random_cmat(N, N, rng);
            pq.Q = hermitian_part(X * X.adjoint());
            pq.q = random_cvec(N, rng, 2.0);
            double grid_best = std::numeric_limits<double>::infinity();
            CVec phi(N);
            for (int idx = 0; idx < 65536; ++idx)
            {
                for (int n = 0, code = idx; n < N; ++n, code >>= 4)
                    phi(n) = std::polar(1.0, (code & 15) * pi / 8.0);
                grid_best = std::min(grid_best, pq.value(phi));
            }
            const double lipschitz = 2.0 * (pq.Q.norm() * std::sqrt(double(N)) + pq.q.norm());
            const double gap = lipschitz * std::sqrt(double(N)) * 2.0 * std::sin(pi / 32.0);
            double best = std::numeric_limits<double>::infinity();
            for (int s = 0; s < 8; ++s)
            {
                const RcgResult r = rcg_minimize(pq, PhaseProfile(random_phases(N, rng)));
                discipline.add_modulus(r.max_modulus_deviation);
                best = std::min(best, pq.value(r.phi.values()));
            }
            worst_excess = std::max(worst_excess, best - grid_best);
            within = within && best <= grid_best + 1e-6 && best >= grid_best - gap;
        }
        const bool ok = worst_fd < 1e-5 && within && discipline.worst_modulus <= 1e-10;
        return {ok, fmt("FD relative error %.2e, max modulus deviation %.2e, worst excess over grid %.2e", worst_fd,
                        discipline.worst_modulus, worst_excess)};
    }

    struct TrialMatrix
    {
        std::vector<std::vector<SchemeOutcome>> trials; // [trial][scheme]
        std::vector<Scheme> schemes{Scheme::proposed, Scheme::no_ris, Scheme::random_ris, Scheme::com_only};
    };

    TrialMatrix default_matrix(const SystemConfig &cfg, int trials)
    {
        TrialMatrix m;
        const SolveContext ctx = make_context(cfg);
        m.trials.resize(trials);
        for (int t = 0; t < trials; ++t)
        {
            m.trials[t] = run_trial(cfg, ctx, t, m.schemes, {});
            for (const auto &o : m.trials[t])
                discipline.add(o.report, cfg.power_watts());
        }
        return m;
    }

    // 5. Monotone convergence of the proposed solver.
    Outcome monotone(const TrialMatrix &m)
    {
        double worst_drop = 0.0;
        int not_converged = 0, max_iter = 0;
        for (const auto &trial : m.trials)
        {
            const SolveReport &rep = trial[0].report;
            for (std::size_t i = 1; i < rep.fp_trace.size(); ++i)
                worst_drop = std::max(worst_drop, rep.fp_trace[i - 1] - rep.fp_trace[i]);
            not_converged += rep.termination != Termination::converged || rep.iterations > 100;
            max_iter = std::max(max_iter, rep.iterations);
        }
        const bool ok = worst_drop <= 1e-8 && not_converged == 0;
        return {ok, fmt("largest fp decrease %.2e, %d/%zu not converged, max %d outer iterations", worst_drop,
                        not_converged, m.trials.size(), max_iter)};
    }

    // 6. Scheme ordering with common random numbers.
    Outcome ordering(const TrialMatrix &m)
    {
        const std::size_t T = m.trials.size();
        std::vector<double> mean(4, 0.0);
        std::vector<double> diff(T);
        for (std::size_t t = 0; t < T; ++t)
        {
            for (std::size_t s = 0; s < 4; ++s)
                mean[s] += m.trials[t][s].rate / T;
            diff[t] = m.trials[t][0].rate - m.trials[t][1].rate;
        }
        const double d_mean = detail::mean_of(diff), d_se = detail::stderr_of(diff);
        std::vector<double> prop(T);
        for (std::size_t t = 0; t < T; ++t)
            prop[t] = m.trials[t][0].rate;
        const double se = std::max(d_se, detail::stderr_of(prop));
        const double com = mean[3], pr = mean[0], rnd = mean[2], none = mean[1];
        const bool ok = com >= pr && pr >= rnd && rnd >= none && d_mean > 0.0 && d_mean >= 3.0 * se;
        return {ok, fmt("com-only %.3f >= proposed %.3f >= random %.3f >= no-RIS %.3f; margin %.3f = %.1f SE", com, pr, rnd,
                        none, d_mean, d_mean / se)};
    }

    // 7. Growth with the number of RIS elements.
    Outcome ris_growth()
    {
        ExperimentSpec spec;
        spec.kind = ExperimentKind::ris_size_sweep;
        spec.sweep = {16.0, 36.0, 64.0};
        spec.trials = 10;
        spec.schemes = {Scheme::proposed, Scheme::random_ris};
        spec.threads = 1;
        const SweepResult res = run_ris_size_sweep(spec);
        discipline.solves += res.audit.solves;
        discipline.power_violations += res.audit.max_power_ratio > 1.0 + 1e-6 ? 1 : 0;
        discipline.worst_power_ratio = std::max(discipline.worst_power_ratio, res.audit.max_power_ratio);
        discipline.add_modulus(res.audit.max_modulus_deviation);

        bool ok = true;
        std::string text;
        for (std::size_t v = 0; v < 3; ++v)
        {
            const SweepRow &p = res.row(v, Scheme::proposed);
            text += fmt("N=%d: proposed %.3f gap %.3f; ", int(spec.sweep[v]), p.mean, p.gap_vs_random);
            if (v > 0)
            {
                const SweepRow &prev = res.row(v - 1, Scheme::proposed);
                ok = ok && p.mean > prev.mean && p.gap_vs_random >= prev.gap_vs_random;
            }
        }
        return {ok, text};
    }

    // 8. Beampattern shape and constraint.
    Outcome beampattern()
    {
        ExperimentSpec spec;
        spec.kind = ExperimentKind::beampattern;
        spec.schemes = {Scheme::proposed, Scheme::radar_only};
        const BeampatternResult res = run_beampattern(spec);
        for (const auto &rep : res.reports)
            discipline.add(rep, spec.base.power_watts());
        const double step = res.angles(1) - res.angles(0);
        bool peaks = true;
        for (double target : spec.base.target_angles)
            for (Scheme s : spec.schemes)
                peaks = peaks && peak_near(res.pattern(s).designed, res.angles, target, step);
        const SolveReport &prop = res.report(Scheme::proposed);
        const double slack = (prop.final_mse - res.epsilon) / res.epsilon;
        const bool ok = peaks && slack <= 1e-6;
        return {ok, fmt("local maxima at targets: %s; proposed MSE / eps - 1 = %.2e", peaks ? "yes" : "no", slack)};
    }

    Outcome constraint_discipline()
    {
        const bool ok = discipline.power_violations == 0 && discipline.modulus_violations == 0;
        return {ok, fmt("%d solves, worst power ratio %.9f, worst modulus deviation %.2e", discipline.solves,
                        discipline.worst_power_ratio, discipline.worst_modulus)};
    }

    int failures = 0;

    void report(int id, const char *name, double limit_s, const std::function<Outcome()> &body)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = body();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = limit_s <= 0.0 || secs <= limit_s;
        const bool pass = o.pass && in_time;
        failures += !pass;
        std::printf("%s  [%d] %-26s %7.2fs  %s%s\n", pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str(),
                    in_time ? "" : " (time limit exceeded)");
        std::fflush(stdout);
    }
} // namespace

int main()
{
    report(1, "fp tightness", 5.0, fp_tightness);
    report(2, "mm majorization", 30.0, mm_majorization);
    report(3, "subproblem vs oracle", 60.0, subproblem);
    report(4, "rcg correctness", 60.0, rcg);

    TrialMatrix matrix;
    const SystemConfig cfg;
    report(5, "monotone convergence", 600.0, [&] {
        matrix = default_matrix(cfg, 20);
        return monotone(matrix);
    });
    report(6, "scheme ordering", 0.0, [&] { return ordering(matrix); });
    report(7, "growth with RIS size", 0.0, ris_growth);
    report(8, "beampattern shape", 0.0, beampattern);
    report(9, "constraint discipline", 0.0, constraint_discipline);

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
