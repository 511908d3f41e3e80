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
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fp.hpp"
#include "metrics.hpp"
#include "types.hpp"

// Beamformer update with the RIS phases fixed.
//
// The beampattern MSE with the scaling factor eliminated is the quartic
// E(W) = r^H C r, r = vec(W W^H). It is replaced by convex quadratic upper
// bounds in the columns of W (majorization-minimization) and the resulting
// two-constraint convex subproblem is solved through its Lagrangian dual.

namespace risisac
{
    inline double real_rayleigh(const CMat &A, const CVec &x)
    {
        return std::real(x.dot(A * x)) / x.squaredNorm();
    }

    // Largest eigenvalue of a Hermitian PSD matrix by power iteration.
    inline double largest_eigenvalue(const CMat &A, double rel_tol = 1e-10, int max_iter = 100000)
    {
        require_dims(A.rows() == A.cols(), "largest_eigenvalue: matrix must be square");
        const Eigen::Index n = A.rows();
        if (n == 0 || A.norm() == 0.0)
            return 0.0;
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        std::normal_distribution<double> normal;
        CVec x(n);
        for (Eigen::Index i = 0; i < n; ++i)
            x(i) = cplx(normal(rng), normal(rng));
        x.normalize();
        double rho = 0.0;
        for (int it = 0; it < max_iter; ++it)
        {
            CVec y = A * x;
            const double next = std::real(x.dot(y));
            const double ny = y.norm();
            if (ny == 0.0)
                return 0.0;
            x = y / ny;
            if (it > 0 && std::abs(next - rho) <= rel_tol * std::abs(next))
                return std::max(next, real_rayleigh(A, x));
            rho = next;
        }
        return rho;
    }

    struct MseQuadratic
    {
        CMat C;          // M^2 x M^2, (1/L) sum_l b_l b_l^H
        CMat b;          // M^2 x L, column l is b_l
        CVec ideal_vec;  // sum_l P_d(theta_l) vec(A_l)
        double beta = 0.0;
        double lambda_max = 0.0;
        BeamGrid grid;

        int antennas() const { return grid.antennas(); }
    };

    inline MseQuadratic build_mse_quadratic(const BeamGrid &grid)
    {
        if (!(grid.ideal_energy > 0.0))
            throw ConfigError("build_mse_quadratic: ideal beampattern is identically zero");
        for (Eigen::Index l = 1; l < grid.angles_deg.size(); ++l)
            if (!(grid.angles_deg(l) > grid.angles_deg(l - 1)))
                throw ConfigError("build_mse_quadratic: degenerate angle grid");

        const int M = grid.antennas(), L = grid.size();
        MseQuadratic q;
        q.grid = grid;
        q.beta = grid.ideal_energy;

        CMat A_vecs(M * M, L);
        for (int l = 0; l < L; ++l)
        {
            const CMat Al = grid.steering.col(l) * grid.steering.col(l).adjoint();
            A_vecs.col(l) = vec(Al);
        }
        q.ideal_vec = A_vecs * grid.ideal.cast<cplx>();
        q.b.resize(M * M, L);
        for (int l = 0; l < L; ++l)
            q.b.col(l) = (grid.ideal(l) / q.beta) * q.ideal_vec - A_vecs.col(l);
        q.C = hermitian_part(q.b * q.b.adjoint() / static_cast<double>(L));
        q.lambda_max = largest_eigenvalue(q.C);
        return q;
    }

    inline MseQuadratic build_mse_quadratic(const SystemConfig &cfg)
    {
        return build_mse_quadratic(make_beam_grid(cfg));
    }

    // r^H C r with r = vec(W W^H).
    inline double quadratic_mse(const MseQuadratic &q, const CMat &W)
    {
        require_dims(W.rows() == q.antennas(), "quadratic_mse: antenna count mismatch");
        const CVec r = vec(W * W.adjoint());
        return std::real(r.dot(q.C * r));
    }

    // Gradient of E at W with respect to the real inner product Re tr(D^H G):
    // E(W + D) = E(W) + Re tr(D^H G) + O(||D||^2), G = 4 mat(C r) W.
    inline CMat mse_gradient(const MseQuadratic &q, const CMat &W)
    {
        const Eigen::Index M = W.rows();
        const CVec r = vec(W * W.adjoint());
        const CMat Gm = hermitian_part(unvec(q.C * r, M));
        return 4.0 * Gm * W;
    }

    // Upper bound on the curvature of E over the ball ||W||_F^2 <= P:
    // E(W_t + D) <= E(W_t) + Re tr(D^H grad) + (kappa / 2) ||D||_F^2 with
    // kappa = 12 lambda_max P.
    inline double mse_curvature_bound(const MseQuadratic &q, double power)
    {
        return 12.0 * q.lambda_max * power;
    }

    // Convex quadratic bound sum_j Re{w_j^H B1 w_j + 2 w_j^H u_j} + c2.
    struct QuadraticBound
    {
        CMat B1; // M x M, Hermitian PSD
        CMat U;  // M x (K+M), column j is u_j
        double c2 = 0.0;

        double value(const CMat &W) const
        {
            return std::real((W.adjoint() * B1 * W).trace()) + 2.0 * std::real((W.adjoint() * U).trace()) + c2;
        }
    };

    // Surrogate built from the largest eigenvalue of C and the power budget.
    // Upper-bounds E on the power ball but exceeds E(W_t) at the expansion
    // point by lambda_max (P^2 - ||W_t W_t^H||_F^2).
    struct MmSurrogate
    {
        QuadraticBound bound;
        CMat B2;    // M x M, Hermitian NSD
        CVec b_t;   // 2 (C - lambda I) vec(W_t W_t^H)
        double c1 = 0.0;
    };

    inline MmSurrogate build_surrogate(const MseQuadratic &q, const CMat &W_t, double power)
    {
        require_dims(W_t.rows() == q.antennas(), "build_surrogate: antenna count mismatch");
        const BeamGrid &grid = q.grid;
        const Eigen::Index M = W_t.rows();
        const double L = static_cast<double>(grid.size());
        const double lambda = q.lambda_max;

        const CMat R_t = W_t * W_t.adjoint();
        const CVec r_t = vec(R_t);
        const CVec Cr = q.C * r_t;

        MmSurrogate s;
        s.b_t = 2.0 * (Cr - lambda * r_t);
        s.c1 = lambda * r_t.squaredNorm() - std::real(r_t.dot(Cr));

        const RVec pattern = transmit_beampattern(W_t, grid);
        const double alpha_t = grid.ideal.dot(pattern) / q.beta;
        const CMat ideal_mat = grid.steering * grid.ideal.asDiagonal() * grid.steering.adjoint();
        const CMat weighted = grid.steering * pattern.asDiagonal() * grid.steering.adjoint();

        s.bound.B1 = hermitian_part((2.0 / L) * (alpha_t * ideal_mat + weighted));
        s.B2 = hermitian_part(-(4.0 / L) * alpha_t * ideal_mat - 2.0 * lambda * R_t);
        s.bound.U = s.B2.adjoint() * W_t;
        s.bound.c2 = -std::real((W_t.adjoint() * s.B2.adjoint() * W_t).trace()) + s.c1 + lambda * power * power;
        (void)M;
        return s;
    }

    // Isotropic bound E_t + Re tr((W - W_t)^H grad) + (kappa/2)||W - W_t||^2,
    // tight at W_t. Valid on the power ball whenever kappa >= mse_curvature_bound.
    inline QuadraticBound lipschitz_surrogate(const MseQuadratic &q, const CMat &W_t, double kappa)
    {
        const Eigen::Index M = W_t.rows();
        const CMat G = mse_gradient(q, W_t);
        QuadraticBound b;
        b.B1 = 0.5 * kappa * CMat::Identity(M, M);
        b.U = 0.5 * (G - kappa * W_t);
        b.c2 = quadratic_mse(q, W_t) - std::real((W_t.adjoint() * G).trace()) + 0.5 * kappa * W_t.squaredNorm();
        return b;
    }

    enum class WSolveStatus
    {
        optimal,
        infeasible
    };

    struct KktResiduals
    {
        double stationarity = 0.0;
        double beam_feasibility = 0.0;  // relative violation of the surrogate bound
        double power_feasibility = 0.0; // relative violation of the power budget
        double beam_slackness = 0.0;
        double power_slackness = 0.0;

        double max() const
        {
            return std::max({stationarity, beam_feasibility, power_feasibility, beam_slackness, power_slackness});
        }
    };

    struct WSolveResult
    {
        CMat W;
        WSolveStatus status = WSolveStatus::optimal;
        double mu_beam = 0.0;
        double mu_power = 0.0;
        double objective = 0.0;        // reduced FP objective at W
        double surrogate_value = 0.0;  // bound.value(W)
        double min_system_eigenvalue = 0.0;
        KktResiduals kkt;
    };

    struct WSolveOptions
    {
        double ridge = 1e-10;   // relative to trace(D) / M
        int max_bisection = 200;
        double rel_tol = 1e-13;
    };

    namespace detail
    {
        // Column-wise closed form of the Lagrangian maximizer for a fixed
        // beampattern multiplier; the power multiplier is resolved exactly.
        class WDual
        {
        public:
            WDual(const CMat &H, const FpAuxiliaries &aux, const QuadraticBound &bound, double power, const WSolveOptions &opts)
                : bound_(bound), power_(power), opts_(opts)
            {
                const Eigen::Index M = H.rows(), K = H.cols(), J = bound.U.cols();
                require_dims(bound.B1.rows() == M && bound.B1.cols() == M, "solve_w_subproblem: B1 must be M x M");
                require_dims(bound.U.rows() == M && J >= K, "solve_w_subproblem: U must be M x (K+M)");
                require_dims(aux.c.size() == K && aux.g.size() == K, "solve_w_subproblem: auxiliary sizes must equal K");
                const RVec g2 = aux.g.cwiseAbs2();
                user_gram_ = hermitian_part(H * g2.asDiagonal() * H.adjoint());
                comm_rhs_ = CMat::Zero(M, J);
                for (Eigen::Index k = 0; k < K; ++k)
                    comm_rhs_.col(k) = std::sqrt(1.0 + aux.c(k)) * aux.g(k) * H.col(k);
            }

            struct Point
            {
                CMat W;
                double mu_power = 0.0;
                double surrogate = 0.0;
                double min_eig = 0.0;
            };

            Point solve_fixed(double mu_beam, double mu_power) const
            {
                Decomp d = decompose(mu_beam);
                return finish(d, mu_power);
            }

            Point solve(double mu_beam) const
            {
                Decomp d = decompose(mu_beam);
                double lo = std::max(0.0, -d.lambda.minCoeff());
                double mu = lo;
                if (power_at(d, lo) > power_)
                {
                    double hi = lo + std::sqrt(d.row_power.sum() / power_);
                    for (int it = 0; it < opts_.max_bisection && hi - lo > opts_.rel_tol * hi; ++it)
                    {
                        const double mid = 0.5 * (lo + hi);
                        if (power_at(d, mid) > power_)
                            lo = mid;
                        else
                            hi = mid;
                    }
                    mu = hi;
                }
                return finish(d, mu);
            }

            const CMat &user_gram() const { return user_gram_; }
            const CMat &comm_rhs() const { return comm_rhs_; }

        private:
            struct Decomp
            {
                RVec lambda; // regularized eigenvalues
                CMat V;
                CMat Y; // V^H rhs
                RVec row_power;
                double mu_beam = 0.0;
            };

            Decomp decompose(double mu_beam) const
            {
                const Eigen::Index M = user_gram_.rows();
                const CMat A = hermitian_part(user_gram_ + mu_beam * bound_.B1);
                const double ridge = opts_.ridge * std::max(0.0, std::real(A.trace())) / static_cast<double>(M);
                Eigen::SelfAdjointEigenSolver<CMat> es(A);
                Decomp d;
                d.mu_beam = mu_beam;
                d.lambda = es.eigenvalues().array() + ridge;
                d.V = es.eigenvectors();
                d.Y = d.V.adjoint() * (comm_rhs_ - mu_beam * bound_.U);
                d.row_power = d.Y.rowwise().squaredNorm();
                // Components at roundoff level along near-null directions would
                // otherwise be amplified by 1 / ridge.
                const double floor = std::pow(64.0 * std::numeric_limits<double>::epsilon(), 2) * d.row_power.sum();
                for (Eigen::Index i = 0; i < d.row_power.size(); ++i)
                    if (d.row_power(i) <= floor)
                    {
                        d.row_power(i) = 0.0;
                        d.Y.row(i).setZero();
                    }
                return d;
            }

            static double power_at(const Decomp &d, double mu)
            {
                double p = 0.0;
                for (Eigen::Index i = 0; i < d.lambda.size(); ++i)
                {
                    if (d.row_power(i) == 0.0)
                        continue;
                    const double den = d.lambda(i) + mu;
                    if (den <= 0.0)
                        return std::numeric_limits<double>::infinity();
                    p += d.row_power(i) / (den * den);
                }
                return p;
            }

            Point finish(const Decomp &d, double mu_power) const
            {
                CMat Z = d.Y;
                for (Eigen::Index i = 0; i < d.lambda.size(); ++i)
                {
                    const double den = d.lambda(i) + mu_power;
                    if (d.row_power(i) == 0.0 || den <= 0.0)
                        Z.row(i).setZero();
                    else
                        Z.row(i) /= den;
                }
                Point p;
                p.W = d.V * Z;
                p.mu_power = mu_power;
                p.surrogate = bound_.value(p.W);
                p.min_eig = d.lambda.minCoeff() + mu_power;
                return p;
            }

            const QuadraticBound &bound_;
            double power_;
            WSolveOptions opts_;
            CMat user_gram_;
            CMat comm_rhs_;
        };
    } // namespace detail

    // W maximizing the reduced objective for multipliers (mu_beam, mu_power):
    // w_j = D^{-1} r_j, D = sum_k |g_k|^2 h_k h_k^H + mu_beam B1 + mu_power I.
    inline CMat beamformer_for_multipliers(const CMat &H, const FpAuxiliaries &aux, const QuadraticBound &bound,
                                           double mu_beam, double mu_power, const WSolveOptions &opts = {})
    {
        detail::WDual dual(H, aux, bound, 1.0, opts);
        return dual.solve_fixed(mu_beam, mu_power).W;
    }

    // maximize  reduced_objective(H, W, aux)
    // s.t.      bound.value(W) <= eps,  ||W||_F^2 <= power
    // eps = +inf drops the beampattern constraint.
    inline WSolveResult solve_w_subproblem(const CMat &H, const FpAuxiliaries &aux, const QuadraticBound &bound,
                                           double power, double eps, const WSolveOptions &opts = {})
    {
        if (!(power > 0.0))
            throw DomainError("solve_w_subproblem: power budget must be positive");
        {
            Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(bound.B1), Eigen::EigenvaluesOnly);
            const double scale = std::max(1.0, bound.B1.norm());
            if (es.eigenvalues().minCoeff() < -1e-8 * scale)
                throw ConsistencyError("solve_w_subproblem: surrogate quadratic term is not PSD");
        }

        detail::WDual dual(H, aux, bound, power, opts);
        const bool constrained = std::isfinite(eps);

        WSolveResult res;
        double mu_beam = 0.0;
        auto point = dual.solve(0.0);

        if (constrained && point.surrogate > eps)
        {
            const double gram = std::max(dual.user_gram().norm(), 1e-300);
            const double curv = std::max(bound.B1.norm(), 1e-300);
            double lo = 0.0, hi = gram / curv;
            auto hi_point = dual.solve(hi);
            int grow = 0;
            while (hi_point.surrogate > eps && grow < 120)
            {
                lo = hi;
                hi *= 4.0;
                hi_point = dual.solve(hi);
                ++grow;
            }
            if (hi_point.surrogate > eps)
            {
                res.W = hi_point.W;
                res.status = WSolveStatus::infeasible;
                res.mu_beam = hi;
                res.mu_power = hi_point.mu_power;
                res.surrogate_value = hi_point.surrogate;
                res.objective = reduced_objective(H, res.W, aux);
                res.min_system_eigenvalue = hi_point.min_eig;
                return res;
            }
            for (int it = 0; it < opts.max_bisection; ++it)
            {
                if (hi - lo <= opts.rel_tol * hi || hi_point.surrogate >= eps - opts.rel_tol * std::abs(eps))
                    break;
                const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
                auto mid_point = dual.solve(mid);
                if (mid_point.surrogate > eps)
                    lo = mid;
                else
                {
                    hi = mid;
                    hi_point = std::move(mid_point);
                }
            }
            mu_beam = hi;
            point = std::move(hi_point);
        }

        res.W = std::move(point.W);
        res.mu_beam = mu_beam;
        res.mu_power = point.mu_power;
        res.surrogate_value = point.surrogate;
        res.min_system_eigenvalue = point.min_eig;
        res.objective = reduced_objective(H, res.W, aux);

        // KKT residuals with the unregularized system matrix.
        const Eigen::Index M = H.rows();
        const CMat D = dual.user_gram() + mu_beam * bound.B1 + res.mu_power * CMat::Identity(M, M);
        const CMat rhs = dual.comm_rhs() - mu_beam * bound.U;
        const double scale = std::max({rhs.norm(), D.norm() * res.W.norm(), 1e-300});
        res.kkt.stationarity = (D * res.W - rhs).norm() / scale;
        const double pw = res.W.squaredNorm();
        // Slackness products are measured against the objective scale.
        const double obj_scale = std::max(1.0, std::abs(res.objective));
        res.kkt.power_feasibility = std::max(0.0, pw - power) / power;
        res.kkt.power_slackness = res.mu_power * std::abs(pw - power) / obj_scale;
        if (constrained)
        {
            const double den = std::max(std::abs(eps), 1e-300);
            res.kkt.beam_feasibility = std::max(0.0, res.surrogate_value - eps) / den;
            res.kkt.beam_slackness = mu_beam * std::abs(res.surrogate_value - eps) / obj_scale;
        }
        return res;
    }

    // One majorize-minimize beamformer update with an adaptively chosen
    // curvature. The curvature is doubled until the bound majorizes E at the
    // new point, capped at mse_curvature_bound() where it holds on the whole
    // power ball. Returns W_t unchanged if no ascent step exists.
    struct MmStep
    {
        CMat W;
        WSolveStatus status = WSolveStatus::optimal;
        double curvature = 0.0;
        double mse = 0.0;
        double surrogate = 0.0;
        int attempts = 0;
        bool moved = false;
        KktResiduals kkt;
        double min_system_eigenvalue = 0.0;
    };

    inline MmStep beamformer_mm_step(const CMat &H, const FpAuxiliaries &aux, const MseQuadratic &q, const CMat &W_t,
                                     double power, double eps, double curvature_hint, const WSolveOptions &opts = {})
    {
        const double kappa_max = std::max(mse_curvature_bound(q, power), 1e-300);
        double kappa = curvature_hint > 0.0 ? std::clamp(0.5 * curvature_hint, 1e-8 * kappa_max, kappa_max)
                                            : kappa_max / 64.0;
        const double mse_t = quadratic_mse(q, W_t);
        const double f_t = reduced_objective(H, W_t, aux);

        MmStep step;
        step.W = W_t;
        step.mse = mse_t;
        step.surrogate = mse_t;
        for (int attempt = 1; attempt <= 64; ++attempt)
        {
            step.attempts = attempt;
            const QuadraticBound bound = lipschitz_surrogate(q, W_t, kappa);
            WSolveResult sol = solve_w_subproblem(H, aux, bound, power, eps, opts);
            if (sol.status == WSolveStatus::infeasible)
            {
                step.status = WSolveStatus::infeasible;
                step.curvature = kappa;
                return step;
            }
            const double mse_new = quadratic_mse(q, sol.W);
            const double tol = 1e-12 * std::max({std::abs(mse_t), std::isfinite(eps) ? eps : 0.0, 1e-300});
            const bool majorized = mse_new <= sol.surrogate_value + tol;
            if (majorized || kappa >= kappa_max)
            {
                step.curvature = kappa;
                const bool feasible = !std::isfinite(eps) || mse_new <= eps * (1.0 + 1e-9);
                if (feasible && sol.objective >= f_t)
                {
                    step.W = std::move(sol.W);
                    step.mse = mse_new;
                    step.surrogate = sol.surrogate_value;
                    step.kkt = sol.kkt;
                    step.min_system_eigenvalue = sol.min_system_eigenvalue;
                    step.moved = true;
                }
                return step;
            }
            kappa = std::min(2.0 * kappa, kappa_max);
        }
        return step;
    }

    struct RadarOptions
    {
        int max_iter = 20000;
        double rel_tol = 1e-6;
    };

    // Radar-only transmit design: minimum beampattern MSE with all power
    // spent, ||W_r||_F^2 = P.
    struct RadarDesign
    {
        CMat radar;                     // M x M
        double mse = 0.0;
        std::vector<double> mse_trace;
        int iterations = 0;
        bool converged = false;

        // M x (K+M) beamformer with empty communication columns.
        CMat embedded(int users) const
        {
            const Eigen::Index M = radar.rows();
            CMat W = CMat::Zero(M, users + M);
            W.rightCols(M) = radar;
            return W;
        }

        // M x (K+M) beamformer with the same Gram matrix, spread over all
        // columns by the first M rows of the unitary DFT of size K+M.
        CMat spread(int users) const
        {
            const Eigen::Index M = radar.rows();
            const Eigen::Index J = users + M;
            CMat F(M, J);
            for (Eigen::Index i = 0; i < M; ++i)
                for (Eigen::Index j = 0; j < J; ++j)
                    F(i, j) = std::polar(1.0 / std::sqrt(static_cast<double>(J)), -2.0 * pi * static_cast<double>(i * j) / static_cast<double>(J));
            return radar * F;
        }
    };

    inline RadarDesign radar_only_design(const MseQuadratic &q, double power, const RadarOptions &opts = {})
    {
        if (!(power > 0.0))
            throw DomainError("radar_only_design: power budget must be positive");
        const BeamGrid &grid = q.grid;
        const Eigen::Index M = grid.antennas();

        // Start from the square root of the mask-weighted array covariance.
        CMat R0 = grid.steering * grid.ideal.asDiagonal() * grid.steering.adjoint();
        R0 = hermitian_part(R0) + 1e-3 * std::real(R0.trace()) / static_cast<double>(M) * CMat::Identity(M, M);
        Eigen::SelfAdjointEigenSolver<CMat> es(R0);
        CMat W = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
        W *= std::sqrt(power) / W.norm();

        const double kappa_max = std::max(mse_curvature_bound(q, power), 1e-300);
        double kappa = kappa_max / 64.0;

        RadarDesign design;
        double mse = quadratic_mse(q, W);
        design.mse_trace.push_back(mse);
        for (int it = 0; it < opts.max_iter; ++it)
        {
            const CMat G = mse_gradient(q, W);
            kappa = std::max(0.5 * kappa, 1e-8 * kappa_max);
            CMat next;
            double next_mse = mse;
            bool accepted = false;
            for (int attempt = 0; attempt < 64; ++attempt)
            {
                CMat cand = kappa * W - G;
                const double n = cand.norm();
                if (n == 0.0)
                    break;
                cand *= std::sqrt(power) / n;
                const CMat D = cand - W;
                const double bound = mse + std::real((D.adjoint() * G).trace()) + 0.5 * kappa * D.squaredNorm();
                const double cand_mse = quadratic_mse(q, cand);
                if (cand_mse <= bound + 1e-14 * std::max(mse, 1e-300) || kappa >= kappa_max)
                {
                    if (cand_mse <= mse)
                    {
                        next = std::move(cand);
                        next_mse = cand_mse;
                        accepted = true;
                    }
                    break;
                }
                kappa = std::min(2.0 * kappa, kappa_max);
            }
            design.iterations = it + 1;
            if (!accepted)
            {
                design.converged = true;
                break;
            }
            const double change = (mse - next_mse) / std::max(mse, 1e-300);
            W = std::move(next);
            mse = next_mse;
            design.mse_trace.push_back(mse);
            if (change < opts.rel_tol)
            {
                design.converged = true;
                break;
            }
        }
        design.radar = W;
        design.mse = mse;
        return design;
    }

} // namespace risisac
