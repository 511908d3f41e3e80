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
#include <vector>

#include "fp.hpp"
#include "metrics.hpp"
#include "scenario.hpp"
#include "types.hpp"

// RIS phase update with W fixed: minimize phi^H Q phi - 2 Re{phi^H q} - c over
// the product of unit circles by Riemannian conjugate gradient.

namespace risisac
{
    struct PhaseQuadratic
    {
        CMat Q; // N x N Hermitian PSD
        CVec q;
        double c = 0.0;

        double value(const CVec &phi) const
        {
            return std::real(phi.dot(Q * phi)) - 2.0 * std::real(phi.dot(q)) - c;
        }

        CVec euclidean_gradient(const CVec &phi) const { return 2.0 * (Q * phi - q); }
    };

    // Uses h_r,k^H diag(phi) G w_j = a_kj^H phi with a_kj = conj(G w_j) .* h_r,k,
    // so that h_k^H w_j = a_kj^H phi + h_d,k^H w_j.
    inline PhaseQuadratic build_phase_quadratic(const ChannelSet &ch, const CMat &W, const FpAuxiliaries &aux)
    {
        ch.check();
        require_dims(W.rows() == ch.antennas(), "build_phase_quadratic: antenna count mismatch");
        const Eigen::Index N = ch.ris_elements(), K = ch.users();
        require_dims(aux.c.size() == K && aux.g.size() == K, "build_phase_quadratic: auxiliary sizes must equal K");

        const CMat GW_conj = (ch.bs_ris * W).conjugate(); // N x J
        const CMat direct = ch.bs_user.adjoint() * W;     // K x J, d_kj

        PhaseQuadratic pq;
        pq.Q = CMat::Zero(N, N);
        pq.q = CVec::Zero(N);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const double g2 = std::norm(aux.g(k));
            const double amp = std::sqrt(1.0 + aux.c(k));
            const CMat Ak = ch.ris_user.col(k).asDiagonal() * GW_conj; // column j is a_kj
            pq.Q.noalias() += g2 * Ak * Ak.adjoint();
            pq.q += amp * aux.g(k) * Ak.col(k) - g2 * Ak * direct.row(k).transpose();
            pq.c += 2.0 * amp * std::real(std::conj(aux.g(k)) * direct(k, k)) - g2 * direct.row(k).squaredNorm();
        }
        pq.Q = hermitian_part(pq.Q);
        return pq;
    }

    // Projection onto the tangent space at phi: x - Re{x .* conj(phi)} .* phi.
    inline CVec project_tangent(const CVec &phi, const CVec &x)
    {
        CVec out(x.size());
        for (Eigen::Index n = 0; n < x.size(); ++n)
            out(n) = x(n) - std::real(x(n) * std::conj(phi(n))) * phi(n);
        return out;
    }

    inline CVec retract(const CVec &x)
    {
        CVec out(x.size());
        for (Eigen::Index n = 0; n < x.size(); ++n)
        {
            const double a = std::abs(x(n));
            out(n) = a > 0.0 ? x(n) / a : cplx(1.0, 0.0);
        }
        return out;
    }

    inline CVec riemannian_gradient(const PhaseQuadratic &pq, const CVec &phi)
    {
        return project_tangent(phi, pq.euclidean_gradient(phi));
    }

    inline double tangent_inner(const CVec &x, const CVec &y) { return std::real(x.dot(y)); }

    struct RcgOptions
    {
        int max_iter = 500;
        double grad_tol = 1e-6; // relative to max(1, ||q||)
        double armijo = 1e-4;
        double contraction = 0.5;
        int max_backtracks = 60;
    };

    struct RcgResult
    {
        PhaseProfile phi;
        int iterations = 0;
        bool converged = false;
        double grad_norm = 0.0;
        std::vector<double> objective_trace;
        double max_modulus_deviation = 0.0;
        double max_tangency = 0.0; // max_n |Re{grad_n conj(phi_n)}| over all iterates
    };

    inline RcgResult rcg_minimize(const PhaseQuadratic &pq, const PhaseProfile &start, const RcgOptions &opts = {})
    {
        if (start.modulus_deviation() > 1e-10)
            throw DomainError("rcg_minimize: start point must have unit-modulus entries");
        require_dims(start.size() == pq.Q.rows(), "rcg_minimize: phase profile length mismatch");

        const Eigen::Index N = start.size();
        const double tol = opts.grad_tol * std::max(1.0, pq.q.norm());

        RcgResult res;
        CVec phi = start.values();
        double f = pq.value(phi);
        CVec grad = riemannian_gradient(pq, phi);
        CVec dir = -grad;
        res.objective_trace.push_back(f);

        auto track = [&](const CVec &p, const CVec &g) {
            for (Eigen::Index n = 0; n < N; ++n)
            {
                res.max_modulus_deviation = std::max(res.max_modulus_deviation, std::abs(std::abs(p(n)) - 1.0));
                res.max_tangency = std::max(res.max_tangency, std::abs(std::real(g(n) * std::conj(p(n)))));
            }
        };
        track(phi, grad);

        int since_restart = 0;
        for (int it = 0; it < opts.max_iter; ++it)
        {
            res.grad_norm = grad.norm();
            if (res.grad_norm <= tol)
            {
                res.converged = true;
                break;
            }
            double slope = tangent_inner(grad, dir);
            if (!(slope < 0.0))
            {
                dir = -grad;
                slope = -grad.squaredNorm();
                since_restart = 0;
            }

            // Initial trial step: minimizer of the Euclidean quadratic along dir,
            // limited to about one radian of rotation per element.
            const double curv = std::real(dir.dot(pq.Q * dir));
            const double max_move = dir.cwiseAbs().maxCoeff();
            double step = 1.0 / max_move;
            if (curv > 0.0)
                step = std::min(step, -slope / (2.0 * curv));

            CVec next;
            double f_next = f;
            bool accepted = false;
            for (int bt = 0; bt < opts.max_backtracks; ++bt)
            {
                next = retract(phi + step * dir);
                f_next = pq.value(next);
                if (f_next <= f + opts.armijo * step * slope)
                {
                    accepted = true;
                    break;
                }
                step *= opts.contraction;
            }
            if (!accepted)
                break;

            const CVec grad_next = riemannian_gradient(pq, next);
            const CVec grad_moved = project_tangent(next, grad);
            const CVec dir_moved = project_tangent(next, dir);
            double beta = tangent_inner(grad_next, grad_next - grad_moved) / std::max(grad.squaredNorm(), 1e-300);
            ++since_restart;
            if (beta < 0.0 || since_restart >= N)
            {
                beta = 0.0;
                since_restart = 0;
            }
            dir = -grad_next + beta * dir_moved;

            phi = std::move(next);
            f = f_next;
            grad = grad_next;
            res.iterations = it + 1;
            res.objective_trace.push_back(f);
            track(phi, grad);
        }
        res.grad_norm = grad.norm();
        if (res.grad_norm <= tol)
            res.converged = true;
        res.phi = PhaseProfile(phi);
        return res;
    }

} // namespace risisac
