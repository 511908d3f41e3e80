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

#include <cmath>

#include "metrics.hpp"
#include "types.hpp"

// Fractional-programming reformulation of the sum-rate objective. All values
// are in nats; divide by ln 2 for bits/s/Hz.

namespace risisac
{
    struct FpAuxiliaries
    {
        RVec c; // Lagrangian-dual auxiliaries, one per user
        CVec g; // quadratic-transform auxiliaries, one per user
    };

    namespace detail
    {
        inline void check_fp_inputs(const CMat &H, const CMat &W)
        {
            require_dims(H.rows() == W.rows(), "fp: channel and beamformer antenna counts differ");
            require_dims(W.cols() >= H.cols(), "fp: beamformer needs at least K columns");
        }
    } // namespace detail

    // c_k = SINR_k
    inline RVec update_c(const CMat &H, const CMat &W, double noise)
    {
        return sinrs(H, W, noise);
    }

    // g_k = sqrt(1 + c_k) h_k^H w_k / (sum_j |h_k^H w_j|^2 + sigma^2), the sum
    // including j = k.
    inline CVec update_g(const CMat &H, const CMat &W, const RVec &c, double noise)
    {
        if (!(noise > 0.0))
            throw DomainError("update_g: noise power must be positive");
        detail::check_fp_inputs(H, W);
        require_dims(c.size() == H.cols(), "update_g: c must have K entries");
        const CMat X = H.adjoint() * W;
        CVec g(H.cols());
        for (Eigen::Index k = 0; k < H.cols(); ++k)
            g(k) = std::sqrt(1.0 + c(k)) * X(k, k) / (X.row(k).squaredNorm() + noise);
        return g;
    }

    inline FpAuxiliaries optimal_auxiliaries(const CMat &H, const CMat &W, double noise)
    {
        FpAuxiliaries aux;
        aux.c = update_c(H, W, noise);
        aux.g = update_g(H, W, aux.c, noise);
        return aux;
    }

    // The part of the transformed objective that depends on (W, phi):
    // sum_k 2 sqrt(1+c_k) Re{g_k^* h_k^H w_k} - |g_k|^2 sum_j |h_k^H w_j|^2
    inline double reduced_objective(const CMat &H, const CMat &W, const FpAuxiliaries &aux)
    {
        detail::check_fp_inputs(H, W);
        require_dims(aux.c.size() == H.cols() && aux.g.size() == H.cols(), "reduced_objective: auxiliary sizes must equal K");
        const CMat X = H.adjoint() * W;
        double value = 0.0;
        for (Eigen::Index k = 0; k < H.cols(); ++k)
        {
            value += 2.0 * std::sqrt(1.0 + aux.c(k)) * std::real(std::conj(aux.g(k)) * X(k, k));
            value -= std::norm(aux.g(k)) * X.row(k).squaredNorm();
        }
        return value;
    }

    // Terms of the transformed objective that do not depend on (W, phi).
    inline double fp_constant(const FpAuxiliaries &aux, double noise)
    {
        double value = 0.0;
        for (Eigen::Index k = 0; k < aux.c.size(); ++k)
            value += std::log1p(aux.c(k)) - aux.c(k) - std::norm(aux.g(k)) * noise;
        return value;
    }

    // Full transformed objective; equals ln(2) * sum_rate when the auxiliaries
    // are at their optimal values.
    inline double fp_objective(const CMat &H, const CMat &W, const FpAuxiliaries &aux, double noise)
    {
        return reduced_objective(H, W, aux) + fp_constant(aux, noise);
    }

} // namespace risisac
