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
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>

#include "scenario.hpp"
#include "types.hpp"

namespace risisac
{
    // RIS reflection coefficients; every entry has unit modulus.
    class PhaseProfile
    {
    public:
        PhaseProfile() = default;

        explicit PhaseProfile(CVec phi, double tol = 1e-10) : phi_(std::move(phi))
        {
            if (modulus_deviation() > tol)
                throw DomainError("PhaseProfile: entries must have unit modulus");
        }

        static PhaseProfile from_angles(const RVec &radians)
        {
            CVec phi(radians.size());
            for (Eigen::Index n = 0; n < radians.size(); ++n)
                phi(n) = std::polar(1.0, radians(n));
            return PhaseProfile(std::move(phi));
        }

        static PhaseProfile uniform_random(int elements, std::mt19937_64 &rng)
        {
            std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
            RVec theta(elements);
            for (int n = 0; n < elements; ++n)
                theta(n) = angle(rng);
            return from_angles(theta);
        }

        static PhaseProfile ones(int elements) { return PhaseProfile(CVec::Ones(elements)); }

        const CVec &values() const { return phi_; }
        int size() const { return static_cast<int>(phi_.size()); }

        double modulus_deviation() const
        {
            double dev = 0.0;
            for (Eigen::Index n = 0; n < phi_.size(); ++n)
                dev = std::max(dev, std::abs(std::abs(phi_(n)) - 1.0));
            return dev;
        }

    private:
        CVec phi_;
    };

    // W = [W_c W_r], M x (K + M). Columns 0..K-1 serve users, the remaining M
    // columns carry the dedicated radar probing streams.
    struct Beamformer
    {
        CMat matrix;
        int users = 0;

        int antennas() const { return static_cast<int>(matrix.rows()); }
        double power() const { return matrix.squaredNorm(); }
        auto comm() const { return matrix.leftCols(users); }
        auto radar() const { return matrix.rightCols(matrix.cols() - users); }
    };

    // Angle grid with the precomputed steering matrix and ideal pattern.
    struct BeamGrid
    {
        RVec angles_deg;
        CMat steering; // M x L, column l is a(theta_l)
        RVec ideal;    // P_d(theta_l)
        double ideal_energy = 0.0; // sum_l P_d^2

        int antennas() const { return static_cast<int>(steering.rows()); }
        int size() const { return static_cast<int>(steering.cols()); }
    };

    inline BeamGrid make_beam_grid(const SystemConfig &cfg)
    {
        cfg.validate();
        BeamGrid grid;
        const int L = cfg.grid_size();
        grid.angles_deg = Eigen::Map<const RVec>(cfg.angle_grid.data(), L);
        grid.steering.resize(cfg.antennas, L);
        for (int l = 0; l < L; ++l)
            grid.steering.col(l) = steering_vector(cfg.angle_grid[l], cfg.antennas, cfg.spacing_ratio);
        grid.ideal = ideal_beampattern(cfg);
        grid.ideal_energy = grid.ideal.squaredNorm();
        return grid;
    }

    // h_k = G^H (conj(phi) .* h_r,k) + h_d,k, i.e. h_k^H = h_r,k^H diag(phi) G + h_d,k^H.
    // Returns the M x K matrix whose column k is h_k.
    inline CMat composite_channels(const ChannelSet &ch, const PhaseProfile &phi)
    {
        ch.check();
        require_dims(phi.size() == ch.ris_elements(), "composite_channels: phase profile length must equal N");
        const CMat weighted = phi.values().conjugate().asDiagonal() * ch.ris_user;
        return ch.bs_ris.adjoint() * weighted + ch.bs_user;
    }

    // Direct-path-only composite channels (no RIS).
    inline CMat direct_channels(const ChannelSet &ch) { return ch.bs_user; }

    inline RVec sinrs(const CMat &H, const CMat &W, double noise)
    {
        if (!(noise > 0.0))
            throw DomainError("sinr: noise power must be positive");
        require_dims(H.rows() == W.rows(), "sinr: channel and beamformer antenna counts differ");
        require_dims(W.cols() >= H.cols(), "sinr: beamformer needs at least K columns");
        const RMat gains = (H.adjoint() * W).cwiseAbs2(); // K x (K+M)
        RVec out(H.cols());
        for (Eigen::Index k = 0; k < H.cols(); ++k)
        {
            double interference = 0.0;
            for (Eigen::Index j = 0; j < gains.cols(); ++j)
                if (j != k)
                    interference += gains(k, j);
            out(k) = gains(k, k) / (interference + noise);
        }
        return out;
    }

    // k is 0-based. The interference sum runs over every other column,
    // radar columns included.
    inline double sinr(int k, const CMat &H, const CMat &W, double noise)
    {
        if (k < 0 || k >= H.cols())
            throw DomainError("sinr: user index out of range");
        return sinrs(H, W, noise)(k);
    }

    // bits/s/Hz
    inline double sum_rate(const CMat &H, const CMat &W, double noise)
    {
        const RVec g = sinrs(H, W, noise);
        double rate = 0.0;
        for (Eigen::Index k = 0; k < g.size(); ++k)
            rate += std::log2(1.0 + g(k));
        return rate;
    }

    // P_b(theta_l; W) = a^H W W^H a, evaluated as ||W^H a||^2.
    inline RVec transmit_beampattern(const CMat &W, const BeamGrid &grid)
    {
        require_dims(W.rows() == grid.antennas(), "transmit_beampattern: antenna count mismatch");
        const CMat proj = W.adjoint() * grid.steering;
        return proj.colwise().squaredNorm().transpose();
    }

    inline RVec transmit_beampattern(const CMat &W, const SystemConfig &cfg)
    {
        return transmit_beampattern(W, make_beam_grid(cfg));
    }

    inline double optimal_alpha(const CMat &W, const BeamGrid &grid)
    {
        if (!(grid.ideal_energy > 0.0))
            throw DomainError("optimal_alpha: ideal beampattern is identically zero");
        return grid.ideal.dot(transmit_beampattern(W, grid)) / grid.ideal_energy;
    }

    inline double beampattern_mse(const CMat &W, const BeamGrid &grid, std::optional<double> alpha = std::nullopt)
    {
        const RVec designed = transmit_beampattern(W, grid);
        const double a = alpha ? *alpha : grid.ideal.dot(designed) / grid.ideal_energy;
        return (a * grid.ideal - designed).squaredNorm() / static_cast<double>(grid.size());
    }

    inline double beampattern_mse(const CMat &W, const SystemConfig &cfg, std::optional<double> alpha = std::nullopt)
    {
        return beampattern_mse(W, make_beam_grid(cfg), alpha);
    }

    struct BeampatternReport
    {
        RVec angles;
        RVec designed;     // watts
        RVec ideal_scaled; // alpha * P_d
        double mse = 0.0;
        double alpha = 0.0;
    };

    inline BeampatternReport beampattern_report(const CMat &W, const BeamGrid &grid)
    {
        BeampatternReport rep;
        rep.angles = grid.angles_deg;
        rep.designed = transmit_beampattern(W, grid);
        rep.alpha = grid.ideal.dot(rep.designed) / grid.ideal_energy;
        rep.ideal_scaled = rep.alpha * grid.ideal;
        rep.mse = (rep.ideal_scaled - rep.designed).squaredNorm() / static_cast<double>(grid.size());
        return rep;
    }

    inline void write_csv(const BeampatternReport &rep, std::ostream &os)
    {
        os << "angle_deg,designed_watts,ideal_scaled_watts\n";
        os << std::setprecision(10);
        for (Eigen::Index l = 0; l < rep.angles.size(); ++l)
            os << rep.angles(l) << ',' << rep.designed(l) << ',' << rep.ideal_scaled(l) << '\n';
    }

} // namespace risisac
