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
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "types.hpp"

namespace risisac
{
    inline std::vector<double> uniform_angle_grid(double first_deg, double last_deg, double step_deg)
    {
        if (!(step_deg > 0.0) || last_deg < first_deg)
            throw ConfigError("angle grid: need step > 0 and last >= first");
        std::vector<double> grid;
        const auto count = static_cast<std::size_t>(std::floor((last_deg - first_deg) / step_deg + 1e-9)) + 1;
        grid.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            grid.push_back(first_deg + static_cast<double>(i) * step_deg);
        return grid;
    }

    // Scenario description. Powers are given in dBm here and converted to watts
    // by power_watts() / noise_watts(); everything downstream works in watts.
    struct SystemConfig
    {
        int antennas = 8;      // BS transmit antennas
        int users = 4;         // single-antenna users
        int ris_elements = 36; // RIS reflecting elements

        double power_dbm = 10.0;
        double noise_dbm = -80.0;

        double spacing_ratio = 0.5;     // BS element spacing over wavelength
        double ris_spacing_ratio = 0.5; // RIS modelled as a ULA

        double dist_bs_ris = 50.0;  // m
        double dist_ris_user = 4.0; // m, users on a circle around the RIS

        double exponent_bs_user = 3.5;
        double exponent_bs_ris = 2.5;
        double exponent_ris_user = 2.5;

        // Rician K-factors in dB; -inf is pure Rayleigh.
        double rician_bs_ris_db = 3.0;
        double rician_ris_user_db = 3.0;
        double rician_bs_user_db = -std::numeric_limits<double>::infinity();

        double path_loss_ref_db = -30.0; // path gain at 1 m

        std::vector<double> target_angles{-35.0, 0.0, 35.0}; // deg
        double beam_width_deg = 10.0;
        std::vector<double> angle_grid = uniform_angle_grid(-90.0, 90.0, 1.0);

        // Beampattern MSE bound. When `epsilon` (absolute, W^2) is unset the
        // bound is epsilon_ratio times the radar-only MSE floor.
        double epsilon_ratio = 1.25;
        std::optional<double> epsilon;

        std::uint64_t seed = 1;

        int targets() const { return static_cast<int>(target_angles.size()); }
        int grid_size() const { return static_cast<int>(angle_grid.size()); }
        int beam_columns() const { return users + antennas; }
        double power_watts() const { return dbm_to_watts(power_dbm); }
        double noise_watts() const { return dbm_to_watts(noise_dbm); }

        void validate() const
        {
            if (antennas < 1 || users < 1 || ris_elements < 1)
                throw ConfigError("M, K and N must be >= 1");
            if (angle_grid.size() < 2)
                throw ConfigError("angle grid needs at least two points");
            for (std::size_t i = 0; i < angle_grid.size(); ++i)
            {
                if (!(angle_grid[i] >= -90.0 && angle_grid[i] <= 90.0))
                    throw ConfigError("angle grid must lie within [-90, 90] degrees");
                if (i > 0 && !(angle_grid[i] > angle_grid[i - 1]))
                    throw ConfigError("angle grid must be strictly increasing");
            }
            if (!(beam_width_deg > 0.0))
                throw ConfigError("beam width must be positive");
            if (target_angles.empty())
                throw ConfigError("at least one target direction is required");
            if (!(epsilon_ratio > 0.0))
                throw ConfigError("epsilon_ratio must be positive");
            if (epsilon && !(*epsilon > 0.0))
                throw ConfigError("epsilon must be positive");
            if (!(spacing_ratio > 0.0) || !(ris_spacing_ratio > 0.0))
                throw ConfigError("antenna spacing ratio must be positive");
            if (!(dist_bs_ris > 0.0) || !(dist_ris_user > 0.0))
                throw DomainError("link distances must be positive");
            if (!std::isfinite(power_dbm) || !std::isfinite(noise_dbm))
                throw ConfigError("power and noise levels must be finite");
        }
    };

    // ULA response for a given direction sine: element m is exp(j 2 pi m r s).
    inline CVec array_response(double sin_theta, int elements, double spacing_ratio)
    {
        CVec a(elements);
        const double phase = 2.0 * pi * spacing_ratio * sin_theta;
        for (int m = 0; m < elements; ++m)
            a(m) = std::polar(1.0, phase * m);
        return a;
    }

    inline CVec steering_vector(double theta_deg, int elements, double spacing_ratio)
    {
        if (!(theta_deg >= -90.0 && theta_deg <= 90.0))
            throw DomainError("steering_vector: angle must lie within [-90, 90] degrees");
        if (elements < 1)
            throw DomainError("steering_vector: need at least one element");
        return array_response(std::sin(theta_deg * pi / 180.0), elements, spacing_ratio);
    }

    // 1 where the grid angle falls inside any [target - width/2, target + width/2]
    // interval (edges included), 0 elsewhere.
    inline RVec ideal_beampattern(const SystemConfig &cfg)
    {
        constexpr double edge_tol = 1e-9;
        const double half = 0.5 * cfg.beam_width_deg;
        RVec pattern = RVec::Zero(cfg.grid_size());
        for (int l = 0; l < cfg.grid_size(); ++l)
            for (double target : cfg.target_angles)
                if (std::abs(cfg.angle_grid[l] - target) <= half + edge_tol)
                    pattern(l) = 1.0;
        if (pattern.sum() == 0.0)
            throw ConfigError("ideal beampattern is zero on the whole angle grid");
        return pattern;
    }

    // One channel realization. Column k of ris_user / bs_user is user k.
    struct ChannelSet
    {
        CMat bs_ris;   // G, N x M
        CMat ris_user; // h_r, N x K
        CMat bs_user;  // h_d, M x K

        int antennas() const { return static_cast<int>(bs_ris.cols()); }
        int ris_elements() const { return static_cast<int>(bs_ris.rows()); }
        int users() const { return static_cast<int>(bs_user.cols()); }

        void check() const
        {
            require_dims(ris_user.rows() == bs_ris.rows(), "ChannelSet: h_r rows must equal N");
            require_dims(bs_user.rows() == bs_ris.cols(), "ChannelSet: h_d rows must equal M");
            require_dims(ris_user.cols() == bs_user.cols(), "ChannelSet: user counts differ");
            if (!bs_ris.allFinite() || !ris_user.allFinite() || !bs_user.allFinite())
                throw DomainError("ChannelSet: non-finite entries");
        }
    };

    // Independent stream for (seed, trial, stream). Stream 0 feeds channels,
    // stream 1 the random RIS phases.
    inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream = 0)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                          static_cast<std::uint32_t>(stream), 0x5a17c0deU};
        return std::mt19937_64(seq);
    }

    namespace detail
    {
        inline double path_gain(double ref_db, double distance, double exponent)
        {
            if (!(distance > 0.0))
                throw DomainError("path loss: distance must be positive");
            return db_to_linear(ref_db) * std::pow(distance, -exponent);
        }

        inline CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng)
        {
            std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
            CMat X(rows, cols);
            for (Eigen::Index j = 0; j < cols; ++j)
                for (Eigen::Index i = 0; i < rows; ++i)
                {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    X(i, j) = cplx(re, im);
                }
            return X;
        }

        // sqrt(PL) (sqrt(b/(1+b)) LoS + sqrt(1/(1+b)) NLoS)
        inline CMat rician(const CMat &los, double k_factor_db, double gain, std::mt19937_64 &rng)
        {
            const double k = db_to_linear(k_factor_db);
            const CMat nlos = complex_gaussian(los.rows(), los.cols(), rng);
            return std::sqrt(gain) * (std::sqrt(k / (1.0 + k)) * los + std::sqrt(1.0 / (1.0 + k)) * nlos);
        }
    } // namespace detail

    // Draw one realization. BS at the origin, RIS at (d_BR, 0); user k is at a
    // uniformly random angle on the circle of radius d_Ru around the RIS. Both
    // arrays lie along the y axis, so a direction (x, y) has sine y / |(x, y)|.
    // User placement and BS-user links are drawn first, so they do not depend
    // on N for a given stream.
    inline ChannelSet generate_channels(const SystemConfig &cfg, std::mt19937_64 &rng)
    {
        cfg.validate();
        const int M = cfg.antennas, K = cfg.users, N = cfg.ris_elements;

        std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
        std::vector<double> ux(K), uy(K);
        for (int k = 0; k < K; ++k)
        {
            const double psi = angle(rng);
            ux[k] = cfg.dist_bs_ris + cfg.dist_ris_user * std::cos(psi);
            uy[k] = cfg.dist_ris_user * std::sin(psi);
        }

        ChannelSet ch;
        ch.bs_user.resize(M, K);
        for (int k = 0; k < K; ++k)
        {
            const double d = std::hypot(ux[k], uy[k]);
            const CMat los = array_response(uy[k] / d, M, cfg.spacing_ratio);
            const double gain = detail::path_gain(cfg.path_loss_ref_db, d, cfg.exponent_bs_user);
            ch.bs_user.col(k) = detail::rician(los, cfg.rician_bs_user_db, gain, rng);
        }

        {
            // RIS sits on the BS broadside, so both ends see direction sine 0.
            const CMat los = array_response(0.0, N, cfg.ris_spacing_ratio) *
                             array_response(0.0, M, cfg.spacing_ratio).adjoint();
            const double gain = detail::path_gain(cfg.path_loss_ref_db, cfg.dist_bs_ris, cfg.exponent_bs_ris);
            ch.bs_ris = detail::rician(los, cfg.rician_bs_ris_db, gain, rng);
        }

        ch.ris_user.resize(N, K);
        for (int k = 0; k < K; ++k)
        {
            const double sin_dir = uy[k] / cfg.dist_ris_user;
            const CMat los = array_response(sin_dir, N, cfg.ris_spacing_ratio);
            const double gain = detail::path_gain(cfg.path_loss_ref_db, cfg.dist_ris_user, cfg.exponent_ris_user);
            ch.ris_user.col(k) = detail::rician(los, cfg.rician_ris_user_db, gain, rng);
        }
        return ch;
    }

    inline ChannelSet generate_channels(const SystemConfig &cfg, std::uint64_t trial)
    {
        auto rng = make_stream(cfg.seed, trial, 0);
        return generate_channels(cfg, rng);
    }

} // namespace risisac
