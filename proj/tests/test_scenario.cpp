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

#include <catch_amalgamated.hpp>

#include <risisac/scenario.hpp>

using namespace risisac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("steering vector at broadside is all ones", "[scenario]")
{
    const CVec a = steering_vector(0.0, 4, 0.5);
    for (int m = 0; m < 4; ++m)
        CHECK(std::abs(a(m) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("steering vector at endfire alternates sign", "[scenario]")
{
    const CVec a = steering_vector(90.0, 2, 0.5);
    CHECK(std::abs(a(0) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(a(1) - cplx(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("steering vector is conjugate-symmetric in angle", "[scenario]")
{
    const CVec a = steering_vector(35.0, 8, 0.5);
    const CVec b = steering_vector(-35.0, 8, 0.5);
    CHECK((a.conjugate() - b).norm() < 1e-13);
}

TEST_CASE("steering vector has unit-modulus entries and squared norm M", "[scenario]")
{
    const SystemConfig cfg;
    for (double theta : cfg.angle_grid)
    {
        const CVec a = steering_vector(theta, cfg.antennas, cfg.spacing_ratio);
        CHECK(std::abs(a(0) - cplx(1.0, 0.0)) == 0.0);
        CHECK_THAT(a.squaredNorm(), WithinRel(static_cast<double>(cfg.antennas), 1e-14));
        CHECK((a.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("steering vector rejects angles outside [-90, 90]", "[scenario]")
{
    CHECK_THROWS_AS(steering_vector(90.5, 4, 0.5), DomainError);
    CHECK_THROWS_AS(steering_vector(-91.0, 4, 0.5), DomainError);
    CHECK_THROWS_AS(steering_vector(std::nan(""), 4, 0.5), DomainError);
}

TEST_CASE("ideal beampattern marks target mainlobes with inclusive edges", "[scenario]")
{
    const SystemConfig cfg;
    const RVec pd = ideal_beampattern(cfg);
    REQUIRE(pd.size() == 181);
    const auto at = [&](double deg) { return pd(static_cast<Eigen::Index>(deg + 90.0)); };
    CHECK(at(0.0) == 1.0);
    CHECK(at(20.0) == 0.0);
    CHECK(at(40.0) == 1.0);
    CHECK(at(-40.0) == 1.0);
    CHECK(at(41.0) == 0.0);
    CHECK(at(-30.0) == 1.0);
    CHECK(pd.sum() == 33.0);
}

TEST_CASE("ideal beampattern with no grid point in any interval is rejected", "[scenario]")
{
    SystemConfig cfg;
    cfg.angle_grid = {-90.0, 90.0};
    cfg.target_angles = {0.0};
    CHECK_THROWS_AS(ideal_beampattern(cfg), ConfigError);
}

TEST_CASE("configuration invariants are enforced", "[scenario]")
{
    SystemConfig cfg;
    cfg.antennas = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.angle_grid = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.angle_grid = {-95.0, 0.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.beam_width_deg = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.epsilon = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.dist_ris_user = 0.0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("dBm conversion to watts", "[scenario]")
{
    SystemConfig cfg;
    CHECK_THAT(cfg.power_watts(), WithinRel(1e-2, 1e-14));
    CHECK_THAT(cfg.noise_watts(), WithinRel(1e-11, 1e-12));
}

TEST_CASE("negative distance is a domain error in path loss", "[scenario]")
{
    CHECK_THROWS_AS(detail::path_gain(-30.0, 0.0, 2.0), DomainError);
    CHECK_THROWS_AS(detail::path_gain(-30.0, -1.0, 2.0), DomainError);
}

TEST_CASE("channel dimensions follow the configuration", "[scenario]")
{
    SystemConfig cfg;
    cfg.antennas = 3;
    cfg.users = 2;
    cfg.ris_elements = 5;
    const ChannelSet ch = generate_channels(cfg, std::uint64_t{0});
    CHECK(ch.bs_ris.rows() == 5);
    CHECK(ch.bs_ris.cols() == 3);
    CHECK(ch.ris_user.rows() == 5);
    CHECK(ch.ris_user.cols() == 2);
    CHECK(ch.bs_user.rows() == 3);
    CHECK(ch.bs_user.cols() == 2);
    CHECK_NOTHROW(ch.check());
}

TEST_CASE("channel generation is deterministic per seed and trial", "[scenario]")
{
    const SystemConfig cfg;
    const ChannelSet a = generate_channels(cfg, std::uint64_t{7});
    const ChannelSet b = generate_channels(cfg, std::uint64_t{7});
    const ChannelSet c = generate_channels(cfg, std::uint64_t{8});
    CHECK(a.bs_ris == b.bs_ris);
    CHECK(a.ris_user == b.ris_user);
    CHECK(a.bs_user == b.bs_user);
    CHECK(a.bs_ris != c.bs_ris);
}

TEST_CASE("BS-user links do not depend on the RIS size", "[scenario]")
{
    SystemConfig small, large;
    small.ris_elements = 16;
    large.ris_elements = 64;
    CHECK(generate_channels(small, std::uint64_t{3}).bs_user == generate_channels(large, std::uint64_t{3}).bs_user);
}

TEST_CASE("LoS-dominated link has nearly constant magnitude", "[scenario]")
{
    SystemConfig cfg;
    cfg.rician_bs_ris_db = 60.0;
    cfg.ris_elements = 4;
    const double expected = std::sqrt(detail::path_gain(cfg.path_loss_ref_db, cfg.dist_bs_ris, cfg.exponent_bs_ris));
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t)
    {
        const ChannelSet ch = generate_channels(cfg, t);
        worst = std::max(worst, (ch.bs_ris.cwiseAbs().array() / expected - 1.0).abs().maxCoeff());
    }
    CHECK(worst < 0.01);
}

TEST_CASE("Rayleigh BS-user link is zero mean", "[scenario]")
{
    SystemConfig cfg;
    cfg.antennas = 1;
    cfg.users = 1;
    cfg.ris_elements = 1;
    auto rng = make_stream(99, 0);
    constexpr int draws = 10000;
    cplx sum = 0.0;
    double power = 0.0;
    for (int i = 0; i < draws; ++i)
    {
        const cplx h = generate_channels(cfg, rng).bs_user(0, 0);
        sum += h;
        power += std::norm(h);
    }
    const cplx mean = sum / static_cast<double>(draws);
    const double se = std::sqrt(power / draws / 2.0 / draws); // per real component
    CHECK(std::abs(mean.real()) < 4.0 * se);
    CHECK(std::abs(mean.imag()) < 4.0 * se);
}

namespace
{
    double mean_ris_user_gain(SystemConfig cfg, int draws)
    {
        auto rng = make_stream(cfg.seed, 12345);
        double acc = 0.0;
        for (int i = 0; i < draws; ++i)
            acc += generate_channels(cfg, rng).ris_user.squaredNorm();
        return acc / draws / (cfg.ris_elements * cfg.users);
    }
} // namespace

TEST_CASE("mean link gain at 1 m equals the reference gain", "[scenario]")
{
    SystemConfig cfg;
    cfg.dist_ris_user = 1.0;
    cfg.exponent_ris_user = 3.1;
    cfg.users = 1;
    cfg.ris_elements = 1;
    cfg.antennas = 1;
    CHECK_THAT(mean_ris_user_gain(cfg, 10000), WithinRel(db_to_linear(cfg.path_loss_ref_db), 0.05));
}

TEST_CASE("doubling the distance scales the mean gain by 2^-alpha", "[scenario]")
{
    SystemConfig cfg;
    cfg.users = 1;
    cfg.ris_elements = 1;
    cfg.antennas = 1;
    cfg.dist_ris_user = 3.0;
    const double near = mean_ris_user_gain(cfg, 10000);
    cfg.dist_ris_user = 6.0;
    const double far = mean_ris_user_gain(cfg, 10000);
    CHECK_THAT(far / near, WithinRel(std::pow(2.0, -cfg.exponent_ris_user), 0.05));
}
