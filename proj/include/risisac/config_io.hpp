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
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scenario.hpp"

// Scenario files are plain "key = value" lines; '#' starts a comment. Lists
// are comma separated. The angle grid also accepts "first:step:last".
//
//   M = 8
//   K = 4
//   N = 36
//   P_dbm = 10
//   target_angles = -35, 0, 35
//   angle_grid = -90:1:90

namespace risisac
{
    namespace detail
    {
        inline std::string trim(std::string s)
        {
            auto not_space = [](unsigned char c) { return !std::isspace(c); };
            s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
            s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
            return s;
        }

        inline double parse_real(const std::string &key, const std::string &text)
        {
            try
            {
                std::size_t used = 0;
                const double v = std::stod(text, &used);
                if (trim(text.substr(used)).empty())
                    return v;
            }
            catch (const std::exception &)
            {
            }
            throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
        }

        inline long long parse_integer(const std::string &key, const std::string &text)
        {
            try
            {
                std::size_t used = 0;
                const long long v = std::stoll(text, &used);
                if (trim(text.substr(used)).empty())
                    return v;
            }
            catch (const std::exception &)
            {
            }
            throw ConfigError("config: '" + key + "' expects an integer, got '" + text + "'");
        }

        inline std::vector<double> parse_list(const std::string &key, const std::string &text)
        {
            std::vector<double> out;
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                item = trim(item);
                if (!item.empty())
                    out.push_back(parse_real(key, item));
            }
            return out;
        }

        inline std::vector<double> parse_grid(const std::string &key, const std::string &text)
        {
            if (text.find(':') == std::string::npos)
                return parse_list(key, text);
            std::vector<std::string> parts;
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ':'))
                parts.push_back(trim(item));
            if (parts.size() != 3)
                throw ConfigError("config: '" + key + "' range must be first:step:last");
            return uniform_angle_grid(parse_real(key, parts[0]), parse_real(key, parts[2]), parse_real(key, parts[1]));
        }
    } // namespace detail

    // Applies one key to cfg. Throws ConfigError for unknown keys and bad values.
    inline void apply_config_value(SystemConfig &cfg, const std::string &key, const std::string &value)
    {
        using namespace detail;
        auto as_int = [&] { return static_cast<int>(parse_integer(key, value)); };
        auto as_real = [&] { return parse_real(key, value); };

        if (key == "M") cfg.antennas = as_int();
        else if (key == "K") cfg.users = as_int();
        else if (key == "N") cfg.ris_elements = as_int();
        else if (key == "P_dbm") cfg.power_dbm = as_real();
        else if (key == "sigma2_dbm") cfg.noise_dbm = as_real();
        else if (key == "spacing_ratio") cfg.spacing_ratio = as_real();
        else if (key == "ris_spacing_ratio") cfg.ris_spacing_ratio = as_real();
        else if (key == "d_BR") cfg.dist_bs_ris = as_real();
        else if (key == "d_Ru") cfg.dist_ris_user = as_real();
        else if (key == "alpha_Bu") cfg.exponent_bs_user = as_real();
        else if (key == "alpha_BR") cfg.exponent_bs_ris = as_real();
        else if (key == "alpha_Ru") cfg.exponent_ris_user = as_real();
        else if (key == "ricean_BR_db") cfg.rician_bs_ris_db = as_real();
        else if (key == "ricean_Ru_db") cfg.rician_ris_user_db = as_real();
        else if (key == "ricean_Bu_db") cfg.rician_bs_user_db = as_real();
        else if (key == "path_gain_ref_db") cfg.path_loss_ref_db = as_real();
        else if (key == "target_angles") cfg.target_angles = parse_list(key, value);
        else if (key == "beam_width_deg") cfg.beam_width_deg = as_real();
        else if (key == "angle_grid") cfg.angle_grid = parse_grid(key, value);
        else if (key == "epsilon") cfg.epsilon = as_real();
        else if (key == "epsilon_ratio") cfg.epsilon_ratio = as_real();
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
        else throw ConfigError("config: unknown key '" + key + "'");
    }

    inline SystemConfig parse_config(std::istream &in, SystemConfig cfg = {})
    {
        std::string line;
        int lineno = 0;
        std::optional<long long> declared_targets;
        while (std::getline(in, line))
        {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = detail::trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key == "T")
                declared_targets = detail::parse_integer(key, value);
            else
                apply_config_value(cfg, key, value);
        }
        if (declared_targets && *declared_targets != cfg.targets())
            throw ConfigError("config: T does not match the number of target_angles");
        cfg.validate();
        return cfg;
    }

    inline SystemConfig load_config(const std::string &path, SystemConfig cfg = {})
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("config: cannot open '" + path + "'");
        return parse_config(in, std::move(cfg));
    }

} // namespace risisac
