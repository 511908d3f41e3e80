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
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace risisac
{
    using cplx = std::complex<double>;
    using CVec = Eigen::VectorXcd;
    using CMat = Eigen::MatrixXcd;
    using RVec = Eigen::VectorXd;
    using RMat = Eigen::MatrixXd;

    inline constexpr double pi = 3.14159265358979323846;
    inline constexpr double ln2 = 0.69314718055994530942;

    // Argument outside the mathematical domain of an operation (angle out of
    // range, non-positive noise power, non-unit-modulus phase profile, ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Invalid or inconsistent scenario / experiment configuration.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Operand shapes do not agree.
    class DimensionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Internal numerical consistency check failed (e.g. a matrix that must be
    // PSD by construction is not).
    class ConsistencyError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    inline void require_dims(bool ok, const std::string &what)
    {
        if (!ok)
            throw DimensionError(what);
    }

    // vec(X) of a square matrix, column-major.
    inline CVec vec(const CMat &X)
    {
        return Eigen::Map<const CVec>(X.data(), X.size());
    }

    // Inverse of vec() for an n x n matrix.
    inline CMat unvec(const CVec &v, Eigen::Index n)
    {
        return Eigen::Map<const CMat>(v.data(), n, n);
    }

    inline CMat hermitian_part(const CMat &X)
    {
        return 0.5 * (X + X.adjoint());
    }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

} // namespace risisac
