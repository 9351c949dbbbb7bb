// Copyright 2026 The tqgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tqgate {

using complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using Matrix4c = Eigen::Matrix4cd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Converts a linear frequency in GHz to angular frequency in rad/ns.
inline constexpr double angular(double ghz) { return kTwoPi * ghz; }

/// Raised for physically or numerically invalid inputs (bad specs, bad dt, ...).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical result violates its declared accuracy contract,
/// e.g. a propagator whose unitarity defect exceeds tolerance.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Largest entry magnitude of H - H^dagger.
inline double hermiticity_defect(const OperatorMatrix &h) {
    if (h.size() == 0) return 0.0;
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// Largest entry magnitude of U^dagger U - I.
inline double unitarity_defect(const OperatorMatrix &u) {
    if (u.size() == 0) return 0.0;
    return (u.adjoint() * u - OperatorMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

inline double max_abs_entry(const OperatorMatrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace tqgate
