// Copyright 2026 The qcsim Authors
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

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "qcsim/errors.hpp"
#include "qcsim/state.hpp"

namespace qcsim {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix {a, b, c, d} = [[a, b], [c, d]].
using Matrix2 = std::array<Complex, 4>;

inline constexpr double unitarity_tolerance(Precision p) { return p == Precision::Single ? 1e-4 : 1e-6; }

inline Matrix2 adjoint(const Matrix2 &m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

inline Matrix2 multiply(const Matrix2 &x, const Matrix2 &y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

/// max |(U^dagger U - I)_ij|
inline double unitarity_deviation(const Matrix2 &m) {
    const Matrix2 p = multiply(adjoint(m), m);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Complex expected = (i == 0 || i == 3) ? Complex{1.0} : Complex{0.0};
        const double d = std::abs(p[i] - expected);
        worst = std::max(worst, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
    }
    return worst;
}

inline bool is_unitary(const Matrix2 &m, double tol) {
    if (!(tol > 0.0)) {
        throw ArgumentError("unitarity tolerance must be positive");
    }
    return unitarity_deviation(m) <= tol;
}

/// The fixed single-qubit gate set, plus the parametric phase gate U1(theta) = diag(1, e^{i theta}).
struct StdGate {
    enum Kind { H, X, Y, Z, S, T, U1 };

    Kind kind;
    double theta = 0.0;

    constexpr StdGate(Kind k) : kind(k) {}  // NOLINT(google-explicit-constructor)
    constexpr StdGate(Kind k, double angle) : kind(k), theta(angle) {}

    static constexpr StdGate u1(double angle) { return {U1, angle}; }

    bool operator==(const StdGate &) const = default;
};

/// Text mnemonic used by the circuit format.
inline const char *mnemonic(StdGate::Kind k) {
    switch (k) {
    case StdGate::H: return "h";
    case StdGate::X: return "x";
    case StdGate::Y: return "y";
    case StdGate::Z: return "z";
    case StdGate::S: return "s";
    case StdGate::T: return "t";
    case StdGate::U1: return "u1";
    }
    return "?";
}

inline std::optional<StdGate::Kind> parse_mnemonic(const std::string &name) {
    for (auto k : {StdGate::H, StdGate::X, StdGate::Y, StdGate::Z, StdGate::S, StdGate::T, StdGate::U1}) {
        if (name == mnemonic(k)) {
            return k;
        }
    }
    return std::nullopt;
}

/// Immutable single-qubit unitary. Only constructible through make_gate / std_gate,
/// so every instance has passed the unitarity check.
class Gate {
public:
    const Matrix2 &matrix() const noexcept { return m_; }
    const Complex &a() const noexcept { return m_[0]; }
    const Complex &b() const noexcept { return m_[1]; }
    const Complex &c() const noexcept { return m_[2]; }
    const Complex &d() const noexcept { return m_[3]; }

    /// Set when the gate came from the standard library.
    const std::optional<StdGate> &standard() const noexcept { return standard_; }

    std::string name() const { return standard_ ? mnemonic(standard_->kind) : "u"; }

    Gate dagger() const {
        Gate g = *this;
        g.m_ = qcsim::adjoint(m_);
        g.standard_.reset();
        return g;
    }

    bool operator==(const Gate &) const = default;

private:
    friend Gate make_gate(const Matrix2 &, double);
    friend Gate std_gate(StdGate);

    Gate(const Matrix2 &m, std::optional<StdGate> standard) : m_(m), standard_(standard) {}

    Matrix2 m_;
    std::optional<StdGate> standard_;
};

inline Gate make_gate(const Matrix2 &m, double tol = unitarity_tolerance(Precision::Double)) {
    for (const auto &z : m) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ArgumentError("gate matrix has a non-finite entry");
        }
    }
    const double dev = unitarity_deviation(m);
    if (!(dev <= tol)) {
        throw NotUnitaryError("matrix is not unitary: max |U^dagger U - I| = " + std::to_string(dev), dev);
    }
    return Gate(m, std::nullopt);
}

inline Gate std_gate(StdGate which) {
    if (!std::isfinite(which.theta)) {
        throw ArgumentError("gate angle must be finite");
    }
    constexpr double inv_sqrt2 = 1 / std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    Matrix2 m;
    switch (which.kind) {
    case StdGate::H: m = {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2}; break;
    case StdGate::X: m = {0.0, 1.0, 1.0, 0.0}; break;
    case StdGate::Y: m = {0.0, -i, i, 0.0}; break;
    case StdGate::Z: m = {1.0, 0.0, 0.0, -1.0}; break;
    case StdGate::S: m = {1.0, 0.0, 0.0, i}; break;
    case StdGate::T: m = {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)}; break;
    case StdGate::U1: m = {1.0, 0.0, 0.0, std::polar(1.0, which.theta)}; break;
    }
    if (which.kind != StdGate::U1) {
        which.theta = 0.0;
    }
    return Gate(m, which);
}

}  // namespace qcsim
