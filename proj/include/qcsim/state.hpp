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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <unistd.h>

#include "qcsim/errors.hpp"

namespace qcsim {

/// Storage width of one real component of an amplitude.
enum class Precision { Single, Double };

template <class Real>
inline constexpr bool is_real_v = std::is_same_v<Real, float> || std::is_same_v<Real, double>;

template <class Real>
    requires is_real_v<Real>
inline constexpr Precision precision_of = std::is_same_v<Real, float> ? Precision::Single : Precision::Double;

inline constexpr const char *to_string(Precision p) { return p == Precision::Single ? "single" : "double"; }

/// Tolerance on |<psi|psi> - 1| that every public operation must keep.
inline constexpr double norm_tolerance(Precision p) { return p == Precision::Single ? 1e-4 : 1e-10; }

inline constexpr unsigned bits_per_amplitude(Precision p) { return p == Precision::Single ? 64 : 128; }

/// Number of bits needed to hold a register of `num_qubits` qubits.
/// Throws CapacityError instead of wrapping when the count does not fit in 64 bits.
inline std::uint64_t memory_required(unsigned num_qubits, Precision precision) {
    if (num_qubits < 1) {
        throw ArgumentError("num_qubits must be at least 1");
    }
    const unsigned width_log2 = precision == Precision::Single ? 6 : 7;
    if (num_qubits + width_log2 >= 64) {
        throw CapacityError(std::to_string(num_qubits) + " qubits at " + to_string(precision) +
                            " precision exceed 2^64 bits");
    }
    return std::uint64_t{1} << (num_qubits + width_log2);
}

inline std::uint64_t memory_required_bytes(unsigned num_qubits, Precision precision) {
    return memory_required(num_qubits, precision) / 8;
}

/// Human-readable SI byte count rounded to four significant digits, e.g.
/// "256 bytes", "8.192 kB", "8.59 GB".
inline std::string format_bytes(std::uint64_t bytes) {
    static constexpr const char *units[] = {"bytes", "kB", "MB", "GB", "TB", "PB", "EB"};
    if (bytes < 1000) {
        return std::to_string(bytes) + " bytes";
    }
    double value = static_cast<double>(bytes);
    std::size_t unit = 0;
    while (value >= 1000.0 && unit + 1 < std::size(units)) {
        value /= 1000.0;
        ++unit;
    }
    const int int_digits = value >= 100.0 ? 3 : value >= 10.0 ? 2 : 1;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", std::max(0, 4 - int_digits), value);
    std::string text = buf;
    if (text.find('.') != std::string::npos) {
        while (text.back() == '0') {
            text.pop_back();
        }
        if (text.back() == '.') {
            text.pop_back();
        }
    }
    return text + " " + units[unit];
}

/// Bytes the host can currently spare; MemAvailable on Linux, physical pages elsewhere.
inline std::uint64_t available_memory_bytes() {
    std::ifstream meminfo("/proc/meminfo");
    std::string key;
    std::uint64_t value = 0;
    std::string unit;
    while (meminfo >> key >> value >> unit) {
        if (key == "MemAvailable:") {
            return value * 1024;
        }
    }
    const long pages = sysconf(_SC_AVPHYS_PAGES);
    const long page_size = sysconf(_SC_PAGE_SIZE);
    if (pages > 0 && page_size > 0) {
        return static_cast<std::uint64_t>(pages) * static_cast<std::uint64_t>(page_size);
    }
    return std::numeric_limits<std::uint64_t>::max();
}

/// 75% of available memory, sampled once per process.
inline std::uint64_t default_memory_budget() {
    static const std::uint64_t budget = available_memory_bytes() / 4 * 3;
    return budget;
}

/// Dense register of 2^n amplitudes. Bit t of a basis index is the state of qubit t.
template <class Real>
    requires is_real_v<Real>
class StateVector {
public:
    using real_type = Real;
    using value_type = std::complex<Real>;
    static constexpr Precision precision = precision_of<Real>;

    /// |0...0> on `num_qubits` qubits. The byte budget is checked before allocating.
    explicit StateVector(unsigned num_qubits, std::uint64_t budget_bytes = default_memory_budget())
        : num_qubits_(num_qubits) {
        const std::uint64_t bytes = memory_required_bytes(num_qubits, precision);
        if (bytes > budget_bytes) {
            throw CapacityError(std::to_string(num_qubits) + " qubits need " + format_bytes(bytes) + " (" +
                                std::to_string(bytes) + " bytes) but the memory budget is " +
                                format_bytes(budget_bytes));
        }
        amps_.assign(std::size_t{1} << num_qubits, value_type{});
        amps_[0] = value_type{1};
    }

    /// Adopts raw amplitudes; the length must be a power of two no smaller than 2.
    /// No normalization is applied or checked.
    static StateVector from_amplitudes(std::vector<value_type> amps) {
        if (amps.size() < 2 || !std::has_single_bit(amps.size())) {
            throw DimensionError("amplitude count " + std::to_string(amps.size()) +
                                 " is not a power of two >= 2");
        }
        StateVector s;
        s.num_qubits_ = static_cast<unsigned>(std::countr_zero(amps.size()));
        s.amps_ = std::move(amps);
        return s;
    }

    unsigned num_qubits() const noexcept { return num_qubits_; }
    std::size_t size() const noexcept { return amps_.size(); }

    std::span<value_type> amplitudes() noexcept { return amps_; }
    std::span<const value_type> amplitudes() const noexcept { return amps_; }

    value_type *data() noexcept { return amps_.data(); }
    const value_type *data() const noexcept { return amps_.data(); }

    value_type amplitude(std::uint64_t basis_index) const {
        if (basis_index >= amps_.size()) {
            throw IndexError("basis index " + std::to_string(basis_index) + " out of range for " +
                             std::to_string(num_qubits_) + " qubits");
        }
        return amps_[basis_index];
    }

    bool operator==(const StateVector &) const = default;

private:
    StateVector() = default;

    unsigned num_qubits_ = 0;
    std::vector<value_type> amps_;
};

template <class Real>
StateVector<Real> new_state(unsigned num_qubits, std::uint64_t budget_bytes = default_memory_budget()) {
    if (num_qubits < 1) {
        throw ArgumentError("num_qubits must be at least 1");
    }
    return StateVector<Real>(num_qubits, budget_bytes);
}

/// Sum of |amplitude|^2, accumulated in double.
template <class Real>
double norm_squared(const StateVector<Real> &state) {
    double total = 0.0;
    for (const auto &a : state.amplitudes()) {
        const double re = a.real();
        const double im = a.imag();
        total += re * re + im * im;
    }
    return total;
}

/// Reads one amplitude without disturbing the register.
template <class Real>
std::complex<Real> amplitude_of(const StateVector<Real> &state, std::uint64_t basis_index) {
    return state.amplitude(basis_index);
}

template <class To, class From>
StateVector<To> convert(const StateVector<From> &state) {
    std::vector<std::complex<To>> amps(state.size());
    std::ranges::transform(state.amplitudes(), amps.begin(), [](const std::complex<From> &a) {
        return std::complex<To>(static_cast<To>(a.real()), static_cast<To>(a.imag()));
    });
    return StateVector<To>::from_amplitudes(std::move(amps));
}

/// max_j |a_j - b_j| evaluated in double.
template <class RealA, class RealB>
double max_deviation(std::span<const std::complex<RealA>> a, std::span<const std::complex<RealB>> b) {
    if (a.size() != b.size()) {
        throw DimensionError("cannot compare vectors of length " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const std::complex<double> da(a[j].real(), a[j].imag());
        const std::complex<double> db(b[j].real(), b[j].imag());
        worst = std::max(worst, std::abs(da - db));
    }
    return worst;
}

template <class RealA, class RealB>
double max_deviation(const StateVector<RealA> &a, const StateVector<RealB> &b) {
    return max_deviation(a.amplitudes(), b.amplitudes());
}

}  // namespace qcsim
