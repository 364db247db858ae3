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
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qcsim/errors.hpp"
#include "qcsim/kernel.hpp"
#include "qcsim/state.hpp"

namespace qcsim {

/// Seeded generator used for every random draw in the library.
///
/// std::mt19937_64 is fully specified by the standard, so a seed yields the same
/// 64-bit stream on every platform. Words map onto [0, 1) as (word >> 11) * 2^-53,
/// which keeps the 53 high bits and hits every double multiple of 2^-53 exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by rejection, so the result does not depend on
    /// the standard library's distribution implementation.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) {
            throw ArgumentError("next_below needs a positive bound");
        }
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    double next_normal() {
        // Box-Muller on the portable unit mapping.
        double u1 = next_unit();
        while (u1 <= 0.0) {
            u1 = next_unit();
        }
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

/// Outcome counts of a batch of full-register measurements.
struct MeasurementHistogram {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t samples = 0;

    std::uint64_t count(std::uint64_t basis_index) const {
        const auto it = counts.find(basis_index);
        return it == counts.end() ? 0 : it->second;
    }

    bool operator==(const MeasurementHistogram &) const = default;
};

/// |amp_j|^2 for every basis state, computed as re^2 + im^2.
template <class Real>
std::vector<Real> probabilities(const StateVector<Real> &state, const Engine &engine = {}) {
    std::vector<Real> probs(state.size());
    const std::complex<Real> *amps = state.data();
    Real *out = probs.data();
    sweep_chunks(
        state.size(),
        [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t j = begin; j < end; ++j) {
                out[j] = amps[j].real() * amps[j].real() + amps[j].imag() * amps[j].imag();
            }
        },
        engine);
    return probs;
}

namespace detail {

template <class Real>
std::vector<double> cumulative(const std::vector<Real> &probs) {
    std::vector<double> cdf(probs.size());
    double running = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        running += static_cast<double>(probs[j]);
        cdf[j] = running;
    }
    if (!(running > 0.0) || !std::isfinite(running)) {
        throw DegenerateStateError("state has no probability mass to sample from");
    }
    return cdf;
}

// Inverse CDF; scaling by the total absorbs normalization drift.
inline std::uint64_t draw(const std::vector<double> &cdf, Rng &rng) {
    const double u = rng.next_unit() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        // u rounded up to the total; take the last outcome with positive mass.
        auto last = std::adjacent_find(cdf.rbegin(), cdf.rend(), std::not_equal_to<>{});
        return last == cdf.rend() ? 0 : static_cast<std::uint64_t>(cdf.rend() - last - 1);
    }
    return static_cast<std::uint64_t>(it - cdf.begin());
}

}  // namespace detail

/// Draws i.i.d. outcomes from the exact distribution without touching the state.
template <class Real>
MeasurementHistogram sample(const StateVector<Real> &state, std::uint64_t n_samples, std::uint64_t seed,
                            const Engine &engine = {}) {
    if (n_samples < 1) {
        throw ArgumentError("sample count must be at least 1");
    }
    const std::vector<double> cdf = detail::cumulative(probabilities(state, engine));
    Rng rng(seed);
    MeasurementHistogram hist;
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        ++hist.counts[detail::draw(cdf, rng)];
    }
    hist.samples = n_samples;
    return hist;
}

/// Replaces the state with e_outcome. The phase of the surviving amplitude is
/// global and is dropped, so the entry is exactly 1.
template <class Real>
void collapse_to(StateVector<Real> &state, std::uint64_t outcome) {
    const auto amp = state.amplitude(outcome);
    if (amp.real() == Real{0} && amp.imag() == Real{0}) {
        throw DegenerateStateError("outcome " + std::to_string(outcome) + " has zero probability");
    }
    std::ranges::fill(state.amplitudes(), std::complex<Real>{});
    state.amplitudes()[outcome] = std::complex<Real>{1};
}

/// Measures the whole register in the computational basis and collapses it.
template <class Real>
std::uint64_t measure_collapse(StateVector<Real> &state, std::uint64_t seed, const Engine &engine = {}) {
    const std::vector<double> cdf = detail::cumulative(probabilities(state, engine));
    Rng rng(seed);
    const std::uint64_t outcome = detail::draw(cdf, rng);
    collapse_to(state, outcome);
    return outcome;
}

inline void write_histogram_csv(std::ostream &out, const MeasurementHistogram &hist) {
    out << "basis_index,count\n";
    for (const auto &[index, count] : hist.counts) {
        out << index << ',' << count << '\n';
    }
}

inline std::string to_binary(std::uint64_t value, unsigned width) {
    std::string bits(width, '0');
    for (unsigned b = 0; b < width; ++b) {
        if ((value >> b) & 1U) {
            bits[width - 1 - b] = '1';
        }
    }
    return bits;
}

/// One line per observed outcome: "index: count |bar| binary".
inline void write_histogram_chart(std::ostream &out, const MeasurementHistogram &hist, unsigned num_qubits,
                                  unsigned bar_width = 40) {
    std::uint64_t peak = 0;
    std::size_t label_width = 1;
    for (const auto &[index, count] : hist.counts) {
        peak = std::max(peak, count);
        label_width = std::max(label_width, std::to_string(index).size());
    }
    for (const auto &[index, count] : hist.counts) {
        const std::string label = std::to_string(index);
        const auto filled = peak ? static_cast<std::size_t>((count * bar_width + peak / 2) / peak) : 0;
        out << std::string(label_width - label.size(), ' ') << label << ": " << count << " |"
            << std::string(filled, '#') << std::string(bar_width - filled, ' ') << "| "
            << to_binary(index, num_qubits) << '\n';
    }
}

}  // namespace qcsim
