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

#include <complex>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "qcsim/errors.hpp"
#include "qcsim/gates.hpp"
#include "qcsim/state.hpp"

namespace qcsim {

/// The i-th non-negative integer whose bit `target` is 0.
inline constexpr std::uint64_t nth_cleared(std::uint64_t i, unsigned target) noexcept {
    const std::uint64_t mask = (std::uint64_t{1} << target) - 1;
    const std::uint64_t not_mask = ~mask;
    return (i & mask) | ((i & not_mask) << 1);
}

/// The two basis indices one work item updates.
struct PairIndex {
    std::uint64_t zero_state;
    std::uint64_t one_state;

    bool operator==(const PairIndex &) const = default;
};

inline constexpr PairIndex pair_index(std::uint64_t i, unsigned target) noexcept {
    const std::uint64_t zero_state = nth_cleared(i, target);
    return {zero_state, zero_state | (std::uint64_t{1} << target)};
}

/// One sweep: 2^(n-1) independent pair updates on qubit `target`.
struct KernelPlan {
    std::uint64_t num_work_items;
    unsigned target;
    std::optional<unsigned> control;

    static KernelPlan make(unsigned num_qubits, unsigned target, std::optional<unsigned> control = std::nullopt) {
        if (num_qubits < 1 || num_qubits > 63) {
            throw ArgumentError("kernel plans need 1..63 qubits");
        }
        if (target >= num_qubits) {
            throw IndexError("target qubit " + std::to_string(target) + " out of range for " +
                             std::to_string(num_qubits) + " qubits");
        }
        if (control) {
            if (*control >= num_qubits) {
                throw IndexError("control qubit " + std::to_string(*control) + " out of range for " +
                                 std::to_string(num_qubits) + " qubits");
            }
            if (*control == target) {
                throw ArgumentError("control and target must differ (both " + std::to_string(target) + ")");
            }
        }
        return {std::uint64_t{1} << (num_qubits - 1), target, control};
    }
};

enum class Backend { Serial, Parallel };

/// Execution back-end for sweeps. Both back-ends produce bit-identical states.
///
/// Serial replays the per-work-item kernel literally, one nth_cleared per item.
/// Parallel splits the work items into contiguous chunks of at least `grain`
/// items and walks each chunk incrementally on the TBB scheduler.
struct Engine {
    Backend backend = Backend::Parallel;
    unsigned max_workers = 0;  // 0: scheduler default
    std::uint64_t grain = 1 << 12;

    static Engine serial() { return {Backend::Serial, 1, 0}; }
    static Engine parallel(unsigned max_workers = 0, std::uint64_t grain = 1 << 12) {
        return {Backend::Parallel, max_workers, grain};
    }

    std::string label() const { return backend == Backend::Serial ? "serial" : "parallel"; }
};

/// Runs chunk(begin, end) over a partition of [0, num_items). Returns after every
/// chunk has finished; the first exception thrown by a chunk is rethrown.
template <class ChunkBody>
void sweep_chunks(std::uint64_t num_items, ChunkBody &&chunk, const Engine &engine) {
    if (num_items == 0) {
        return;
    }
    if (engine.backend == Backend::Serial || num_items <= engine.grain) {
        chunk(std::uint64_t{0}, num_items);
        return;
    }
    auto run = [&] {
        tbb::parallel_for(tbb::blocked_range<std::uint64_t>(0, num_items, std::max<std::uint64_t>(engine.grain, 1)),
                          [&](const tbb::blocked_range<std::uint64_t> &r) { chunk(r.begin(), r.end()); });
    };
    if (engine.max_workers == 0) {
        run();
    } else {
        tbb::task_arena arena(static_cast<int>(engine.max_workers));
        arena.execute(run);
    }
}

/// Executes body(i) for every work item of the plan.
template <class Body>
void parallel_sweep(const KernelPlan &plan, Body &&body, const Engine &engine = {}) {
    sweep_chunks(
        plan.num_work_items,
        [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t i = begin; i < end; ++i) {
                body(i);
            }
        },
        engine);
}

namespace detail {

template <class Real>
struct GateCoefficients {
    std::complex<Real> a, b, c, d;

    explicit GateCoefficients(const Gate &g)
        : a(static_cast<std::complex<Real>>(g.a())),
          b(static_cast<std::complex<Real>>(g.b())),
          c(static_cast<std::complex<Real>>(g.c())),
          d(static_cast<std::complex<Real>>(g.d())) {}
};

// x*p + y*q with plain real arithmetic; std::complex operator* goes through the
// Annex G NaN-recovery path, which is several times slower.
template <class Real>
inline std::complex<Real> mul_add(const std::complex<Real> &x, const std::complex<Real> &p,
                                  const std::complex<Real> &y, const std::complex<Real> &q) noexcept {
    const Real re = (x.real() * p.real() - x.imag() * p.imag()) + (y.real() * q.real() - y.imag() * q.imag());
    const Real im = (x.real() * p.imag() + x.imag() * p.real()) + (y.real() * q.imag() + y.imag() * q.real());
    return {re, im};
}

// Both amplitudes are read before either is written.
template <class Real>
inline void update_pair(std::complex<Real> *amps, std::uint64_t zero_state, std::uint64_t one_state,
                        const GateCoefficients<Real> &g) noexcept {
    const std::complex<Real> zero_amp = amps[zero_state];
    const std::complex<Real> one_amp = amps[one_state];
    amps[zero_state] = mul_add(g.a, zero_amp, g.b, one_amp);
    amps[one_state] = mul_add(g.d, one_amp, g.c, zero_amp);
}

template <class Real>
inline void update_pair_controlled(std::complex<Real> *amps, std::uint64_t zero_state, std::uint64_t one_state,
                                   std::uint64_t control_bit, const GateCoefficients<Real> &g) noexcept {
    const std::complex<Real> zero_amp = amps[zero_state];
    const std::complex<Real> one_amp = amps[one_state];
    if (zero_state & control_bit) {
        amps[zero_state] = mul_add(g.a, zero_amp, g.b, one_amp);
    }
    if (one_state & control_bit) {
        amps[one_state] = mul_add(g.d, one_amp, g.c, zero_amp);
    }
}

// Walks the pairs of work items [begin, end) without recomputing nth_cleared.
// Zero states come in contiguous runs of at most 2^target; run_fn(zero_state, run)
// receives each run, whose partners are the next 2^target amplitudes.
template <class RunFn>
inline void walk_runs(std::uint64_t begin, std::uint64_t end, unsigned target, RunFn &&run_fn) noexcept {
    const std::uint64_t target_bit = std::uint64_t{1} << target;
    std::uint64_t zero_state = nth_cleared(begin, target);
    for (std::uint64_t i = begin; i < end;) {
        const std::uint64_t run = std::min(end - i, target_bit - (zero_state & (target_bit - 1)));
        run_fn(zero_state, run);
        i += run;
        zero_state += run + target_bit;
    }
}

// A run's zero and one blocks never overlap, which lets the loop vectorize. The
// arithmetic is mul_add's, spelled out on the interleaved re/im array.
template <class Real>
inline void update_run(std::complex<Real> *lo_c, std::complex<Real> *hi_c, std::uint64_t run,
                       const GateCoefficients<Real> &g) noexcept {
    Real *__restrict lo = reinterpret_cast<Real *>(lo_c);
    Real *__restrict hi = reinterpret_cast<Real *>(hi_c);
    const Real ar = g.a.real(), ai = g.a.imag(), br = g.b.real(), bi = g.b.imag();
    const Real cr = g.c.real(), ci = g.c.imag(), dr = g.d.real(), di = g.d.imag();
    for (std::uint64_t k = 0; k < run; ++k) {
        const Real xr = lo[2 * k], xi = lo[2 * k + 1];
        const Real yr = hi[2 * k], yi = hi[2 * k + 1];
        lo[2 * k] = (ar * xr - ai * xi) + (br * yr - bi * yi);
        lo[2 * k + 1] = (ar * xi + ai * xr) + (br * yi + bi * yr);
        hi[2 * k] = (dr * yr - di * yi) + (cr * xr - ci * xi);
        hi[2 * k + 1] = (dr * yi + di * yr) + (cr * xi + ci * xr);
    }
}

}  // namespace detail

/// Applies `g` to qubit `target` in place.
template <class Real>
void apply_gate(StateVector<Real> &state, unsigned target, const Gate &g, const Engine &engine = {}) {
    const KernelPlan plan = KernelPlan::make(state.num_qubits(), target);
    const detail::GateCoefficients<Real> coeffs(g);
    const std::uint64_t plan_bit = std::uint64_t{1} << target;
    std::complex<Real> *amps = state.data();
    if (engine.backend == Backend::Serial) {
        for (std::uint64_t i = 0; i < plan.num_work_items; ++i) {
            const PairIndex p = pair_index(i, target);
            detail::update_pair(amps, p.zero_state, p.one_state, coeffs);
        }
        return;
    }
    sweep_chunks(
        plan.num_work_items,
        [&](std::uint64_t begin, std::uint64_t end) {
            detail::walk_runs(begin, end, target, [&](std::uint64_t zero_state, std::uint64_t run) {
                detail::update_run(amps + zero_state, amps + zero_state + plan_bit, run, coeffs);
            });
        },
        engine);
}

/// Applies `g` to `target` on the subspace where qubit `control` is 1.
template <class Real>
void apply_controlled_gate(StateVector<Real> &state, unsigned control, unsigned target, const Gate &g,
                           const Engine &engine = {}) {
    const KernelPlan plan = KernelPlan::make(state.num_qubits(), target, control);
    const detail::GateCoefficients<Real> coeffs(g);
    const std::uint64_t control_bit = std::uint64_t{1} << control;
    const std::uint64_t plan_bit = std::uint64_t{1} << target;
    std::complex<Real> *amps = state.data();
    if (engine.backend == Backend::Serial) {
        for (std::uint64_t i = 0; i < plan.num_work_items; ++i) {
            const PairIndex p = pair_index(i, target);
            detail::update_pair_controlled(amps, p.zero_state, p.one_state, control_bit, coeffs);
        }
        return;
    }
    sweep_chunks(
        plan.num_work_items,
        [&](std::uint64_t begin, std::uint64_t end) {
            detail::walk_runs(begin, end, target, [&](std::uint64_t zero_state, std::uint64_t run) {
                // A pair's two states differ only in the target bit, so they agree on the
                // control bit; split the run where that bit changes.
                for (std::uint64_t k = 0; k < run;) {
                    const std::uint64_t x = zero_state + k;
                    const std::uint64_t seg = std::min(run - k, control_bit - (x & (control_bit - 1)));
                    if (x & control_bit) {
                        detail::update_run(amps + x, amps + x + plan_bit, seg, coeffs);
                    }
                    k += seg;
                }
            });
        },
        engine);
}

}  // namespace qcsim
