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

// Step-wise comparison of the kernel engine against the dense oracle on random
// circuits.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcsim/circuit.hpp"
#include "qcsim/dense_oracle.hpp"
#include "qcsim/gates.hpp"
#include "qcsim/kernel.hpp"
#include "qcsim/measurement.hpp"
#include "qcsim/state.hpp"

namespace qcsim {

/// Haar-style random unitary e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
inline Gate random_unitary(Rng &rng) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double alpha = two_pi * rng.next_unit();
    const double beta = two_pi * rng.next_unit();
    const double delta = two_pi * rng.next_unit();
    const double gamma = std::acos(1.0 - 2.0 * rng.next_unit());
    const double cg = std::cos(gamma / 2);
    const double sg = std::sin(gamma / 2);
    const Complex phase = std::polar(1.0, alpha);
    return make_gate({phase * std::polar(cg, -(beta + delta) / 2), -phase * std::polar(sg, -(beta - delta) / 2),
                      phase * std::polar(sg, (beta - delta) / 2), phase * std::polar(cg, (beta + delta) / 2)});
}

inline Gate random_gate(Rng &rng) {
    switch (rng.next_below(9)) {
    case 0: return std_gate(StdGate::H);
    case 1: return std_gate(StdGate::X);
    case 2: return std_gate(StdGate::Y);
    case 3: return std_gate(StdGate::Z);
    case 4: return std_gate(StdGate::S);
    case 5: return std_gate(StdGate::T);
    case 6: return std_gate(StdGate::u1(2.0 * std::numbers::pi * rng.next_unit()));
    default: return random_unitary(rng);
    }
}

/// `depth` gates on n qubits; roughly 40% are controlled once n >= 2.
inline Circuit random_circuit(unsigned n, std::size_t depth, Rng &rng) {
    Circuit c;
    c.num_qubits = n;
    for (std::size_t k = 0; k < depth; ++k) {
        const Gate g = random_gate(rng);
        const auto target = static_cast<unsigned>(rng.next_below(n));
        if (n >= 2 && rng.next_below(5) < 2) {
            auto control = static_cast<unsigned>(rng.next_below(n - 1));
            if (control >= target) {
                ++control;
            }
            c.controlled(g, control, target);
        } else {
            c.apply(g, target);
        }
    }
    return c;
}

/// Normalized random state with Gaussian components.
template <class Real>
StateVector<Real> random_state(unsigned n, Rng &rng) {
    std::vector<std::complex<double>> wide(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : wide) {
        a = {rng.next_normal(), rng.next_normal()};
        norm += std::norm(a);
    }
    std::vector<std::complex<Real>> amps(wide.size());
    const double scale = 1.0 / std::sqrt(norm);
    for (std::size_t j = 0; j < wide.size(); ++j) {
        amps[j] = {static_cast<Real>(wide[j].real() * scale), static_cast<Real>(wide[j].imag() * scale)};
    }
    return StateVector<Real>::from_amplitudes(std::move(amps));
}

namespace oracle {

inline DenseOperator instruction_operator(const Instruction &ins, unsigned n) {
    if (const auto *a = std::get_if<Apply>(&ins)) {
        return dense_lift(a->gate, a->target, n);
    }
    if (const auto *c = std::get_if<ControlledApply>(&ins)) {
        return dense_controlled_lift(c->gate, c->control, c->target, n);
    }
    return DenseOperator::identity(std::size_t{1} << n);
}

/// Runs the gate instructions of `c` on `initial` by dense matrix-vector products.
/// `observer(k, v)` sees the vector after instruction k.
inline std::vector<Complex> run(const Circuit &c, std::vector<Complex> initial,
                                const std::function<void(std::size_t, std::span<const Complex>)> &observer = {}) {
    validate(c);
    detail::check_width(c.num_qubits);
    for (std::size_t k = 0; k < c.instructions.size(); ++k) {
        if (std::holds_alternative<SampleMeasure>(c.instructions[k])) {
            continue;
        }
        initial = dense_apply(instruction_operator(c.instructions[k], c.num_qubits), initial);
        if (observer) {
            observer(k, initial);
        }
    }
    return initial;
}

/// The unitary realized by the circuit, assembled one column (basis input) at a time.
inline DenseOperator circuit_operator(const Circuit &c) {
    validate(c);
    detail::check_width(c.num_qubits);
    std::vector<DenseOperator> ops;
    for (const Instruction &ins : c.instructions) {
        if (!std::holds_alternative<SampleMeasure>(ins)) {
            ops.push_back(instruction_operator(ins, c.num_qubits));
        }
    }
    const std::size_t dim = std::size_t{1} << c.num_qubits;
    std::vector<Complex> entries(dim * dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<Complex> v = basis_vector(c.num_qubits, col);
        for (const DenseOperator &op : ops) {
            v = dense_apply(op, v);
        }
        for (std::size_t row = 0; row < dim; ++row) {
            entries[row * dim + col] = v[row];
        }
    }
    return DenseOperator(dim, std::move(entries));
}

}  // namespace oracle

/// Max allowed per-step amplitude deviation between engine and oracle.
inline constexpr double oracle_tolerance(Precision p) { return p == Precision::Single ? 1e-4 : 1e-10; }

struct VerifyConfig {
    unsigned min_qubits = 1;
    unsigned max_qubits = 6;
    std::size_t trials = 50;
    std::size_t max_depth = 40;
    std::uint64_t seed = 1;
};

struct VerifyReport {
    std::size_t circuits = 0;
    std::size_t steps = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string worst_case;  // formatted circuit that produced max_deviation

    bool passed() const { return circuits > 0 && max_deviation < tolerance; }
};

/// Whatever applies one instruction to the engine state; injectable for fault tests.
template <class Real>
using InstructionApplier = std::function<void(StateVector<Real> &, const Instruction &)>;

template <class Real>
VerifyReport verify_against_oracle(const VerifyConfig &cfg, const InstructionApplier<Real> &applier) {
    if (cfg.max_qubits > oracle::max_qubits) {
        throw CapacityError("oracle cap exceeded: " + std::to_string(cfg.max_qubits) + " qubits > " +
                            std::to_string(oracle::max_qubits));
    }
    if (cfg.min_qubits < 1 || cfg.min_qubits > cfg.max_qubits) {
        throw ArgumentError("verification needs 1 <= min_qubits <= max_qubits");
    }
    VerifyReport report;
    report.tolerance = oracle_tolerance(precision_of<Real>);
    Rng rng(cfg.seed);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const auto n = static_cast<unsigned>(cfg.min_qubits + rng.next_below(cfg.max_qubits - cfg.min_qubits + 1));
        const std::size_t depth = rng.next_below(cfg.max_depth + 1);
        const Circuit c = random_circuit(n, depth, rng);

        StateVector<Real> engine_state(n);
        std::vector<Complex> reference = oracle::basis_vector(n, 0);
        double circuit_worst = 0.0;
        for (const Instruction &ins : c.instructions) {
            applier(engine_state, ins);
            reference = oracle::dense_apply(oracle::instruction_operator(ins, n), reference);
            circuit_worst = std::max(circuit_worst, max_deviation(std::as_const(engine_state).amplitudes(),
                                                                  std::span<const Complex>(reference)));
            ++report.steps;
        }
        if (circuit_worst > report.max_deviation || report.worst_case.empty()) {
            report.max_deviation = std::max(report.max_deviation, circuit_worst);
            report.worst_case = format_circuit(c);
        }
        ++report.circuits;
    }
    return report;
}

/// Fault-injection fixture: the pair kernel with the sign of the c entry flipped
/// (v_b <- d*v_b - c*v_a). Any suite worth running must reject it.
template <class Real>
InstructionApplier<Real> sign_fault_applier() {
    return [](StateVector<Real> &s, const Instruction &ins) {
        const Gate *g = nullptr;
        unsigned target = 0;
        std::optional<unsigned> control;
        if (const auto *a = std::get_if<Apply>(&ins)) {
            g = &a->gate;
            target = a->target;
        } else if (const auto *c = std::get_if<ControlledApply>(&ins)) {
            g = &c->gate;
            target = c->target;
            control = c->control;
        } else {
            return;
        }
        const auto a = static_cast<std::complex<Real>>(g->a());
        const auto b = static_cast<std::complex<Real>>(g->b());
        const auto c = static_cast<std::complex<Real>>(-g->c());
        const auto d = static_cast<std::complex<Real>>(g->d());
        auto amps = s.amplitudes();
        for (std::uint64_t i = 0; i < s.size() / 2; ++i) {
            const PairIndex p = pair_index(i, target);
            const bool write_zero = !control || ((p.zero_state >> *control) & 1U);
            const bool write_one = !control || ((p.one_state >> *control) & 1U);
            const auto zero_amp = amps[p.zero_state];
            const auto one_amp = amps[p.one_state];
            if (write_zero) {
                amps[p.zero_state] = a * zero_amp + b * one_amp;
            }
            if (write_one) {
                amps[p.one_state] = d * one_amp + c * zero_amp;
            }
        }
    };
}

template <class Real>
VerifyReport verify_against_oracle(const VerifyConfig &cfg, const Engine &engine = {}) {
    return verify_against_oracle<Real>(
        cfg, [engine](StateVector<Real> &s, const Instruction &ins) { apply_instruction(s, ins, engine); });
}

}  // namespace qcsim
