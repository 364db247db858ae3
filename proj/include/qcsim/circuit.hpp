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
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "qcsim/errors.hpp"
#include "qcsim/gates.hpp"
#include "qcsim/kernel.hpp"
#include "qcsim/measurement.hpp"
#include "qcsim/state.hpp"

namespace qcsim {

struct Apply {
    Gate gate;
    unsigned target;

    bool operator==(const Apply &) const = default;
};

struct ControlledApply {
    Gate gate;
    unsigned control;
    unsigned target;

    bool operator==(const ControlledApply &) const = default;
};

/// Full-register sampling; only valid as the final instruction.
struct SampleMeasure {
    std::uint64_t shots;

    bool operator==(const SampleMeasure &) const = default;
};

using Instruction = std::variant<Apply, ControlledApply, SampleMeasure>;

struct Circuit {
    unsigned num_qubits = 1;
    std::vector<Instruction> instructions;

    Circuit &apply(const Gate &g, unsigned target) {
        instructions.emplace_back(Apply{g, target});
        return *this;
    }
    Circuit &controlled(const Gate &g, unsigned control, unsigned target) {
        instructions.emplace_back(ControlledApply{g, control, target});
        return *this;
    }
    Circuit &measure(std::uint64_t shots) {
        instructions.emplace_back(SampleMeasure{shots});
        return *this;
    }

    /// Number of Apply and ControlledApply instructions.
    std::size_t gate_count() const {
        return static_cast<std::size_t>(std::ranges::count_if(
            instructions, [](const Instruction &i) { return !std::holds_alternative<SampleMeasure>(i); }));
    }

    std::optional<std::uint64_t> shots() const {
        if (!instructions.empty()) {
            if (const auto *m = std::get_if<SampleMeasure>(&instructions.back())) {
                return m->shots;
            }
        }
        return std::nullopt;
    }

    bool operator==(const Circuit &) const = default;
};

namespace detail {

inline void validate_instruction(const Instruction &ins, std::size_t position, std::size_t count, unsigned n,
                                 std::size_t line) {
    auto check_index = [&](unsigned q, const char *role) {
        if (q >= n) {
            throw ValidationError(line, std::string(role) + " qubit " + std::to_string(q) +
                                            " out of range for " + std::to_string(n) + " qubits");
        }
    };
    std::visit(
        [&](const auto &op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, Apply>) {
                check_index(op.target, "target");
            } else if constexpr (std::is_same_v<T, ControlledApply>) {
                check_index(op.control, "control");
                check_index(op.target, "target");
                if (op.control == op.target) {
                    throw ValidationError(line, "control and target must differ (both " +
                                                    std::to_string(op.target) + ")");
                }
            } else {
                if (op.shots < 1) {
                    throw ValidationError(line, "measure needs at least one shot");
                }
                if (position + 1 != count) {
                    throw ValidationError(line, "measure must be the last instruction");
                }
            }
        },
        ins);
}

}  // namespace detail

inline void validate(const Circuit &c) {
    if (c.num_qubits < 1) {
        throw ValidationError(0, "circuit needs at least one qubit");
    }
    for (std::size_t k = 0; k < c.instructions.size(); ++k) {
        detail::validate_instruction(c.instructions[k], k, c.instructions.size(), c.num_qubits, 0);
    }
}

// --- text format -----------------------------------------------------------
//
//   # comment
//   qubits 3
//   h 0
//   u1 1 0.785398
//   cx 0 2            control, target
//   cu1 1 0 1.5707963267948966
//   u 0 ar ai br bi cr ci dr di
//   measure 1000
//
// Controlled forms prefix any single-qubit mnemonic with 'c'.

namespace detail {

inline std::string format_real(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        if (i > start) {
            words.push_back(s.substr(start, i - start));
        }
    }
    return words;
}

inline std::uint64_t parse_uint(std::string_view word, std::size_t line, const char *what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc{} || ptr != word.data() + word.size()) {
        throw ParseError(line, std::string("bad ") + what + " '" + std::string(word) + "'");
    }
    return value;
}

inline unsigned parse_qubit(std::string_view word, std::size_t line) {
    const std::uint64_t q = parse_uint(word, line, "qubit index");
    if (q > std::numeric_limits<unsigned>::max()) {
        throw ParseError(line, "qubit index '" + std::string(word) + "' is too large");
    }
    return static_cast<unsigned>(q);
}

inline double parse_real(std::string_view word, std::size_t line) {
    double value = 0.0;
    const char *first = word.data();
    if (!word.empty() && word.front() == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, word.data() + word.size(), value);
    if (ec != std::errc{} || ptr != word.data() + word.size() || !std::isfinite(value)) {
        throw ParseError(line, "non-numeric angle or matrix entry '" + std::string(word) + "'");
    }
    return value;
}

inline std::string gate_arguments(const Gate &g) {
    if (g.standard()) {
        if (g.standard()->kind == StdGate::U1) {
            return " " + format_real(g.standard()->theta);
        }
        return "";
    }
    std::string out;
    for (const Complex &z : g.matrix()) {
        out += " " + format_real(z.real()) + " " + format_real(z.imag());
    }
    return out;
}

}  // namespace detail

/// Canonical text; parse_circuit(format_circuit(c)) == c.
inline std::string format_circuit(const Circuit &c) {
    std::string out = "qubits " + std::to_string(c.num_qubits);
    for (const Instruction &ins : c.instructions) {
        out += '\n';
        std::visit(
            [&](const auto &op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, Apply>) {
                    out += op.gate.name() + " " + std::to_string(op.target) + detail::gate_arguments(op.gate);
                } else if constexpr (std::is_same_v<T, ControlledApply>) {
                    out += "c" + op.gate.name() + " " + std::to_string(op.control) + " " +
                           std::to_string(op.target) + detail::gate_arguments(op.gate);
                } else {
                    out += "measure " + std::to_string(op.shots);
                }
            },
            ins);
    }
    return out;
}

inline Circuit parse_circuit(std::string_view text) {
    Circuit circuit;
    bool have_header = false;
    std::optional<std::size_t> measure_line;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto words = detail::split_words(line);
        if (words.empty()) {
            continue;
        }
        const std::string_view op = words[0];
        auto expect_args = [&](std::size_t n) {
            if (words.size() != n + 1) {
                throw ParseError(line_no, "'" + std::string(op) + "' takes " + std::to_string(n) + " argument" +
                                              (n == 1 ? "" : "s") + ", got " + std::to_string(words.size() - 1));
            }
        };
        if (!have_header) {
            if (op != "qubits") {
                throw ParseError(line_no, "expected 'qubits N' header, got '" + std::string(op) + "'");
            }
            expect_args(1);
            const std::uint64_t n = detail::parse_uint(words[1], line_no, "qubit count");
            if (n < 1 || n > 63) {
                throw ValidationError(line_no, "qubit count must be in 1..63, got " + std::to_string(n));
            }
            circuit.num_qubits = static_cast<unsigned>(n);
            have_header = true;
            continue;
        }
        if (op == "qubits") {
            throw ParseError(line_no, "duplicate 'qubits' header");
        }
        if (measure_line) {
            throw ValidationError(line_no, "instruction after measure (line " + std::to_string(*measure_line) + ")");
        }
        if (op == "measure") {
            expect_args(1);
            const std::uint64_t shots = detail::parse_uint(words[1], line_no, "shot count");
            Instruction ins = SampleMeasure{shots};
            detail::validate_instruction(ins, 0, 1, circuit.num_qubits, line_no);
            circuit.instructions.push_back(ins);
            measure_line = line_no;
            continue;
        }

        const bool is_controlled = op.size() > 1 && op.front() == 'c';
        const std::string gate_name(is_controlled ? op.substr(1) : op);
        const std::size_t qubit_args = is_controlled ? 2 : 1;
        std::optional<Gate> gate;
        if (gate_name == "u") {
            expect_args(qubit_args + 8);
            Matrix2 m;
            for (std::size_t k = 0; k < 4; ++k) {
                m[k] = Complex(detail::parse_real(words[1 + qubit_args + 2 * k], line_no),
                               detail::parse_real(words[2 + qubit_args + 2 * k], line_no));
            }
            try {
                gate = make_gate(m);
            } catch (const NotUnitaryError &e) {
                throw ValidationError(line_no, e.what());
            }
        } else if (const auto kind = parse_mnemonic(gate_name)) {
            if (*kind == StdGate::U1) {
                expect_args(qubit_args + 1);
                gate = std_gate(StdGate::u1(detail::parse_real(words[1 + qubit_args], line_no)));
            } else {
                expect_args(qubit_args);
                gate = std_gate(*kind);
            }
        } else {
            throw ParseError(line_no, "unknown gate '" + std::string(op) + "'");
        }

        Instruction ins = is_controlled
                              ? Instruction{ControlledApply{*gate, detail::parse_qubit(words[1], line_no),
                                                            detail::parse_qubit(words[2], line_no)}}
                              : Instruction{Apply{*gate, detail::parse_qubit(words[1], line_no)}};
        detail::validate_instruction(ins, 0, 1, circuit.num_qubits, line_no);
        circuit.instructions.push_back(std::move(ins));
    }
    if (!have_header) {
        throw ParseError(line_no, "missing 'qubits N' header");
    }
    return circuit;
}

// --- builders --------------------------------------------------------------

/// QFT without the final bit-reversal swaps: for each j, controlled phases
/// U1(pi / 2^(j-k)) from qubit j onto every k < j, then H on j.
/// The realized operator is the DFT applied after reversing the input bits.
inline Circuit build_qft(unsigned n) {
    if (n < 1) {
        throw ArgumentError("QFT needs at least one qubit");
    }
    Circuit c;
    c.num_qubits = n;
    for (unsigned j = 0; j < n; ++j) {
        for (unsigned k = 0; k < j; ++k) {
            c.controlled(std_gate(StdGate::u1(std::numbers::pi / std::ldexp(1.0, static_cast<int>(j - k)))), j, k);
        }
        c.apply(std_gate(StdGate::H), j);
    }
    return c;
}

/// Hidden bit-string of the Bernstein-Vazirani problem; bit i belongs to qubit i.
struct HiddenInteger {
    std::uint64_t value;

    bool bit(unsigned i) const noexcept { return (value >> i) & 1U; }
};

/// H on every qubit, the inner-product oracle as Z on each qubit whose bit is set
/// (identity factors are omitted), H on every qubit, then sampling.
inline Circuit build_bernstein_vazirani(unsigned n, HiddenInteger a, std::uint64_t shots = 1000) {
    if (n < 1 || n > 63) {
        throw ArgumentError("Bernstein-Vazirani needs 1..63 qubits");
    }
    if (a.value >> n) {
        throw ArgumentError("hidden integer " + std::to_string(a.value) + " does not fit in " + std::to_string(n) +
                            " qubits");
    }
    Circuit c;
    c.num_qubits = n;
    for (unsigned i = 0; i < n; ++i) {
        c.apply(std_gate(StdGate::H), i);
    }
    for (unsigned i = 0; i < n; ++i) {
        if (a.bit(i)) {
            c.apply(std_gate(StdGate::Z), i);
        }
    }
    for (unsigned i = 0; i < n; ++i) {
        c.apply(std_gate(StdGate::H), i);
    }
    if (shots > 0) {
        c.measure(shots);
    }
    return c;
}

// --- execution -------------------------------------------------------------

template <class Real>
struct RunResult {
    StateVector<Real> state;
    std::optional<MeasurementHistogram> histogram;
};

/// Called after every gate instruction with its position in the instruction list.
template <class Real>
using StepObserver = std::function<void(std::size_t, const StateVector<Real> &)>;

/// Applies one gate instruction; SampleMeasure is a no-op here.
template <class Real>
void apply_instruction(StateVector<Real> &state, const Instruction &ins, const Engine &engine = {}) {
    if (const auto *a = std::get_if<Apply>(&ins)) {
        apply_gate(state, a->target, a->gate, engine);
    } else if (const auto *c = std::get_if<ControlledApply>(&ins)) {
        apply_controlled_gate(state, c->control, c->target, c->gate, engine);
    }
}

/// Runs the circuit from |0...0>. Each sweep completes before the next starts.
template <class Real>
RunResult<Real> run_circuit(const Circuit &c, const Engine &engine = {}, std::uint64_t seed = 0,
                            std::uint64_t budget_bytes = default_memory_budget(),
                            const StepObserver<Real> &observer = {}) {
    validate(c);
    RunResult<Real> result{StateVector<Real>(c.num_qubits, budget_bytes), std::nullopt};
    for (std::size_t k = 0; k < c.instructions.size(); ++k) {
        const Instruction &ins = c.instructions[k];
        if (const auto *m = std::get_if<SampleMeasure>(&ins)) {
            result.histogram = sample(result.state, m->shots, seed, engine);
            continue;
        }
        apply_instruction(result.state, ins, engine);
        if (observer) {
            observer(k, result.state);
        }
    }
    return result;
}

}  // namespace qcsim
