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

// Brute-force reference simulator. Operators are full 2^n x 2^n matrices built
// from Kronecker products and applied by matrix-vector multiplication. It shares
// no index arithmetic with the kernel engine and always works in double.

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcsim/errors.hpp"
#include "qcsim/gates.hpp"
#include "qcsim/state.hpp"

namespace qcsim::oracle {

/// Largest register the oracle accepts (a 4096 x 4096 complex<double> matrix is 256 MiB).
inline constexpr unsigned max_qubits = 12;

class DenseOperator {
public:
    DenseOperator(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
        if (dim_ == 0 || !std::has_single_bit(dim_)) {
            throw DimensionError("operator dimension " + std::to_string(dim_) + " is not a power of two");
        }
        if (dim_ > (std::size_t{1} << max_qubits)) {
            throw CapacityError("operator dimension " + std::to_string(dim_) + " exceeds the oracle cap of 2^" +
                                std::to_string(max_qubits));
        }
        if (entries_.size() != dim_ * dim_) {
            throw DimensionError("operator entry count does not match dimension");
        }
    }

    static DenseOperator identity(std::size_t dim) {
        std::vector<Complex> e(dim * dim);
        for (std::size_t i = 0; i < dim; ++i) {
            e[i * dim + i] = 1.0;
        }
        return DenseOperator(dim, std::move(e));
    }

    static DenseOperator from_matrix(const Matrix2 &m) { return DenseOperator(2, {m.begin(), m.end()}); }
    static DenseOperator from_gate(const Gate &g) { return from_matrix(g.matrix()); }

    std::size_t dim() const noexcept { return dim_; }
    unsigned num_qubits() const noexcept { return static_cast<unsigned>(std::countr_zero(dim_)); }

    const Complex &operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    Complex &operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

    std::span<const Complex> entries() const noexcept { return entries_; }

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// (a kron b)(ra*db + rb, ca*db + cb) = a(ra, ca) * b(rb, cb)
inline DenseOperator kron(const DenseOperator &a, const DenseOperator &b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    if (da * db > (std::size_t{1} << max_qubits)) {
        throw CapacityError("Kronecker product of dimension " + std::to_string(da * db) +
                            " exceeds the oracle cap of 2^" + std::to_string(max_qubits));
    }
    const std::size_t d = da * db;
    std::vector<Complex> e(d * d);
    for (std::size_t ra = 0; ra < da; ++ra) {
        for (std::size_t ca = 0; ca < da; ++ca) {
            const Complex x = a(ra, ca);
            if (x == Complex{}) {
                continue;  // the block stays zero
            }
            for (std::size_t rb = 0; rb < db; ++rb) {
                for (std::size_t cb = 0; cb < db; ++cb) {
                    e[(ra * db + rb) * d + (ca * db + cb)] = x * b(rb, cb);
                }
            }
        }
    }
    return DenseOperator(d, std::move(e));
}

/// Kronecker product of two column vectors.
inline std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const Complex &x : a) {
        for (const Complex &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

inline DenseOperator add(const DenseOperator &a, const DenseOperator &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("cannot add operators of dimension " + std::to_string(a.dim()) + " and " +
                             std::to_string(b.dim()));
    }
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] += b.entries()[i];
    }
    return DenseOperator(a.dim(), std::move(e));
}

inline DenseOperator multiply(const DenseOperator &a, const DenseOperator &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("cannot multiply operators of dimension " + std::to_string(a.dim()) + " and " +
                             std::to_string(b.dim()));
    }
    const std::size_t d = a.dim();
    std::vector<Complex> e(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
            const Complex x = a(r, k);
            for (std::size_t c = 0; c < d; ++c) {
                e[r * d + c] += x * b(k, c);
            }
        }
    }
    return DenseOperator(d, std::move(e));
}

inline DenseOperator adjoint(const DenseOperator &a) {
    const std::size_t d = a.dim();
    std::vector<Complex> e(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            e[c * d + r] = std::conj(a(r, c));
        }
    }
    return DenseOperator(d, std::move(e));
}

/// max |U^dagger U - I| entrywise.
inline double unitarity_deviation(const DenseOperator &u) {
    const DenseOperator p = multiply(adjoint(u), u);
    double worst = 0.0;
    for (std::size_t r = 0; r < p.dim(); ++r) {
        for (std::size_t c = 0; c < p.dim(); ++c) {
            worst = std::max(worst, std::abs(p(r, c) - (r == c ? Complex{1.0} : Complex{0.0})));
        }
    }
    return worst;
}

inline double max_deviation(const DenseOperator &a, const DenseOperator &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("operator dimensions differ");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

namespace detail {

inline void check_width(unsigned n) {
    if (n < 1) {
        throw ArgumentError("oracle operators need at least one qubit");
    }
    if (n > max_qubits) {
        throw CapacityError("oracle cap exceeded: " + std::to_string(n) + " qubits > " + std::to_string(max_qubits));
    }
}

// Kronecker chain over qubits n-1 (leftmost factor) down to 0 (rightmost). The
// rightmost factor varies fastest in the row index, so it owns bit 0.
template <class FactorFn>
DenseOperator chain(unsigned n, FactorFn &&factor_for_qubit) {
    DenseOperator op = factor_for_qubit(n - 1);
    for (unsigned j = n - 1; j-- > 0;) {
        op = kron(op, factor_for_qubit(j));
    }
    return op;
}

}  // namespace detail

/// The full-register operator of `g` on qubit `target`.
inline DenseOperator dense_lift(const Gate &g, unsigned target, unsigned n) {
    detail::check_width(n);
    if (target >= n) {
        throw IndexError("target qubit " + std::to_string(target) + " out of range for " + std::to_string(n) +
                         " qubits");
    }
    const DenseOperator gate = DenseOperator::from_gate(g);
    const DenseOperator id = DenseOperator::identity(2);
    return detail::chain(n, [&](unsigned j) { return j == target ? gate : id; });
}

/// P0(control) (x) I + P1(control) (x) g(target), each term lifted to n qubits.
inline DenseOperator dense_controlled_lift(const Gate &g, unsigned control, unsigned target, unsigned n) {
    detail::check_width(n);
    if (target >= n || control >= n) {
        throw IndexError("qubit index out of range for " + std::to_string(n) + " qubits");
    }
    if (control == target) {
        throw ArgumentError("control and target must differ");
    }
    const DenseOperator gate = DenseOperator::from_gate(g);
    const DenseOperator id = DenseOperator::identity(2);
    const DenseOperator p0 = DenseOperator::from_matrix({1.0, 0.0, 0.0, 0.0});
    const DenseOperator p1 = DenseOperator::from_matrix({0.0, 0.0, 0.0, 1.0});
    DenseOperator off = detail::chain(n, [&](unsigned j) { return j == control ? p0 : id; });
    const DenseOperator on = detail::chain(n, [&](unsigned j) {
        if (j == control) {
            return p1;
        }
        return j == target ? gate : id;
    });
    const std::size_t dim = off.dim();
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            off(r, c) += on(r, c);
        }
    }
    return off;
}

inline std::vector<Complex> dense_apply(const DenseOperator &op, std::span<const Complex> v) {
    if (v.size() != op.dim()) {
        throw DimensionError("operator of dimension " + std::to_string(op.dim()) + " applied to vector of length " +
                             std::to_string(v.size()));
    }
    std::vector<Complex> out(v.size());
    for (std::size_t r = 0; r < op.dim(); ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < op.dim(); ++c) {
            acc += op(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

template <class Real>
StateVector<double> dense_apply(const DenseOperator &op, const StateVector<Real> &state) {
    const StateVector<double> wide = convert<double>(state);
    return StateVector<double>::from_amplitudes(dense_apply(op, wide.amplitudes()));
}

/// Column vector of basis state |index> on n qubits.
inline std::vector<Complex> basis_vector(unsigned n, std::uint64_t index) {
    std::vector<Complex> v(std::size_t{1} << n);
    v.at(index) = 1.0;
    return v;
}

}  // namespace qcsim::oracle
