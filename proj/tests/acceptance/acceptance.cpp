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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qcsim/qcsim.hpp"

using namespace qcsim;

namespace {

struct Check {
    bool ok;
    std::string detail;
};

int failures = 0;

// A positive `max_seconds` also fails the criterion when it runs longer.
void report(int id, const char *title, const std::function<Check()> &body, double max_seconds = 0.0) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
        c = body();
    } catch (const std::exception &e) {
        c = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (max_seconds > 0.0 && secs >= max_seconds) {
        c.ok = false;
        c.detail += " [over the " + std::to_string(static_cast<int>(max_seconds)) + "s budget]";
    }
    std::printf("[%s] AC%d %s: %s (%.2fs)\n", c.ok ? "PASS" : "FAIL", id, title, c.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !c.ok;
}

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Check oracle_equivalence() {
    VerifyConfig cfg;
    cfg.min_qubits = 1;
    cfg.max_qubits = 10;
    cfg.trials = 500;
    cfg.max_depth = 40;
    cfg.seed = 20180;
    const VerifyReport d = verify_against_oracle<double>(cfg);
    const VerifyReport s = verify_against_oracle<float>(cfg);
    const bool ok = d.passed() && s.passed() && d.max_deviation < 1e-10 && s.max_deviation < 1e-4;
    return {ok, fmt("%zu circuits, %zu steps; double max dev %.3e (< 1e-10), single max dev %.3e (< 1e-4)",
                    d.circuits, d.steps, d.max_deviation, s.max_deviation)};
}

Check pair_partition() {
    std::size_t cases = 0;
    for (unsigned n = 1; n <= 12; ++n) {
        for (unsigned t = 0; t < n; ++t) {
            std::vector<unsigned char> hit(std::size_t{1} << n, 0);
            const KernelPlan plan = KernelPlan::make(n, t);
            for (std::uint64_t i = 0; i < plan.num_work_items; ++i) {
                const PairIndex p = pair_index(i, t);
                if (p.one_state >= hit.size() || p.one_state != (p.zero_state | (std::uint64_t{1} << t))) {
                    return {false, fmt("bad pair at n=%u t=%u i=%llu", n, t, static_cast<unsigned long long>(i))};
                }
                ++hit[p.zero_state];
                ++hit[p.one_state];
            }
            for (unsigned char h : hit) {
                if (h != 1) {
                    return {false, fmt("n=%u t=%u does not partition the register", n, t)};
                }
            }
            ++cases;
        }
    }
    return {true, fmt("%zu (n, target) cases partition [0, 2^n) exactly", cases)};
}

Check memory_table() {
    struct Row {
        unsigned n;
        std::uint64_t bytes;
        const char *display;
    };
    const Row rows[] = {{5, 256, "256 bytes"},
                        {10, 8192, "8.192 kB"},
                        {20, 8388608, "8.389 MB"},
                        {25, 268435456, "268.4 MB"},
                        {30, 8589934592, "8.59 GB"}};
    std::string detail;
    bool ok = true;
    for (const Row &r : rows) {
        const std::uint64_t bits = memory_required(r.n, Precision::Single);
        const std::string shown = format_bytes(bits / 8);
        ok &= bits == r.bytes * 8 && shown == r.display;
        detail += fmt("%s%u->%s", detail.empty() ? "" : ", ", r.n, shown.c_str());
    }
    return {ok, detail};
}

Check bernstein_vazirani() {
    const auto big = run_circuit<float>(build_bernstein_vazirani(14, HiddenInteger{101}, 1000), {}, 1);
    const std::uint64_t hits = big.histogram->count(101);
    bool sweep_ok = true;
    for (std::uint64_t a = 0; a < 256; ++a) {
        const auto r = run_circuit<float>(build_bernstein_vazirani(8, HiddenInteger{a}, 100), {}, a);
        sweep_ok &= r.histogram->count(a) == 100;
    }
    return {hits == 1000 && sweep_ok,
            fmt("n=14 a=101: %llu/1000 samples on 101; n=8 sweep over 256 hidden integers %s",
                static_cast<unsigned long long>(hits), sweep_ok ? "exact" : "FAILED")};
}

oracle::DenseOperator dft_after_bit_reversal(unsigned n) {
    const std::size_t dim = std::size_t{1} << n;
    auto reverse = [n](std::size_t x) {
        std::size_t r = 0;
        for (unsigned b = 0; b < n; ++b) {
            r |= ((x >> b) & 1U) << (n - 1 - b);
        }
        return r;
    };
    std::vector<Complex> e(dim * dim);
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((row * reverse(col)) % dim) / dim;
            e[row * dim + col] = std::polar(1.0 / std::sqrt(static_cast<double>(dim)), angle);
        }
    }
    return oracle::DenseOperator(dim, std::move(e));
}

Check qft_correctness() {
    double op_dev = 0.0;
    double uniform_dev = 0.0;
    for (unsigned n = 1; n <= 6; ++n) {
        op_dev = std::max(op_dev, oracle::max_deviation(oracle::circuit_operator(build_qft(n)),
                                                        dft_after_bit_reversal(n)));
        const auto state = run_circuit<double>(build_qft(n)).state;
        const double expected = std::pow(2.0, -0.5 * n);
        for (const auto &a : state.amplitudes()) {
            uniform_dev = std::max(uniform_dev, std::abs(a - Complex(expected)));
        }
    }
    return {op_dev < 1e-8 && uniform_dev < 1e-8,
            fmt("n<=6 operator dev %.3e (< 1e-8), |0..0> uniform dev %.3e", op_dev, uniform_dev)};
}

Check normalization_drift() {
    Rng rng(6);
    auto s = random_state<float>(10, rng);
    for (int k = 0; k < 10000; ++k) {
        const Gate g = random_gate(rng);
        const auto t = static_cast<unsigned>(rng.next_below(10));
        if (rng.next_below(2)) {
            auto c = static_cast<unsigned>(rng.next_below(9));
            c += c >= t;
            apply_controlled_gate(s, c, t, g);
        } else {
            apply_gate(s, t, g);
        }
    }
    const double drift = std::abs(norm_squared(s) - 1.0);
    return {drift < 1e-3, fmt("|norm^2 - 1| = %.3e after 10000 gates (< 1e-3)", drift)};
}

Check sampling_statistics() {
    Rng rng(7);
    const auto s = random_state<double>(4, rng);
    const auto p = probabilities(s);
    constexpr std::uint64_t shots = 1'000'000;
    const auto hist = sample(s, shots, 77);
    double tv = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        tv += std::abs(static_cast<double>(hist.count(j)) / shots - p[j]);
    }
    tv /= 2;
    return {tv < 0.005, fmt("total variation %.5f over 10^6 draws (< 0.005)", tv)};
}

struct WelchFixture {
    std::vector<double> xs;
    std::vector<double> ys;
    double t;
    double p;
    double df;
};

Check welch_reference() {
    const std::vector<WelchFixture> fixtures{
#include "fixtures/welch_fixtures.inc"
    };
    double worst = 0.0;
    for (const auto &f : fixtures) {
        const auto r = bench::welch_t_test(f.xs, f.ys);
        worst = std::max({worst, std::abs(r.t - f.t), std::abs(r.p - f.p), std::abs(r.df - f.df)});
    }
    return {fixtures.size() == 20 && worst < 1e-6,
            fmt("%zu fixture pairs, worst |t|,|p|,|df| error %.3e (< 1e-6)", fixtures.size(), worst)};
}

// Timings from a wall clock never repeat exactly, so byte identity is checked with
// the harness clock replaced by a virtual one that advances per reading. The real
// clock run must still reproduce every label and width.
Check bench_determinism() {
    bench::BenchConfig cfg;
    cfg.max_qubits = 10;
    cfg.samples = 20;
    cfg.seed = 42;
    cfg.backends = bench::default_backends(Precision::Single);
    auto virtual_clock = [] { return [t = 0.0]() mutable { return t += 0.001; }; };
    const std::string a = bench::to_csv(bench::run_benchmark(cfg, virtual_clock()).records);
    const std::string b = bench::to_csv(bench::run_benchmark(cfg, virtual_clock()).records);

    auto keys = [](const std::vector<bench::BenchRecord> &records) {
        std::vector<std::pair<std::string, unsigned>> out;
        for (const auto &r : records) {
            out.emplace_back(r.simulator, r.qubits);
        }
        return out;
    };
    const auto real_a = bench::run_benchmark(cfg).records;
    const auto real_b = bench::run_benchmark(cfg).records;
    const bool keys_match = keys(real_a) == keys(real_b) && real_a.size() == 200;
    return {a == b && a.size() > 0 && keys_match,
            fmt("virtual-clock CSV %zu bytes %s; real-clock simulator/qubits columns %s (%zu records)", a.size(),
                a == b ? "identical" : "DIFFER", keys_match ? "identical" : "DIFFER", real_a.size())};
}

// Median seconds per width for one back-end; a preempted trial on a shared machine
// moves the mean far more than the median.
std::map<unsigned, double> median_seconds(const std::vector<bench::BenchRecord> &records, const std::string &label) {
    std::map<unsigned, std::vector<double>> by_width;
    for (const auto &r : records) {
        if (r.simulator == label) {
            by_width[r.qubits].push_back(r.seconds);
        }
    }
    std::map<unsigned, double> out;
    for (auto &[width, xs] : by_width) {
        std::sort(xs.begin(), xs.end());
        const std::size_t m = xs.size() / 2;
        out[width] = xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
    }
    return out;
}

Check scaling() {
    bench::BenchConfig cfg;
    cfg.min_qubits = 18;
    cfg.max_qubits = 21;
    cfg.samples = 30;
    cfg.seed = 10;
    cfg.backends = bench::default_backends(Precision::Single);
    const auto result = bench::run_benchmark(cfg);
    std::string detail;
    bool ok = result.warnings.empty();
    std::map<std::string, std::map<unsigned, double>> medians;
    for (const char *label : {"parallel", "serial"}) {
        medians[label] = median_seconds(result.records, label);
        const auto &m = medians[label];
        detail += fmt("%s%s growth", detail.empty() ? "" : "; ", label);
        for (unsigned n = cfg.min_qubits; n < cfg.max_qubits; ++n) {
            const bool have = m.count(n) && m.count(n + 1) && m.at(n) > 0.0;
            const double f = have ? m.at(n + 1) / m.at(n) : 0.0;
            ok &= have && f >= 1.5 && f <= 3.0;
            detail += fmt(" %.2f", f);
        }
    }
    for (unsigned n = 20; n <= cfg.max_qubits; ++n) {
        const double par = medians["parallel"].count(n) ? medians["parallel"][n] : 0.0;
        const double ser = medians["serial"].count(n) ? medians["serial"][n] : 0.0;
        ok &= par > 0.0 && ser > 0.0 && par <= ser;
        detail += fmt("; n=%u median parallel %.3fs vs serial %.3fs", n, par, ser);
    }
    return {ok, detail};
}

}  // namespace

int main() {
    report(1, "oracle equivalence", oracle_equivalence, 120.0);
    report(2, "pair partition", pair_partition, 10.0);
    report(3, "memory formula", memory_table);
    report(4, "Bernstein-Vazirani", bernstein_vazirani, 10.0);
    report(5, "QFT correctness", qft_correctness);
    report(6, "normalization drift", normalization_drift);
    report(7, "sampling statistics", sampling_statistics);
    report(8, "Welch t-test reference", welch_reference);
    report(9, "benchmark determinism", bench_determinism);
    report(10, "scaling", scaling);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
