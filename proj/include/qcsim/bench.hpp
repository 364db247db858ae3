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

// Shuffled-trial timing of QFT circuits across simulator back-ends, CSV
// persistence of the timings, and Welch's unequal-variance t-test.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "qcsim/circuit.hpp"
#include "qcsim/dense_oracle.hpp"
#include "qcsim/errors.hpp"
#include "qcsim/kernel.hpp"
#include "qcsim/measurement.hpp"
#include "qcsim/state.hpp"
#include "qcsim/verify.hpp"

namespace qcsim::bench {

struct BenchRecord {
    std::string simulator;
    unsigned qubits;
    double seconds;

    bool operator==(const BenchRecord &) const = default;
};

/// Executes one complete QFT of the given width, including state construction
/// and the completion barrier.
using Runner = std::function<void(unsigned num_qubits)>;

struct Backend {
    std::string label;
    Runner run;
};

/// Seconds on a monotonic clock.
using Clock = std::function<double()>;

inline double steady_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

struct BenchConfig {
    unsigned min_qubits = 1;
    unsigned max_qubits = 10;
    unsigned samples = 10;
    std::uint64_t seed = 0;
    bool warmup = true;
    std::vector<Backend> backends;
};

struct BenchResult {
    std::vector<BenchRecord> records;
    std::vector<std::size_t> choices;  // back-end drawn for each trial, in execution order
    std::vector<std::string> warnings;
};

template <class Real>
Runner engine_runner(Engine engine) {
    return [engine](unsigned n) { run_circuit<Real>(build_qft(n), engine); };
}

inline Runner oracle_runner() {
    return [](unsigned n) { oracle::run(build_qft(n), oracle::basis_vector(n, 0)); };
}

/// The artifact's own back-ends: "parallel", "serial" and optionally "oracle".
inline std::vector<Backend> default_backends(Precision precision, bool include_oracle = false) {
    std::vector<Backend> out;
    if (precision == Precision::Single) {
        out.push_back({"parallel", engine_runner<float>(Engine::parallel())});
        out.push_back({"serial", engine_runner<float>(Engine::serial())});
    } else {
        out.push_back({"parallel", engine_runner<double>(Engine::parallel())});
        out.push_back({"serial", engine_runner<double>(Engine::serial())});
    }
    if (include_oracle) {
        out.push_back({"oracle", oracle_runner()});
    }
    return out;
}

/// For every width and every sample, draws a back-end uniformly at random and times
/// one QFT on it. A failing trial is logged as a warning and produces no record.
inline BenchResult run_benchmark(const BenchConfig &cfg, const Clock &clock = steady_seconds) {
    if (cfg.backends.empty()) {
        throw ArgumentError("benchmark needs at least one back-end");
    }
    if (cfg.samples < 1) {
        throw ArgumentError("benchmark needs at least one sample per width");
    }
    if (cfg.min_qubits < 1 || cfg.min_qubits > cfg.max_qubits) {
        throw ArgumentError("benchmark needs 1 <= min_qubits <= max_qubits");
    }
    BenchResult result;
    Rng rng(cfg.seed);
    for (unsigned width = cfg.min_qubits; width <= cfg.max_qubits; ++width) {
        if (cfg.warmup) {
            for (const Backend &b : cfg.backends) {
                try {
                    b.run(width);
                } catch (const std::exception &e) {
                    result.warnings.push_back("warm-up " + b.label + " at " + std::to_string(width) +
                                              " qubits failed: " + e.what());
                }
            }
        }
        for (unsigned s = 0; s < cfg.samples; ++s) {
            const std::size_t choice = rng.next_below(cfg.backends.size());
            result.choices.push_back(choice);
            const Backend &b = cfg.backends[choice];
            const double start = clock();
            try {
                b.run(width);
            } catch (const std::exception &e) {
                result.warnings.push_back("trial " + b.label + " at " + std::to_string(width) +
                                          " qubits failed: " + e.what());
                continue;
            }
            const double stop = clock();
            result.records.push_back({b.label, width, std::max(0.0, stop - start)});
        }
    }
    return result;
}

// --- CSV -------------------------------------------------------------------

inline void write_csv(std::ostream &out, std::span<const BenchRecord> records) {
    out << "simulator,qubits,seconds\n";
    char seconds[64];
    for (const BenchRecord &r : records) {
        if (r.simulator.find_first_of(",\n\r\"") != std::string::npos) {
            throw ArgumentError("simulator label '" + r.simulator + "' cannot be written to CSV");
        }
        std::snprintf(seconds, sizeof seconds, "%.6f", r.seconds);
        out << r.simulator << ',' << r.qubits << ',' << seconds << '\n';
    }
}

inline std::string to_csv(std::span<const BenchRecord> records) {
    std::ostringstream out;
    write_csv(out, records);
    return out.str();
}

inline void write_csv(const std::string &path, std::span<const BenchRecord> records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(path, "cannot open for writing");
    }
    write_csv(out, records);
    out.flush();
    if (!out) {
        throw IoError(path, "write failed");
    }
}

inline std::vector<BenchRecord> read_csv(std::istream &in) {
    std::vector<BenchRecord> records;
    std::string line;
    if (!std::getline(in, line) || line != "simulator,qubits,seconds") {
        throw ArgumentError("missing 'simulator,qubits,seconds' header");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            throw ArgumentError("CSV line " + std::to_string(line_no) + ": expected 3 fields");
        }
        BenchRecord r;
        r.simulator = line.substr(0, c1);
        try {
            std::size_t used = 0;
            const std::string qubits = line.substr(c1 + 1, c2 - c1 - 1);
            const unsigned long q = std::stoul(qubits, &used);
            if (used != qubits.size()) {
                throw std::invalid_argument(qubits);
            }
            r.qubits = static_cast<unsigned>(q);
            const std::string seconds = line.substr(c2 + 1);
            r.seconds = std::stod(seconds, &used);
            if (used != seconds.size()) {
                throw std::invalid_argument(seconds);
            }
        } catch (const std::logic_error &) {
            throw ArgumentError("CSV line " + std::to_string(line_no) + ": malformed number");
        }
        records.push_back(std::move(r));
    }
    return records;
}

inline std::vector<BenchRecord> read_csv(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path, "cannot open for reading");
    }
    return read_csv(in);
}

// --- statistics ------------------------------------------------------------

struct SummaryRow {
    std::string simulator;
    unsigned qubits;
    std::size_t count;
    double mean;
    double stddev;  // sample standard deviation; 0 for a single record
};

/// Mean and spread of the timings per (simulator, qubits), ordered by both keys.
inline std::vector<SummaryRow> summarize(std::span<const BenchRecord> records) {
    std::map<std::pair<std::string, unsigned>, std::vector<double>> groups;
    for (const BenchRecord &r : records) {
        groups[{r.simulator, r.qubits}].push_back(r.seconds);
    }
    std::vector<SummaryRow> rows;
    for (const auto &[key, xs] : groups) {
        double mean = 0.0;
        for (double x : xs) {
            mean += x;
        }
        mean /= static_cast<double>(xs.size());
        double ss = 0.0;
        for (double x : xs) {
            ss += (x - mean) * (x - mean);
        }
        const double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
        rows.push_back({key.first, key.second, xs.size(), mean, sd});
    }
    return rows;
}

/// Ratios mean(w+1)/mean(w) over consecutive widths recorded for `simulator`.
inline std::vector<double> growth_factors(std::span<const SummaryRow> summary, const std::string &simulator) {
    std::vector<double> factors;
    const SummaryRow *prev = nullptr;
    for (const SummaryRow &row : summary) {
        if (row.simulator != simulator) {
            continue;
        }
        if (prev && row.qubits == prev->qubits + 1 && prev->mean > 0.0) {
            factors.push_back(row.mean / prev->mean);
        }
        prev = &row;
    }
    return factors;
}

/// gnuplot data: one indexed block per simulator with columns qubits, mean, stddev.
inline void write_plot_data(std::ostream &out, std::span<const SummaryRow> summary) {
    std::string current;
    bool first = true;
    char line[128];
    for (const SummaryRow &row : summary) {
        if (first || row.simulator != current) {
            if (!first) {
                out << "\n\n";
            }
            out << "# simulator: " << row.simulator << "\n# qubits mean_seconds stddev_seconds\n";
            current = row.simulator;
            first = false;
        }
        std::snprintf(line, sizeof line, "%u %.9f %.9f\n", row.qubits, row.mean, row.stddev);
        out << line;
    }
}

struct WelchResult {
    double t;
    double df;  // Welch-Satterthwaite degrees of freedom
    double p;   // two-sided
};

/// Two-sample t-test without the equal-variance assumption.
inline WelchResult welch_t_test(std::span<const double> xs, std::span<const double> ys) {
    auto moments = [](std::span<const double> v, const char *name) {
        if (v.size() < 2) {
            throw InsufficientDataError(std::string(name) + " needs at least 2 values, got " +
                                        std::to_string(v.size()));
        }
        double mean = 0.0;
        for (double x : v) {
            mean += x;
        }
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) {
            ss += (x - mean) * (x - mean);
        }
        const double var = ss / static_cast<double>(v.size() - 1);
        if (!(var > 0.0) || !std::isfinite(var)) {
            throw InsufficientDataError(std::string(name) + " has zero or non-finite variance");
        }
        return std::pair{mean, var};
    };
    const auto [mx, vx] = moments(xs, "first sample");
    const auto [my, vy] = moments(ys, "second sample");
    const double nx = static_cast<double>(xs.size());
    const double ny = static_cast<double>(ys.size());
    const double sx = vx / nx;
    const double sy = vy / ny;
    const double t = (mx - my) / std::sqrt(sx + sy);
    const double df = (sx + sy) * (sx + sy) / (sx * sx / (nx - 1) + sy * sy / (ny - 1));
    const boost::math::students_t_distribution<double> dist(df);
    const double p = std::min(1.0, 2.0 * boost::math::cdf(dist, -std::abs(t)));
    return {t, df, p};
}

}  // namespace qcsim::bench
