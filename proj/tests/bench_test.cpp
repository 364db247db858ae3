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

#include "qcsim/bench.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"

using namespace qcsim;
using namespace qcsim::bench;

namespace {

struct WelchFixture {
    std::vector<double> xs;
    std::vector<double> ys;
    double t;
    double p;
    double df;
};

// Reference values computed with scipy.stats.ttest_ind(equal_var=False) by
// fixtures/gen_welch_fixtures.py.
const std::vector<WelchFixture> &welch_fixtures() {
    static const std::vector<WelchFixture> fixtures{
#include "fixtures/welch_fixtures.inc"
    };
    return fixtures;
}

// Advances a fixed step per reading, so timings are a pure function of call order.
Clock step_clock(double step) {
    return [t = 0.0, step]() mutable { return t += step; };
}

bench::Backend noop(const std::string &label, std::vector<unsigned> *widths = nullptr) {
    return {label, [widths](unsigned n) {
                if (widths) {
                    widths->push_back(n);
                }
            }};
}

}  // namespace

TEST(bench, single_backend) {
    BenchConfig cfg;
    cfg.max_qubits = 1;
    cfg.samples = 3;
    cfg.backends = {noop("engine")};
    const auto result = run_benchmark(cfg);
    ASSERT_EQ(result.records.size(), 3u);
    for (const auto &r : result.records) {
        EXPECT_EQ(r.simulator, "engine");
        EXPECT_EQ(r.qubits, 1u);
        EXPECT_GE(r.seconds, 0.0);
    }
}

TEST(bench, records_follow_seeded_choice_log) {
    BenchConfig cfg;
    cfg.max_qubits = 4;
    cfg.samples = 10;
    cfg.seed = 77;
    cfg.backends = {noop("a"), noop("b")};
    const auto first = run_benchmark(cfg, step_clock(0.25));
    const auto second = run_benchmark(cfg, step_clock(0.25));
    ASSERT_EQ(first.records.size(), 40u);
    EXPECT_EQ(first.records, second.records);
    EXPECT_EQ(first.choices, second.choices);

    Rng replay(77);
    for (std::size_t k = 0; k < first.records.size(); ++k) {
        const std::size_t expected = replay.next_below(2);
        EXPECT_EQ(first.choices[k], expected);
        EXPECT_EQ(first.records[k].simulator, cfg.backends[expected].label);
        EXPECT_EQ(first.records[k].qubits, 1 + k / 10);
    }

    cfg.seed = 78;
    EXPECT_NE(run_benchmark(cfg).choices, first.choices);
}

TEST(bench, warmup_runs_each_backend_once_per_width) {
    std::vector<unsigned> widths_a;
    std::vector<unsigned> widths_b;
    BenchConfig cfg;
    cfg.min_qubits = 2;
    cfg.max_qubits = 3;
    cfg.samples = 5;
    cfg.backends = {noop("a", &widths_a), noop("b", &widths_b)};
    const auto result = run_benchmark(cfg);
    std::size_t total_a = 0;
    for (std::size_t choice : result.choices) {
        total_a += choice == 0;
    }
    EXPECT_EQ(widths_a.size(), total_a + 2);
    EXPECT_EQ(widths_b.size(), result.choices.size() - total_a + 2);
    EXPECT_EQ(widths_a.front(), 2u);

    cfg.warmup = false;
    widths_a.clear();
    widths_b.clear();
    run_benchmark(cfg);
    EXPECT_EQ(widths_a.size() + widths_b.size(), 10u);
}

TEST(bench, failing_trials_are_missing_not_zero) {
    BenchConfig cfg;
    cfg.max_qubits = 3;
    cfg.samples = 6;
    cfg.seed = 5;
    cfg.warmup = false;
    cfg.backends = {noop("ok"), {"broken", [](unsigned n) {
                                     if (n >= 2) {
                                         throw CapacityError("too wide");
                                     }
                                 }}};
    const auto result = run_benchmark(cfg);
    std::size_t broken_wide = 0;
    for (std::size_t k = 0; k < result.choices.size(); ++k) {
        broken_wide += result.choices[k] == 1 && k >= 6;
    }
    EXPECT_EQ(result.records.size(), 18 - broken_wide);
    EXPECT_EQ(result.warnings.size(), broken_wide);
    for (const auto &r : result.records) {
        EXPECT_FALSE(r.simulator == "broken" && r.qubits >= 2);
    }
}

TEST(bench, rejects_bad_config) {
    BenchConfig cfg;
    EXPECT_THROW(run_benchmark(cfg), ArgumentError);
    cfg.backends = {noop("a")};
    cfg.samples = 0;
    EXPECT_THROW(run_benchmark(cfg), ArgumentError);
}

TEST(bench, interleaving_is_balanced) {
    BenchConfig cfg;
    cfg.max_qubits = 3;
    cfg.samples = 400;
    cfg.seed = 2018;
    cfg.warmup = false;
    cfg.backends = {noop("a"), noop("b"), noop("c")};
    const auto result = run_benchmark(cfg);
    const double expected = 400.0 / 3;
    const double sigma = std::sqrt(400.0 * (1.0 / 3) * (2.0 / 3));
    for (unsigned w = 0; w < 3; ++w) {
        std::array<int, 3> counts{};
        for (std::size_t k = w * 400; k < (w + 1) * 400; ++k) {
            ++counts[result.choices[k]];
        }
        for (int c : counts) {
            EXPECT_LT(std::abs(c - expected), 5 * sigma);
        }
    }
}

TEST(bench, engine_backends_run_qft) {
    BenchConfig cfg;
    cfg.max_qubits = 5;
    cfg.samples = 4;
    cfg.backends = default_backends(Precision::Single, true);
    const auto result = run_benchmark(cfg);
    EXPECT_EQ(result.records.size(), 20u);
    EXPECT_TRUE(result.warnings.empty());
}

TEST(bench, csv_format) {
    const std::vector<BenchRecord> one{{"engine", 3, 0.5}};
    EXPECT_EQ(to_csv(one), "simulator,qubits,seconds\nengine,3,0.500000\n");
    EXPECT_EQ(to_csv({}), "simulator,qubits,seconds\n");
    const std::vector<BenchRecord> bad{{"a,b", 1, 0.0}};
    EXPECT_THROW(to_csv(bad), ArgumentError);
}

TEST(bench, csv_round_trip) {
    Rng rng(10);
    std::vector<BenchRecord> records;
    for (int k = 0; k < 200; ++k) {
        // Values on the 6-decimal grid survive formatting exactly.
        const double seconds = static_cast<double>(rng.next_below(50'000'000)) / 1e6;
        records.push_back({k % 2 ? "parallel" : "serial", static_cast<unsigned>(1 + rng.next_below(24)), seconds});
    }
    std::istringstream in(to_csv(records));
    EXPECT_EQ(read_csv(in), records);

    const auto path = (std::filesystem::temp_directory_path() / "qcsim_bench_test.csv").string();
    write_csv(path, records);
    EXPECT_EQ(read_csv(path), records);
    std::filesystem::remove(path);

    EXPECT_THROW(read_csv("/nonexistent/dir/x.csv"), IoError);
    EXPECT_THROW(write_csv(std::string("/nonexistent/dir/x.csv"), records), IoError);
    std::istringstream bad("simulator,qubits,seconds\nx,abc,1.0\n");
    EXPECT_THROW(read_csv(bad), ArgumentError);
}

TEST(bench, summarize) {
    const std::vector<BenchRecord> pair{{"a", 1, 0.4}, {"a", 1, 0.6}};
    const auto rows = summarize(pair);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_DOUBLE_EQ(rows[0].mean, 0.5);
    EXPECT_NEAR(rows[0].stddev, std::sqrt(0.02), 1e-15);

    EXPECT_TRUE(summarize({}).empty());

    std::vector<BenchRecord> grid;
    for (const char *label : {"x", "y"}) {
        for (unsigned w = 1; w <= 3; ++w) {
            grid.push_back({label, w, 1.0 * w});
        }
    }
    const auto six = summarize(grid);
    EXPECT_EQ(six.size(), 6u);
    EXPECT_EQ(six[3].simulator, "y");
    EXPECT_EQ(six[3].count, 1u);
    EXPECT_EQ(six[3].stddev, 0.0);
    EXPECT_EQ(growth_factors(six, "x"), (std::vector<double>{2.0, 1.5}));
}

TEST(bench, plot_data) {
    const std::vector<SummaryRow> rows{{"a", 1, 2, 0.5, 0.1}, {"a", 2, 2, 1.0, 0.2}, {"b", 1, 1, 0.25, 0.0}};
    std::ostringstream out;
    write_plot_data(out, rows);
    EXPECT_EQ(out.str(),
              "# simulator: a\n# qubits mean_seconds stddev_seconds\n"
              "1 0.500000000 0.100000000\n2 1.000000000 0.200000000\n\n\n"
              "# simulator: b\n# qubits mean_seconds stddev_seconds\n1 0.250000000 0.000000000\n");
}

TEST(welch, identical_samples) {
    const std::vector<double> xs{1.0, 2.5, 3.0, 7.0};
    const auto r = welch_t_test(xs, xs);
    EXPECT_EQ(r.t, 0.0);
    EXPECT_EQ(r.p, 1.0);
}

TEST(welch, matches_reference_fixtures) {
    ASSERT_EQ(welch_fixtures().size(), 20u);
    for (const auto &f : welch_fixtures()) {
        const auto r = welch_t_test(f.xs, f.ys);
        EXPECT_NEAR(r.t, f.t, 1e-6);
        EXPECT_NEAR(r.p, f.p, 1e-6);
        EXPECT_NEAR(r.df, f.df, 1e-6);
    }
    const auto &first = welch_fixtures().front();
    EXPECT_EQ(first.xs, (std::vector<double>{1, 2, 3, 4, 5}));
    EXPECT_EQ(first.ys, (std::vector<double>{2, 3, 4, 5, 6}));
}

TEST(welch, antisymmetric_in_t) {
    for (const auto &f : welch_fixtures()) {
        const auto xy = welch_t_test(f.xs, f.ys);
        const auto yx = welch_t_test(f.ys, f.xs);
        EXPECT_DOUBLE_EQ(xy.t, -yx.t);
        EXPECT_DOUBLE_EQ(xy.p, yx.p);
    }
}

TEST(welch, widely_separated_means) {
    Rng rng(20);
    std::vector<double> xs;
    std::vector<double> ys;
    for (int k = 0; k < 20; ++k) {
        xs.push_back(10.0 + 0.5 * rng.next_normal());
        ys.push_back(1000.0 + 0.5 * rng.next_normal());
    }
    EXPECT_LT(welch_t_test(xs, ys).p, 1e-6);
}

TEST(welch, insufficient_data) {
    const std::vector<double> one{1.0};
    const std::vector<double> flat{2.0, 2.0, 2.0};
    const std::vector<double> ok{1.0, 2.0, 3.0};
    EXPECT_THROW(welch_t_test(one, ok), InsufficientDataError);
    EXPECT_THROW(welch_t_test(ok, flat), InsufficientDataError);
}
