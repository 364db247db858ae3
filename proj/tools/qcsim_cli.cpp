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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcsim/qcsim.hpp"

namespace {

using namespace qcsim;

enum ExitCode { kOk = 0, kInvalid = 1, kCapacity = 2, kIo = 3 };

Precision parse_precision(const std::string &p) {
    if (p == "single") {
        return Precision::Single;
    }
    if (p == "double") {
        return Precision::Double;
    }
    throw ArgumentError("precision must be 'single' or 'double', got '" + p + "'");
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path, "cannot open for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError(path, "read failed");
    }
    return buf.str();
}

void print_top_amplitudes(std::ostream &out, std::span<const std::complex<double>> amps, unsigned n,
                          std::size_t limit) {
    std::vector<std::uint64_t> order(amps.size());
    std::iota(order.begin(), order.end(), std::uint64_t{0});
    const std::size_t shown = std::min(limit, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(shown), order.end(),
                      [&](std::uint64_t x, std::uint64_t y) {
                          const double nx = std::norm(amps[x]);
                          const double ny = std::norm(amps[y]);
                          return nx != ny ? nx > ny : x < y;
                      });
    const int hex_width = static_cast<int>((n + 3) / 4);
    out << "# " << n << " qubits, top " << shown << " of " << amps.size() << " amplitudes\n";
    out << "# index binary hex re im probability\n";
    char line[256];
    for (std::size_t k = 0; k < shown; ++k) {
        const std::uint64_t j = order[k];
        std::snprintf(line, sizeof line, " 0x%0*llx %+.9f %+.9f %.9f\n", hex_width,
                      static_cast<unsigned long long>(j), amps[j].real(), amps[j].imag(), std::norm(amps[j]));
        out << j << ' ' << to_binary(j, n) << line;
    }
}

template <class Real>
void print_state(const StateVector<Real> &state, std::size_t limit) {
    const StateVector<double> wide = convert<double>(state);
    print_top_amplitudes(std::cout, wide.amplitudes(), state.num_qubits(), limit);
}

template <class Real>
int run_file(const std::string &file, std::optional<std::uint64_t> shots, std::uint64_t seed, std::size_t limit,
             const std::string &out_path, bool state_only) {
    Circuit c = parse_circuit(read_file(file));
    if (state_only) {
        if (c.shots()) {
            c.instructions.pop_back();
        }
    } else if (shots) {
        if (c.shots()) {
            c.instructions.pop_back();
        }
        c.measure(*shots);
    }
    const RunResult<Real> result = run_circuit<Real>(c, Engine::parallel(), seed);
    if (result.histogram) {
        write_histogram_chart(std::cout, *result.histogram, c.num_qubits);
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                throw IoError(out_path, "cannot open for writing");
            }
            write_histogram_csv(out, *result.histogram);
            if (!out.flush()) {
                throw IoError(out_path, "write failed");
            }
        }
    } else {
        print_state(result.state, limit);
    }
    return kOk;
}

template <class Real>
int run_bv(unsigned n, std::uint64_t a, std::uint64_t shots, std::uint64_t seed) {
    const Circuit c = build_bernstein_vazirani(n, HiddenInteger{a}, shots);
    const RunResult<Real> result = run_circuit<Real>(c, Engine::parallel(), seed);
    const MeasurementHistogram &hist = *result.histogram;
    write_histogram_chart(std::cout, hist, n);
    const auto best = std::ranges::max_element(
        hist.counts, [](const auto &x, const auto &y) { return x.second < y.second; });
    const std::uint64_t decoded = best->first;
    std::string bits = to_binary(decoded, 64);
    bits.erase(0, std::min(bits.find('1'), bits.size() - 1));
    std::cout << "decoded: " << decoded << " (bit-string " << bits << ")\n";
    return kOk;
}

template <class Real>
int run_verify(const VerifyConfig &cfg, bool inject_fault) {
    // Asking for a width the oracle cannot hold is a bad argument, not an allocation failure.
    if (cfg.max_qubits > oracle::max_qubits) {
        throw ArgumentError("oracle cap exceeded: --max-qubits " + std::to_string(cfg.max_qubits) + " > " +
                            std::to_string(oracle::max_qubits));
    }
    const VerifyReport report = inject_fault ? verify_against_oracle<Real>(cfg, sign_fault_applier<Real>())
                                             : verify_against_oracle<Real>(cfg, Engine::parallel());
    std::printf("circuits=%zu steps=%zu max_deviation=%.3e tolerance=%.0e result=%s\n", report.circuits,
                report.steps, report.max_deviation, report.tolerance, report.passed() ? "pass" : "fail");
    if (!report.passed()) {
        std::cerr << "worst circuit:\n" << report.worst_case << '\n';
        return kInvalid;
    }
    return kOk;
}

int report_error(const char *kind, int code, const std::string &message) {
    std::string flat = message;
    std::ranges::replace(flat, '\n', ' ');
    std::cerr << "error: kind=" << kind << " exit=" << code << " message=" << flat << '\n';
    return code;
}

template <class Fn>
int guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const ParseError &e) {
        return report_error("parse", kInvalid, e.what());
    } catch (const ValidationError &e) {
        return report_error("validation", kInvalid, e.what());
    } catch (const CapacityError &e) {
        return report_error("capacity", kCapacity, e.what());
    } catch (const IoError &e) {
        return report_error("io", kIo, e.what());
    } catch (const Error &e) {
        return report_error("argument", kInvalid, e.what());
    } catch (const std::exception &e) {
        return report_error("internal", kInvalid, e.what());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qcsim: state-vector quantum circuit simulator"};
    app.require_subcommand(1);

    std::string precision = "single";
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--precision", precision, "Amplitude precision")
            ->check(CLI::IsMember({"single", "double"}))
            ->capture_default_str();
        cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    };

    std::string file;
    std::optional<std::uint64_t> shots;
    std::size_t limit = 16;
    std::string out_path;

    auto *run = app.add_subcommand("run", "Run a .qc circuit; prints a histogram if it samples, else the state");
    run->add_option("file", file, "Circuit file")->required();
    run->add_option("--shots", shots, "Sample this many shots (overrides the file's measure)")
        ->check(CLI::PositiveNumber);
    run->add_option("--limit", limit, "Amplitudes to print when not sampling")->capture_default_str();
    run->add_option("--out", out_path, "Write the histogram as CSV");
    add_common(run);

    auto *state = app.add_subcommand("state", "Print the largest amplitudes of a circuit's final state");
    state->add_option("file", file, "Circuit file")->required();
    state->add_option("--limit", limit, "Amplitudes to print")->capture_default_str();
    add_common(state);

    unsigned bv_n = 14;
    std::uint64_t bv_a = 101;
    std::uint64_t bv_shots = 1000;
    auto *bv = app.add_subcommand("bv", "Run Bernstein-Vazirani for a hidden integer");
    bv->add_option("-n,--qubits", bv_n, "Register width")->capture_default_str();
    bv->add_option("-a,--hidden", bv_a, "Hidden integer")->capture_default_str();
    bv->add_option("--shots", bv_shots, "Shots")->check(CLI::PositiveNumber)->capture_default_str();
    add_common(bv);

    bench::BenchConfig bench_cfg;
    std::string backends = "parallel,serial";
    std::string plot_path;
    bool no_warmup = false;
    auto *bench_cmd = app.add_subcommand("bench", "Shuffled-trial QFT benchmark");
    bench_cmd->add_option("--max-qubits", bench_cfg.max_qubits, "Largest width")->capture_default_str();
    bench_cmd->add_option("--min-qubits", bench_cfg.min_qubits, "Smallest width")->capture_default_str();
    bench_cmd->add_option("--samples", bench_cfg.samples, "Trials per width")->capture_default_str();
    bench_cmd->add_option("--backends", backends, "Comma-separated: parallel, serial, oracle")->capture_default_str();
    bench_cmd->add_option("--out", out_path, "CSV output (stdout when omitted)");
    bench_cmd->add_option("--plot", plot_path, "gnuplot data file of mean time per width");
    bench_cmd->add_flag("--no-warmup", no_warmup, "Skip the untimed warm-up trial");
    add_common(bench_cmd);

    VerifyConfig verify_cfg;
    bool inject_fault = false;
    auto *verify = app.add_subcommand("verify", "Compare the engine step-wise against the dense oracle");
    verify->add_option("--max-qubits", verify_cfg.max_qubits, "Largest random width")->capture_default_str();
    verify->add_option("--min-qubits", verify_cfg.min_qubits, "Smallest random width")->capture_default_str();
    verify->add_option("--trials", verify_cfg.trials, "Random circuits")->capture_default_str();
    verify->add_option("--depth", verify_cfg.max_depth, "Maximum circuit depth")->capture_default_str();
    verify->add_flag("--inject-fault", inject_fault, "Use a kernel with a sign bug in the c entry");
    add_common(verify);

    unsigned mem_qubits = 1;
    auto *memory = app.add_subcommand("memory", "Print the memory a register needs");
    memory->add_option("qubits", mem_qubits, "Register width")->required();
    add_common(memory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInvalid;
    }

    return guarded([&]() -> int {
        const Precision p = parse_precision(precision);
        if (*run || *state) {
            const bool state_only = static_cast<bool>(*state);
            return p == Precision::Single ? run_file<float>(file, shots, seed, limit, out_path, state_only)
                                          : run_file<double>(file, shots, seed, limit, out_path, state_only);
        }
        if (*bv) {
            return p == Precision::Single ? run_bv<float>(bv_n, bv_a, bv_shots, seed)
                                          : run_bv<double>(bv_n, bv_a, bv_shots, seed);
        }
        if (*verify) {
            verify_cfg.seed = seed;
            return p == Precision::Single ? run_verify<float>(verify_cfg, inject_fault)
                                          : run_verify<double>(verify_cfg, inject_fault);
        }
        if (*memory) {
            const std::uint64_t bits = memory_required(mem_qubits, p);
            std::cout << mem_qubits << " qubits (" << to_string(p) << "): " << bits << " bits = " << bits / 8
                      << " bytes = " << format_bytes(bits / 8) << '\n';
            return kOk;
        }

        bench_cfg.seed = seed;
        bench_cfg.warmup = !no_warmup;
        const auto available = bench::default_backends(p, true);
        std::stringstream names(backends);
        std::string name;
        while (std::getline(names, name, ',')) {
            const auto it = std::ranges::find(available, name, &bench::Backend::label);
            if (it == available.end()) {
                throw ArgumentError("unknown back-end '" + name + "'");
            }
            bench_cfg.backends.push_back(*it);
        }
        const bench::BenchResult result = bench::run_benchmark(bench_cfg);
        for (const std::string &w : result.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        if (out_path.empty()) {
            bench::write_csv(std::cout, result.records);
        } else {
            bench::write_csv(out_path, result.records);
        }
        if (!plot_path.empty()) {
            std::ofstream plot(plot_path, std::ios::binary);
            if (!plot) {
                throw IoError(plot_path, "cannot open for writing");
            }
            bench::write_plot_data(plot, bench::summarize(result.records));
        }
        return kOk;
    });
}
