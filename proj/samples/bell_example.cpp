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

// Builds a Bell pair in code, prints its amplitudes and a sampled histogram.

#include <iostream>

#include "qcsim/qcsim.hpp"

int main() {
    using namespace qcsim;

    Circuit bell;
    bell.num_qubits = 2;
    bell.apply(std_gate(StdGate::H), 0).controlled(std_gate(StdGate::X), 0, 1).measure(1000);

    const RunResult<double> result = run_circuit<double>(bell, Engine::parallel(), /*seed=*/7);
    for (std::uint64_t j = 0; j < result.state.size(); ++j) {
        std::cout << to_binary(j, 2) << "  " << amplitude_of(result.state, j) << '\n';
    }
    write_histogram_chart(std::cout, *result.histogram, 2);
    return 0;
}
