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

#include "qcsim/bench.hpp"
#include "qcsim/circuit.hpp"
#include "qcsim/dense_oracle.hpp"
#include "qcsim/errors.hpp"
#include "qcsim/gates.hpp"
#include "qcsim/kernel.hpp"
#include "qcsim/measurement.hpp"
#include "qcsim/state.hpp"
#include "qcsim/verify.hpp"
