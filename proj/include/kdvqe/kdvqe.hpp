// Copyright 2026 The kdvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "kdvqe/allocation.hpp"
#include "kdvqe/ansatz.hpp"
#include "kdvqe/circuit.hpp"
#include "kdvqe/dense.hpp"
#include "kdvqe/engine.hpp"
#include "kdvqe/errors.hpp"
#include "kdvqe/estimator.hpp"
#include "kdvqe/gate.hpp"
#include "kdvqe/hubbard.hpp"
#include "kdvqe/io.hpp"
#include "kdvqe/pauli.hpp"
#include "kdvqe/rng.hpp"
#include "kdvqe/sampling.hpp"
#include "kdvqe/statevector.hpp"
