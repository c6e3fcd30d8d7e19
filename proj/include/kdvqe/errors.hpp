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

#include <stdexcept>

namespace kdvqe {

/// Thrown when a shot budget cannot feed every measurement group it must cover.
class insufficient_shots_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a dense-matrix routine is asked for more qubits than the cap.
class unsupported_size_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace kdvqe
