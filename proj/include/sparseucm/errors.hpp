// Copyright 2026 The sparseucm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sucm {

/// Malformed, truncated, unreadable or unwritable files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (dimension or K mismatch,
/// missing region pair, out-of-range parameter).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace sucm
