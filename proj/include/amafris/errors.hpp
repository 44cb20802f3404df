// SPDX-License-Identifier: Apache-2.0
//
// amafris: array-fed RIS multibeam base station simulation library
// Copyright (C) 2026 The amafris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace amafris {

// Base class for all library errors. Precondition violations on plain
// arguments (sizes, negative lengths) use std::invalid_argument instead.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class degenerate_direction_error : public error {
public:
    degenerate_direction_error() : error("degenerate direction") {}
};

class no_intercept_error : public error {
public:
    no_intercept_error() : error("boresight does not intercept the ground") {}
};

class dimension_error : public error {
public:
    using error::error;
};

class convergence_error : public error {
public:
    using error::error;
};

class infeasible_schedule_error : public error {
public:
    using error::error;
};

// Raised while parsing or validating a scenario config (CLI exit code 2).
class config_error : public error {
public:
    using error::error;
};

} // namespace amafris
