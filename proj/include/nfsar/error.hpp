// SPDX-License-Identifier: Apache-2.0
//
// nfsar - near-field freehand MIMO-SAR simulation and reconstruction toolkit
// Copyright (C) 2026 The nfsar Authors
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

namespace nfsar
{

enum class ErrorCode
{
    invalid_argument = 1,
    invalid_state,
    singular_geometry,
    generation_failure,
    io_error,
    corrupt_data,
    numeric_error,
};

const char *to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception; the C API maps `code` onto its status enum.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message)
{
    throw Error(code, message);
}

inline void require(bool condition, const std::string &message)
{
    if (!condition)
        throw Error(ErrorCode::invalid_argument, message);
}

} // namespace nfsar
