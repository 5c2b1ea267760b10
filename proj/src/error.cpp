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

#include "nfsar/error.hpp"

namespace nfsar
{

const char *to_string(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::invalid_argument:
        return "invalid-argument";
    case ErrorCode::invalid_state:
        return "invalid-state";
    case ErrorCode::singular_geometry:
        return "singular-geometry";
    case ErrorCode::generation_failure:
        return "generation-failure";
    case ErrorCode::io_error:
        return "io-error";
    case ErrorCode::corrupt_data:
        return "corrupt-data";
    case ErrorCode::numeric_error:
        return "numeric-error";
    }
    return "unknown";
}

} // namespace nfsar
