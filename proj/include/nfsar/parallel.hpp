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

#include <cstddef>
#include <functional>

namespace nfsar
{

// Process-wide worker budget. 0 restores the default (hardware concurrency).
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

// Runs body(begin, end) over contiguous chunks of [0, n). Calls made from inside a worker run serially. Chunk boundaries depend on the thread
// count, so bodies must not accumulate across indices; every caller writes disjoint outputs.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)> &body);

} // namespace nfsar
