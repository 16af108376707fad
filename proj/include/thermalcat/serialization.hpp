// Copyright 2026 The thermalcat Authors
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

#include <string>
#include <string_view>

#include "thermalcat/kernel_core.hpp"

namespace thermalcat {

inline constexpr int kStateFormatVersion = 1;

/// {"version", "modes", "kernels": [{weight, sources, ket, bra, ...}]}; complex numbers as [re, im].
std::string state_to_json(const PhaseSpaceState &state);
PhaseSpaceState state_from_json(std::string_view text);

}  // namespace thermalcat
