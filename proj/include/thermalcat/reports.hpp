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
#include <vector>

namespace thermalcat {

const char *library_version();

/// Angles as numbers or symbolic fractions of pi: "pi", "-pi/2", "3pi/4", "2*pi/3", "0.25".
double parse_angle(std::string_view text);

/// Subcommand names accepted by run_report.
const std::vector<std::string> &report_commands();

/// Runs one subcommand on a JSON object of parameters and returns the report document:
/// {"command", "version", "parameters" (resolved echo), "columns", "rows", "summary"}.
/// Throws Error; unknown parameters are rejected.
std::string run_report(std::string_view command, std::string_view config_json);

}  // namespace thermalcat
