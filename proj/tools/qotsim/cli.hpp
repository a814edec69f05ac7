// Copyright 2026 The qotsim Authors. All Rights Reserved.
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
// Entry point of the qotsim command-line tool, callable in-process so tests
// can capture both streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace qot::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kBadValue = 1;  // argument parsed but out of range
inline constexpr int kUsage = 2;     // unknown flag, missing option
inline constexpr int kData = 3;      // unreadable or malformed input file
inline constexpr int kInternal = 4;

// args excludes the program name. JSON (or the --pretty summary) goes to out,
// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qot::cli
