// Copyright 2026 The qnlab Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace qnl {

/// Runs one command ("scenario", "lhv", "disturb", "sample", "verify")
/// against the given streams. Returns 0 on success, 1 when a verification
/// check fails (a recomputed prediction off tolerance, or an unexpected
/// model count), and 2 on usage errors. Output is deterministic for
/// identical arguments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnl
