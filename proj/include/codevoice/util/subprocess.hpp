// Copyright 2026 The CodeVoice Authors
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
#include <vector>

namespace codevoice {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Spawns argv (PATH lookup on argv[0]), feeds input on stdin and collects
/// both output streams. Throws BackendError if the process cannot start.
CommandResult run_command(const std::vector<std::string>& argv, const std::string& input);

/// Splits a command line on whitespace, honouring single and double quotes.
std::vector<std::string> split_command_line(const std::string& line);

}  // namespace codevoice
