/*
 * Copyright 2026 The fmselect Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FMSELECT_TOOLS_CLI_H_
#define FMSELECT_TOOLS_CLI_H_

#include <ostream>
#include <span>
#include <string>

namespace fmselect::cli {

inline constexpr int kExitOk = 0;
// No recommendation, or the evaluation ended without an accepted technique.
inline constexpr int kExitNoResult = 1;
inline constexpr int kExitInputError = 2;

// Runs one subcommand. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fmselect::cli

#endif  // FMSELECT_TOOLS_CLI_H_
