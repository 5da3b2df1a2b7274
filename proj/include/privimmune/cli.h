// Copyright 2026 The privimmune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef PRIVIMMUNE_CLI_H_
#define PRIVIMMUNE_CLI_H_

#include <ostream>
#include <span>
#include <string>

namespace privimmune {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

// Runs one command line (program name excluded). Errors go to `err` as
// single lines prefixed "error:".
int RunCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err);

}  // namespace privimmune

#endif  // PRIVIMMUNE_CLI_H_
