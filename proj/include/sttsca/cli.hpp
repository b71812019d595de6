/*
 * SPDX-FileCopyrightText: Copyright 2026 The sttsca Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>

namespace sttsca {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitMissingFile = 2,
  kExitParseError = 3,
  kExitInvariant = 4,
  kExitWriteFailure = 5,  // simulated cell write failure
  kExitOutput = 6,        // output directory or file not writable
};

/// Entry point of the `sttsca` command line tool. Subcommands: device, mc,
/// trace, attack, states, sweep.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sttsca
