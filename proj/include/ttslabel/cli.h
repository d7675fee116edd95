// include/ttslabel/cli.h

// Copyright 2026  ttslabel authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TTSLABEL_CLI_H_
#define TTSLABEL_CLI_H_

// Command-line front end. Exit codes: 0 success, 1 unexpected failure,
// 2 usage error, 10 + ErrorCode for errors raised by the library.

#include <string>
#include <vector>

namespace ttslabel {

int RunCli(int argc, const char *const *argv);
int RunCli(const std::vector<std::string> &args);  // args[0] is the program name

}  // namespace ttslabel

#endif  // TTSLABEL_CLI_H_
