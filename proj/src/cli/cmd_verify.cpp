// Copyright 2026 The Authors.
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

#include <iomanip>

#include "commands.hpp"
#include "dppmask/cli.hpp"
#include "dppmask/verify.hpp"

namespace dppmask::cli {

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.trials == 0) {
    err << "warning: --trials 0 checks nothing; reporting a vacuous pass\n";
  }
  verify::Options options;
  options.trials = args.trials;
  options.seed = args.seed;
  options.corrupt_update = args.corrupt_update;

  bool all_passed = true;
  for (const auto& report : verify::run_all(options)) {
    all_passed = all_passed && report.passed;
    out << (report.passed ? "PASS " : "FAIL ") << report.name << "  cases=" << report.cases
        << "  max_error=" << std::scientific << std::setprecision(3) << report.max_error
        << "  tolerance=" << report.tolerance << std::defaultfloat << "\n";
  }
  return all_passed ? kExitOk : kExitFailure;
}

}  // namespace dppmask::cli
