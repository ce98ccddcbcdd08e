/*
   Copyright 2026 The excov Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef EXCOV_ACCEPTANCE_HPP
#define EXCOV_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace excov::acceptance {

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// Runs every acceptance criterion in order; on_result is called as each finishes.
std::vector<Criterion> run_all(const std::function<void(const Criterion&)>& on_result = {});

/// "PASS  1 name  detail  (1.2s)"
std::string format(const Criterion& c);

}  // namespace excov::acceptance

#endif
