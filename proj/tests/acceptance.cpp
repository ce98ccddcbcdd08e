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

#include <cstdio>

#include "excov/acceptance.hpp"

int main() {
    auto results = excov::acceptance::run_all([](const excov::acceptance::Criterion& c) {
        std::printf("%s\n", excov::acceptance::format(c).c_str());
        std::fflush(stdout);
    });
    for (const auto& c : results)
        if (!c.pass) return 1;
    return 0;
}
