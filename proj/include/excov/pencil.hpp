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

#ifndef EXCOV_PENCIL_HPP
#define EXCOV_PENCIL_HPP

#include <cstdint>
#include <vector>

#include "excov/grouptheory.hpp"
#include "excov/projmap.hpp"

namespace excov::pencil {

using projmap::Poly;

struct PencilReport {
    std::uint64_t p = 0;
    Poly f{gf::FieldPtr{}};
    std::vector<std::int64_t> E;   // E[lambda] = |{y^2 = f(x) + lambda}| - p
    std::int64_t W = 0;            // sum of E[lambda]^2
    std::int64_t N_f = 0;          // ordered pairs x != y with f(x) = f(y)
    bool identity_ok = false;      // W = p * N_f
    std::int64_t k_f_estimate = 0; // nearest integer to N_f / p
    std::int64_t deviation = 0;    // |N_f - k_f * p|
};

/// f over an odd prime field F_p, p <= 499. Throws InvariantFailure if W != p * N_f.
PencilReport pencil_scan(const Poly& f);

/// Orbits of the geometric group on off-diagonal pairs that tau maps to themselves.
std::size_t stable_component_count(const group::MonodromyData& M);

struct KfCheck {
    std::size_t components = 0;    // F_p-stable off-diagonal orbit classes
    std::int64_t k_f_estimate = 0;
    std::int64_t deviation = 0;    // |N_f - components * p|
    double bound = 0;              // (deg f)^2 (2 sqrt(p) + 1)
    bool ok = false;               // deviation <= bound
};

KfCheck kf_cross_check(const Poly& f, const group::MonodromyData& M);

}  // namespace excov::pencil

#endif
