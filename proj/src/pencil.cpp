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

#include "excov/pencil.hpp"

#include <cmath>
#include <cstdlib>

#include "excov/error.hpp"
#include "excov/numtheory.hpp"

namespace excov::pencil {

namespace {

constexpr std::uint64_t kMaxPencilPrime = 499;

}  // namespace

PencilReport pencil_scan(const Poly& f) {
    const auto& F = *f.field();
    std::uint64_t p = F.characteristic();
    if (F.degree() != 1) throw ValidationError("pencil_scan needs a prime field");
    if (p == 2) throw ValidationError("pencil_scan needs odd characteristic");
    if (p > kMaxPencilPrime) throw CapExceeded("pencil_scan supports p <= " + std::to_string(kMaxPencilPrime));
    if (f.degree() < 1) throw ValidationError("pencil_scan needs deg f >= 1");
    PencilReport rep;
    rep.p = p;
    rep.f = f;
    std::vector<std::uint32_t> val(p), count(p, 0);
    for (std::uint64_t x = 0; x < p; ++x) ++count[val[x] = f.eval(static_cast<gf::Val>(x))];
    // quadratic character by Euler's criterion
    std::vector<int> chi(p);
    for (std::uint64_t v = 0; v < p; ++v) chi[v] = nt::legendre(static_cast<std::int64_t>(v), p);
    rep.E.resize(p);
    for (std::uint64_t lambda = 0; lambda < p; ++lambda) {
        std::int64_t e = 0;
        for (std::uint64_t x = 0; x < p; ++x) e += chi[(val[x] + lambda) % p];
        rep.E[lambda] = e;
        rep.W += e * e;
    }
    for (std::uint64_t v = 0; v < p; ++v) rep.N_f += static_cast<std::int64_t>(count[v]) * (count[v] - 1);
    auto P = static_cast<std::int64_t>(p);
    rep.identity_ok = rep.W == P * rep.N_f;
    if (!rep.identity_ok)
        throw InvariantFailure("W = " + std::to_string(rep.W) + " but p * N_f = " + std::to_string(P * rep.N_f));
    rep.k_f_estimate = (rep.N_f + P / 2) / P;
    rep.deviation = std::llabs(rep.N_f - rep.k_f_estimate * P);
    return rep;
}

std::size_t stable_component_count(const group::MonodromyData& M) {
    if (M.geom.empty()) throw ValidationError("monodromy model has no generators");
    std::size_t n = M.geom[0].degree();
    auto tensor = group::fiber_tensor(M.geom, M.geom);
    auto orb = group::orbits(tensor, n * n);
    std::vector<std::size_t> id(n * n);
    for (std::size_t k = 0; k < orb.size(); ++k)
        for (auto x : orb[k]) id[x] = k;
    std::size_t stable = 0;
    for (const auto& o : orb) {
        std::size_t x = o.front(), i = x / n, j = x % n;
        if (i == j) continue;
        std::size_t y = std::size_t(M.tau(static_cast<group::Perm::Point>(i))) * n + M.tau(static_cast<group::Perm::Point>(j));
        stable += id[y] == id[x];
    }
    return stable;
}

KfCheck kf_cross_check(const Poly& f, const group::MonodromyData& M) {
    auto rep = pencil_scan(f);
    if (M.geom.empty() || M.geom[0].degree() != static_cast<std::size_t>(f.degree()))
        throw ValidationError("monodromy model degree does not match deg f");
    KfCheck out;
    out.components = stable_component_count(M);
    out.k_f_estimate = rep.k_f_estimate;
    auto P = static_cast<std::int64_t>(rep.p);
    out.deviation = std::llabs(rep.N_f - static_cast<std::int64_t>(out.components) * P);
    double d = f.degree();
    out.bound = d * d * (2 * std::sqrt(static_cast<double>(rep.p)) + 1);
    out.ok = static_cast<double>(out.deviation) <= out.bound;
    return out;
}

}  // namespace excov::pencil
