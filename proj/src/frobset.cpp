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

#include "excov/frobset.hpp"

#include <algorithm>
#include <numeric>

#include "excov/error.hpp"
#include "excov/numtheory.hpp"

namespace excov::frob {

namespace {

// Membership table indexed by t mod d.
std::vector<bool> table(std::uint64_t d, const std::vector<std::uint64_t>& r) {
    std::vector<bool> in(d, false);
    for (auto x : r) in[x % d] = true;
    return in;
}

}  // namespace

FrobeniusSet FrobeniusSet::from_residues(std::uint64_t d, const std::vector<std::uint64_t>& residues) {
    if (d == 0) throw ValidationError("modulus must be >= 1");
    if (d > kMaxModulus) throw ValidationError("modulus " + std::to_string(d) + " above " + std::to_string(kMaxModulus));
    // Unit orbits on Z/d are the classes of equal gcd with d.
    std::vector<bool> gcd_in(d + 1, false);
    for (auto x : residues) gcd_in[std::gcd(x % d, d)] = true;
    std::vector<bool> in(d);
    for (std::uint64_t s = 0; s < d; ++s) in[s] = gcd_in[std::gcd(s, d)];

    FrobeniusSet out;
    for (auto e : nt::divisors(d)) {
        bool ok = true;
        for (std::uint64_t s = e; s < d && ok; ++s) ok = in[s] == in[s % e];
        if (!ok) continue;
        out.d_ = e;
        for (std::uint64_t s = 0; s < e; ++s)
            if (in[s]) out.r_.push_back(s);
        break;
    }
    return out;
}

bool FrobeniusSet::contains(std::uint64_t t) const {
    return std::binary_search(r_.begin(), r_.end(), t % d_);
}

std::string FrobeniusSet::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < r_.size(); ++i) s += (i ? "," : "") + std::to_string(r_[i]);
    return s + "} mod " + std::to_string(d_);
}

namespace {

template <class Op>
FrobeniusSet combine(const FrobeniusSet& a, const FrobeniusSet& b, Op op) {
    std::uint64_t l = std::lcm(a.modulus(), b.modulus());
    if (l > FrobeniusSet::kMaxModulus) throw ValidationError("lcm of moduli above limit");
    auto ta = table(a.modulus(), a.residues()), tb = table(b.modulus(), b.residues());
    std::vector<std::uint64_t> r;
    for (std::uint64_t s = 0; s < l; ++s)
        if (op(ta[s % a.modulus()], tb[s % b.modulus()])) r.push_back(s);
    return FrobeniusSet::from_residues(l, r);
}

}  // namespace

FrobeniusSet intersect(const FrobeniusSet& a, const FrobeniusSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
}

FrobeniusSet unite(const FrobeniusSet& a, const FrobeniusSet& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
}

std::optional<FrobeniusSet> fit_from_samples(const std::vector<bool>& samples, std::uint64_t d_max) {
    if (d_max == 0) throw ValidationError("d_max must be >= 1");
    if (samples.size() < 2 * d_max)
        throw ValidationError("need at least 2*d_max = " + std::to_string(2 * d_max) + " samples, got " +
                              std::to_string(samples.size()));
    for (std::uint64_t d = 1; d <= d_max; ++d) {
        // -1 unseen, else the common value of the class
        std::vector<int> cls(d, -1);
        bool ok = true;
        for (std::uint64_t t = 1; t <= samples.size() && ok; ++t) {
            int v = samples[t - 1];
            int& c = cls[t % d];
            if (c < 0)
                c = v;
            else
                ok = c == v;
        }
        if (!ok) continue;
        std::vector<std::uint64_t> r;
        for (std::uint64_t s = 0; s < d; ++s)
            if (cls[s] == 1) r.push_back(s);
        auto f = FrobeniusSet::from_residues(d, r);
        // unit closure must not have added anything
        bool closed = true;
        for (std::uint64_t s = 0; s < d && closed; ++s) closed = (cls[s] == 1) == f.contains(s);
        if (closed) return f;
    }
    return std::nullopt;
}

}  // namespace excov::frob
