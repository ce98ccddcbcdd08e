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

#include "excov/numtheory.hpp"

#include <numeric>
#include <stdexcept>

namespace excov::nt {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod(std::int64_t a, std::uint64_t m) {
    auto r = a % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

std::uint64_t mult_order(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 1;
    if (std::gcd(a % m, m) != 1) throw std::invalid_argument("mult_order: not a unit");
    std::uint64_t phi = m;
    for (auto r : prime_divisors(m)) phi = phi / r * (r - 1);
    std::uint64_t ord = phi;
    for (auto r : prime_divisors(phi))
        while (ord % r == 0 && powmod(a, ord / r, m) == 1) ord /= r;
    return ord;
}

bool checked_pow(std::uint64_t base, unsigned e, std::uint64_t& out) {
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= base;
        if (r > UINT64_MAX) return false;
    }
    out = static_cast<std::uint64_t>(r);
    return true;
}

int legendre(std::int64_t a, std::uint64_t p) {
    auto r = powmod(mod(a, p), (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (auto n = lo; n <= hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

}  // namespace excov::nt
