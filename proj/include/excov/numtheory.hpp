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

#ifndef EXCOV_NUMTHEORY_HPP
#define EXCOV_NUMTHEORY_HPP

#include <cstdint>
#include <vector>

namespace excov::nt {

bool is_prime(std::uint64_t n);

/// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Least non-negative residue of a (possibly negative) integer.
std::uint64_t mod(std::int64_t a, std::uint64_t m);

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
std::uint64_t mult_order(std::uint64_t a, std::uint64_t m);

/// Integer power with overflow detection; returns false on overflow.
bool checked_pow(std::uint64_t base, unsigned e, std::uint64_t& out);

/// Legendre symbol (a/p) for an odd prime p via Euler's criterion: -1, 0 or 1.
int legendre(std::int64_t a, std::uint64_t p);

/// Primes in [lo, hi].
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

}  // namespace excov::nt

#endif
