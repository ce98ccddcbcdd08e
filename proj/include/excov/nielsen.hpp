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

#ifndef EXCOV_NIELSEN_HPP
#define EXCOV_NIELSEN_HPP

#include <cstdint>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "excov/grouptheory.hpp"

namespace excov::nielsen {

using group::Perm;
using Tuple = std::vector<Perm>;

struct TupleCheck {
    bool product_one = false;
    bool generation = false;
    /// Present when class representatives were supplied.
    std::optional<bool> class_membership;
    bool ok() const { return product_one && generation && class_membership.value_or(true); }
    /// Names of the failing conditions, comma separated.
    std::string violations() const;
};

/// Product-one, generation of the group generated by `group` (transitivity
/// when group is empty) and, given class representatives, whether the
/// entries' G-classes match the representatives' as multisets; G is S_n
/// when group is empty.
TupleCheck validate_tuple(const Tuple& t, const std::vector<Perm>& group = {},
                          const std::vector<Perm>& class_reps = {});

/// n - #cycles
std::size_t index(const Perm& g);

/// Genus from 2(n + g - 1) = sum ind(g_i). Throws ValidationError for an
/// intransitive tuple or a non-integral or negative genus.
std::int64_t rh_genus(const Tuple& t);

/// q_i for i > 0 and q_|i|^{-1} for i < 0, 1 <= |i| <= r-1:
/// q_i sends (g_i, g_{i+1}) to (g_i g_{i+1} g_i^{-1}, g_i).
Tuple braid_act(const Tuple& t, int i);
/// Apply a word left to right, e.g. {2, 1} is q_2 then q_1.
Tuple braid_word(const Tuple& t, const std::vector<int>& word);

enum class Equivalence { none, inner, absolute };

/// Canonical representative: the lexicographically least conjugate under
/// the given elements (none: the tuple itself).
Tuple canonical(const Tuple& t, const std::vector<Perm>& conj);

struct OrbitSpec {
    Equivalence eq = Equivalence::inner;
    /// Generators of the normaliser for absolute equivalence.
    std::vector<Perm> normalizer;
};

/// Canonical tuples in the orbit of t under q_1..q_{r-1}.
std::vector<Tuple> braid_orbit(const Tuple& t, const OrbitSpec& spec = {});
/// r = 4: the orbit of t under <(q1 q2 q3)^2, q1 q3^{-1}>.
std::vector<Tuple> q2_reduced_orbit(const Tuple& t, const OrbitSpec& spec = {});

/// (g1, g2, g_inf^{-1}) with g_inf = (1 2 .. n), g1 = (1 n)(2 n-1).., g2 =
/// (n 2)(n-1 3)..; n odd >= 3.
Tuple dickson_cycles(unsigned n);
/// (s, s^{-1}) for s = (1 2 .. n).
Tuple cyclic_cycles(unsigned n);

struct TowerCycles {
    Tuple tuple;            // length 2m + 1
    std::uint64_t degree;   // n^m
    bool product_one = false;
    bool transitive = false;
    bool infinity_n_cycles = false;  // last entry is disjoint n-cycles
    std::int64_t genus = 0;
    /// For m = 2: (g)q2q1 equals (g1', g11, g12, g22, g_inf) with
    /// g2' = g12 g21 g12^{-1} and g1' = g11 g2' g11^{-1}.
    std::optional<bool> braid_check;
    /// q^n when q is given, for comparison with the constructed degree.
    std::optional<std::uint64_t> stated_degree;
};

/// Fiber-product limit of m Dickson covers of degree n, built with the
/// identity choices for the extension permutations. labels carry the
/// parameters a_1..a_m and only fix m. Throws CapExceeded when n^m is too
/// large for a permutation.
TowerCycles dickson_tower_cycles(unsigned n, const std::vector<std::int64_t>& labels,
                                 std::optional<std::uint64_t> q = std::nullopt);

struct ModularNielsen {
    std::uint64_t p = 0, k = 0, N = 0;  // N = p^(k+1)
    /// Normalised tuples (v1 = 0) as (v2, v3, v4), each a pair mod N.
    std::vector<std::array<std::array<std::uint32_t, 2>, 3>> tuples;
    std::uint64_t abs_class_count = 0;
    std::uint64_t inner_class_count = 0;
    std::uint64_t inner_braid_orbit_count = 0;
    std::vector<std::uint64_t> inner_orbit_sizes;
};

/// 4-tuples of involutions (-1; v_i) in (Z/N)^2 x| {±1} with
/// v1 - v2 + v3 - v4 = 0 and <v_i - v_j> = (Z/N)^2. Requires N <= 13.
ModularNielsen modular_nielsen(std::uint64_t p, std::uint64_t k);

/// The permutation form of the tuple (v1..v4) on N^2 points, point (a,b)
/// numbered a*N + b.
Tuple modular_tuple_perms(std::uint64_t N, const std::vector<std::array<std::uint32_t, 2>>& v);
/// Generators of (Z/N)^2 x| {±1} on N^2 points.
std::vector<Perm> modular_group(std::uint64_t N);

struct RationalUnion {
    bool rational = true;
    std::optional<std::uint64_t> failing_k;
};

/// For each k prime to the element orders, whether some h in G* maps the
/// multiset of G-classes C_i onto that of the C_i^k.
RationalUnion rational_union_check(const std::vector<Perm>& class_reps, const std::vector<Perm>& G,
                                   const std::vector<Perm>& Gstar);

/// k-subsets of Z/n whose nonzero differences cover each residue lambda
/// times, one lexicographically least translate per translation class.
std::vector<std::vector<std::uint32_t>> difference_sets(std::uint32_t n, std::uint32_t k, std::uint32_t lambda);

}  // namespace excov::nielsen

#endif
