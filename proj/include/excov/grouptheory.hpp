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

#ifndef EXCOV_GROUPTHEORY_HPP
#define EXCOV_GROUPTHEORY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "excov/frobset.hpp"

namespace excov::group {

/// Permutation of {0..n-1} (printed 1-based). Products act on the right:
/// (i)(g*h) = ((i)g)h.
class Perm {
  public:
    using Point = std::uint16_t;
    static constexpr std::size_t kMaxDegree = 65535;

    Perm() = default;
    /// Identity of degree n.
    explicit Perm(std::size_t n);
    /// From 0-based images; throws ValidationError unless a bijection.
    explicit Perm(std::vector<Point> images);

    /// "(1 2 3)(4 5)"; degree n, or the largest point mentioned when n = 0.
    static Perm parse_cycles(const std::string& s, std::size_t n = 0);
    /// 1-based images "2 3 1", "2,3,1" or "[2,3,1]".
    static Perm parse_images(const std::string& s);
    /// Either form, chosen by a leading '('.
    static Perm parse(const std::string& s, std::size_t n = 0);

    std::size_t degree() const noexcept { return img_.size(); }
    Point operator()(Point i) const noexcept { return img_[i]; }
    const std::vector<Point>& images() const noexcept { return img_; }

    Perm operator*(const Perm& o) const;
    Perm inverse() const;
    Perm pow(std::int64_t e) const;
    bool is_identity() const noexcept;
    std::size_t fixed_points() const noexcept;
    std::uint64_t order() const;
    /// 1-based cycle notation without fixed points; "()" for the identity.
    std::string cycles() const;

    friend bool operator==(const Perm&, const Perm&) = default;

  private:
    std::vector<Point> img_;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

/// A permutation group with all elements listed.
class PermGroup {
  public:
    static constexpr std::size_t kDefaultCap = 1'000'000;

    /// Closure of the generators; throws CapExceeded above cap elements.
    static PermGroup generate(const std::vector<Perm>& gens, std::size_t cap = kDefaultCap);

    std::size_t degree() const noexcept { return n_; }
    std::size_t order() const noexcept { return elems_.size(); }
    const std::vector<Perm>& gens() const noexcept { return gens_; }
    const std::vector<Perm>& elements() const noexcept { return elems_; }
    bool contains(const Perm& g) const { return set_.count(g) != 0; }

  private:
    std::size_t n_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elems_;
    std::unordered_set<Perm, PermHash> set_;
};

/// Orbits of the group generated by gens on {0..n-1}, each sorted, ordered
/// by least point.
std::vector<std::vector<Perm::Point>> orbits(const std::vector<Perm>& gens, std::size_t n);

struct RepInfo {
    bool transitive = false;
    bool primitive = false;
    bool doubly_transitive = false;
    /// Centralizer in S_n is trivial; for transitive G it is N(G_0)/G_0, of
    /// order |Fix(G_0)|. Absent for intransitive G.
    std::optional<bool> trivial_centralizer;
    /// A nontrivial block through point 0 when imprimitive.
    std::vector<Perm::Point> block;
};

/// Works from generators; only the centralizer test needs the point
/// stabilizer, so G is materialised for that (subject to the cap).
RepInfo analyze_rep(const std::vector<Perm>& gens, std::size_t n, std::size_t cap = PermGroup::kDefaultCap);

/// Geometric group and Frobenius element, with optional parallel images
/// giving a second action of the same abstract group.
struct MonodromyData {
    std::vector<Perm> geom;
    Perm tau;
    std::vector<Perm> geom2;
    std::optional<Perm> tau2;
    /// 0: use the order of tau modulo G; otherwise any d with tau^d in G.
    std::uint64_t d = 0;
};

/// Model of x^n over F_q: translations on Z/n, tau = multiplication by q.
MonodromyData cyclic_model(unsigned n, std::uint64_t q);
/// Model of D_{n,a} over F_q: k -> ±k + b on Z/n, tau = multiplication by q.
MonodromyData dihedral_model(unsigned n, std::uint64_t q);

/// Order of tau modulo the group generated by gens (tau must normalise it).
std::uint64_t frobenius_order(const PermGroup& G, const Perm& tau);

enum class Mode { exceptional, pr_exceptional };

/// Residues t mod d for which every g in G*tau^t fixes exactly one point
/// (exceptional) or at least one point (pr-exceptional).
frob::FrobeniusSet coset_exceptionality(const MonodromyData& M, Mode mode,
                                        std::size_t cap = PermGroup::kDefaultCap);

/// Coordinatewise action on V1 x V2, point (i, j) numbered i*|V2| + j.
std::vector<Perm> fiber_tensor(const std::vector<Perm>& g1, const std::vector<Perm>& g2);

enum class Domain { full, off_diagonal };

/// Orbit count of <gens> on V x V (gens acting diagonally on V x V given as
/// a tensor of degree |V|^2) or on its ordered off-diagonal pairs.
std::size_t component_count(const std::vector<Perm>& tensor_gens, std::size_t n1, std::size_t n2, Domain dom);

frob::FrobeniusSet davenport_trace_test(const MonodromyData& M, std::size_t cap = PermGroup::kDefaultCap);
frob::FrobeniusSet idp_trace_test(const MonodromyData& M, std::size_t cap = PermGroup::kDefaultCap);

struct SdpReport {
    bool strong = false;               // idp holds on every coset
    bool chars_equal_on_G = false;     // idp holds at t = 0
    bool lemma_hypothesis = false;     // no element outside G fixes a point, both actions
    bool lemma_violated = false;       // hypothesis and equality on G, yet not strong
};

SdpReport sdp_check(const MonodromyData& M, std::size_t cap = PermGroup::kDefaultCap);

}  // namespace excov::group

#endif
