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

#ifndef EXCOV_EXCEPT_HPP
#define EXCOV_EXCEPT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "excov/frobset.hpp"
#include "excov/projmap.hpp"

namespace excov::except {

using projmap::RationalMap;

/// Evaluates a rational map on P^1(E), points numbered 0..|E|-1 for the
/// field elements and |E| for infinity.
class MapEvaluator {
  public:
    MapEvaluator(const RationalMap& f, gf::FieldPtr E);

    std::uint32_t operator()(std::uint32_t point) const;
    std::uint64_t points() const noexcept { return inf_ + std::uint64_t{1}; }
    std::uint32_t infinity() const noexcept { return inf_; }
    const gf::Field& field() const noexcept { return *E_; }

  private:
    // p(x) = x^shift * sum c_i (x^stride)^i, coefficients kept as logs in E
    struct Sparse {
        std::vector<std::uint32_t> logc;  // kNone for zero
        gf::Val c0 = 0;                    // p(0)
        unsigned shift = 0, stride = 1;
        gf::Val eval(const gf::Field& F, gf::Val x) const;
    };
    static Sparse sparse(const projmap::Poly& p, const gf::Field& E);

    gf::FieldPtr E_;
    Sparse num_, den_;
    bool poly_;
    std::uint32_t inf_;
    std::uint32_t at_inf_;
};

/// F_{q^t} over the coefficient field of f; throws CapExceeded.
gf::FieldPtr extension_for(const RationalMap& f, unsigned t);

/// Whether f permutes P^1(F_{q^t}). Stops at the first collision.
bool is_bijective_on(const RationalMap& f, unsigned t);

/// Whether the images of the maps together cover P^1(F_{q^t}).
bool surjective_union(const std::vector<RationalMap>& fs, unsigned t);

struct FiberCount {
    std::uint64_t size;    // |f^{-1}(y)|
    std::uint64_t values;  // number of y with that fiber size
};

struct TRecord {
    unsigned t = 0;
    bool bijective = false;
    bool surjective = false;
    std::uint64_t image_size = 0;
    /// Fiber-size histogram over all y in P^1(F_{q^t}), ascending by size.
    std::vector<FiberCount> fibers;
    /// lcm of the cycle lengths when bijective and it fits in 64 bits.
    std::optional<std::uint64_t> period;
    bool period_overflow = false;
};

struct ScanReport {
    std::string map;
    std::string field;
    unsigned t_max = 0;      // requested
    unsigned t_reached = 0;  // last t actually evaluated
    std::string stopped;     // empty, or why the scan ended before t_max
    std::vector<TRecord> records;
    /// Modulus bound used for the fit: min(d_max, t_reached / 2).
    std::uint64_t d_max = 0;
    std::optional<frob::FrobeniusSet> fitted;
};

struct ScanOptions {
    std::uint64_t d_max = 24;
    /// Skip fibers and periods; stop each t at the first collision.
    bool bijectivity_only = false;
};

/// Bijectivity, image and cycle data for t = 1..t_max, stopping early when
/// F_{q^t} exceeds the size cap, then the least-modulus fit of the
/// bijectivity pattern.
ScanReport exceptionality_scan(const RationalMap& f, unsigned t_max, ScanOptions opt = {});

/// Equal image sets on P^1(F_{q^t}).
bool dp_range_test(const RationalMap& f, const RationalMap& g, unsigned t);
/// Equal fiber cardinalities over every y in P^1(F_{q^t}).
bool idp_multiset_test(const RationalMap& f, const RationalMap& g, unsigned t);

/// (t, m_t) for every bijective t <= t_max; m_t = 0 marks 64-bit overflow.
std::vector<std::pair<unsigned, std::uint64_t>> period_series(const RationalMap& f, unsigned t_max);

/// Order of the permutation img (lcm of cycle lengths); nullopt on overflow.
std::optional<std::uint64_t> permutation_order(const std::vector<std::uint32_t>& img);

}  // namespace excov::except

#endif
