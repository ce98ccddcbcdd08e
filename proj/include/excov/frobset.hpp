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

#ifndef EXCOV_FROBSET_HPP
#define EXCOV_FROBSET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace excov::frob {

/// A union of full Frobenius progressions: the positive integers t whose
/// class mod d lies in a residue set closed under (Z/d)^*. Residue 0 stands
/// for t ≡ 0 mod d. Always stored at the least modulus.
class FrobeniusSet {
  public:
    /// Unit closure of the given residues (reduced mod d), then minimised.
    /// Throws ValidationError for d = 0 or d above kMaxModulus.
    static FrobeniusSet from_residues(std::uint64_t d, const std::vector<std::uint64_t>& residues);
    static FrobeniusSet all() { return from_residues(1, {0}); }
    static FrobeniusSet none() { return from_residues(1, {}); }

    std::uint64_t modulus() const noexcept { return d_; }
    const std::vector<std::uint64_t>& residues() const noexcept { return r_; }
    bool contains(std::uint64_t t) const;
    bool is_empty() const noexcept { return r_.empty(); }
    bool is_all() const noexcept { return d_ == 1 && !r_.empty(); }
    /// e.g. "{1,2,3} mod 4"
    std::string str() const;

    friend bool operator==(const FrobeniusSet&, const FrobeniusSet&) = default;

    static constexpr std::uint64_t kMaxModulus = 10'000'000;

  private:
    FrobeniusSet() = default;
    std::uint64_t d_ = 1;
    std::vector<std::uint64_t> r_;
};

FrobeniusSet intersect(const FrobeniusSet& a, const FrobeniusSet& b);
FrobeniusSet unite(const FrobeniusSet& a, const FrobeniusSet& b);

/// samples[i] is the observation at t = i + 1. Returns the set with least
/// modulus d <= d_max that reproduces every sample, or nullopt. Throws
/// ValidationError unless samples.size() >= 2 * d_max.
std::optional<FrobeniusSet> fit_from_samples(const std::vector<bool>& samples, std::uint64_t d_max);

}  // namespace excov::frob

#endif
