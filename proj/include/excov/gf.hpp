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

#ifndef EXCOV_GF_HPP
#define EXCOV_GF_HPP

#include <cstdint>
#include <memory>
#include <ranges>
#include <span>
#include <string>
#include <vector>

namespace excov::gf {

/// Packed element of a finite field: the base-p digits of the index are the
/// absolute coefficients, lowest degree first. Along a tower F_q ⊂ F_{q^t}
/// the canonical embedding is the identity on indices.
using Val = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Largest field (number of elements) that may be constructed. Initialised from
/// the EXCOV_CAP environment variable when set, otherwise 2^24.
std::uint64_t size_cap();
void set_size_cap(std::uint64_t cap);

/// F_p for prime p (k = 1) or F_{p^k} as a relative extension of F_p.
/// The modulus is the lexicographically least monic irreducible of degree k,
/// coefficients compared low-to-high.
FieldPtr make_field(std::uint64_t p, unsigned k = 1);

/// F_{q^t} over the given base F_q. t = 1 returns the base itself.
FieldPtr make_extension(const FieldPtr& base, unsigned t);

/// Least monic irreducible of degree t over `base` in low-to-high lexicographic
/// order; returned low-to-high including the leading 1.
std::vector<Val> least_irreducible(const Field& base, unsigned t);

/// True if the monic polynomial (low-to-high) is irreducible over `base` (Rabin's test).
bool is_irreducible(const Field& base, std::span<const Val> monic);

class Field {
  public:
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t size() const noexcept { return q_; }
    /// Degree over the prime field.
    unsigned degree() const noexcept { return k_; }
    /// Degree over base(); 1 for a prime field.
    unsigned relative_degree() const noexcept { return t_; }
    const FieldPtr& base() const noexcept { return base_; }
    /// Relative modulus over base() (prime fields: x), low-to-high, monic.
    std::span<const Val> modulus() const noexcept { return modulus_; }
    /// "p^k"
    std::string spec() const;

    /// True if `sub` is this field or lies on its base chain.
    bool extends(const Field& sub) const noexcept;

    Val zero() const noexcept { return 0; }
    Val one() const noexcept { return 1; }

    Val add(Val a, Val b) const noexcept {
        if (p_ == 2) return a ^ b;
        if (k_ == 1) {
            auto s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (a == 0) return b;
        if (b == 0) return a;
        auto la = log_[a], lb = log_[b];
        auto d = lb >= la ? lb - la : lb + m_ - la;
        auto z = zech_[d];
        return z == kNone ? 0 : exp_[la + z];
    }
    Val neg(Val a) const noexcept {
        if (p_ == 2 || a == 0) return a;
        if (k_ == 1) return p_ - a;
        return exp_[log_[a] + m_ / 2];
    }
    Val sub(Val a, Val b) const noexcept { return add(a, neg(b)); }
    Val mul(Val a, Val b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    /// Throws ValidationError on zero.
    Val inv(Val a) const;
    Val div(Val a, Val b) const { return mul(a, inv(b)); }
    Val pow(Val a, std::uint64_t e) const noexcept;
    /// x -> x^q with q = |base()|; the identity on a prime field.
    Val frobenius(Val a) const noexcept;
    bool is_square(Val a) const noexcept;

    /// Image of an integer under Z -> F_p ⊂ this field.
    Val from_int(std::int64_t n) const noexcept;
    /// Coefficients over base(), low-to-high, length relative_degree().
    std::vector<Val> coeffs(Val a) const;
    Val from_coeffs(std::span<const Val> c) const;
    /// Absolute residues mod p, low-to-high, length degree().
    std::vector<std::uint32_t> residues(Val a) const;
    Val from_residues(std::span<const std::int64_t> r) const;
    /// Comma separated absolute residues, e.g. "2,0,1".
    std::string format(Val a) const;

    /// Discrete logarithm relative to primitive(); a != 0.
    std::uint32_t log(Val a) const noexcept { return log_[a]; }
    Val exp(std::uint64_t e) const noexcept { return exp_[e % m_]; }
    Val primitive() const noexcept { return exp_[1 % m_]; }
    /// |F^*|
    std::uint32_t unit_order() const noexcept { return m_; }

    /// Raw tables for hot loops: exp has 2*(q-1) entries, zech maps
    /// log(b/a) to log(1 + b/a) or kNone when 1 + b/a = 0.
    std::span<const std::uint32_t> log_table() const noexcept { return log_; }
    std::span<const Val> exp_table() const noexcept { return exp_; }
    std::span<const std::uint32_t> zech_table() const noexcept { return zech_; }
    static constexpr std::uint32_t kNone = 0xffffffffu;

  private:
    Field() = default;
    friend struct Builder;
    std::uint32_t p_ = 0, q_ = 0, m_ = 0;
    unsigned k_ = 0, t_ = 0;
    FieldPtr base_;
    std::vector<Val> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<Val> exp_;
    std::vector<std::uint32_t> zech_;
};

/// Value-semantic element bound to its field.
class Elem {
  public:
    Elem(FieldPtr f, Val v) : field_(std::move(f)), v_(v) {}

    const FieldPtr& field() const noexcept { return field_; }
    Val value() const noexcept { return v_; }
    std::vector<Val> coeffs() const { return field_->coeffs(v_); }
    std::string str() const { return field_->format(v_); }

    Elem operator+(const Elem& o) const { return {field_, field_->add(v_, check(o))}; }
    Elem operator-(const Elem& o) const { return {field_, field_->sub(v_, check(o))}; }
    Elem operator*(const Elem& o) const { return {field_, field_->mul(v_, check(o))}; }
    Elem operator/(const Elem& o) const { return {field_, field_->div(v_, check(o))}; }
    Elem operator-() const { return {field_, field_->neg(v_)}; }
    Elem pow(std::uint64_t e) const { return {field_, field_->pow(v_, e)}; }
    Elem frobenius() const { return {field_, field_->frobenius(v_)}; }
    bool is_zero() const noexcept { return v_ == 0; }

    friend bool operator==(const Elem& a, const Elem& b) noexcept {
        return a.field_ == b.field_ && a.v_ == b.v_;
    }

  private:
    Val check(const Elem& o) const;
    FieldPtr field_;
    Val v_;
};

/// All elements in index order (lexicographic in the absolute residues read
/// from the highest degree down), zero first.
inline auto enumerate(const FieldPtr& f) {
    return std::views::iota(Val{0}, Val{f->size()}) |
           std::views::transform([f](Val v) { return Elem(f, v); });
}

/// Parses "p^k" (or "p") and builds the field.
FieldPtr parse_field_spec(const std::string& spec);

}  // namespace excov::gf

#endif
