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

#ifndef EXCOV_PROJMAP_HPP
#define EXCOV_PROJMAP_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "excov/gf.hpp"

namespace excov::projmap {

using gf::FieldPtr;
using gf::Val;

/// Dense univariate polynomial over a finite field, coefficients low-to-high.
class Poly {
  public:
    explicit Poly(FieldPtr f) : field_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<Val> c);

    static Poly constant(FieldPtr f, Val c) { return Poly(std::move(f), {c}); }
    static Poly monomial(FieldPtr f, Val c, unsigned deg);
    static Poly x(FieldPtr f) { return monomial(std::move(f), 1, 1); }
    /// Coefficients given as integers mapped through Z -> F_p.
    static Poly from_ints(FieldPtr f, std::initializer_list<std::int64_t> c);

    const FieldPtr& field() const noexcept { return field_; }
    std::span<const Val> coeffs() const noexcept { return c_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Val operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    Val lead() const noexcept { return c_.empty() ? 0 : c_.back(); }

    /// Horner evaluation at x in F, where F extends field().
    Val eval(const gf::Field& F, Val x) const;
    Val eval(Val x) const { return eval(*field_, x); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scale(Val c) const;
    Poly pow(unsigned e) const;
    Poly monic() const;
    Poly derivative() const;
    /// this(inner)
    Poly compose(const Poly& inner) const;

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

  private:
    void trim();
    void same_field(const Poly& o) const;
    FieldPtr field_;
    std::vector<Val> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// num/den with gcd 1, den monic, max degree >= 1.
class RationalMap {
  public:
    /// Reduces by the gcd and normalises den to be monic.
    static RationalMap make(Poly num, Poly den);
    static RationalMap polynomial(Poly p);

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const FieldPtr& field() const noexcept { return num_.field(); }
    unsigned degree() const noexcept;
    bool is_polynomial() const noexcept { return den_.degree() == 0; }

    friend bool operator==(const RationalMap& a, const RationalMap& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

  private:
    RationalMap(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {}
    Poly num_, den_;
};

/// A point of P^1 over some field: finite value or infinity.
struct P1Point {
    bool infinite = false;
    Val value = 0;

    static P1Point inf() { return {true, 0}; }
    static P1Point at(Val v) { return {false, v}; }
    friend bool operator==(const P1Point&, const P1Point&) = default;
};

/// Evaluation on P^1(F) for F extending f's field. At a pole the value is
/// infinity; at infinity it is the leading-coefficient ratio when the degrees
/// agree, infinity when the numerator is larger and 0 otherwise.
P1Point eval_p1(const RationalMap& f, const gf::Field& F, P1Point x);

/// f∘g, i.e. x -> f(g(x)).
RationalMap compose(const RationalMap& f, const RationalMap& g);

/// x^n
RationalMap cyclic(const FieldPtr& F, unsigned n);
/// D_{n,a}(x) = sum_{i<=n/2} n/(n-i) C(n-i,i) (-a)^i x^{n-2i}, so that D_{n,a}(w + a/w) = w^n + (a/w)^n.
Poly dickson_poly(const FieldPtr& F, unsigned n, Val a);
RationalMap dickson(const FieldPtr& F, unsigned n, Val a);
/// T_n with T_n((x + 1/x)/2) = (x^n + x^-n)/2, obtained as D_{n,1}(2x)/2.
RationalMap chebyshev(const FieldPtr& F, unsigned n);
/// T_{n,a} = l_u∘T_n∘l_{u^-1} with l_u(z) = uz and u^2 = a; n odd, a != 0.
RationalMap chebyshev_twist(const FieldPtr& F, unsigned n, Val a);
/// R_a = l'^{-1}∘(l')^n with l'(x) = (x-u)/(x+u), u^2 = a; n odd, a a non-square.
RationalMap redei(const FieldPtr& F, unsigned n, Val a);

/// x -> a*x + b, a != 0.
struct Affine {
    Val a = 1, b = 0;
};
/// x -> (a*x + b)/(c*x + d), ad - bc != 0.
struct Moebius {
    Val a = 1, b = 0, c = 0, d = 1;
};

RationalMap as_map(const FieldPtr& F, Affine alpha);
RationalMap as_map(const FieldPtr& F, Moebius m);
/// outer∘f∘inner
RationalMap affine_transform(const RationalMap& f, Affine outer, Affine inner);
/// alpha∘f∘alpha^{-1}
RationalMap affine_conjugate(const RationalMap& f, Affine alpha);
/// m∘f∘m2
RationalMap moebius_transform(const RationalMap& f, Moebius m, Moebius m2);

/// f = outer∘inner with inner monic, inner(0) = 0.
struct Decomposition {
    Poly outer;
    Poly inner;
};

/// All splittings f = g∘h over the coefficient field with 1 < deg h < deg f,
/// one per admissible deg h. Empty means indecomposable; for tame f that also
/// holds over the algebraic closure. Throws Unsupported when p | deg f.
std::vector<Decomposition> decompose_tame_poly(const Poly& f);

/// "poly:c0,c1,..", "rat:n0,../d0,..", "cyclic:n", "dickson:n,a", "cheb:n",
/// "cheb:n,a", "redei:n,a". A coefficient is an integer or an element
/// literal in brackets, e.g. "[1,2]".
RationalMap parse_map_spec(const FieldPtr& F, const std::string& spec);

/// Inverse of parse_map_spec: "poly:.." or "rat:../..".
std::string to_spec(const RationalMap& f);

/// Coefficient literals, low-to-high.
std::vector<std::string> format_coeffs(const Poly& p);

}  // namespace excov::projmap

#endif
