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

#ifndef EXCOV_LATTES_HPP
#define EXCOV_LATTES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "excov/frobset.hpp"
#include "excov/gf.hpp"
#include "excov/projmap.hpp"

namespace excov::lattes {

using gf::FieldPtr;
using gf::Val;
using projmap::Poly;
using projmap::RationalMap;

/// Exact rational with int64 parts, denominator positive, lowest terms.
struct Rational {
    std::int64_t num = 0, den = 1;
    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);
    std::string str() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Integral long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct EllipticCurveQ {
    std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    std::int64_t b2 = 0, b4 = 0, b6 = 0, b8 = 0, c4 = 0, c6 = 0;
    std::int64_t discriminant = 0;
    Rational j;

    /// Throws ValidationError on a singular model.
    static EllipticCurveQ make(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4, std::int64_t a6);
    bool good_reduction(std::uint64_t ell) const;
    std::string str() const;
};

/// y^2 = x^3 - x^2 + x: the curve y^2 + x^3 + x^2 + x = 0 after x -> -x.
/// Throws InvariantFailure unless j = 2^11/3 and the discriminant is -2^4 * 3.
EllipticCurveQ ogg_curve();

/// "ogg" or "[a1,a2,a3,a4,a6]".
EllipticCurveQ parse_curve_spec(const std::string& spec);

/// Short model y^2 = x^3 + a x + b over F_ell, ell > 3.
struct EllipticCurveFq {
    FieldPtr field;
    std::uint64_t ell = 0;
    Val a = 0, b = 0;
    std::uint64_t N = 0;      // |E(F_ell)|
    std::int64_t a_ell = 0;   // ell + 1 - N

    /// Throws ValidationError on a singular model or ell <= 3.
    static EllipticCurveFq make(std::uint64_t ell, std::int64_t a, std::int64_t b);
    /// x^3 + a x + b as a polynomial over F_ell.
    Poly rhs() const;
};

/// Short model y^2 = x^3 - 27 c4 x - 54 c6 mod ell; Hasse bound asserted.
EllipticCurveFq reduce(const EllipticCurveQ& E, std::uint64_t ell);

/// Point on the short model over an extension of its field.
struct Point {
    bool infinite = true;
    Val x = 0, y = 0;
    static Point zero() { return {}; }
    static Point at(Val x, Val y) { return {false, x, y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

bool on_curve(const EllipticCurveFq& E, const gf::Field& K, const Point& P);
Point add(const EllipticCurveFq& E, const gf::Field& K, const Point& P, const Point& Q);
Point negate(const gf::Field& K, const Point& P);
Point multiply(const EllipticCurveFq& E, const gf::Field& K, std::int64_t m, Point P);
/// All points over K, the point at infinity first.
std::vector<Point> points(const EllipticCurveFq& E, const gf::Field& K);
/// |E(F_{ell^t})| by enumeration of x with the quadratic character.
std::uint64_t count_points(const EllipticCurveFq& E, unsigned t);

/// s_t = alpha^t + beta^t for the Frobenius eigenvalues; throws CapExceeded on overflow.
std::int64_t frobenius_power_sum(std::int64_t a_ell, std::uint64_t ell, unsigned t);

/// psi_m = f_m for odd m and y * f_m for even m; returns f_m.
Poly division_poly(const EllipticCurveFq& E, unsigned m);

/// x(P) -> x([m]P) as a rational map of degree m^2.
RationalMap lattes_map(const EllipticCurveFq& E, unsigned m);

/// No coset element of the affine monodromy fixes two points: 1 -+ s_t + ell^t nonzero mod p.
bool oit_predict(std::int64_t a_ell, std::uint64_t ell, std::uint64_t p, unsigned t);

struct OitRecord {
    std::uint64_t ell = 0;
    unsigned t = 0;
    std::int64_t a_ell = 0;
    std::int64_t s_t = 0;
    bool predicted = false;
    bool bijective = false;
    bool match() const { return predicted == bijective; }
};

struct OitPrime {
    std::uint64_t ell = 0;
    std::int64_t a_ell = 0;
    bool irreducible_marker = false;   // a_ell^2 - 4 ell a non-residue mod p
    std::optional<frob::FrobeniusSet> predicted_set;
};

struct OitReport {
    std::string curve;
    std::uint64_t p = 0, ell_max = 0;
    unsigned t_max = 0;
    std::vector<OitPrime> primes;
    std::vector<OitRecord> records;
    std::vector<std::uint64_t> skipped;   // bad reduction, ell = p or ell <= 3
    std::size_t mismatches() const;
};

OitReport oit_scan(const EllipticCurveQ& E, std::uint64_t p, std::uint64_t ell_max, unsigned t_max);

/// t <= t_max with |E(F_{ell^t})| = ell^t + 1, i.e. s_t = 0.
std::vector<unsigned> median_value_check(const EllipticCurveFq& E, unsigned t_max);

}  // namespace excov::lattes

#endif
