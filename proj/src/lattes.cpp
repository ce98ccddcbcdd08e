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

#include "excov/lattes.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "excov/error.hpp"
#include "excov/except.hpp"
#include "excov/numtheory.hpp"

namespace excov::lattes {

namespace {

constexpr unsigned kMaxLattesDegree = 4096;

std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw CapExceeded("integer overflow in curve arithmetic");
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw ValidationError("zero denominator");
    if (d < 0) n = -n, d = -d;
    auto g = std::gcd(n, d);
    num = n / g;
    den = d / g;
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

EllipticCurveQ EllipticCurveQ::make(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4,
                                    std::int64_t a6) {
    using I = __int128;
    EllipticCurveQ E;
    E.a1 = a1, E.a2 = a2, E.a3 = a3, E.a4 = a4, E.a6 = a6;
    E.b2 = checked(I(a1) * a1 + 4 * I(a2));
    E.b4 = checked(2 * I(a4) + I(a1) * a3);
    E.b6 = checked(I(a3) * a3 + 4 * I(a6));
    E.b8 = checked(I(a1) * a1 * a6 + 4 * I(a2) * a6 - I(a1) * a3 * a4 + I(a2) * a3 * a3 - I(a4) * a4);
    I b2 = E.b2, b4 = E.b4, b6 = E.b6, b8 = E.b8;
    E.c4 = checked(b2 * b2 - 24 * b4);
    E.c6 = checked(-b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6);
    E.discriminant = checked(-b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6);
    if (E.discriminant == 0) throw ValidationError("singular Weierstrass model");
    I c4 = E.c4;
    E.j = Rational(checked(c4 * c4 * c4), E.discriminant);
    // c4^3 - c6^2 = 1728 * discriminant
    if (c4 * c4 * c4 - I(E.c6) * E.c6 != 1728 * I(E.discriminant))
        throw InvariantFailure("Weierstrass invariants inconsistent");
    return E;
}

bool EllipticCurveQ::good_reduction(std::uint64_t ell) const {
    return nt::is_prime(ell) && discriminant % static_cast<std::int64_t>(ell) != 0;
}

std::string EllipticCurveQ::str() const {
    return "[" + std::to_string(a1) + "," + std::to_string(a2) + "," + std::to_string(a3) + "," +
           std::to_string(a4) + "," + std::to_string(a6) + "]";
}

EllipticCurveQ ogg_curve() {
    auto E = EllipticCurveQ::make(0, -1, 0, 1, 0);
    if (!(E.j == Rational(2048, 3))) throw InvariantFailure("Ogg curve j-invariant is " + E.j.str());
    if (E.discriminant != -48) throw InvariantFailure("Ogg curve discriminant is " + std::to_string(E.discriminant));
    return E;
}

EllipticCurveQ parse_curve_spec(const std::string& spec) {
    if (spec == "ogg") return ogg_curve();
    auto fail = [&](std::size_t col, const std::string& what) {
        throw ValidationError("curve spec column " + std::to_string(col + 1) + ": " + what);
    };
    if (spec.empty() || spec.front() != '[') fail(0, "expected 'ogg' or '[a1,a2,a3,a4,a6]'");
    std::vector<std::int64_t> a;
    std::size_t i = 1;
    while (true) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(spec.data() + i, spec.data() + spec.size(), v);
        if (ec != std::errc()) fail(i, "expected an integer");
        a.push_back(v);
        i = static_cast<std::size_t>(ptr - spec.data());
        if (i >= spec.size()) fail(i, "missing ']'");
        if (spec[i] == ']') break;
        if (spec[i] != ',') fail(i, "expected ',' or ']'");
        ++i;
    }
    if (i + 1 != spec.size()) fail(i + 1, "trailing characters");
    if (a.size() != 5) fail(0, "expected five coefficients");
    return EllipticCurveQ::make(a[0], a[1], a[2], a[3], a[4]);
}

EllipticCurveFq EllipticCurveFq::make(std::uint64_t ell, std::int64_t a, std::int64_t b) {
    if (ell <= 3 || !nt::is_prime(ell)) throw ValidationError("short Weierstrass model needs a prime ell > 3");
    EllipticCurveFq E;
    E.field = gf::make_field(ell);
    E.ell = ell;
    E.a = static_cast<Val>(nt::mod(a, ell));
    E.b = static_cast<Val>(nt::mod(b, ell));
    const auto& F = *E.field;
    Val disc = F.add(F.mul(4, F.pow(E.a, 3)), F.mul(F.from_int(27), F.mul(E.b, E.b)));
    if (disc == 0) throw ValidationError("singular curve over F_" + std::to_string(ell));
    E.N = 1;
    for (std::uint64_t x = 0; x < ell; ++x) {
        auto r = nt::mod(static_cast<std::int64_t>(nt::powmod(x, 3, ell) + nt::mulmod(E.a, x, ell) + E.b), ell);
        E.N += static_cast<std::uint64_t>(1 + nt::legendre(static_cast<std::int64_t>(r), ell));
    }
    E.a_ell = static_cast<std::int64_t>(ell + 1) - static_cast<std::int64_t>(E.N);
    if (static_cast<double>(E.a_ell) * static_cast<double>(E.a_ell) > 4.0 * static_cast<double>(ell))
        throw InvariantFailure("Hasse bound violated at ell = " + std::to_string(ell));
    return E;
}

Poly EllipticCurveFq::rhs() const { return Poly(field, {b, a, 0, 1}); }

EllipticCurveFq reduce(const EllipticCurveQ& E, std::uint64_t ell) {
    if (ell <= 3) throw ValidationError("reduction needs ell > 3");
    if (!E.good_reduction(ell)) throw ValidationError("bad reduction at " + std::to_string(ell));
    auto m = static_cast<std::int64_t>(ell);
    return EllipticCurveFq::make(ell, (-27 * (E.c4 % m)) % m, (-54 * (E.c6 % m)) % m);
}

bool on_curve(const EllipticCurveFq& E, const gf::Field& K, const Point& P) {
    if (P.infinite) return true;
    Val r = K.add(K.add(K.pow(P.x, 3), K.mul(K.from_int(E.a), P.x)), K.from_int(E.b));
    return K.mul(P.y, P.y) == r;
}

Point negate(const gf::Field& K, const Point& P) {
    return P.infinite ? P : Point::at(P.x, K.neg(P.y));
}

Point add(const EllipticCurveFq& E, const gf::Field& K, const Point& P, const Point& Q) {
    if (P.infinite) return Q;
    if (Q.infinite) return P;
    Val lambda;
    if (P.x == Q.x) {
        if (K.add(P.y, Q.y) == 0) return Point::zero();
        Val num = K.add(K.mul(K.from_int(3), K.mul(P.x, P.x)), K.from_int(E.a));
        lambda = K.div(num, K.add(P.y, P.y));
    } else {
        lambda = K.div(K.sub(Q.y, P.y), K.sub(Q.x, P.x));
    }
    Val x3 = K.sub(K.sub(K.mul(lambda, lambda), P.x), Q.x);
    Val y3 = K.sub(K.mul(lambda, K.sub(P.x, x3)), P.y);
    return Point::at(x3, y3);
}

Point multiply(const EllipticCurveFq& E, const gf::Field& K, std::int64_t m, Point P) {
    if (m < 0) return multiply(E, K, -m, negate(K, P));
    Point R = Point::zero();
    for (auto e = static_cast<std::uint64_t>(m); e; e >>= 1) {
        if (e & 1) R = add(E, K, R, P);
        P = add(E, K, P, P);
    }
    return R;
}

std::vector<Point> points(const EllipticCurveFq& E, const gf::Field& K) {
    if (!K.extends(*E.field)) throw ValidationError("point field does not contain the curve field");
    std::vector<Point> out{Point::zero()};
    Val ka = K.from_int(E.a), kb = K.from_int(E.b);
    for (std::uint64_t i = 0; i < K.size(); ++i) {
        auto x = static_cast<Val>(i);
        Val r = K.add(K.add(K.pow(x, 3), K.mul(ka, x)), kb);
        if (r == 0) {
            out.push_back(Point::at(x, 0));
        } else if (K.is_square(r)) {
            // square root by search over logs: r = g^(2k)
            Val y = K.exp(K.log(r) / 2);
            out.push_back(Point::at(x, y));
            out.push_back(Point::at(x, K.neg(y)));
        }
    }
    return out;
}

std::uint64_t count_points(const EllipticCurveFq& E, unsigned t) {
    auto K = gf::make_extension(E.field, t);
    Val ka = K->from_int(E.a), kb = K->from_int(E.b);
    std::uint64_t n = 1;
    for (std::uint64_t i = 0; i < K->size(); ++i) {
        auto x = static_cast<Val>(i);
        Val r = K->add(K->add(K->pow(x, 3), K->mul(ka, x)), kb);
        n += r == 0 ? 1 : K->is_square(r) ? 2 : 0;
    }
    return n;
}

std::int64_t frobenius_power_sum(std::int64_t a_ell, std::uint64_t ell, unsigned t) {
    __int128 s0 = 2, s1 = a_ell;
    if (t == 0) return 2;
    for (unsigned i = 2; i <= t; ++i) {
        __int128 s2 = a_ell * s1 - static_cast<__int128>(ell) * s0;
        s0 = s1;
        s1 = checked(s2);
    }
    return static_cast<std::int64_t>(s1);
}

Poly division_poly(const EllipticCurveFq& E, unsigned m) {
    if (m > 2 * kMaxLattesDegree) throw CapExceeded("division polynomial index " + std::to_string(m) + " too large");
    const auto& F = E.field;
    const auto& K = *F;
    Poly R = E.rhs(), R2 = R * R;
    std::vector<Poly> f;
    f.reserve(m + 1);
    f.push_back(Poly(F));
    f.push_back(Poly::constant(F, 1));
    f.push_back(Poly::constant(F, K.from_int(2)));
    Val a = E.a, b = E.b;
    // 3x^4 + 6a x^2 + 12b x - a^2
    f.push_back(Poly(F, {K.neg(K.mul(a, a)), K.mul(K.from_int(12), b), K.mul(K.from_int(6), a), 0, K.from_int(3)}));
    // 4(x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
    {
        Val c0 = K.neg(K.add(K.mul(K.from_int(8), K.mul(b, b)), K.pow(a, 3)));
        Val c1 = K.neg(K.mul(K.from_int(4), K.mul(a, b)));
        Val c2 = K.neg(K.mul(K.from_int(5), K.mul(a, a)));
        Poly p(F, {c0, c1, c2, K.mul(K.from_int(20), b), K.mul(K.from_int(5), a), 0, 1});
        f.push_back(p.scale(K.from_int(4)));
    }
    Val half = K.inv(2);
    for (unsigned j = 5; j <= m; ++j) {
        unsigned k = j / 2;
        if (j % 2) {
            Poly u = f[k + 2] * f[k].pow(3), v = f[k - 1] * f[k + 1].pow(3);
            f.push_back(k % 2 == 0 ? R2 * u - v : u - R2 * v);
        } else {
            Poly u = f[k + 2] * f[k - 1] * f[k - 1] - f[k - 2] * f[k + 1] * f[k + 1];
            f.push_back((f[k] * u).scale(half));
        }
    }
    return f[m];
}

RationalMap lattes_map(const EllipticCurveFq& E, unsigned m) {
    if (m < 2) throw ValidationError("lattes_map needs m >= 2");
    if (m % E.ell == 0) throw Unsupported("lattes_map with ell | m is not supported");
    if (static_cast<std::uint64_t>(m) * m > kMaxLattesDegree)
        throw CapExceeded("lattes map degree " + std::to_string(m * m) + " exceeds " + std::to_string(kMaxLattesDegree));
    Poly R = E.rhs();
    Poly fm = division_poly(E, m), fa = division_poly(E, m - 1), fb = division_poly(E, m + 1);
    Poly sq = fm * fm, cross = fa * fb;
    if (m % 2 == 0)
        sq = sq * R;
    else
        cross = cross * R;
    auto f = RationalMap::make(Poly::x(E.field) * sq - cross, sq);
    if (f.degree() != m * m) throw InvariantFailure("lattes map degree " + std::to_string(f.degree()));
    return f;
}

bool oit_predict(std::int64_t a_ell, std::uint64_t ell, std::uint64_t p, unsigned t) {
    if (p < 5 || !nt::is_prime(p)) throw ValidationError("oit_predict needs a prime p > 3");
    if (t == 0) throw ValidationError("t must be >= 1");
    std::uint64_t a = nt::mod(a_ell, p), l = ell % p;
    std::uint64_t s0 = 2 % p, s1 = a;
    for (unsigned i = 2; i <= t; ++i) {
        std::uint64_t s2 = (a * s1 % p + p - l * s0 % p) % p;
        s0 = s1;
        s1 = s2;
    }
    std::uint64_t lt = nt::powmod(l, t, p);
    return (1 + p - s1 + lt) % p != 0 && (1 + s1 + lt) % p != 0;
}

std::size_t OitReport::mismatches() const {
    std::size_t n = 0;
    for (const auto& r : records) n += !r.match();
    return n;
}

OitReport oit_scan(const EllipticCurveQ& E, std::uint64_t p, std::uint64_t ell_max, unsigned t_max) {
    if (p < 5 || !nt::is_prime(p)) throw ValidationError("oit_scan needs a prime p > 3");
    if (t_max == 0) throw ValidationError("t_max must be >= 1");
    OitReport rep;
    rep.curve = E.str();
    rep.p = p;
    rep.ell_max = ell_max;
    rep.t_max = t_max;
    std::uint64_t period_bound = p * p - 1;
    for (auto ell : nt::primes_in(2, ell_max)) {
        if (ell <= 3 || ell == p || !E.good_reduction(ell)) {
            rep.skipped.push_back(ell);
            continue;
        }
        auto Ered = reduce(E, ell);
        OitPrime info;
        info.ell = ell;
        info.a_ell = Ered.a_ell;
        auto disc = static_cast<std::int64_t>(Ered.a_ell * Ered.a_ell) - 4 * static_cast<std::int64_t>(ell);
        info.irreducible_marker = nt::legendre(disc, p) == -1;
        std::vector<bool> samples;
        for (std::uint64_t t = 1; t <= 2 * period_bound; ++t)
            samples.push_back(oit_predict(Ered.a_ell, ell, p, static_cast<unsigned>(t)));
        info.predicted_set = frob::fit_from_samples(samples, period_bound);
        rep.primes.push_back(info);
        auto f = lattes_map(Ered, static_cast<unsigned>(p));
        for (unsigned t = 1; t <= t_max; ++t) {
            std::uint64_t Q = 0;
            if (!nt::checked_pow(ell, t, Q) || Q > gf::size_cap()) break;
            OitRecord r;
            r.ell = ell;
            r.t = t;
            r.a_ell = Ered.a_ell;
            r.s_t = frobenius_power_sum(Ered.a_ell, ell, t);
            r.predicted = oit_predict(Ered.a_ell, ell, p, t);
            r.bijective = except::is_bijective_on(f, t);
            rep.records.push_back(r);
        }
    }
    return rep;
}

std::vector<unsigned> median_value_check(const EllipticCurveFq& E, unsigned t_max) {
    std::vector<unsigned> out;
    for (unsigned t = 1; t <= t_max; ++t) {
        std::uint64_t Q = 0;
        if (!nt::checked_pow(E.ell, t, Q) || Q > gf::size_cap())
            throw CapExceeded("F_" + std::to_string(E.ell) + "^" + std::to_string(t) + " exceeds size cap");
        auto s = frobenius_power_sum(E.a_ell, E.ell, t);
        if (t <= 2) {
            auto n = static_cast<std::int64_t>(count_points(E, t));
            if (n != static_cast<std::int64_t>(Q) + 1 - s)
                throw InvariantFailure("point count disagrees with Frobenius power sum at t = " + std::to_string(t));
        }
        if (s == 0) out.push_back(t);
    }
    return out;
}

}  // namespace excov::lattes
