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

#include <doctest.h>

#include <random>

#include "excov/error.hpp"
#include "excov/numtheory.hpp"
#include "excov/projmap.hpp"

using namespace excov;
using namespace excov::projmap;

namespace {

// D_0 = 2, D_1 = x, D_n = x D_{n-1} - a D_{n-2}
Poly dickson_by_recurrence(const FieldPtr& F, unsigned n, Val a) {
    Poly d0 = Poly::constant(F, 2), d1 = Poly::x(F);
    if (n == 0) return d0;
    for (unsigned i = 2; i <= n; ++i) {
        Poly d2 = Poly::x(F) * d1 - d0.scale(a);
        d0 = d1;
        d1 = d2;
    }
    return d1;
}

Val sqrt_in(const gf::Field& K, Val a) {
    for (Val u = 0; u < K.size(); ++u)
        if (K.mul(u, u) == a) return u;
    FAIL("no square root");
    return 0;
}

std::vector<P1Point> p1_points(const gf::Field& K) {
    std::vector<P1Point> pts{P1Point::inf()};
    for (Val v = 0; v < K.size(); ++v) pts.push_back(P1Point::at(v));
    return pts;
}

}  // namespace

TEST_CASE("dickson summation formula matches the recurrence") {
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {13u, 1u}}) {
        auto F = gf::make_field(p, k);
        for (unsigned n = 1; n <= 40; ++n)
            for (Val a : {Val{0}, Val{1}, Val{2}, F->primitive()})
                CHECK(dickson(F, n, a).num() == dickson_by_recurrence(F, n, a));
    }
}

TEST_CASE("dickson examples") {
    auto F7 = gf::make_field(7);
    CHECK(dickson(F7, 3, 1).num() == Poly::from_ints(F7, {0, -3, 0, 1}));
    CHECK(dickson(F7, 9, 0).num() == Poly::monomial(F7, 1, 9));
    CHECK_THROWS_AS(dickson(gf::make_field(2), 3, 1), ValidationError);
    CHECK_THROWS_AS(dickson(F7, 0, 1), ValidationError);
}

TEST_CASE("dickson functional identity on F_{q^2}") {
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}, {5u, 2u}, {7u, 2u}}) {
        auto F = gf::make_field(p, k);
        auto E = gf::make_extension(F, 2);
        for (Val a : {Val{1}, F->primitive(), F->from_int(-1)}) {
            for (unsigned n = 1; n <= 15; ++n) {
                auto D = dickson(F, n, a).num();
                for (Val w = 1; w < E->size(); ++w) {
                    Val aw = E->div(a, w);
                    Val lhs = D.eval(*E, E->add(w, aw));
                    Val rhs = E->add(E->pow(w, n), E->pow(aw, n));
                    if (lhs != rhs) {
                        FAIL_CHECK("q=" << F->size() << " n=" << n << " a=" << a << " w=" << w);
                        break;
                    }
                }
            }
        }
    }
}

TEST_CASE("dickson semigroup law") {
    auto F = gf::make_field(11);
    // general form: D_{n,a^m} o D_{m,a} = D_{nm,a}
    for (Val a : {Val{1}, Val{2}, Val{7}})
        for (unsigned n : {1u, 2u, 3u, 5u, 7u})
            for (unsigned m : {2u, 3u, 5u, 9u})
                CHECK(compose(dickson(F, n, F->pow(a, m)), dickson(F, m, a)) == dickson(F, n * m, a));
    // with a^m = a the parameter is shared
    for (Val a : {Val{1}, F->from_int(-1)})
        for (unsigned n : {1u, 3u, 5u, 7u})
            for (unsigned m : {3u, 5u, 9u})
                CHECK(compose(dickson(F, n, a), dickson(F, m, a)) == dickson(F, n * m, a));
}

TEST_CASE("chebyshev") {
    auto F5 = gf::make_field(5);
    CHECK(chebyshev(F5, 3).num() == Poly::from_ints(F5, {0, -3, 0, 4}));
    for (Val a = 1; a < 5; ++a) {
        Val ai = F5->inv(a);
        CHECK(chebyshev_twist(F5, 3, a).num() == Poly(F5, {0, F5->from_int(-3), 0, F5->mul(4, ai)}));
    }
    // functional equation T_n((w + 1/w)/2) = (w^n + w^-n)/2
    auto F = gf::make_field(7);
    auto E = gf::make_extension(F, 2);
    Val half = E->inv(2);
    for (unsigned n = 1; n <= 12; ++n) {
        auto T = chebyshev(F, n).num();
        for (Val w = 1; w < E->size(); ++w) {
            Val wi = E->inv(w);
            CHECK(T.eval(*E, E->mul(half, E->add(w, wi))) == E->mul(half, E->add(E->pow(w, n), E->pow(wi, n))));
        }
    }
    CHECK_THROWS_AS(chebyshev_twist(F5, 4, 1), ValidationError);
    CHECK_THROWS_AS(chebyshev_twist(F5, 3, 0), ValidationError);
}

TEST_CASE("twisted chebyshev is l_u T_n l_u^-1 and D*(x) = u^(n-1) T_{n,a}") {
    auto F = gf::make_field(13);
    auto E = gf::make_extension(F, 2);
    for (Val a = 1; a < 13; ++a) {
        Val u = sqrt_in(*E, a);
        for (unsigned n : {1u, 3u, 5u, 7u, 9u}) {
            auto lu = as_map(E, Affine{u, 0});
            auto lui = as_map(E, Affine{E->inv(u), 0});
            auto direct = compose(lu, compose(chebyshev(E, n), lui));
            auto tw = chebyshev_twist(F, n, a);
            CHECK(std::vector<Val>(direct.num().coeffs().begin(), direct.num().coeffs().end()) ==
                  std::vector<Val>(tw.num().coeffs().begin(), tw.num().coeffs().end()));
            // D*(x) = D_{n,a}(2x)/2
            auto dstar = dickson(F, n, a).num().compose(Poly(F, {0, 2})).scale(F->inv(2));
            auto rhs = Poly(E, {tw.num().coeffs().begin(), tw.num().coeffs().end()}).scale(E->pow(u, n - 1));
            CHECK(std::vector<Val>(dstar.coeffs().begin(), dstar.coeffs().end()) ==
                  std::vector<Val>(rhs.coeffs().begin(), rhs.coeffs().end()));
        }
    }
}

TEST_CASE("twisted chebyshev inverse law") {
    for (unsigned q : {5u, 7u, 11u, 13u}) {
        auto F = gf::make_field(q);
        std::uint64_t M = std::uint64_t(q) * q - 1;
        for (unsigned n = 3; n <= 15; n += 2) {
            if (std::gcd<std::uint64_t>(n, M) != 1) continue;
            // m = n^-1 mod q^2-1, taken as the odd representative
            std::uint64_t m = 1;
            while ((m * n) % M != 1) ++m;
            if (m % 2 == 0) m += M;  // never happens as M is even, kept for clarity
            for (Val a = 1; a < q; ++a) {
                auto Tn = chebyshev_twist(F, n, a).num();
                auto Tm = chebyshev_twist(F, static_cast<unsigned>(m), a).num();
                for (Val x = 0; x < q; ++x) CHECK(Tm.eval(Tn.eval(x)) == x);
            }
        }
    }
}

TEST_CASE("redei equals l'^-1 x^n l' computed over the quadratic extension") {
    for (unsigned q : {5u, 7u, 9u, 11u}) {
        auto F = q == 9 ? gf::make_field(3, 2) : gf::make_field(q);
        auto E = gf::make_extension(F, 2);
        for (Val a = 1; a < F->size(); ++a) {
            if (F->is_square(a)) continue;
            Val u = sqrt_in(*E, a);
            Moebius l{1, E->neg(u), 1, u};
            // inverse of (x-u)/(x+u) is u(1+y)/(1-y)
            Moebius li{u, u, E->neg(1), 1};
            for (unsigned n : {1u, 3u, 5u, 7u}) {
                if (n % F->characteristic() == 0) continue;
                auto direct = compose(as_map(E, li), compose(cyclic(E, n), as_map(E, l)));
                auto R = redei(F, n, a);
                auto vec = [](const Poly& p) { return std::vector<Val>(p.coeffs().begin(), p.coeffs().end()); };
                CHECK(vec(direct.num()) == vec(R.num()));
                CHECK(vec(direct.den()) == vec(R.den()));
                CHECK(R.degree() == n);
                // the inner map sends infinity to 1; R itself fixes infinity
                CHECK(eval_p1(as_map(E, l), *E, P1Point::inf()) == P1Point::at(1));
                CHECK(eval_p1(R, *F, P1Point::inf()) == P1Point::inf());
            }
        }
    }
    auto F5 = gf::make_field(5);
    CHECK_THROWS_AS(redei(F5, 3, 1), ValidationError);  // 1 is a square
    CHECK_THROWS_AS(redei(F5, 5, 2), ValidationError);  // p | n
}

TEST_CASE("eval_p1 conventions") {
    auto F3 = gf::make_field(3);
    auto x2 = cyclic(F3, 2);
    CHECK(eval_p1(x2, *F3, P1Point::inf()) == P1Point::inf());
    auto inv = RationalMap::make(Poly::constant(F3, 1), Poly::x(F3));
    CHECK(eval_p1(inv, *F3, P1Point::at(0)) == P1Point::inf());
    CHECK(eval_p1(inv, *F3, P1Point::inf()) == P1Point::at(0));
    auto f = RationalMap::make(Poly::from_ints(F3, {1, 0, 1}), Poly::from_ints(F3, {1, 1}));
    CHECK(eval_p1(f, *F3, P1Point::at(2)) == P1Point::inf());
    auto g = RationalMap::make(Poly::from_ints(F3, {1, 2}), Poly::from_ints(F3, {1, 1}));
    CHECK(eval_p1(g, *F3, P1Point::inf()) == P1Point::at(2));
    CHECK_THROWS_AS(eval_p1(x2, *gf::make_field(5), P1Point::at(1)), ValidationError);
}

TEST_CASE("compose examples and reduction") {
    auto F = gf::make_field(7);
    CHECK(compose(cyclic(F, 2), cyclic(F, 3)) == cyclic(F, 6));
    auto inv = RationalMap::make(Poly::constant(F, 1), Poly::x(F));
    CHECK(compose(inv, inv) == cyclic(F, 1));
    for (Val a = 1; a < 7; ++a)
        CHECK(compose(chebyshev_twist(F, 3, a), chebyshev_twist(F, 5, a)) == chebyshev_twist(F, 15, a));
    auto r = RationalMap::make(Poly::from_ints(F, {-1, 0, 1}), Poly::from_ints(F, {-1, 1}));
    CHECK(r == cyclic(F, 1).polynomial(Poly::from_ints(F, {1, 1})));
    CHECK_THROWS_AS(RationalMap::make(Poly::constant(F, 3), Poly::constant(F, 1)), ValidationError);
    CHECK_THROWS_AS(compose(cyclic(F, 2), cyclic(gf::make_field(5), 2)), ValidationError);
}

TEST_CASE("eval commutes with compose on P1(F_{q^t})") {
    std::mt19937_64 rng(7);
    auto F = gf::make_field(5);
    auto rand_poly = [&](int deg) {
        std::vector<Val> c(deg + 1);
        for (auto& v : c) v = rng() % 5;
        if (c.back() == 0) c.back() = 1;
        return Poly(F, c);
    };
    for (int trial = 0; trial < 20; ++trial) {
        RationalMap f = RationalMap::polynomial(rand_poly(2)), g = RationalMap::polynomial(rand_poly(1));
        try {
            f = RationalMap::make(rand_poly(1 + trial % 3), rand_poly(trial % 2 + 1));
            g = RationalMap::make(rand_poly(trial % 3), rand_poly(1 + trial % 2));
        } catch (const ValidationError&) {
            continue;
        }
        auto fg = compose(f, g);
        CHECK(fg.degree() == f.degree() * g.degree());
        for (unsigned t = 1; t <= 3; ++t) {
            auto E = gf::make_extension(F, t);
            for (auto x : p1_points(*E)) CHECK(eval_p1(fg, *E, x) == eval_p1(f, *E, eval_p1(g, *E, x)));
        }
    }
}

TEST_CASE("affine and moebius transforms") {
    auto F = gf::make_field(7);
    CHECK(affine_conjugate(cyclic(F, 2), Affine{}) == cyclic(F, 2));
    auto c = affine_conjugate(cyclic(F, 3), Affine{1, 1});
    CHECK(c.degree() == 3);
    // (x-1)^3 + 1
    CHECK(c.num() == Poly::from_ints(F, {0, 3, -3, 1}));
    auto m = moebius_transform(cyclic(F, 3), Moebius{0, 1, 1, 0}, Moebius{2, 1, 1, 1});
    CHECK(m.degree() == 3);
    CHECK_THROWS_AS(affine_conjugate(cyclic(F, 2), Affine{0, 1}), ValidationError);
    CHECK_THROWS_AS(moebius_transform(cyclic(F, 2), Moebius{1, 2, 2, 4}, Moebius{}), ValidationError);
}

TEST_CASE("decompose_tame_poly") {
    auto F5 = gf::make_field(5);
    auto f = Poly::from_ints(F5, {1, 0, 0, 0, 0, 0, 1});
    auto ds = decompose_tame_poly(f);
    REQUIRE(ds.size() == 2);
    bool found = false;
    for (auto& d : ds) {
        CHECK(d.outer.compose(d.inner) == f);
        if (d.inner == Poly::monomial(F5, 1, 3)) {
            CHECK(d.outer == Poly::from_ints(F5, {1, 0, 1}));
            found = true;
        }
    }
    CHECK(found);

    auto F = gf::make_field(7);
    for (Val a : {Val{1}, Val{3}, F->from_int(-1)}) {
        auto D15 = dickson(F, 15, a).num();
        auto d = decompose_tame_poly(D15);
        REQUIRE(d.size() == 2);
        for (auto& s : d) {
            CHECK(s.outer.compose(s.inner) == D15);
            if (s.inner.degree() == 5) {
                CHECK(s.inner == dickson(F, 5, a).num());
                CHECK(s.outer == dickson(F, 3, F->pow(a, 5)).num());
            }
        }
    }
    // prime degree: nothing to split
    CHECK(decompose_tame_poly(Poly::from_ints(F, {1, 2, 0, 0, 0, 1})).empty());
    // x^4 + x is indecomposable
    CHECK(decompose_tame_poly(Poly::from_ints(F, {0, 1, 0, 0, 1})).empty());
    CHECK_THROWS_AS(decompose_tame_poly(Poly::monomial(F5, 1, 5)), Unsupported);
}

TEST_CASE("map spec parsing") {
    auto F = gf::make_field(7);
    CHECK(parse_map_spec(F, "poly:0,0,1") == cyclic(F, 2));
    CHECK(parse_map_spec(F, "poly:0,-3,0,1") == dickson(F, 3, 1));
    CHECK(parse_map_spec(F, "rat:1/0,1") == RationalMap::make(Poly::constant(F, 1), Poly::x(F)));
    CHECK(parse_map_spec(F, "cyclic:5") == cyclic(F, 5));
    CHECK(parse_map_spec(F, "dickson:5,3") == dickson(F, 5, 3));
    CHECK(parse_map_spec(F, "cheb:5") == chebyshev(F, 5));
    CHECK(parse_map_spec(F, "cheb:5,2") == chebyshev_twist(F, 5, 2));
    CHECK(parse_map_spec(F, "redei:3,3") == redei(F, 3, 3));
    auto F9 = gf::make_field(3, 2);
    Val r = F9->from_residues(std::vector<std::int64_t>{1, 2});
    CHECK(parse_map_spec(F9, "poly:[1,2],1").num() == Poly(F9, {r, 1}));
    CHECK(format_coeffs(Poly(F9, {r, 1})) == std::vector<std::string>{"1,2", "1,0"});

    for (auto m : {dickson(F, 7, 2), redei(F, 5, 3), parse_map_spec(F, "rat:1,2/3,0,1")})
        CHECK(parse_map_spec(F, to_spec(m)) == m);
    auto m9 = parse_map_spec(F9, "rat:[1,2],1/[0,1],0,1");
    CHECK(parse_map_spec(F9, to_spec(m9)) == m9);
    CHECK(to_spec(cyclic(F, 2)) == "poly:0,0,1");

    auto message = [&](const std::string& s) {
        try {
            parse_map_spec(F, s);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("poly:1,x").find("col 8") != std::string::npos);
    CHECK(message("foo:3").find("unknown map kind") != std::string::npos);
    CHECK(message("cyclic:0").find("col 8") != std::string::npos);
    CHECK(message("dickson:3").find("expected ',a'") != std::string::npos);
    CHECK(message("redei:3,1").find("non-square") != std::string::npos);
    CHECK(message("poly:3") != "no error");
}
