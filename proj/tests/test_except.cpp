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

#include <numeric>
#include <random>

#include "excov/error.hpp"
#include "excov/except.hpp"

using namespace excov;
using namespace excov::except;
using projmap::Poly;
using projmap::P1Point;

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Brute force through the generic P^1 evaluator.
std::vector<std::uint32_t> brute_images(const RationalMap& f, const gf::Field& E) {
    std::vector<std::uint32_t> img;
    auto idx = [&](P1Point p) { return p.infinite ? static_cast<std::uint32_t>(E.size()) : p.value; };
    for (gf::Val x = 0; x < E.size(); ++x) img.push_back(idx(projmap::eval_p1(f, E, P1Point::at(x))));
    img.push_back(idx(projmap::eval_p1(f, E, P1Point::inf())));
    return img;
}

}  // namespace

TEST_CASE("fast evaluator agrees with eval_p1") {
    std::mt19937_64 rng(11);
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {2u, 3u}, {3u, 2u}, {7u, 1u}}) {
        auto F = gf::make_field(p, k);
        for (int trial = 0; trial < 25; ++trial) {
            auto rp = [&](int deg, int zeros) {
                std::vector<gf::Val> c(deg + 1);
                for (auto& v : c) v = rng() % F->size();
                for (int z = 0; z < zeros; ++z) c[rng() % c.size()] = 0;
                c.back() = 1 + rng() % (F->size() - 1);
                return Poly(F, c);
            };
            RationalMap f = projmap::cyclic(F, 1);
            try {
                f = trial % 3 == 0 ? RationalMap::polynomial(rp(1 + trial % 7, trial % 4))
                                   : RationalMap::make(rp(trial % 5, 1), rp(1 + trial % 3, 0));
            } catch (const ValidationError&) {
                continue;
            }
            for (unsigned t = 1; t <= 2; ++t) {
                auto E = gf::make_extension(F, t);
                MapEvaluator ev(f, E);
                auto b = brute_images(f, *E);
                for (std::uint32_t x = 0; x < b.size(); ++x) CHECK(ev(x) == b[x]);
            }
        }
    }
}

TEST_CASE("is_bijective_on examples") {
    auto F5 = gf::make_field(5);
    CHECK(is_bijective_on(projmap::cyclic(F5, 3), 1));
    for (unsigned q : {3u, 5u, 7u}) CHECK(!is_bijective_on(projmap::cyclic(gf::make_field(q), 2), 1));
    CHECK(is_bijective_on(projmap::dickson(gf::make_field(3), 5, 1), 1));
    auto inv = RationalMap::make(Poly::constant(F5, 1), Poly::x(F5));
    CHECK(is_bijective_on(inv, 3));
}

TEST_CASE("cyclic and dickson bijectivity follow the gcd criteria") {
    for (unsigned q : {3u, 5u, 7u}) {
        auto F = gf::make_field(q);
        for (unsigned n = 1; n <= 12; ++n)
            for (unsigned t = 1; t <= 3; ++t) {
                std::uint64_t Q = ipow(q, t);
                CHECK(is_bijective_on(projmap::cyclic(F, n), t) == (std::gcd<std::uint64_t>(n, Q - 1) == 1));
                if (n % 2 == 1 && n % q != 0)
                    for (gf::Val a = 1; a < q; ++a)
                        CHECK(is_bijective_on(projmap::dickson(F, n, a), t) ==
                              (std::gcd<std::uint64_t>(n, Q * Q - 1) == 1));
            }
    }
}

TEST_CASE("surjective_union") {
    auto F5 = gf::make_field(5);
    CHECK(surjective_union({projmap::cyclic(F5, 1)}, 1));
    auto x2 = projmap::cyclic(F5, 2);
    auto x2b = RationalMap::polynomial(Poly(F5, {0, 0, 2}));
    CHECK(surjective_union({x2, x2b}, 1));
    CHECK(!surjective_union({x2}, 1));
    CHECK_THROWS_AS(surjective_union({}, 1), ValidationError);
}

TEST_CASE("exceptionality_scan") {
    auto F3 = gf::make_field(3);
    auto r = exceptionality_scan(projmap::cyclic(F3, 5), 12);
    CHECK(r.t_reached == 12);
    CHECK(r.d_max == 6);
    REQUIRE(r.fitted);
    CHECK(*r.fitted == frob::FrobeniusSet::from_residues(4, {1, 2, 3}));
    for (gf::Val a = 1; a < 3; ++a) {
        auto d = exceptionality_scan(projmap::dickson(F3, 5, a), 12);
        REQUIRE(d.fitted);
        CHECK(*d.fitted == frob::FrobeniusSet::from_residues(2, {1}));
    }
    auto sq = exceptionality_scan(projmap::cyclic(gf::make_field(5), 2), 6);
    REQUIRE(sq.fitted);
    CHECK(sq.fitted->is_empty());
    for (const auto& rec : r.records) {
        CHECK((!rec.bijective || rec.surjective));
        CHECK(rec.period.has_value() == rec.bijective);
        std::uint64_t total = 0, pts = 0;
        for (auto fc : rec.fibers) {
            total += fc.size * fc.values;
            pts += fc.values;
        }
        CHECK(total == ipow(3, rec.t) + 1);
        CHECK(pts == ipow(3, rec.t) + 1);
        if (rec.bijective) CHECK(rec.fibers.size() == 1);
    }
    CHECK(r.map == "poly:0,0,0,0,0,1");
    CHECK(r.field == "3^1");
}

TEST_CASE("scan stops at the cap") {
    auto old = gf::size_cap();
    gf::set_size_cap(1000);
    auto r = exceptionality_scan(projmap::cyclic(gf::make_field(3), 5), 12);
    CHECK(r.t_reached == 6);
    CHECK(!r.stopped.empty());
    CHECK(r.d_max == 3);
    CHECK_THROWS_AS(exceptionality_scan(projmap::cyclic(gf::make_field(1009), 5), 2), CapExceeded);
    gf::set_size_cap(old);
}

TEST_CASE("dp and idp") {
    for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
        auto F = gf::make_field(p);
        auto f = projmap::cyclic(F, 8);
        auto g = RationalMap::polynomial(Poly(F, {0, 0, 0, 0, 0, 0, 0, 0, F->from_int(16)}));
        CHECK(dp_range_test(f, g, 1));
        CHECK(idp_multiset_test(f, f, 1));
    }
    auto F5 = gf::make_field(5);
    auto x2 = projmap::cyclic(F5, 2);
    auto x2b = RationalMap::polynomial(Poly(F5, {0, 0, 2}));
    CHECK(!dp_range_test(x2, x2b, 1));
    CHECK(dp_range_test(x2, x2b, 2));
    // idp implies dp
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        auto f = RationalMap::polynomial(Poly(F5, {gf::Val(rng() % 5), gf::Val(rng() % 5), gf::Val(1 + rng() % 4)}));
        auto g = RationalMap::polynomial(Poly(F5, {gf::Val(rng() % 5), gf::Val(rng() % 5), gf::Val(1 + rng() % 4)}));
        for (unsigned t = 1; t <= 2; ++t)
            if (idp_multiset_test(f, g, t)) CHECK(dp_range_test(f, g, t));
    }
}

TEST_CASE("period series") {
    auto F5 = gf::make_field(5);
    for (auto [t, m] : period_series(projmap::cyclic(F5, 1), 4)) CHECK(m == 1);
    auto ps = period_series(projmap::cyclic(F5, 3), 1);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].second == 2);
    // x^n permutes with period dividing ord of n mod q^t - 1
    for (unsigned n : {3u, 7u, 11u})
        for (auto [t, m] : period_series(projmap::cyclic(F5, n), 3)) {
            std::uint64_t M = ipow(5, t) - 1, o = 1, x = n % M;
            while (x != 1) {
                x = x * n % M;
                ++o;
            }
            CHECK(o % m == 0);
        }
}

TEST_CASE("permutation_order") {
    CHECK(permutation_order({1, 2, 0, 4, 3}) == 6u);
    CHECK(permutation_order({0}) == 1u);
}
