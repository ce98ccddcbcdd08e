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

#include <algorithm>
#include <map>
#include <numeric>

#include "excov/error.hpp"
#include "excov/except.hpp"
#include "excov/grouptheory.hpp"
#include "excov/numtheory.hpp"

using namespace excov;
using namespace excov::group;
using frob::FrobeniusSet;
using Point = Perm::Point;

namespace {

// Nonzero vectors of F_2^3 as 1..7; point index v-1.
Perm from_linear(auto f) {
    std::vector<Point> img(7);
    for (unsigned v = 1; v <= 7; ++v) img[v - 1] = static_cast<Point>(f(v) - 1);
    return Perm(img);
}

// multiplication by x in F_2[x]/(x^3 + x + 1), bits are coefficients
unsigned singer(unsigned v) {
    unsigned w = v << 1;
    if (w & 8) w ^= 0b1011;
    return w;
}

unsigned transvection(unsigned v) { return v ^ ((v >> 1) & 1); }

std::vector<Perm> fano_points() { return {from_linear(singer), from_linear(transvection)}; }

// Lines are the triples {a, b, a^b}; act on them through the point action.
std::vector<std::array<unsigned, 3>> fano_lines() {
    std::vector<std::array<unsigned, 3>> L;
    for (unsigned a = 1; a <= 7; ++a)
        for (unsigned b = a + 1; b <= 7; ++b) {
            std::array<unsigned, 3> l{a, b, a ^ b};
            std::sort(l.begin(), l.end());
            if (std::find(L.begin(), L.end(), l) == L.end()) L.push_back(l);
        }
    return L;
}

Perm on_lines(const Perm& g) {
    auto L = fano_lines();
    std::vector<Point> img;
    for (auto l : L) {
        std::array<unsigned, 3> m;
        for (int i = 0; i < 3; ++i) m[i] = g(static_cast<Point>(l[i] - 1)) + 1u;
        std::sort(m.begin(), m.end());
        img.push_back(static_cast<Point>(std::find(L.begin(), L.end(), m) - L.begin()));
    }
    return Perm(img);
}

std::uint64_t phi(std::uint64_t n) {
    std::uint64_t r = 0;
    for (std::uint64_t k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
    return r;
}

}  // namespace

TEST_CASE("perm parsing and arithmetic") {
    auto a = Perm::parse("(1 2 3)(4 5)");
    CHECK(a.degree() == 5);
    CHECK(a.cycles() == "(1 2 3)(4 5)");
    CHECK(a.order() == 6);
    CHECK(Perm::parse("2 3 1") == Perm::parse("(1 2 3)"));
    CHECK(Perm::parse("[2,3,1]") == Perm::parse("(1 2 3)"));
    CHECK(Perm::parse("(1 2)", 4).degree() == 4);
    // right action: (1)(g h) = ((1)g)h
    auto g = Perm::parse("(1 2)", 3), h = Perm::parse("(2 3)", 3);
    CHECK((g * h)(0) == 2);
    CHECK((g * h).cycles() == "(1 3 2)");
    CHECK((a * a.inverse()).is_identity());
    CHECK(a.pow(-1) == a.inverse());
    CHECK(a.pow(6).is_identity());
    CHECK(a.fixed_points() == 0);
    CHECK(Perm(4).cycles() == "()");
    CHECK_THROWS_AS(Perm::parse("(1 2 1)"), ValidationError);
    CHECK_THROWS_AS(Perm::parse("(1 2"), ValidationError);
    CHECK_THROWS_AS(Perm::parse("(0 1)"), ValidationError);
    CHECK_THROWS_AS(Perm::parse("1 1 2"), ValidationError);
    CHECK_THROWS_AS(Perm::parse("(1 5)", 3), ValidationError);
}

TEST_CASE("group closure") {
    CHECK(PermGroup::generate({Perm::parse("(1 2 3 4 5)")}).order() == 5);
    auto D5 = dihedral_model(5, 3);
    CHECK(PermGroup::generate(D5.geom).order() == 10);
    auto G = PermGroup::generate(fano_points());
    CHECK(G.order() == (8 - 1) * (8 - 2) * (8 - 4));
    CHECK(PermGroup::generate({Perm::parse("(1 2 3 4 5 6 7 8)"), Perm::parse("(1 2)", 8)}).order() == 40320);
    CHECK_THROWS_AS(PermGroup::generate({Perm::parse("(1 2 3 4 5 6 7 8)"), Perm::parse("(1 2)", 8)}, 1000),
                    CapExceeded);
    CHECK_THROWS_AS(PermGroup::generate({Perm::parse("(1 2)"), Perm::parse("(1 2 3)")}), ValidationError);
}

TEST_CASE("analyze_rep") {
    auto d5 = analyze_rep(dihedral_model(5, 3).geom, 5);
    CHECK(d5.transitive);
    CHECK(d5.primitive);
    CHECK(!d5.doubly_transitive);
    auto z4 = analyze_rep({Perm::parse("(1 2 3 4)")}, 4);
    CHECK(z4.transitive);
    CHECK(!z4.primitive);
    CHECK(z4.block == std::vector<Point>{0, 2});
    CHECK(z4.trivial_centralizer == false);
    // (Z/3)^2 x| {±1}, point (a,b) numbered 3a+b
    std::vector<Point> ta(9), tb(9), ng(9);
    for (unsigned a = 0; a < 3; ++a)
        for (unsigned b = 0; b < 3; ++b) {
            ta[3 * a + b] = static_cast<Point>(3 * ((a + 1) % 3) + b);
            tb[3 * a + b] = static_cast<Point>(3 * a + (b + 1) % 3);
            ng[3 * a + b] = static_cast<Point>(3 * ((3 - a) % 3) + (3 - b) % 3);
        }
    auto v = analyze_rep({Perm(ta), Perm(tb), Perm(ng)}, 9);
    CHECK(v.transitive);
    CHECK(!v.primitive);
    auto fano = analyze_rep(fano_points(), 7);
    CHECK(fano.doubly_transitive);
    CHECK(fano.primitive);
    CHECK(fano.trivial_centralizer == true);
    CHECK(!analyze_rep({Perm::parse("(1 2)", 3)}, 3).transitive);
    CHECK(!analyze_rep({Perm::parse("(1 2)", 3)}, 3).trivial_centralizer.has_value());
    // S_n is doubly transitive
    CHECK(analyze_rep({Perm::parse("(1 2 3 4 5 6)"), Perm::parse("(1 2)", 6)}, 6).doubly_transitive);
}

TEST_CASE("coset exceptionality") {
    auto cyc = cyclic_model(5, 3);
    CHECK(coset_exceptionality(cyc, Mode::exceptional) == FrobeniusSet::from_residues(4, {1, 2, 3}));
    auto dih = dihedral_model(5, 3);
    CHECK(frobenius_order(PermGroup::generate(dih.geom), dih.tau) == 2);
    CHECK(coset_exceptionality(dih, Mode::exceptional) == FrobeniusSet::from_residues(4, {1, 3}));
    dih.d = 4;
    CHECK(coset_exceptionality(dih, Mode::exceptional) == FrobeniusSet::from_residues(4, {1, 3}));
    dih.d = 3;
    CHECK_THROWS_AS(coset_exceptionality(dih, Mode::exceptional), ValidationError);
    // a global fixed point makes every coset pass in pr mode
    MonodromyData fx;
    fx.geom = {Perm::parse("(1 2)", 3)};
    fx.tau = Perm::parse("(1 2)", 3);
    CHECK(coset_exceptionality(fx, Mode::pr_exceptional).is_all());
    // doubly transitive with d = 1: the identity fixes everything
    MonodromyData agl;
    agl.geom = {Perm::parse("(1 2 3 4 5)"), Perm::parse("(2 3 5 4)")};
    agl.tau = Perm(5);
    CHECK(coset_exceptionality(agl, Mode::exceptional).is_empty());
    MonodromyData bad;
    bad.geom = {Perm::parse("(1 2)", 3)};
    bad.tau = Perm::parse("(2 3)");
    CHECK_THROWS_AS(coset_exceptionality(bad, Mode::exceptional), ValidationError);
}

TEST_CASE("models agree with the gcd criteria") {
    for (std::uint64_t q : {3u, 4u, 5u, 7u, 9u, 11u, 13u})
        for (unsigned n = 1; n <= 21; ++n) {
            if (std::gcd<std::uint64_t>(n, q) != 1) continue;
            auto c = coset_exceptionality(cyclic_model(n, q), Mode::exceptional);
            auto d = n >= 3 && n % 2 ? coset_exceptionality(dihedral_model(n, q), Mode::exceptional) : c;
            std::uint64_t Q = 1;
            for (unsigned t = 1; t <= 24; ++t) {
                Q = Q * q % (n * std::uint64_t{1});
                std::uint64_t qt = Q == 0 ? n : Q;  // q^t mod n
                CHECK(c.contains(t) == (std::gcd<std::uint64_t>(qt + n - 1, n) == 1));
                if (n >= 3 && n % 2)
                    CHECK(d.contains(t) == (std::gcd<std::uint64_t>((qt * qt + n - 1) % n, n) == 1));
            }
        }
}

TEST_CASE("models agree with scans over F_3") {
    auto F = gf::make_field(3);
    for (unsigned n : {5u, 7u, 11u, 13u}) {
        auto s = except::exceptionality_scan(projmap::cyclic(F, n), 12);
        auto m = coset_exceptionality(cyclic_model(n, 3), Mode::exceptional);
        for (const auto& r : s.records) CHECK(r.bijective == m.contains(r.t));
        auto sd = except::exceptionality_scan(projmap::dickson(F, n, 1), 12);
        auto md = coset_exceptionality(dihedral_model(n, 3), Mode::exceptional);
        for (const auto& r : sd.records) CHECK(r.bijective == md.contains(r.t));
    }
}

TEST_CASE("fiber products") {
    auto cyc = cyclic_model(5, 3);
    auto T = fiber_tensor(cyc.geom, cyc.geom);
    CHECK(component_count(T, 5, 5, Domain::off_diagonal) == 4);
    CHECK(component_count(T, 5, 5, Domain::full) == 5);
    auto Ta = T;
    Ta.push_back(fiber_tensor({cyc.tau}, {cyc.tau})[0]);
    CHECK(component_count(Ta, 5, 5, Domain::off_diagonal) == 1);
    auto dih = dihedral_model(5, 3);
    CHECK(component_count(fiber_tensor(dih.geom, dih.geom), 5, 5, Domain::off_diagonal) == 2);
    // geometric n-1, arithmetic = orbits of <q> on nonzero differences
    for (std::uint64_t q : {2u, 3u, 5u, 7u})
        for (unsigned n = 2; n <= 15; ++n) {
            if (std::gcd<std::uint64_t>(n, q) != 1) continue;
            auto M = cyclic_model(n, q);
            auto G = fiber_tensor(M.geom, M.geom);
            CHECK(component_count(G, n, n, Domain::off_diagonal) == n - 1);
            G.push_back(fiber_tensor({M.tau}, {M.tau})[0]);
            std::uint64_t expect = 0;
            for (auto e : nt::divisors(n))
                if (e > 1) expect += phi(e) / nt::mult_order(q % e, e);
            CHECK(component_count(G, n, n, Domain::off_diagonal) == expect);
        }
    CHECK_THROWS_AS(fiber_tensor(cyc.geom, {}), ValidationError);
    CHECK_THROWS_AS(component_count(fiber_tensor({Perm::parse("(1 2)")}, {Perm::parse("(1 2 3)")}), 2, 3,
                                    Domain::off_diagonal),
                    ValidationError);
}

TEST_CASE("trace tests") {
    auto cyc = cyclic_model(5, 3);
    auto M = cyc;
    M.geom2 = cyc.geom;
    M.tau2 = cyc.tau;
    CHECK(davenport_trace_test(M) == FrobeniusSet::all());
    CHECK(idp_trace_test(M) == FrobeniusSet::all());
    CHECK(sdp_check(M).strong);

    // Fano points vs lines, d = 1
    MonodromyData F;
    F.geom = fano_points();
    for (const auto& g : F.geom) F.geom2.push_back(on_lines(g));
    F.tau = Perm(7);
    F.tau2 = Perm(7);
    CHECK(PermGroup::generate(F.geom2).order() == 168);
    CHECK(idp_trace_test(F).is_all());
    auto fs = sdp_check(F);
    CHECK(fs.strong);
    CHECK(fs.chars_equal_on_G);
    // points and lines are not isomorphic actions: some element maps a
    // point stabilizer outside the line stabilizers, seen as differing
    // orbit structure of the stabilizer of point 1 on lines
    auto G = PermGroup::generate(F.geom);
    std::size_t lines_fixed_by_stab = 0;
    for (std::size_t l = 0; l < 7; ++l) {
        bool all = true;
        for (std::size_t i = 0; i < G.order() && all; ++i)
            if (G.elements()[i](0) == 0) all = on_lines(G.elements()[i])(static_cast<Point>(l)) == l;
        lines_fixed_by_stab += all;
    }
    CHECK(lines_fixed_by_stab == 0);

    // Z/4 regular vs its quotient on 2 points
    MonodromyData Z;
    Z.geom = {Perm::parse("(1 2 3 4)")};
    Z.geom2 = {Perm::parse("(1 2)")};
    Z.tau = Perm(4);
    Z.tau2 = Perm(2);
    CHECK(davenport_trace_test(Z).is_empty());
    CHECK(idp_trace_test(Z).is_empty());
    CHECK(!sdp_check(Z).strong);
    // the quotient is not faithful, so it cannot be the first action
    std::swap(Z.geom, Z.geom2);
    std::swap(Z.tau, *Z.tau2);
    CHECK_THROWS_AS(davenport_trace_test(Z), ValidationError);
}

TEST_CASE("sdp lemma on the Fano incidence structure with a polarity") {
    // points 0..6 then lines 7..13; the polarity sends v to v-perp
    auto L = fano_lines();
    auto perp = [&](unsigned v) {
        std::array<unsigned, 3> m;
        int k = 0;
        for (unsigned w = 1; w <= 7; ++w)
            if (__builtin_popcount(v & w) % 2 == 0) m[k++] = w;
        std::sort(m.begin(), m.end());
        return static_cast<unsigned>(std::find(L.begin(), L.end(), m) - L.begin());
    };
    auto both = [&](const Perm& g) {
        std::vector<Point> img(g.images());
        auto lg = on_lines(g);
        for (auto x : lg.images()) img.push_back(static_cast<Point>(x + 7));
        return Perm(img);
    };
    std::vector<Point> pol(14);
    for (unsigned v = 1; v <= 7; ++v) {
        pol[v - 1] = static_cast<Point>(7 + perp(v));
        pol[7 + perp(v)] = static_cast<Point>(v - 1);
    }
    MonodromyData M;
    for (const auto& g : fano_points()) M.geom.push_back(both(g));
    M.tau = Perm(pol);
    M.geom2 = M.geom;
    M.tau2 = M.tau;
    auto r = sdp_check(M);
    CHECK(r.strong);
    CHECK(r.lemma_hypothesis);
    CHECK(!r.lemma_violated);
    // the polarity swaps the two halves so the outer coset has trace 0, and
    // Singer cycles of order 7 are fixed-point free inside G
    CHECK(coset_exceptionality(M, Mode::pr_exceptional).is_empty());
    CHECK(frobenius_order(PermGroup::generate(M.geom), M.tau) == 2);

    // trivial G: equal characters on G, yet the outer element separates
    MonodromyData T;
    T.geom = {Perm(2)};
    T.geom2 = {Perm(2)};
    T.tau = Perm::parse("(1 2)");
    T.tau2 = Perm(2);
    auto t = sdp_check(T);
    CHECK(t.chars_equal_on_G);
    CHECK(!t.strong);
    CHECK(!t.lemma_hypothesis);
    CHECK(!t.lemma_violated);
}
