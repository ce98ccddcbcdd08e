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

#include "excov/projmap.hpp"

#include <algorithm>
#include <cctype>

#include "excov/error.hpp"
#include "excov/numtheory.hpp"

namespace excov::projmap {

namespace {

void need(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

void same(const FieldPtr& a, const FieldPtr& b) {
    if (a != b) throw ValidationError("field mismatch: " + a->spec() + " vs " + b->spec());
}

}  // namespace

Poly::Poly(FieldPtr f, std::vector<Val> c) : field_(std::move(f)), c_(std::move(c)) {
    for (Val v : c_)
        need(v < field_->size(), "coefficient out of range for " + field_->spec());
    trim();
}

Poly Poly::monomial(FieldPtr f, Val c, unsigned deg) {
    std::vector<Val> v(deg + 1, 0);
    v[deg] = c;
    return Poly(std::move(f), std::move(v));
}

Poly Poly::from_ints(FieldPtr f, std::initializer_list<std::int64_t> c) {
    std::vector<Val> v;
    for (auto n : c) v.push_back(f->from_int(n));
    return Poly(std::move(f), std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Poly::same_field(const Poly& o) const { same(field_, o.field_); }

Val Poly::eval(const gf::Field& F, Val x) const {
    Val r = 0;
    for (auto i = c_.size(); i-- > 0;) r = F.add(F.mul(r, x), c_[i]);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    same_field(o);
    const auto& F = *field_;
    std::vector<Val> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add((*this)[i], o[i]);
    return Poly(field_, std::move(r));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = field_->neg(v);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    same_field(o);
    if (is_zero() || o.is_zero()) return Poly(field_);
    const auto& F = *field_;
    std::vector<Val> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(c_[i], o.c_[j]));
    }
    return Poly(field_, std::move(r));
}

Poly Poly::scale(Val c) const {
    Poly r = *this;
    for (auto& v : r.c_) v = field_->mul(v, c);
    r.trim();
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(field_, 1), b = *this;
    for (; e; e >>= 1) {
        if (e & 1) r = r * b;
        if (e > 1) b = b * b;
    }
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scale(field_->inv(lead()));
}

Poly Poly::derivative() const {
    std::vector<Val> r;
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.push_back(field_->mul(field_->from_int(static_cast<std::int64_t>(i % field_->characteristic())), c_[i]));
    return Poly(field_, std::move(r));
}

Poly Poly::compose(const Poly& inner) const {
    same_field(inner);
    Poly r(field_);
    for (auto i = c_.size(); i-- > 0;) r = r * inner + constant(field_, c_[i]);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    need(!b.is_zero(), "polynomial division by zero");
    need(a.field() == b.field(), "field mismatch");
    const auto& F = *a.field();
    std::vector<Val> r(a.coeffs().begin(), a.coeffs().end());
    int db = b.degree();
    if (a.degree() < db) return {Poly(a.field()), a};
    std::vector<Val> q(a.degree() - db + 1, 0);
    Val il = F.inv(b.lead());
    for (int i = a.degree(); i >= db; --i) {
        Val c = F.mul(r[i], il);
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]));
    }
    r.resize(db);
    return {Poly(a.field(), std::move(q)), Poly(a.field(), std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

RationalMap RationalMap::make(Poly num, Poly den) {
    same(num.field(), den.field());
    need(!den.is_zero(), "rational map with zero denominator");
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    Val il = num.field()->inv(den.lead());
    num = num.scale(il);
    den = den.scale(il);
    need(std::max(num.degree(), den.degree()) >= 1, "rational map must be non-constant");
    return RationalMap(std::move(num), std::move(den));
}

RationalMap RationalMap::polynomial(Poly p) {
    auto F = p.field();
    return make(std::move(p), Poly::constant(F, 1));
}

unsigned RationalMap::degree() const noexcept {
    return static_cast<unsigned>(std::max(num_.degree(), den_.degree()));
}

P1Point eval_p1(const RationalMap& f, const gf::Field& F, P1Point x) {
    need(F.extends(*f.field()), "field mismatch: " + F.spec() + " does not contain " + f.field()->spec());
    if (x.infinite) {
        int dn = f.num().degree(), dd = f.den().degree();
        if (dn > dd) return P1Point::inf();
        if (dn < dd) return P1Point::at(0);
        return P1Point::at(F.div(f.num().lead(), f.den().lead()));
    }
    need(x.value < F.size(), "point outside " + F.spec());
    Val d = f.den().eval(F, x.value);
    // gcd(num, den) = 1 so a zero of den is never a zero of num.
    if (d == 0) return P1Point::inf();
    return P1Point::at(F.div(f.num().eval(F, x.value), d));
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
    same(f.field(), g.field());
    // Homogenise: f(a/b) = sum N_i a^i b^(n-i) / sum D_i a^i b^(n-i).
    const auto& a = g.num();
    const auto& b = g.den();
    unsigned n = f.degree();
    std::vector<Poly> ap{Poly::constant(f.field(), 1)}, bp{Poly::constant(f.field(), 1)};
    for (unsigned i = 1; i <= n; ++i) {
        ap.push_back(ap.back() * a);
        bp.push_back(bp.back() * b);
    }
    auto hom = [&](const Poly& h) {
        Poly r(f.field());
        for (int i = 0; i <= h.degree(); ++i)
            if (h[i] != 0) r = r + (ap[i] * bp[n - i]).scale(h[i]);
        return r;
    };
    return RationalMap::make(hom(f.num()), hom(f.den()));
}

namespace {

void odd_char(const FieldPtr& F, const char* what) {
    need(F->characteristic() != 2, std::string(what) + " requires odd characteristic");
}

void positive(unsigned n) { need(n >= 1, "degree n must be >= 1"); }

void in_field(const FieldPtr& F, Val a) { need(a < F->size(), "parameter outside " + F->spec()); }

// Exact binomial, n small enough that it fits.
unsigned __int128 binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

Val binom_mod(const gf::Field& F, unsigned n, unsigned k) {
    // Lucas
    std::uint64_t p = F.characteristic();
    std::uint64_t r = 1;
    while ((n || k) && r) {
        unsigned a = n % p, b = k % p;
        r = r * static_cast<std::uint64_t>(binom(a, b) % p) % p;
        n /= static_cast<unsigned>(p);
        k /= static_cast<unsigned>(p);
    }
    return F.from_int(static_cast<std::int64_t>(r));
}

constexpr unsigned kMaxDickson = 120;

}  // namespace

RationalMap cyclic(const FieldPtr& F, unsigned n) {
    positive(n);
    return RationalMap::polynomial(Poly::monomial(F, 1, n));
}

Poly dickson_poly(const FieldPtr& F, unsigned n, Val a) {
    positive(n);
    in_field(F, a);
    need(n <= kMaxDickson, "dickson degree above " + std::to_string(kMaxDickson));
    const auto& K = *F;
    std::uint64_t p = K.characteristic();
    std::vector<Val> c(n + 1, 0);
    Val ma = K.neg(a), mai = 1;
    for (unsigned i = 0; 2 * i <= n; ++i) {
        // n/(n-i) C(n-i,i) = C(n-i,i) + C(n-i-1,i-1)
        unsigned __int128 d = (i == 0) ? 1 : binom(n - i, i) + binom(n - i - 1, i - 1);
        if (i == 0 && n == 0) d = 2;
        c[n - 2 * i] = K.mul(K.from_int(static_cast<std::int64_t>(d % p)), mai);
        mai = K.mul(mai, ma);
    }
    return Poly(F, std::move(c));
}

RationalMap dickson(const FieldPtr& F, unsigned n, Val a) {
    odd_char(F, "dickson");
    return RationalMap::polynomial(dickson_poly(F, n, a));
}

namespace {

std::vector<Val> chebyshev_coeffs(const FieldPtr& F, unsigned n) {
    const auto& K = *F;
    auto d = dickson_poly(F, n, 1);
    std::vector<Val> c(n + 1, 0);
    Val half = K.inv(2), pw = half;  // 2^j / 2
    for (unsigned j = 0; j <= n; ++j) {
        c[j] = K.mul(d[j], pw);
        pw = K.add(pw, pw);
    }
    return c;
}

}  // namespace

RationalMap chebyshev(const FieldPtr& F, unsigned n) {
    odd_char(F, "chebyshev");
    positive(n);
    return RationalMap::polynomial(Poly(F, chebyshev_coeffs(F, n)));
}

RationalMap chebyshev_twist(const FieldPtr& F, unsigned n, Val a) {
    odd_char(F, "chebyshev_twist");
    positive(n);
    in_field(F, a);
    need(n % 2 == 1, "chebyshev_twist requires odd n");
    need(a != 0, "chebyshev_twist requires a != 0");
    const auto& K = *F;
    auto c = chebyshev_coeffs(F, n);
    Val ai = K.inv(a);
    for (unsigned j = 1; j <= n; j += 2) c[j] = K.mul(c[j], K.pow(ai, (j - 1) / 2));
    return RationalMap::polynomial(Poly(F, std::move(c)));
}

RationalMap redei(const FieldPtr& F, unsigned n, Val a) {
    odd_char(F, "redei");
    positive(n);
    in_field(F, a);
    need(n % 2 == 1, "redei requires odd n");
    need(n % F->characteristic() != 0, "redei requires gcd(n, p) = 1");
    need(a != 0 && !F->is_square(a), "redei requires a non-square a");
    const auto& K = *F;
    std::vector<Val> num(n + 1, 0), den(n + 1, 0);
    for (unsigned j = 0; j <= n; ++j) {
        Val b = binom_mod(K, n, j);
        if (j % 2 == 0)
            num[n - j] = K.mul(b, K.pow(a, j / 2));
        else
            den[n - j] = K.mul(b, K.pow(a, (j - 1) / 2));
    }
    return RationalMap::make(Poly(F, std::move(num)), Poly(F, std::move(den)));
}

RationalMap as_map(const FieldPtr& F, Affine alpha) {
    in_field(F, alpha.a);
    in_field(F, alpha.b);
    need(alpha.a != 0, "singular affine map");
    return RationalMap::polynomial(Poly(F, {alpha.b, alpha.a}));
}

RationalMap as_map(const FieldPtr& F, Moebius m) {
    for (Val v : {m.a, m.b, m.c, m.d}) in_field(F, v);
    const auto& K = *F;
    need(K.sub(K.mul(m.a, m.d), K.mul(m.b, m.c)) != 0, "singular Moebius transformation");
    return RationalMap::make(Poly(F, {m.b, m.a}), Poly(F, {m.d, m.c}));
}

RationalMap affine_transform(const RationalMap& f, Affine outer, Affine inner) {
    return compose(as_map(f.field(), outer), compose(f, as_map(f.field(), inner)));
}

RationalMap affine_conjugate(const RationalMap& f, Affine alpha) {
    const auto& K = *f.field();
    auto am = as_map(f.field(), alpha);
    Val ia = K.inv(alpha.a);
    Affine inv{ia, K.neg(K.mul(alpha.b, ia))};
    return compose(am, compose(f, as_map(f.field(), inv)));
}

RationalMap moebius_transform(const RationalMap& f, Moebius m, Moebius m2) {
    return compose(as_map(f.field(), m), compose(f, as_map(f.field(), m2)));
}

namespace {

// Truncated power series product mod y^len.
std::vector<Val> series_mul(const gf::Field& K, const std::vector<Val>& a, const std::vector<Val>& b,
                            std::size_t len) {
    std::vector<Val> r(len, 0);
    for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    }
    return r;
}

std::vector<Val> series_pow(const gf::Field& K, std::vector<Val> b, unsigned e, std::size_t len) {
    std::vector<Val> r(len, 0);
    r[0] = 1;
    for (; e; e >>= 1) {
        if (e & 1) r = series_mul(K, r, b, len);
        if (e > 1) b = series_mul(K, b, b, len);
    }
    return r;
}

std::optional<Decomposition> try_split(const Poly& f, unsigned m) {
    const auto& F = f.field();
    const auto& K = *F;
    unsigned N = static_cast<unsigned>(f.degree()), r = N / m;
    Poly fm = f.monic();
    // Reversed series: rev(h)^r = rev(f) mod y^m, solved one coefficient at a time.
    std::vector<Val> frev(m, 0), hrev(m, 0);
    for (unsigned k = 0; k < m; ++k) frev[k] = fm[N - k];
    hrev[0] = 1;
    Val ir = K.inv(K.from_int(r));
    for (unsigned k = 1; k < m; ++k) {
        auto s = series_pow(K, hrev, r, k + 1);
        hrev[k] = K.mul(K.sub(frev[k], s[k]), ir);
    }
    std::vector<Val> hc(m + 1, 0);
    for (unsigned k = 0; k < m; ++k) hc[m - k] = hrev[k];
    Poly h(F, std::move(hc));
    // h-adic expansion; every digit must be constant.
    std::vector<Val> g;
    Poly rest = fm;
    while (!rest.is_zero()) {
        auto [q, rem] = divmod(rest, h);
        if (rem.degree() > 0) return std::nullopt;
        g.push_back(rem[0]);
        rest = std::move(q);
    }
    Poly outer = Poly(F, std::move(g)).scale(f.lead());
    if (!(outer.compose(h) == f)) return std::nullopt;
    return Decomposition{std::move(outer), std::move(h)};
}

}  // namespace

std::vector<Decomposition> decompose_tame_poly(const Poly& f) {
    need(f.degree() >= 1, "decomposition needs a non-constant polynomial");
    auto N = static_cast<std::uint64_t>(f.degree());
    if (N % f.field()->characteristic() == 0)
        throw Unsupported("wild case unsupported: p divides deg f = " + std::to_string(N));
    std::vector<Decomposition> out;
    for (auto m : nt::divisors(N)) {
        if (m == 1 || m == N) continue;
        if (auto d = try_split(f, static_cast<unsigned>(m))) out.push_back(std::move(*d));
    }
    return out;
}

namespace {

struct SpecParser {
    const FieldPtr& F;
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError("map spec '" + s + "' col " + std::to_string(pos + 1) + ": " + what);
    }
    bool at(char c) const { return pos < s.size() && s[pos] == c; }
    void expect(char c) {
        if (!at(c)) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::int64_t integer() {
        std::size_t start = pos;
        if (at('-') || at('+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) {
            pos = start;
            fail("expected integer");
        }
        try {
            return std::stoll(s.substr(start, pos - start));
        } catch (const std::out_of_range&) {
            pos = start;
            fail("integer out of range");
        }
    }
    unsigned degree() {
        std::size_t start = pos;
        auto n = integer();
        if (n < 1 || n > 1000000) {
            pos = start;
            fail("degree must be in [1, 1000000]");
        }
        return static_cast<unsigned>(n);
    }
    Val coeff() {
        if (at('[')) {
            ++pos;
            std::vector<std::int64_t> r{integer()};
            while (at(',')) {
                ++pos;
                r.push_back(integer());
            }
            std::size_t close = pos;
            expect(']');
            if (r.size() > F->degree()) {
                pos = close;
                fail("element literal longer than field degree");
            }
            return F->from_residues(r);
        }
        return F->from_int(integer());
    }
    Poly poly() {
        std::vector<Val> c{coeff()};
        while (at(',')) {
            ++pos;
            c.push_back(coeff());
        }
        return Poly(F, std::move(c));
    }
    void end() {
        if (pos != s.size()) fail("unexpected trailing input");
    }
};

}  // namespace

RationalMap parse_map_spec(const FieldPtr& F, const std::string& spec) {
    SpecParser P{F, spec};
    auto colon = spec.find(':');
    if (colon == std::string::npos) P.fail("expected '<kind>:'");
    std::string kind = spec.substr(0, colon);
    P.pos = colon + 1;
    try {
        if (kind == "poly") {
            auto p = P.poly();
            P.end();
            return RationalMap::polynomial(std::move(p));
        }
        if (kind == "rat") {
            auto n = P.poly();
            P.expect('/');
            auto d = P.poly();
            P.end();
            return RationalMap::make(std::move(n), std::move(d));
        }
        if (kind == "cyclic") {
            auto n = P.degree();
            P.end();
            return cyclic(F, n);
        }
        if (kind == "dickson" || kind == "cheb" || kind == "redei") {
            auto n = P.degree();
            std::optional<Val> a;
            if (P.at(',')) {
                ++P.pos;
                a = P.coeff();
            }
            P.end();
            if (kind == "cheb") return a ? chebyshev_twist(F, n, *a) : chebyshev(F, n);
            if (!a) P.fail("expected ',a'");
            return kind == "dickson" ? dickson(F, n, *a) : redei(F, n, *a);
        }
    } catch (const ValidationError& e) {
        if (std::string(e.what()).starts_with("map spec")) throw;
        throw ValidationError("map spec '" + spec + "': " + e.what());
    }
    P.pos = 0;
    P.fail("unknown map kind '" + kind + "'");
}

std::string to_spec(const RationalMap& f) {
    auto join = [&](const Poly& p) {
        std::string s;
        const auto& K = *p.field();
        for (int i = 0; i <= std::max(p.degree(), 0); ++i) {
            if (i) s += ',';
            s += K.degree() == 1 ? K.format(p[i]) : "[" + K.format(p[i]) + "]";
        }
        return s;
    };
    if (f.is_polynomial() && f.den()[0] == 1) return "poly:" + join(f.num());
    return "rat:" + join(f.num()) + "/" + join(f.den());
}

std::vector<std::string> format_coeffs(const Poly& p) {
    std::vector<std::string> out;
    for (Val v : p.coeffs()) out.push_back(p.field()->format(v));
    return out;
}

}  // namespace excov::projmap
