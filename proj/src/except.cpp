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

#include "excov/except.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "excov/error.hpp"

namespace excov::except {

using gf::Val;

MapEvaluator::Sparse MapEvaluator::sparse(const projmap::Poly& p, const gf::Field& E) {
    Sparse s;
    auto c = p.coeffs();
    if (c.empty()) return s;
    s.c0 = c[0];
    unsigned lo = 0;
    while (c[lo] == 0) ++lo;
    unsigned g = 0;
    for (unsigned i = lo + 1; i < c.size(); ++i)
        if (c[i] != 0) g = std::gcd(g, i - lo);
    if (g == 0) g = 1;
    s.shift = lo;
    s.stride = g;
    for (unsigned i = lo; i < c.size(); i += g) s.logc.push_back(c[i] ? E.log(c[i]) : gf::Field::kNone);
    return s;
}

// Horner with the running value held as a discrete log: multiplying is an
// addition of logs and adding a coefficient is one Zech lookup.
Val MapEvaluator::Sparse::eval(const gf::Field& F, Val x) const {
    if (x == 0) return c0;
    if (logc.empty()) return 0;
    constexpr auto kNone = gf::Field::kNone;
    const std::uint32_t m = F.unit_order();
    const std::uint32_t* zech = F.zech_table().data();
    const std::uint64_t lx = F.log(x);
    const std::uint32_t ly = static_cast<std::uint32_t>(lx * stride % m);
    std::uint32_t L = logc.back();  // never kNone: leading coefficient
    bool zero = false;
    for (auto i = logc.size() - 1; i-- > 0;) {
        std::uint32_t lc = logc[i];
        if (zero) {
            if (lc != kNone) {
                L = lc;
                zero = false;
            }
            continue;
        }
        L += ly;
        if (L >= m) L -= m;
        if (lc == kNone) continue;
        std::uint32_t d = lc >= L ? lc - L : lc + m - L;
        std::uint32_t z = zech[d];
        if (z == kNone) {
            zero = true;
            continue;
        }
        L += z;
        if (L >= m) L -= m;
    }
    if (zero) return 0;
    return F.exp(L + lx * shift % m);
}

MapEvaluator::MapEvaluator(const RationalMap& f, gf::FieldPtr E) : E_(std::move(E)) {
    if (!E_->extends(*f.field()))
        throw ValidationError("field mismatch: " + E_->spec() + " does not contain " + f.field()->spec());
    num_ = sparse(f.num(), *E_);
    den_ = sparse(f.den(), *E_);
    // den is the constant 1 for polynomials after normalisation
    poly_ = f.is_polynomial();
    inf_ = static_cast<std::uint32_t>(E_->size());
    auto v = projmap::eval_p1(f, *E_, projmap::P1Point::inf());
    at_inf_ = v.infinite ? inf_ : v.value;
}

std::uint32_t MapEvaluator::operator()(std::uint32_t x) const {
    if (x == inf_) return at_inf_;
    const auto& F = *E_;
    Val n = num_.eval(F, x);
    if (poly_) return n;
    Val d = den_.eval(F, x);
    if (d == 0) return inf_;
    return F.div(n, d);
}

gf::FieldPtr extension_for(const RationalMap& f, unsigned t) {
    if (t == 0) throw ValidationError("t must be >= 1");
    return gf::make_extension(f.field(), t);
}

namespace {

class Bitset {
  public:
    explicit Bitset(std::uint64_t n) : w_((n + 63) / 64, 0) {}
    // returns the previous value
    bool test_set(std::uint64_t i) {
        auto& w = w_[i >> 6];
        std::uint64_t b = std::uint64_t{1} << (i & 63);
        bool was = w & b;
        w |= b;
        return was;
    }
    bool test(std::uint64_t i) const { return w_[i >> 6] >> (i & 63) & 1; }

  private:
    std::vector<std::uint64_t> w_;
};

std::vector<std::uint32_t> images(const MapEvaluator& ev) {
    std::vector<std::uint32_t> img(ev.points());
    for (std::uint64_t x = 0; x < img.size(); ++x) img[x] = ev(static_cast<std::uint32_t>(x));
    return img;
}

std::vector<std::uint32_t> fiber_sizes(const std::vector<std::uint32_t>& img) {
    std::vector<std::uint32_t> cnt(img.size(), 0);
    for (auto y : img) ++cnt[y];
    return cnt;
}

void same_field(const RationalMap& f, const RationalMap& g) {
    if (f.field() != g.field())
        throw ValidationError("field mismatch: " + f.field()->spec() + " vs " + g.field()->spec());
}

}  // namespace

std::optional<std::uint64_t> permutation_order(const std::vector<std::uint32_t>& img) {
    std::vector<bool> seen(img.size(), false);
    std::uint64_t order = 1;
    for (std::uint64_t s = 0; s < img.size(); ++s) {
        if (seen[s]) continue;
        std::uint64_t len = 0;
        for (auto x = s; !seen[x]; x = img[x]) {
            seen[x] = true;
            ++len;
        }
        std::uint64_t g = std::gcd(order, len);
        unsigned __int128 l = static_cast<unsigned __int128>(order / g) * len;
        if (l > UINT64_MAX) return std::nullopt;
        order = static_cast<std::uint64_t>(l);
    }
    return order;
}

bool is_bijective_on(const RationalMap& f, unsigned t) {
    MapEvaluator ev(f, extension_for(f, t));
    Bitset seen(ev.points());
    for (std::uint64_t x = 0; x < ev.points(); ++x)
        if (seen.test_set(ev(static_cast<std::uint32_t>(x)))) return false;
    return true;
}

bool surjective_union(const std::vector<RationalMap>& fs, unsigned t) {
    if (fs.empty()) throw ValidationError("surjective_union needs at least one map");
    for (const auto& f : fs) same_field(fs[0], f);
    auto E = extension_for(fs[0], t);
    std::uint64_t N = E->size() + 1, hit = 0;
    Bitset seen(N);
    for (const auto& f : fs) {
        MapEvaluator ev(f, E);
        for (std::uint64_t x = 0; x < N && hit < N; ++x)
            if (!seen.test_set(ev(static_cast<std::uint32_t>(x)))) ++hit;
    }
    return hit == N;
}

ScanReport exceptionality_scan(const RationalMap& f, unsigned t_max, ScanOptions opt) {
    if (t_max == 0) throw ValidationError("t_max must be >= 1");
    ScanReport rep;
    rep.map = projmap::to_spec(f);
    rep.field = f.field()->spec();
    rep.t_max = t_max;
    for (unsigned t = 1; t <= t_max; ++t) {
        gf::FieldPtr E;
        try {
            E = extension_for(f, t);
        } catch (const CapExceeded& e) {
            if (t == 1) throw;
            rep.stopped = e.what();
            break;
        }
        TRecord r;
        r.t = t;
        if (opt.bijectivity_only) {
            r.bijective = r.surjective = is_bijective_on(f, t);
            if (r.bijective) r.image_size = E->size() + std::uint64_t{1};
            rep.records.push_back(std::move(r));
            rep.t_reached = t;
            continue;
        }
        MapEvaluator ev(f, E);
        auto img = images(ev);
        auto cnt = fiber_sizes(img);
        std::map<std::uint64_t, std::uint64_t> hist;
        for (auto c : cnt) {
            ++hist[c];
            if (c) ++r.image_size;
        }
        for (auto [s, v] : hist) r.fibers.push_back({s, v});
        r.surjective = r.image_size == img.size();
        r.bijective = r.surjective;
        if (r.bijective) {
            r.period = permutation_order(img);
            r.period_overflow = !r.period;
        }
        rep.records.push_back(std::move(r));
        rep.t_reached = t;
    }
    rep.d_max = std::min<std::uint64_t>(opt.d_max, rep.t_reached / 2);
    if (rep.d_max >= 1) {
        std::vector<bool> s;
        for (const auto& r : rep.records) s.push_back(r.bijective);
        rep.fitted = frob::fit_from_samples(s, rep.d_max);
    }
    return rep;
}

bool dp_range_test(const RationalMap& f, const RationalMap& g, unsigned t) {
    same_field(f, g);
    auto E = extension_for(f, t);
    MapEvaluator ef(f, E), eg(g, E);
    Bitset a(ef.points()), b(ef.points());
    for (std::uint64_t x = 0; x < ef.points(); ++x) {
        a.test_set(ef(static_cast<std::uint32_t>(x)));
        b.test_set(eg(static_cast<std::uint32_t>(x)));
    }
    for (std::uint64_t y = 0; y < ef.points(); ++y)
        if (a.test(y) != b.test(y)) return false;
    return true;
}

bool idp_multiset_test(const RationalMap& f, const RationalMap& g, unsigned t) {
    same_field(f, g);
    auto E = extension_for(f, t);
    MapEvaluator ef(f, E), eg(g, E);
    return fiber_sizes(images(ef)) == fiber_sizes(images(eg));
}

std::vector<std::pair<unsigned, std::uint64_t>> period_series(const RationalMap& f, unsigned t_max) {
    std::vector<std::pair<unsigned, std::uint64_t>> out;
    for (unsigned t = 1; t <= t_max; ++t) {
        MapEvaluator ev(f, extension_for(f, t));
        auto img = images(ev);
        Bitset seen(img.size());
        bool bij = true;
        for (auto y : img)
            if (seen.test_set(y)) {
                bij = false;
                break;
            }
        if (bij) out.emplace_back(t, permutation_order(img).value_or(0));
    }
    return out;
}

}  // namespace excov::except
