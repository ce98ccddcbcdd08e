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

#include "excov/gf.hpp"

#include <atomic>
#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>

#include "excov/error.hpp"
#include "excov/numtheory.hpp"

namespace excov::gf {

namespace {

std::atomic<std::uint64_t>& cap_storage() {
    static std::atomic<std::uint64_t> cap = [] {
        std::uint64_t c = std::uint64_t{1} << 24;
        if (const char* env = std::getenv("EXCOV_CAP")) {
            char* end = nullptr;
            auto v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) c = v;
        }
        return c;
    }();
    return cap;
}

// Dense polynomials over a base field, low-to-high, used only while
// constructing moduli and tables.
using Vec = std::vector<Val>;

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec poly_mod(Vec a, const Vec& f, const Field& F) {
    trim(a);
    auto df = f.size() - 1;
    auto lead_inv = F.inv(f.back());
    while (a.size() > df) {
        auto shift = a.size() - 1 - df;
        auto c = F.mul(a.back(), lead_inv);
        for (std::size_t i = 0; i <= df; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, f[i]));
        trim(a);
    }
    return a;
}

Vec poly_mulmod(const Vec& a, const Vec& b, const Vec& f, const Field& F) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return poly_mod(std::move(r), f, F);
}

Vec poly_powmod(Vec a, std::uint64_t e, const Vec& f, const Field& F) {
    Vec r{1};
    a = poly_mod(std::move(a), f, F);
    while (e) {
        if (e & 1) r = poly_mulmod(r, a, f, F);
        e >>= 1;
        if (e) a = poly_mulmod(a, a, f, F);
    }
    return r;
}

Vec poly_gcd(Vec a, Vec b, const Field& F) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = poly_mod(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool has_root(const Field& F, const Vec& f) {
    if (F.size() > 64) return false;
    for (Val x = 0; x < F.size(); ++x) {
        Val acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
        if (acc == 0) return true;
    }
    return false;
}

}  // namespace

std::uint64_t size_cap() { return cap_storage().load(); }
void set_size_cap(std::uint64_t cap) {
    if (cap == 0) throw ValidationError("size cap must be positive");
    cap_storage().store(cap);
}

bool is_irreducible(const Field& F, std::span<const Val> monic) {
    Vec f(monic.begin(), monic.end());
    trim(f);
    if (f.size() < 2) return false;
    auto t = static_cast<unsigned>(f.size() - 1);
    if (t == 1) return true;
    const std::uint64_t q = F.size();
    // x^{q^i} mod f for i = 1..t
    std::vector<Vec> frob(t + 1);
    frob[0] = Vec{0, 1};
    for (unsigned i = 1; i <= t; ++i) frob[i] = poly_powmod(frob[i - 1], q, f, F);
    auto x = poly_mod(Vec{0, 1}, f, F);
    if (frob[t] != x) return false;
    for (auto r : nt::prime_divisors(t)) {
        auto h = frob[t / r];
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = F.sub(h[1], 1);
        trim(h);
        auto g = poly_gcd(h, f, F);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<Val> least_irreducible(const Field& base, unsigned t) {
    if (t < 1) throw ValidationError("extension degree must be >= 1");
    const std::uint64_t q = base.size();
    std::uint64_t count = 0;
    if (!nt::checked_pow(q, t, count)) throw CapExceeded("modulus search space too large");
    // Lexicographic order on (c0, c1, ..., c_{t-1}): c0 is the most significant digit.
    Vec f(t + 1, 0);
    f[t] = 1;
    // For t >= 2 every candidate with c0 = 0 is divisible by x, so start at c0 = 1.
    const std::uint64_t start = t >= 2 ? count / q : 0;
    for (std::uint64_t code = start; code < count; ++code) {
        auto c = code;
        for (unsigned i = t; i-- > 0;) {
            f[i] = static_cast<Val>(c % q);
            c /= q;
        }
        if (t >= 2 && has_root(base, f)) continue;
        if (is_irreducible(base, f)) return f;
    }
    throw InvariantFailure("no irreducible polynomial found");
}

struct Builder {
    static void tables_from_sequence(Field& F, const std::vector<Val>& seq) {
        F.exp_.assign(2 * std::size_t{F.m_}, 0);
        for (std::uint32_t i = 0; i < F.m_; ++i) {
            F.exp_[i] = seq[i];
            F.exp_[i + F.m_] = seq[i];
        }
        F.log_.assign(F.q_, 0);
        std::vector<char> seen(F.q_, 0);
        for (std::uint32_t i = 0; i < F.m_; ++i) {
            if (seen[seq[i]] || seq[i] == 0) throw InvariantFailure("generator is not primitive");
            seen[seq[i]] = 1;
            F.log_[seq[i]] = i;
        }
        F.zech_.assign(F.m_, Field::kNone);
        for (std::uint32_t i = 0; i < F.m_; ++i) {
            Val v = F.exp_[i];
            Val d0 = v % F.p_;
            Val w = d0 == F.p_ - 1 ? v - d0 : v + 1;
            F.zech_[i] = w == 0 ? Field::kNone : F.log_[w];
        }
    }

    static FieldPtr prime(std::uint32_t p) {
        auto F = std::shared_ptr<Field>(new Field());
        F->p_ = p;
        F->q_ = p;
        F->m_ = p - 1;
        F->k_ = 1;
        F->t_ = 1;
        F->modulus_ = {0, 1};
        std::uint32_t g = 1;
        if (p > 2) {
            auto divs = nt::prime_divisors(p - 1);
            for (g = 2; g < p; ++g) {
                bool prim = true;
                for (auto r : divs)
                    if (nt::powmod(g, (p - 1) / r, p) == 1) {
                        prim = false;
                        break;
                    }
                if (prim) break;
            }
        }
        std::vector<Val> seq(F->m_);
        std::uint64_t cur = 1;
        for (std::uint32_t i = 0; i < F->m_; ++i) {
            seq[i] = static_cast<Val>(cur);
            cur = cur * g % p;
        }
        tables_from_sequence(*F, seq);
        return F;
    }

    static FieldPtr extension(const FieldPtr& base, unsigned t, std::uint64_t Q) {
        const Field& B = *base;
        auto F = std::shared_ptr<Field>(new Field());
        F->p_ = B.characteristic();
        F->q_ = static_cast<std::uint32_t>(Q);
        F->m_ = F->q_ - 1;
        F->k_ = B.degree() * t;
        F->t_ = t;
        F->base_ = base;
        F->modulus_ = least_irreducible(B, t);
        const Vec& f = F->modulus_;
        const std::uint64_t q = B.size();

        auto pack = [&](const Vec& c) {
            std::uint64_t v = 0;
            for (unsigned i = t; i-- > 0;) v = v * q + (i < c.size() ? c[i] : 0);
            return static_cast<Val>(v);
        };
        auto is_primitive = [&](const Vec& g) {
            for (auto r : nt::prime_divisors(F->m_)) {
                auto h = poly_powmod(g, F->m_ / r, f, B);
                if (h == Vec{1}) return false;
            }
            return true;
        };

        std::vector<Val> seq(F->m_);
        // Prefer x + c: multiplying by it is a shift plus one scaled add.
        for (std::uint64_t c = 0; c < q; ++c) {
            Vec g{static_cast<Val>(c), 1};
            if (!is_primitive(g)) continue;
            Vec cur(t, 0);
            cur[0] = 1;
            Vec next(t, 0);
            for (std::uint32_t i = 0; i < F->m_; ++i) {
                seq[i] = pack(cur);
                Val lead = cur[t - 1];
                for (unsigned j = 0; j < t; ++j) {
                    Val v = B.mul(static_cast<Val>(c), cur[j]);
                    if (j > 0) v = B.add(v, cur[j - 1]);
                    next[j] = B.sub(v, B.mul(lead, f[j]));
                }
                std::swap(cur, next);
            }
            if (pack(cur) != 1) throw InvariantFailure("primitive element has wrong order");
            tables_from_sequence(*F, seq);
            return F;
        }
        for (std::uint64_t code = 2; code < Q; ++code) {
            Vec g(t, 0);
            auto c = code;
            for (unsigned i = 0; i < t; ++i, c /= q) g[i] = static_cast<Val>(c % q);
            trim(g);
            if (!is_primitive(g)) continue;
            Vec cur{1};
            for (std::uint32_t i = 0; i < F->m_; ++i) {
                seq[i] = pack(cur);
                cur = poly_mulmod(cur, g, f, B);
            }
            tables_from_sequence(*F, seq);
            return F;
        }
        throw InvariantFailure("no primitive element found");
    }
};

FieldPtr make_field(std::uint64_t p, unsigned k) {
    if (!nt::is_prime(p)) throw ValidationError("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw ValidationError("field degree must be >= 1");
    std::uint64_t Q = 0;
    if (!nt::checked_pow(p, k, Q) || Q > size_cap())
        throw CapExceeded("field " + std::to_string(p) + "^" + std::to_string(k) + " exceeds size cap " +
                          std::to_string(size_cap()));
    static std::mutex mu;
    static std::map<std::uint64_t, std::weak_ptr<const Field>> cache;
    FieldPtr prime;
    {
        std::lock_guard lock(mu);
        prime = cache[p].lock();
        if (!prime) {
            prime = Builder::prime(static_cast<std::uint32_t>(p));
            cache[p] = prime;
        }
    }
    return k == 1 ? prime : make_extension(prime, k);
}

FieldPtr make_extension(const FieldPtr& base, unsigned t) {
    if (!base) throw ValidationError("null base field");
    if (t < 1) throw ValidationError("extension degree must be >= 1");
    if (t == 1) return base;
    std::uint64_t Q = 0;
    if (!nt::checked_pow(base->size(), t, Q) || Q > size_cap())
        throw CapExceeded("extension of degree " + std::to_string(t) + " over " + base->spec() +
                          " exceeds size cap " + std::to_string(size_cap()));
    static std::mutex mu;
    static std::map<std::pair<const Field*, unsigned>, std::weak_ptr<const Field>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{base.get(), t}];
    if (auto f = slot.lock()) return f;
    auto f = Builder::extension(base, t, Q);
    slot = f;
    // Scans revisit the same ladder of fields; keep recent ones alive within
    // a table budget of about 768 MB (16 bytes per element).
    constexpr std::uint64_t kBudget = std::uint64_t{48} << 20;
    static std::deque<FieldPtr> recent;
    static std::uint64_t held = 0;
    recent.push_back(f);
    held += f->size();
    while (recent.size() > 1 && held > kBudget) {
        held -= recent.front()->size();
        recent.pop_front();
    }
    return f;
}

std::string Field::spec() const { return std::to_string(p_) + "^" + std::to_string(k_); }

bool Field::extends(const Field& sub) const noexcept {
    for (const Field* f = this; f; f = f->base_.get())
        if (f == &sub) return true;
    return false;
}

Val Field::inv(Val a) const {
    if (a == 0) throw ValidationError("division by zero in " + spec());
    return exp_[(m_ - log_[a]) % m_];
}

Val Field::pow(Val a, std::uint64_t e) const noexcept {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (e % m_) % m_];
}

Val Field::frobenius(Val a) const noexcept { return base_ ? pow(a, base_->size()) : a; }

bool Field::is_square(Val a) const noexcept {
    if (a == 0 || p_ == 2) return true;
    return log_[a] % 2 == 0;
}

Val Field::from_int(std::int64_t n) const noexcept { return static_cast<Val>(nt::mod(n, p_)); }

std::vector<Val> Field::coeffs(Val a) const {
    std::vector<Val> c(t_);
    const std::uint32_t q = base_ ? base_->size() : p_;
    for (unsigned i = 0; i < t_; ++i, a /= q) c[i] = a % q;
    return c;
}

Val Field::from_coeffs(std::span<const Val> c) const {
    if (c.size() > t_) throw ValidationError("too many coefficients for " + spec());
    const std::uint64_t q = base_ ? base_->size() : p_;
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] >= q) throw ValidationError("coefficient out of range for " + spec());
        v = v * q + c[i];
    }
    return static_cast<Val>(v);
}

std::vector<std::uint32_t> Field::residues(Val a) const {
    std::vector<std::uint32_t> r(k_);
    for (unsigned i = 0; i < k_; ++i, a /= p_) r[i] = a % p_;
    return r;
}

Val Field::from_residues(std::span<const std::int64_t> r) const {
    if (r.size() > k_) throw ValidationError("element literal has more than " + std::to_string(k_) + " residues");
    std::uint64_t v = 0;
    for (std::size_t i = r.size(); i-- > 0;) v = v * p_ + nt::mod(r[i], p_);
    return static_cast<Val>(v);
}

std::string Field::format(Val a) const {
    std::ostringstream os;
    auto r = residues(a);
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    return os.str();
}

Val Elem::check(const Elem& o) const {
    if (o.field_ != field_) throw ValidationError("field mismatch in element arithmetic");
    return o.v_;
}

FieldPtr parse_field_spec(const std::string& spec) {
    auto caret = spec.find('^');
    auto parse = [&](const std::string& s, std::size_t col) -> std::uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("field spec '" + spec + "' col " + std::to_string(col + 1) + ": expected integer");
        return std::stoull(s);
    };
    auto p = parse(spec.substr(0, caret), 0);
    unsigned k = 1;
    if (caret != std::string::npos) k = static_cast<unsigned>(parse(spec.substr(caret + 1), caret + 1));
    return make_field(p, k);
}

}  // namespace excov::gf
