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

#include "excov/nielsen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "excov/error.hpp"
#include "excov/numtheory.hpp"

namespace excov::nielsen {

using group::PermGroup;
using Point = Perm::Point;

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::size_t roots() {
        std::size_t c = 0;
        for (std::uint32_t i = 0; i < parent.size(); ++i) c += find(i) == i;
        return c;
    }
};

void need_nonempty(const Tuple& t) {
    if (t.empty()) throw ValidationError("empty tuple");
    for (const auto& g : t)
        if (g.degree() != t[0].degree()) throw ValidationError("tuple entries have different degrees");
}

Perm product(const Tuple& t) {
    Perm p(t[0].degree());
    for (const auto& g : t) p = p * g;
    return p;
}

std::vector<std::size_t> cycle_type(const Perm& g) {
    std::vector<std::size_t> ct;
    std::vector<bool> seen(g.degree(), false);
    for (std::size_t s = 0; s < g.degree(); ++s) {
        if (seen[s]) continue;
        std::size_t len = 0;
        for (auto x = s; !seen[x]; x = g(static_cast<Point>(x))) {
            seen[x] = true;
            ++len;
        }
        ct.push_back(len);
    }
    std::sort(ct.begin(), ct.end());
    return ct;
}

bool conjugate_in(const PermGroup* G, const Perm& a, const Perm& b) {
    if (cycle_type(a) != cycle_type(b)) return false;
    if (!G) return true;  // S_n
    for (const auto& h : G->elements())
        if (h.inverse() * a * h == b) return true;
    return false;
}

// Greedy matching is exact because conjugacy is an equivalence relation.
bool same_class_multiset(const PermGroup* G, const std::vector<Perm>& xs, const std::vector<Perm>& ys) {
    if (xs.size() != ys.size()) return false;
    std::vector<bool> used(ys.size(), false);
    for (const auto& x : xs) {
        bool found = false;
        for (std::size_t j = 0; j < ys.size() && !found; ++j)
            if (!used[j] && conjugate_in(G, x, ys[j])) found = used[j] = true;
        if (!found) return false;
    }
    return true;
}

bool tuple_less(const Tuple& a, const Tuple& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].images() < b[i].images()) return true;
        if (b[i].images() < a[i].images()) return false;
    }
    return false;
}

struct TupleLess {
    bool operator()(const Tuple& a, const Tuple& b) const { return tuple_less(a, b); }
};

}  // namespace

std::string TupleCheck::violations() const {
    std::string s;
    auto add = [&](const char* w) { s += (s.empty() ? "" : ",") + std::string(w); };
    if (!product_one) add("product-one");
    if (!generation) add("generation");
    if (class_membership == false) add("class-membership");
    return s;
}

TupleCheck validate_tuple(const Tuple& t, const std::vector<Perm>& group, const std::vector<Perm>& class_reps) {
    need_nonempty(t);
    TupleCheck c;
    c.product_one = product(t).is_identity();
    std::optional<PermGroup> G;
    if (group.empty()) {
        c.generation = group::orbits(t, t[0].degree()).size() == 1;
    } else {
        G = PermGroup::generate(group);
        auto H = PermGroup::generate(t);
        c.generation = H.order() == G->order() &&
                       std::all_of(t.begin(), t.end(), [&](const Perm& g) { return G->contains(g); });
    }
    if (!class_reps.empty()) c.class_membership = same_class_multiset(G ? &*G : nullptr, t, class_reps);
    return c;
}

std::size_t index(const Perm& g) { return g.degree() - cycle_type(g).size(); }

std::int64_t rh_genus(const Tuple& t) {
    need_nonempty(t);
    auto n = static_cast<std::int64_t>(t[0].degree());
    if (group::orbits(t, t[0].degree()).size() != 1) throw ValidationError("tuple is not transitive");
    std::int64_t s = 0;
    for (const auto& g : t) s += static_cast<std::int64_t>(index(g));
    if (s % 2 != 0) throw ValidationError("not a branch cycle description: odd index sum " + std::to_string(s));
    std::int64_t g = s / 2 - n + 1;
    if (g < 0) throw ValidationError("not a branch cycle description: negative genus " + std::to_string(g));
    return g;
}

Tuple braid_act(const Tuple& t, int i) {
    int r = static_cast<int>(t.size());
    int k = std::abs(i);
    if (k < 1 || k > r - 1)
        throw ValidationError("braid index " + std::to_string(i) + " outside 1.." + std::to_string(r - 1));
    Tuple u = t;
    const Perm &a = t[k - 1], &b = t[k];
    if (i > 0) {
        u[k - 1] = a * b * a.inverse();
        u[k] = a;
    } else {
        u[k - 1] = b;
        u[k] = b.inverse() * a * b;
    }
    return u;
}

Tuple braid_word(const Tuple& t, const std::vector<int>& word) {
    Tuple u = t;
    for (int i : word) u = braid_act(u, i);
    return u;
}

Tuple canonical(const Tuple& t, const std::vector<Perm>& conj) {
    Tuple best = t;
    for (const auto& h : conj) {
        Tuple c;
        auto hi = h.inverse();
        for (const auto& g : t) c.push_back(hi * g * h);
        if (tuple_less(c, best)) best = std::move(c);
    }
    return best;
}

namespace {

std::vector<Perm> conjugators(const Tuple& t, const OrbitSpec& spec) {
    switch (spec.eq) {
        case Equivalence::none:
            return {};
        case Equivalence::inner:
            return PermGroup::generate(t).elements();
        case Equivalence::absolute:
            if (spec.normalizer.empty()) throw ValidationError("absolute equivalence needs normalizer generators");
            return PermGroup::generate(spec.normalizer).elements();
    }
    return {};
}

std::vector<Tuple> word_orbit(const Tuple& t, const OrbitSpec& spec, const std::vector<std::vector<int>>& words) {
    need_nonempty(t);
    auto conj = conjugators(t, spec);
    std::set<Tuple, TupleLess> seen;
    std::vector<Tuple> out{canonical(t, conj)};
    seen.insert(out[0]);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& w : words) {
            auto c = canonical(braid_word(out[i], w), conj);
            if (seen.insert(c).second) out.push_back(std::move(c));
        }
    return out;
}

}  // namespace

std::vector<Tuple> braid_orbit(const Tuple& t, const OrbitSpec& spec) {
    std::vector<std::vector<int>> words;
    for (int i = 1; i < static_cast<int>(t.size()); ++i) words.push_back({i});
    return word_orbit(t, spec, words);
}

std::vector<Tuple> q2_reduced_orbit(const Tuple& t, const OrbitSpec& spec) {
    if (t.size() != 4) throw ValidationError("reduced orbits need r = 4");
    return word_orbit(t, spec, {{1, 2, 3, 1, 2, 3}, {1, -3}});
}

Tuple dickson_cycles(unsigned n) {
    if (n < 3 || n % 2 == 0) throw ValidationError("dickson_cycles needs odd n >= 3");
    std::vector<Point> g1(n), g2(n), gi(n);
    for (unsigned i = 0; i < n; ++i) {
        g1[i] = static_cast<Point>(n - 1 - i);     // i <-> n+1-i, 1-based
        g2[i] = static_cast<Point>((n - i) % n);        // i <-> n+2-i mod n, 1-based
        gi[i] = static_cast<Point>((i + n - 1) % n);  // (1 2 .. n)^{-1}
    }
    return {Perm(g1), Perm(g2), Perm(gi)};
}

Tuple cyclic_cycles(unsigned n) {
    if (n < 2) throw ValidationError("cyclic_cycles needs n >= 2");
    std::vector<Point> s(n);
    for (unsigned i = 0; i < n; ++i) s[i] = static_cast<Point>((i + 1) % n);
    Perm g(s);
    return {g, g.inverse()};
}

TowerCycles dickson_tower_cycles(unsigned n, const std::vector<std::int64_t>& labels, std::optional<std::uint64_t> q) {
    auto base = dickson_cycles(n);
    std::size_t m = labels.size();
    if (m == 0) throw ValidationError("need at least one parameter");
    std::uint64_t N = 0;
    if (!nt::checked_pow(n, static_cast<unsigned>(m), N) || N > Perm::kMaxDegree)
        throw CapExceeded("tower degree " + std::to_string(n) + "^" + std::to_string(m) + " exceeds " +
                          std::to_string(Perm::kMaxDegree) + " letters");
    TowerCycles out;
    out.degree = N;
    // point (j_1..j_m) numbered sum j_l n^(m-l); level l acts on coordinate l
    std::uint64_t stride = N;
    for (std::size_t l = 0; l < m; ++l) {
        stride /= n;
        for (int t = 0; t < 2; ++t) {
            std::vector<Point> img(N);
            for (std::uint64_t x = 0; x < N; ++x) {
                std::uint64_t j = x / stride % n;
                img[x] = static_cast<Point>(x - j * stride + base[t](static_cast<Point>(j)) * stride);
            }
            out.tuple.push_back(Perm(img));
        }
    }
    out.tuple.push_back(product(out.tuple).inverse());
    out.product_one = product(out.tuple).is_identity();
    out.transitive = group::orbits(out.tuple, N).size() == 1;
    auto ct = cycle_type(out.tuple.back());
    out.infinity_n_cycles = std::all_of(ct.begin(), ct.end(), [&](std::size_t c) { return c == n; });
    if (!out.product_one || !out.transitive || !out.infinity_n_cycles)
        throw InvariantFailure("tower branch cycles fail the construction conditions");
    out.genus = rh_genus(out.tuple);
    if (m == 2) {
        const auto& g = out.tuple;
        Perm g2p = g[1] * g[2] * g[1].inverse();
        Perm g1p = g[0] * g2p * g[0].inverse();
        out.braid_check = braid_word(g, {2, 1}) == Tuple{g1p, g[0], g[1], g[3], g[4]};
    }
    if (q) {
        std::uint64_t s = 0;
        if (nt::checked_pow(*q, n, s)) out.stated_degree = s;
    }
    return out;
}

ModularNielsen modular_nielsen(std::uint64_t p, std::uint64_t k) {
    if (!nt::is_prime(p) || p == 2) throw ValidationError("p must be an odd prime");
    std::uint64_t N = 0;
    if (k > 3 || !nt::checked_pow(p, static_cast<unsigned>(k + 1), N) || N > 13)
        throw ValidationError("modular_nielsen needs p^(k+1) <= 13");
    ModularNielsen out{p, k, N, {}, 0, 0, 0, {}};
    using V = std::array<std::uint32_t, 2>;
    auto M = static_cast<std::uint32_t>(N);
    auto id = [&](V a, V b) { return ((a[0] * M + a[1]) * M + b[0]) * M + b[1]; };
    auto sub = [&](V a, V b) { return V{(a[0] + M - b[0]) % M, (a[1] + M - b[1]) % M}; };
    auto neg = [&](V a) { return V{(M - a[0]) % M, (M - a[1]) % M}; };
    // Normalised tuples (0, v2, v3, v3 - v2) generate iff det(v2, v3) is a unit.
    std::uint32_t total = M * M * M * M;
    std::vector<bool> valid(total, false);
    for (std::uint32_t x = 0; x < total; ++x) {
        V a{x / (M * M * M), x / (M * M) % M}, b{x / M % M, x % M};
        std::uint64_t det = (std::uint64_t{a[0]} * b[1] + std::uint64_t{M} * M - std::uint64_t{a[1]} * b[0]) % M;
        if (det % p == 0) continue;
        valid[x] = true;
        out.tuples.push_back({a, b, sub(b, a)});
    }
    // absolute: GL_2(Z/N) acting on (v2, v3); generators are the two
    // elementary matrices and diag(u, 1) for a unit u generating (Z/N)^*
    const std::uint64_t phiN = N / p * (p - 1);
    std::uint32_t u = 2;
    while (std::gcd(u, M) != 1 || nt::mult_order(u, N) != phiN) ++u;
    auto apply = [&](std::array<std::uint32_t, 4> m, V v) {
        return V{(m[0] * v[0] + m[1] * v[1]) % M, (m[2] * v[0] + m[3] * v[1]) % M};
    };
    UnionFind abs(total), inner(total), braid(total);
    for (const auto& t : out.tuples) {
        auto x = id(t[0], t[1]);
        for (auto m : {std::array<std::uint32_t, 4>{1, 1, 0, 1}, {1, 0, 1, 1}, {u, 0, 0, 1}})
            abs.unite(x, id(apply(m, t[0]), apply(m, t[1])));
        auto nx = id(neg(t[0]), neg(t[1]));
        inner.unite(x, nx);
        braid.unite(x, nx);
        // q_i on (0, v2, v3, v4), then translate v1 back to 0
        std::array<V, 4> v{V{0, 0}, t[0], t[1], t[2]};
        for (int i = 0; i < 3; ++i) {
            auto w = v;
            w[i] = sub(sub(v[i], neg(v[i])), v[i + 1]);  // 2 v_i - v_{i+1}
            w[i + 1] = v[i];
            braid.unite(x, id(sub(w[1], w[0]), sub(w[2], w[0])));
        }
    }
    auto count = [&](UnionFind& uf, std::vector<std::uint64_t>* sizes) {
        std::map<std::uint32_t, std::uint64_t> sz;
        for (std::uint32_t x = 0; x < total; ++x)
            if (valid[x]) ++sz[uf.find(x)];
        if (sizes)
            for (auto [r, s] : sz) sizes->push_back(s);
        return static_cast<std::uint64_t>(sz.size());
    };
    out.abs_class_count = count(abs, nullptr);
    out.inner_class_count = count(inner, nullptr);
    std::vector<std::uint64_t> sizes;
    out.inner_braid_orbit_count = count(braid, &sizes);
    // orbit sizes in inner classes
    for (auto s : sizes) out.inner_orbit_sizes.push_back(s / 2);
    return out;
}

Tuple modular_tuple_perms(std::uint64_t N, const std::vector<std::array<std::uint32_t, 2>>& v) {
    if (N < 2 || N * N > Perm::kMaxDegree) throw ValidationError("bad modulus for the modular action");
    Tuple t;
    auto M = static_cast<std::uint32_t>(N);
    for (auto w : v) {
        // x -> -x + w
        std::vector<Point> img(N * N);
        for (std::uint32_t a = 0; a < M; ++a)
            for (std::uint32_t b = 0; b < M; ++b)
                img[a * M + b] = static_cast<Point>(((w[0] + M - a) % M) * M + (w[1] + M - b) % M);
        t.push_back(Perm(img));
    }
    return t;
}

std::vector<Perm> modular_group(std::uint64_t N) {
    auto M = static_cast<std::uint32_t>(N);
    std::vector<Point> ta(N * N), tb(N * N), ng(N * N);
    for (std::uint32_t a = 0; a < M; ++a)
        for (std::uint32_t b = 0; b < M; ++b) {
            ta[a * M + b] = static_cast<Point>(((a + 1) % M) * M + b);
            tb[a * M + b] = static_cast<Point>(a * M + (b + 1) % M);
            ng[a * M + b] = static_cast<Point>(((M - a) % M) * M + (M - b) % M);
        }
    return {Perm(ta), Perm(tb), Perm(ng)};
}

RationalUnion rational_union_check(const std::vector<Perm>& class_reps, const std::vector<Perm>& G,
                                   const std::vector<Perm>& Gstar) {
    if (class_reps.empty()) throw ValidationError("no classes given");
    auto g = PermGroup::generate(G);
    auto gs = PermGroup::generate(Gstar);
    for (const auto& c : class_reps)
        if (!g.contains(c)) throw ValidationError("class representative " + c.cycles() + " not in G");
    for (const auto& x : G)
        if (!gs.contains(x)) throw ValidationError("G is not contained in G*");
    std::uint64_t L = 1;
    for (const auto& c : class_reps) L = std::lcm(L, c.order());
    RationalUnion out;
    for (std::uint64_t k = 2; k < L; ++k) {
        if (std::gcd(k, L) != 1) continue;
        std::vector<Perm> powers;
        for (const auto& c : class_reps) powers.push_back(c.pow(static_cast<std::int64_t>(k)));
        bool ok = false;
        for (const auto& h : gs.elements()) {
            std::vector<Perm> moved;
            auto hi = h.inverse();
            for (const auto& c : class_reps) moved.push_back(h * c * hi);
            if (same_class_multiset(&g, moved, powers)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            out.rational = false;
            out.failing_k = k;
            return out;
        }
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> difference_sets(std::uint32_t n, std::uint32_t k, std::uint32_t lambda) {
    if (n < 2 || k < 1 || k > n) throw ValidationError("difference_sets needs n >= 2 and 1 <= k <= n");
    std::vector<std::vector<std::uint32_t>> out;
    if (std::uint64_t{k} * (k - 1) != std::uint64_t{lambda} * (n - 1)) return out;
    // subsets containing 0 meet every translation class
    double est = 1;
    for (std::uint32_t i = 0; i < k - 1; ++i) est = est * (n - 1 - i) / (i + 1);
    if (est > 5e7) throw CapExceeded("too many subsets to enumerate");
    std::set<std::vector<std::uint32_t>> found;
    std::vector<std::uint32_t> pick(k - 1);
    std::iota(pick.begin(), pick.end(), 1u);
    std::vector<std::uint32_t> cnt(n);
    while (true) {
        std::vector<std::uint32_t> D{0};
        D.insert(D.end(), pick.begin(), pick.end());
        std::fill(cnt.begin(), cnt.end(), 0);
        for (auto a : D)
            for (auto b : D)
                if (a != b) ++cnt[(a + n - b) % n];
        if (std::all_of(cnt.begin() + 1, cnt.end(), [&](std::uint32_t c) { return c == lambda; })) {
            std::vector<std::uint32_t> best;
            for (auto x : D) {
                std::vector<std::uint32_t> t;
                for (auto a : D) t.push_back((a + n - x) % n);
                std::sort(t.begin(), t.end());
                if (best.empty() || t < best) best = t;
            }
            found.insert(best);
        }
        // next combination of k-1 from 1..n-1
        int i = static_cast<int>(k) - 2;
        while (i >= 0 && pick[i] == n - 1 - (k - 2 - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (std::size_t j = i + 1; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
    return {found.begin(), found.end()};
}

}  // namespace excov::nielsen
