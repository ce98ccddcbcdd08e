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

#include "excov/grouptheory.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "excov/error.hpp"

namespace excov::group {

namespace {

using Point = Perm::Point;

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

void check_degree(std::size_t n) {
    if (n > Perm::kMaxDegree) throw ValidationError("permutation degree " + std::to_string(n) + " too large");
}

void same_degree(const std::vector<Perm>& gens, std::size_t n) {
    for (const auto& g : gens)
        if (g.degree() != n)
            throw ValidationError("degree mismatch: " + std::to_string(g.degree()) + " vs " + std::to_string(n));
}

}  // namespace

Perm::Perm(std::size_t n) : img_(n) {
    check_degree(n);
    std::iota(img_.begin(), img_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
    check_degree(img_.size());
    std::vector<bool> seen(img_.size(), false);
    for (auto x : img_) {
        if (x >= img_.size() || seen[x]) throw ValidationError("not a permutation of " + std::to_string(img_.size()) + " points");
        seen[x] = true;
    }
}

Perm Perm::parse_cycles(const std::string& s, std::size_t n) {
    std::vector<std::vector<std::size_t>> cyc;
    std::size_t i = 0, maxp = 0;
    auto fail = [&](const std::string& what) {
        throw ValidationError("cycle notation '" + s + "' col " + std::to_string(i + 1) + ": " + what);
    };
    auto skip = [&] {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    };
    skip();
    while (i < s.size()) {
        if (s[i] != '(') fail("expected '('");
        ++i;
        cyc.emplace_back();
        skip();
        while (i < s.size() && s[i] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected point");
            std::size_t v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                v = v * 10 + (s[i] - '0');
                if (v > kMaxDegree) fail("point too large");
                ++i;
            }
            if (v == 0) fail("points are 1-based");
            cyc.back().push_back(v - 1);
            maxp = std::max(maxp, v);
            skip();
        }
        if (i >= s.size()) fail("unterminated cycle");
        ++i;
        skip();
    }
    if (n == 0) n = maxp;
    if (maxp > n) fail("point beyond degree " + std::to_string(n));
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> used(n, false);
    for (const auto& c : cyc) {
        for (auto v : c) {
            if (used[v]) fail("point " + std::to_string(v + 1) + " repeated");
            used[v] = true;
        }
        for (std::size_t k = 0; k < c.size(); ++k) img[c[k]] = static_cast<Point>(c[(k + 1) % c.size()]);
    }
    return Perm(std::move(img));
}

Perm Perm::parse_images(const std::string& s) {
    std::string t = s;
    for (auto& ch : t)
        if (ch == ',' || ch == '[' || ch == ']') ch = ' ';
    std::istringstream in(t);
    std::vector<Point> img;
    std::string tok;
    while (in >> tok) {
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("image list '" + s + "': bad token '" + tok + "'");
        auto v = std::stoull(tok);
        if (v == 0 || v > kMaxDegree) throw ValidationError("image list '" + s + "': point out of range");
        img.push_back(static_cast<Point>(v - 1));
    }
    return Perm(std::move(img));
}

Perm Perm::parse(const std::string& s, std::size_t n) {
    auto p = s.find_first_not_of(" \t");
    if (p != std::string::npos && s[p] == '(') return parse_cycles(s, n);
    auto g = parse_images(s);
    if (n && g.degree() != n) throw ValidationError("image list '" + s + "' has degree " + std::to_string(g.degree()));
    return g;
}

Perm Perm::operator*(const Perm& o) const {
    if (o.degree() != degree()) throw ValidationError("degree mismatch in product");
    std::vector<Point> r(img_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = o.img_[img_[i]];
    Perm p;
    p.img_ = std::move(r);
    return p;
}

Perm Perm::inverse() const {
    Perm p;
    p.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) p.img_[img_[i]] = static_cast<Point>(i);
    return p;
}

Perm Perm::pow(std::int64_t e) const {
    Perm b = e < 0 ? inverse() : *this, r(degree());
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    for (; k; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
    }
    return r;
}

bool Perm::is_identity() const noexcept {
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

std::size_t Perm::fixed_points() const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) c += img_[i] == i;
    return c;
}

std::uint64_t Perm::order() const {
    std::vector<bool> seen(img_.size(), false);
    std::uint64_t o = 1;
    for (std::size_t s = 0; s < img_.size(); ++s) {
        if (seen[s]) continue;
        std::uint64_t len = 0;
        for (auto x = s; !seen[x]; x = img_[x]) {
            seen[x] = true;
            ++len;
        }
        auto l = static_cast<unsigned __int128>(o / std::gcd(o, len)) * len;
        if (l > UINT64_MAX) throw ValidationError("permutation order overflows 64 bits");
        o = static_cast<std::uint64_t>(l);
    }
    return o;
}

std::string Perm::cycles() const {
    std::string out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t s = 0; s < img_.size(); ++s) {
        if (seen[s] || img_[s] == s) continue;
        out += '(';
        for (auto x = s; !seen[x]; x = img_[x]) {
            seen[x] = true;
            if (x != s) out += ' ';
            out += std::to_string(x + 1);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : p.images()) h = (h ^ x) * 1099511628211ull;
    return static_cast<std::size_t>(h);
}

PermGroup PermGroup::generate(const std::vector<Perm>& gens, std::size_t cap) {
    if (gens.empty()) throw ValidationError("group needs at least one generator");
    PermGroup G;
    G.n_ = gens[0].degree();
    same_degree(gens, G.n_);
    G.gens_ = gens;
    Perm id(G.n_);
    G.elems_.push_back(id);
    G.set_.insert(id);
    // Every element is a word in the generators, so right-multiplying the
    // frontier by generators reaches all of G.
    for (std::size_t i = 0; i < G.elems_.size(); ++i) {
        for (const auto& g : gens) {
            Perm h = G.elems_[i] * g;
            if (G.set_.insert(h).second) {
                if (G.elems_.size() >= cap)
                    throw CapExceeded("group order exceeds cap " + std::to_string(cap));
                G.elems_.push_back(std::move(h));
            }
        }
    }
    return G;
}

std::vector<std::vector<Point>> orbits(const std::vector<Perm>& gens, std::size_t n) {
    same_degree(gens, n);
    UnionFind uf(n);
    for (const auto& g : gens)
        for (std::size_t i = 0; i < n; ++i) uf.unite(static_cast<std::uint32_t>(i), g(static_cast<Point>(i)));
    std::vector<std::vector<Point>> out;
    std::vector<int> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = uf.find(static_cast<std::uint32_t>(i));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(static_cast<Point>(i));
    }
    return out;
}

namespace {

// Finest block system in which 0 and b share a block.
std::vector<std::uint32_t> minimal_block(const std::vector<Perm>& gens, std::size_t n, Point b) {
    UnionFind uf(n);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> queue{{0, b}};
    uf.unite(0, b);
    while (!queue.empty()) {
        auto [x, y] = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
            std::uint32_t gx = g(static_cast<Point>(x)), gy = g(static_cast<Point>(y));
            if (uf.unite(gx, gy)) queue.emplace_back(gx, gy);
        }
    }
    std::vector<std::uint32_t> block;
    for (std::uint32_t i = 0; i < n; ++i)
        if (uf.find(i) == uf.find(0)) block.push_back(i);
    return block;
}

}  // namespace

RepInfo analyze_rep(const std::vector<Perm>& gens, std::size_t n, std::size_t cap) {
    if (gens.empty()) throw ValidationError("analyze_rep needs generators");
    same_degree(gens, n);
    RepInfo info;
    info.transitive = orbits(gens, n).size() == 1;
    if (!info.transitive) return info;
    info.primitive = true;
    for (std::size_t b = 1; b < n && info.primitive; ++b) {
        auto blk = minimal_block(gens, n, static_cast<Point>(b));
        if (blk.size() < n) {
            info.primitive = false;
            info.block.assign(blk.begin(), blk.end());
        }
    }
    if (n >= 2) {
        // orbits on ordered pairs i != j
        UnionFind uf(n * n);
        for (const auto& g : gens)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    uf.unite(static_cast<std::uint32_t>(i * n + j),
                             static_cast<std::uint32_t>(g(static_cast<Point>(i)) * n + g(static_cast<Point>(j))));
        std::size_t roots = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && uf.find(static_cast<std::uint32_t>(i * n + j)) == i * n + j) ++roots;
        info.doubly_transitive = roots == 1;
    }
    auto G = PermGroup::generate(gens, cap);
    // Fix(G_0): points fixed by every element of the stabilizer of 0.
    std::vector<bool> fixed(n, true);
    for (const auto& g : G.elements()) {
        if (g(0) != 0) continue;
        for (std::size_t i = 0; i < n; ++i)
            if (g(static_cast<Point>(i)) != i) fixed[i] = false;
    }
    info.trivial_centralizer = std::count(fixed.begin(), fixed.end(), true) == 1;
    return info;
}

MonodromyData cyclic_model(unsigned n, std::uint64_t q) {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (std::gcd<std::uint64_t>(n, q) != 1) throw ValidationError("model needs gcd(n, q) = 1");
    std::vector<Point> shift(n), mult(n);
    for (unsigned k = 0; k < n; ++k) {
        shift[k] = static_cast<Point>((k + 1) % n);
        mult[k] = static_cast<Point>(k * (q % n) % n);
    }
    MonodromyData M;
    M.geom = {Perm(shift)};
    M.tau = Perm(mult);
    return M;
}

MonodromyData dihedral_model(unsigned n, std::uint64_t q) {
    auto M = cyclic_model(n, q);
    std::vector<Point> neg(n);
    for (unsigned k = 0; k < n; ++k) neg[k] = static_cast<Point>((n - k) % n);
    M.geom.push_back(Perm(neg));
    return M;
}

std::uint64_t frobenius_order(const PermGroup& G, const Perm& tau) {
    if (tau.degree() != G.degree()) throw ValidationError("tau has the wrong degree");
    auto ti = tau.inverse();
    for (const auto& g : G.gens())
        if (!G.contains(ti * g * tau)) throw ValidationError("tau does not normalise the geometric group");
    Perm x = tau;
    for (std::uint64_t d = 1;; ++d) {
        if (G.contains(x)) return d;
        x = x * tau;
    }
}

namespace {

std::uint64_t resolve_d(const PermGroup& G, const Perm& tau, std::uint64_t given) {
    auto d = frobenius_order(G, tau);
    if (given == 0) return d;
    if (given % d != 0)
        throw ValidationError("d = " + std::to_string(given) + " is not a multiple of the order " + std::to_string(d) +
                              " of tau modulo G");
    return given;
}

// Passing residues must already be unit-closed.
frob::FrobeniusSet closed_set(std::uint64_t d, const std::vector<std::uint64_t>& pass, const char* what) {
    auto f = frob::FrobeniusSet::from_residues(d, pass);
    std::vector<bool> in(d, false);
    for (auto r : pass) in[r] = true;
    for (std::uint64_t r = 0; r < d; ++r)
        if (f.contains(r) != in[r])
            throw InvariantFailure(std::string(what) + ": passing residues not closed under units mod " +
                                   std::to_string(d));
    return f;
}

struct Pair {
    PermGroup D;  // diagonal group on V1 ⊔ V2
    Perm tau;
    std::size_t n1 = 0;
    std::uint64_t d = 0;
};

Pair diagonal(const MonodromyData& M, std::size_t cap) {
    if (M.geom.empty()) throw ValidationError("no geometric generators");
    if (M.geom2.size() != M.geom.size() || !M.tau2)
        throw ValidationError("a second action needs parallel images of every generator and of tau");
    std::size_t n1 = M.geom[0].degree(), n2 = M.geom2[0].degree();
    same_degree(M.geom, n1);
    same_degree(M.geom2, n2);
    if (M.tau.degree() != n1 || M.tau2->degree() != n2) throw ValidationError("tau has the wrong degree");
    auto join = [&](const Perm& a, const Perm& b) {
        std::vector<Point> img(a.images());
        for (auto x : b.images()) img.push_back(static_cast<Point>(x + n1));
        return Perm(std::move(img));
    };
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < M.geom.size(); ++i) gens.push_back(join(M.geom[i], M.geom2[i]));
    Pair P{PermGroup::generate(gens, cap), join(M.tau, *M.tau2), n1, 0};
    // T1 must be faithful on the abstract group: the diagonal projects
    // isomorphically onto the first action.
    auto G1 = PermGroup::generate(M.geom, cap);
    if (G1.order() != P.D.order())
        throw ValidationError("inconsistent parallel images: the first action is not faithful on the pair (" +
                              std::to_string(G1.order()) + " vs " + std::to_string(P.D.order()) + ")");
    P.d = resolve_d(P.D, P.tau, M.d);
    return P;
}

template <class Pred>
frob::FrobeniusSet pair_test(const Pair& P, Pred pred, const char* what) {
    std::vector<std::uint64_t> pass;
    Perm tt(P.tau.degree());
    for (std::uint64_t t = 0; t < P.d; ++t) {
        bool ok = true;
        for (const auto& h : P.D.elements()) {
            Perm g = h * tt;
            std::size_t f1 = 0, f2 = 0;
            for (std::size_t i = 0; i < g.degree(); ++i)
                if (g(static_cast<Point>(i)) == i) ++(i < P.n1 ? f1 : f2);
            if (!pred(f1, f2)) {
                ok = false;
                break;
            }
        }
        if (ok) pass.push_back(t);
        tt = tt * P.tau;
    }
    return closed_set(P.d, pass, what);
}

}  // namespace

frob::FrobeniusSet coset_exceptionality(const MonodromyData& M, Mode mode, std::size_t cap) {
    if (M.geom.empty()) throw ValidationError("no geometric generators");
    auto G = PermGroup::generate(M.geom, cap);
    auto d = resolve_d(G, M.tau, M.d);
    std::vector<std::uint64_t> pass;
    Perm tt(G.degree());
    for (std::uint64_t t = 0; t < d; ++t) {
        bool ok = true;
        for (const auto& h : G.elements()) {
            auto f = (h * tt).fixed_points();
            if (mode == Mode::exceptional ? f != 1 : f == 0) {
                ok = false;
                break;
            }
        }
        if (ok) pass.push_back(t);
        tt = tt * M.tau;
    }
    return closed_set(d, pass, "coset_exceptionality");
}

std::vector<Perm> fiber_tensor(const std::vector<Perm>& g1, const std::vector<Perm>& g2) {
    if (g1.size() != g2.size()) throw ValidationError("tuple lengths differ");
    if (g1.empty()) return {};
    std::size_t n1 = g1[0].degree(), n2 = g2[0].degree();
    same_degree(g1, n1);
    same_degree(g2, n2);
    check_degree(n1 * n2);
    std::vector<Perm> out;
    for (std::size_t k = 0; k < g1.size(); ++k) {
        std::vector<Point> img(n1 * n2);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                img[i * n2 + j] = static_cast<Point>(g1[k](static_cast<Point>(i)) * n2 + g2[k](static_cast<Point>(j)));
        out.push_back(Perm(std::move(img)));
    }
    return out;
}

std::size_t component_count(const std::vector<Perm>& tensor_gens, std::size_t n1, std::size_t n2, Domain dom) {
    same_degree(tensor_gens, n1 * n2);
    auto orb = orbits(tensor_gens, n1 * n2);
    if (dom == Domain::full) return orb.size();
    if (n1 != n2) throw ValidationError("off-diagonal pairs need equal factors");
    std::size_t count = 0;
    for (const auto& o : orb) {
        std::size_t diag = 0;
        for (auto x : o) diag += x / n2 == x % n2;
        if (diag != 0 && diag != o.size()) throw ValidationError("the diagonal is not invariant");
        if (diag == 0) ++count;
    }
    return count;
}

frob::FrobeniusSet davenport_trace_test(const MonodromyData& M, std::size_t cap) {
    return pair_test(diagonal(M, cap), [](std::size_t a, std::size_t b) { return (a > 0) == (b > 0); },
                     "davenport_trace_test");
}

frob::FrobeniusSet idp_trace_test(const MonodromyData& M, std::size_t cap) {
    return pair_test(diagonal(M, cap), [](std::size_t a, std::size_t b) { return a == b; }, "idp_trace_test");
}

SdpReport sdp_check(const MonodromyData& M, std::size_t cap) {
    auto P = diagonal(M, cap);
    auto idp = pair_test(P, [](std::size_t a, std::size_t b) { return a == b; }, "sdp_check");
    SdpReport r;
    r.strong = idp.is_all();
    r.chars_equal_on_G = idp.contains(0);
    r.lemma_hypothesis = true;
    Perm tt = P.tau;
    for (std::uint64_t t = 1; t < P.d && r.lemma_hypothesis; ++t) {
        for (const auto& h : P.D.elements())
            if ((h * tt).fixed_points() != 0) {
                r.lemma_hypothesis = false;
                break;
            }
        tt = tt * P.tau;
    }
    r.lemma_violated = r.lemma_hypothesis && r.chars_equal_on_G && !r.strong;
    return r;
}

}  // namespace excov::group
