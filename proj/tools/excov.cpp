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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "excov/acceptance.hpp"
#include "excov/error.hpp"
#include "excov/except.hpp"
#include "excov/frobset.hpp"
#include "excov/gf.hpp"
#include "excov/grouptheory.hpp"
#include "excov/lattes.hpp"
#include "excov/nielsen.hpp"
#include "excov/numtheory.hpp"
#include "excov/pencil.hpp"
#include "excov/projmap.hpp"

using json = nlohmann::json;
using namespace excov;
using group::Perm;

namespace {

constexpr int kExitValidation = 2, kExitCap = 3, kExitInvariant = 4;

// ---- conversions -----------------------------------------------------------

json to_json(const frob::FrobeniusSet& s) { return {{"modulus", s.modulus()}, {"residues", s.residues()}}; }

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json perms_json(const std::vector<Perm>& t) {
    json a = json::array();
    for (const auto& g : t) a.push_back(g.cycles());
    return a;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    std::size_t col = 1;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stoll(tok, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size())
            throw ValidationError("column " + std::to_string(col) + ": expected an integer in '" + s + "'");
        col += tok.size() + 1;
    }
    return out;
}

// Degree is the largest point mentioned across all strings unless given.
std::vector<Perm> parse_perms(const std::vector<std::string>& specs, std::size_t degree) {
    std::size_t n = degree;
    for (const auto& s : specs) n = std::max(n, Perm::parse(s).degree());
    std::vector<Perm> out;
    for (const auto& s : specs) {
        auto g = Perm::parse(s, n);
        if (g.degree() != n) throw ValidationError("permutation '" + s + "' has degree " + std::to_string(g.degree()));
        out.push_back(g);
    }
    return out;
}

projmap::P1Point parse_point(const gf::Field& F, const std::string& s) {
    if (s == "inf") return projmap::P1Point::inf();
    auto r = parse_ints(s);
    return projmap::P1Point::at(F.from_residues(r));
}

json point_json(const gf::Field& F, const projmap::P1Point& x) {
    return x.infinite ? json("inf") : json(F.format(x.value));
}

json scan_json(const except::ScanReport& r) {
    json rec = json::array();
    for (const auto& t : r.records) {
        json fib = json::array();
        for (const auto& f : t.fibers) fib.push_back({{"size", f.size}, {"values", f.values}});
        rec.push_back({{"t", t.t},
                       {"bijective", t.bijective},
                       {"surjective", t.surjective},
                       {"image_size", t.image_size},
                       {"fibers", fib},
                       {"period", opt_json(t.period)},
                       {"period_overflow", t.period_overflow}});
    }
    return {{"map", r.map},
            {"field", r.field},
            {"t_max", r.t_max},
            {"t_reached", r.t_reached},
            {"stopped", r.stopped},
            {"d_max", r.d_max},
            {"fitted", r.fitted ? to_json(*r.fitted) : json(nullptr)},
            {"records", rec}};
}

json rep_json(const std::vector<Perm>& gens, std::size_t n) {
    auto G = group::PermGroup::generate(gens);
    auto info = group::analyze_rep(gens, n);
    json block = json::array();
    for (auto x : info.block) block.push_back(x + 1);
    return {{"degree", n},
            {"order", G.order()},
            {"transitive", info.transitive},
            {"primitive", info.primitive},
            {"doubly_transitive", info.doubly_transitive},
            {"trivial_centralizer", opt_json(info.trivial_centralizer)},
            {"block", block}};
}

json monodromy_json(const group::MonodromyData& M) {
    json j = {{"exceptional", to_json(group::coset_exceptionality(M, group::Mode::exceptional))},
              {"pr_exceptional", to_json(group::coset_exceptionality(M, group::Mode::pr_exceptional))}};
    j["d"] = M.d ? M.d : group::frobenius_order(group::PermGroup::generate(M.geom), M.tau);
    if (!M.geom2.empty()) {
        j["davenport"] = to_json(group::davenport_trace_test(M));
        j["isovalent"] = to_json(group::idp_trace_test(M));
        auto s = group::sdp_check(M);
        j["sdp"] = {{"strong", s.strong},
                    {"chars_equal_on_G", s.chars_equal_on_G},
                    {"lemma_hypothesis", s.lemma_hypothesis},
                    {"lemma_violated", s.lemma_violated}};
    }
    return j;
}

// {"geomGens": [...], "tau": "...", "d": 0, "geomGens2": [...], "tau2": "..."}
group::MonodromyData parse_monodromy(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("monodromy JSON: ") + e.what());
    }
    auto strings = [&](const char* key) {
        std::vector<std::string> out;
        if (!j.contains(key)) return out;
        if (!j[key].is_array()) throw ValidationError(std::string("monodromy JSON: '") + key + "' must be a list");
        for (const auto& s : j[key]) {
            if (!s.is_string()) throw ValidationError(std::string("monodromy JSON: '") + key + "' entries must be strings");
            out.push_back(s.get<std::string>());
        }
        return out;
    };
    auto g1 = strings("geomGens"), g2 = strings("geomGens2");
    if (g1.empty()) throw ValidationError("monodromy JSON needs 'geomGens'");
    if (!j.contains("tau") || !j["tau"].is_string()) throw ValidationError("monodromy JSON needs 'tau'");
    std::vector<std::string> all1 = g1, all2 = g2;
    all1.push_back(j["tau"].get<std::string>());
    bool second = !g2.empty();
    if (second) {
        if (!j.contains("tau2") || !j["tau2"].is_string()) throw ValidationError("monodromy JSON: 'geomGens2' needs 'tau2'");
        all2.push_back(j["tau2"].get<std::string>());
    }
    group::MonodromyData M;
    auto p1 = parse_perms(all1, 0);
    M.tau = p1.back();
    p1.pop_back();
    M.geom = p1;
    if (second) {
        auto p2 = parse_perms(all2, 0);
        M.tau2 = p2.back();
        p2.pop_back();
        M.geom2 = p2;
    }
    if (j.contains("d")) M.d = j["d"].get<std::uint64_t>();
    return M;
}

// ---- output ----------------------------------------------------------------

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Scalars as key<TAB>value, then each list of objects as a headed table.
void emit_tsv(const json& j, std::ostream& os) {
    auto is_table = [](const json& v) { return v.is_array() && !v.empty() && v.front().is_object(); };
    for (const auto& [k, v] : j.items())
        if (!is_table(v)) os << k << '\t' << cell(v) << '\n';
    for (const auto& [k, v] : j.items()) {
        if (!is_table(v)) continue;
        os << "\n# " << k << '\n';
        std::vector<std::string> cols;
        for (const auto& [c, _] : v.front().items()) cols.push_back(c);
        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "\t" : "") << cols[i];
        os << '\n';
        for (const auto& row : v) {
            for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "\t" : "") << (row.contains(cols[i]) ? cell(row[cols[i]]) : "");
            os << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"excov: exceptional covers over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false, tsv = false, json_flag = false;
    std::uint64_t cap = 0;
    app.add_flag("--pretty", pretty, "Indented JSON");
    app.add_flag("--tsv", tsv, "Tab separated output");
    app.add_flag("--json", json_flag, "JSON output (the default)");
    app.add_option("--cap", cap, "Field size cap (overrides EXCOV_CAP)")->check(CLI::PositiveNumber);

    std::function<json()> action;
    int exit_code = 0;

    // field
    auto* field = app.add_subcommand("field", "Describe a finite field");
    std::string field_spec;
    bool list = false;
    field->add_option("--field", field_spec, "Field spec p^k")->required();
    field->add_flag("--list", list, "List elements (at most 4096)");
    field->callback([&] {
        action = [&] {
            auto F = gf::parse_field_spec(field_spec);
            json j = {{"field", F->spec()},
                      {"p", F->characteristic()},
                      {"k", F->degree()},
                      {"size", F->size()},
                      {"modulus", std::vector<gf::Val>(F->modulus().begin(), F->modulus().end())},
                      {"primitive", F->format(F->primitive())}};
            if (list) {
                if (F->size() > 4096) throw CapExceeded("--list supports fields of at most 4096 elements");
                json e = json::array();
                for (std::uint32_t i = 0; i < F->size(); ++i) e.push_back(F->format(i));
                j["elements"] = e;
            }
            return j;
        };
    });

    // map
    auto* map = app.add_subcommand("map", "Build, compose, evaluate or decompose a map");
    std::string map_field = "3^1", map_spec, compose_spec;
    std::vector<std::string> at;
    bool decompose = false;
    map->add_option("--field", map_field, "Field spec p^k")->capture_default_str();
    map->add_option("--map", map_spec, "Map spec")->required();
    map->add_option("--compose", compose_spec, "Inner map g; reports f o g");
    map->add_option("--at", at, "Evaluation points: residues or inf");
    map->add_flag("--decompose", decompose, "Tame polynomial decompositions");
    map->callback([&] {
        action = [&] {
            auto F = gf::parse_field_spec(map_field);
            auto f = projmap::parse_map_spec(F, map_spec);
            if (!compose_spec.empty()) f = projmap::compose(f, projmap::parse_map_spec(F, compose_spec));
            json j = {{"field", F->spec()},
                      {"map", projmap::to_spec(f)},
                      {"degree", f.degree()},
                      {"polynomial", f.is_polynomial()},
                      {"num", projmap::format_coeffs(f.num())},
                      {"den", projmap::format_coeffs(f.den())}};
            if (!at.empty()) {
                json v = json::array();
                for (const auto& s : at) {
                    auto x = parse_point(*F, s);
                    v.push_back({{"x", point_json(*F, x)}, {"y", point_json(*F, projmap::eval_p1(f, *F, x))}});
                }
                j["values"] = v;
            }
            if (decompose) {
                if (!f.is_polynomial()) throw ValidationError("--decompose needs a polynomial");
                json d = json::array();
                for (const auto& s : projmap::decompose_tame_poly(f.num()))
                    d.push_back({{"outer", projmap::to_spec(projmap::RationalMap::polynomial(s.outer))},
                                 {"inner", projmap::to_spec(projmap::RationalMap::polynomial(s.inner))}});
                j["decompositions"] = d;
            }
            return j;
        };
    });

    // scan
    auto* scan = app.add_subcommand("scan", "Bijectivity scan over F_{q^t}");
    std::string scan_field = "3^1", scan_map;
    unsigned tmax = 12;
    std::uint64_t dmax = 24;
    bool fast = false;
    scan->add_option("--field", scan_field, "Field spec p^k")->capture_default_str();
    scan->add_option("--map", scan_map, "Map spec")->required();
    scan->add_option("--tmax", tmax, "Largest t")->capture_default_str()->check(CLI::PositiveNumber);
    scan->add_option("--dmax", dmax, "Largest fitted modulus")->capture_default_str()->check(CLI::PositiveNumber);
    scan->add_flag("--fast", fast, "Bijectivity only, no fibers or periods");
    scan->callback([&] {
        action = [&] {
            auto F = gf::parse_field_spec(scan_field);
            except::ScanOptions opt;
            opt.d_max = dmax;
            opt.bijectivity_only = fast;
            return scan_json(except::exceptionality_scan(projmap::parse_map_spec(F, scan_map), tmax, opt));
        };
    });

    // frobset
    auto* fs = app.add_subcommand("frobset", "Frobenius progression sets");
    std::uint64_t fs_mod = 1;
    std::string fs_res, fs_and, fs_or;
    fs->add_option("--mod", fs_mod, "Modulus")->required()->check(CLI::PositiveNumber);
    fs->add_option("--residues", fs_res, "Residues a,b,..");
    fs->add_option("--and", fs_and, "Intersect with d:a,b");
    fs->add_option("--or", fs_or, "Unite with d:a,b");
    fs->callback([&] {
        action = [&] {
            auto parse_set = [](std::uint64_t d, const std::string& r) {
                std::vector<std::uint64_t> res;
                if (!r.empty())
                    for (auto v : parse_ints(r)) res.push_back(nt::mod(v, d));
                return frob::FrobeniusSet::from_residues(d, res);
            };
            auto other = [&](const std::string& s) {
                auto colon = s.find(':');
                if (colon == std::string::npos) throw ValidationError("expected d:a,b in '" + s + "'");
                auto d = parse_ints(s.substr(0, colon));
                if (d.size() != 1 || d[0] <= 0) throw ValidationError("bad modulus in '" + s + "'");
                return parse_set(static_cast<std::uint64_t>(d[0]), s.substr(colon + 1));
            };
            auto S = parse_set(fs_mod, fs_res);
            if (!fs_and.empty()) S = frob::intersect(S, other(fs_and));
            if (!fs_or.empty()) S = frob::unite(S, other(fs_or));
            return to_json(S);
        };
    });

    // dp
    auto* dp = app.add_subcommand("dp", "Davenport pair range and multiset tests");
    std::string dp_field = "3^1", dp_f, dp_g;
    unsigned dp_tmax = 1;
    dp->add_option("--field", dp_field, "Field spec p^k")->capture_default_str();
    dp->add_option("--f", dp_f, "First map")->required();
    dp->add_option("--g", dp_g, "Second map")->required();
    dp->add_option("--tmax", dp_tmax, "Largest t")->capture_default_str()->check(CLI::PositiveNumber);
    dp->callback([&] {
        action = [&] {
            auto F = gf::parse_field_spec(dp_field);
            auto f = projmap::parse_map_spec(F, dp_f), g = projmap::parse_map_spec(F, dp_g);
            json rec = json::array();
            for (unsigned t = 1; t <= dp_tmax; ++t)
                rec.push_back({{"t", t},
                               {"range_equal", except::dp_range_test(f, g, t)},
                               {"isovalent", except::idp_multiset_test(f, g, t)}});
            return json{{"field", F->spec()}, {"f", projmap::to_spec(f)}, {"g", projmap::to_spec(g)}, {"records", rec}};
        };
    });

    // group
    auto* grp = app.add_subcommand("group", "Permutation groups and monodromy models");
    grp->require_subcommand(1);
    auto* analyze = grp->add_subcommand("analyze", "Transitivity, primitivity and centralizer");
    std::vector<std::string> gens;
    std::size_t degree = 0;
    analyze->add_option("--gen", gens, "Generator, cycles or images")->required();
    analyze->add_option("--degree", degree, "Number of letters");
    analyze->callback([&] {
        action = [&] {
            auto g = parse_perms(gens, degree);
            return rep_json(g, g.front().degree());
        };
    });
    auto* model = grp->add_subcommand("model", "Monodromy model of x^n or D_{n,a}");
    std::string family = "cyclic";
    unsigned model_n = 3;
    std::uint64_t model_q = 2;
    model->add_option("--family", family, "cyclic or dickson")->check(CLI::IsMember({"cyclic", "dickson"}))->capture_default_str();
    model->add_option("--n", model_n, "Degree")->required()->check(CLI::PositiveNumber);
    model->add_option("--q", model_q, "Field size")->required()->check(CLI::PositiveNumber);
    model->callback([&] {
        action = [&] {
            auto M = family == "cyclic" ? group::cyclic_model(model_n, model_q) : group::dihedral_model(model_n, model_q);
            json j = monodromy_json(M);
            j["family"] = family;
            j["n"] = model_n;
            j["q"] = model_q;
            j["geomGens"] = perms_json(M.geom);
            j["tau"] = M.tau.cycles();
            auto gens_tau = M.geom;
            gens_tau.push_back(M.tau);
            j["components_geometric"] =
                group::component_count(group::fiber_tensor(M.geom, M.geom), model_n, model_n, group::Domain::off_diagonal);
            j["components_arithmetic"] =
                group::component_count(group::fiber_tensor(gens_tau, gens_tau), model_n, model_n, group::Domain::off_diagonal);
            return j;
        };
    });
    auto* coset = grp->add_subcommand("coset", "Coset criteria for MonodromyData JSON");
    std::string data;
    coset->add_option("--data", data, "MonodromyData JSON, or @file")->required();
    coset->callback([&] {
        action = [&] {
            std::string text = data;
            if (!text.empty() && text.front() == '@') {
                std::ifstream in(text.substr(1));
                if (!in) throw ValidationError("cannot read " + text.substr(1));
                text.assign(std::istreambuf_iterator<char>(in), {});
            }
            return monodromy_json(parse_monodromy(text));
        };
    });

    // nielsen
    auto* ni = app.add_subcommand("nielsen", "Branch cycles, braid orbits and Nielsen classes");
    ni->require_subcommand(1);
    std::vector<std::string> tuple, grp_gens, class_reps, star_gens, norm_gens;
    std::size_t ni_degree = 0;
    auto* validate = ni->add_subcommand("validate", "Product-one, generation, classes and genus");
    validate->add_option("--perm", tuple, "Tuple entry")->required();
    validate->add_option("--group", grp_gens, "Generators of G");
    validate->add_option("--class", class_reps, "Class representatives");
    validate->add_option("--degree", ni_degree, "Number of letters");
    validate->callback([&] {
        action = [&] {
            std::vector<std::string> all = tuple;
            all.insert(all.end(), grp_gens.begin(), grp_gens.end());
            all.insert(all.end(), class_reps.begin(), class_reps.end());
            std::size_t n = parse_perms(all, ni_degree).front().degree();
            auto t = parse_perms(tuple, n);
            auto c = nielsen::validate_tuple(t, grp_gens.empty() ? std::vector<Perm>{} : parse_perms(grp_gens, n),
                                             class_reps.empty() ? std::vector<Perm>{} : parse_perms(class_reps, n));
            json genus = nullptr;
            try {
                genus = nielsen::rh_genus(t);
            } catch (const ValidationError&) {
            }
            json idx = json::array();
            for (const auto& g : t) idx.push_back(nielsen::index(g));
            return json{{"tuple", perms_json(t)},
                        {"product_one", c.product_one},
                        {"generation", c.generation},
                        {"class_membership", opt_json(c.class_membership)},
                        {"ok", c.ok()},
                        {"violations", c.violations()},
                        {"indices", idx},
                        {"genus", genus}};
        };
    });
    auto* braid = ni->add_subcommand("braid", "Braid orbit of a tuple");
    std::string eq = "inner";
    bool reduced = false, all_tuples = false;
    braid->add_option("--perm", tuple, "Tuple entry")->required();
    braid->add_option("--eq", eq, "none, inner or absolute")->check(CLI::IsMember({"none", "inner", "absolute"}))->capture_default_str();
    braid->add_option("--normalizer", norm_gens, "Normaliser generators for absolute classes");
    braid->add_option("--degree", ni_degree, "Number of letters");
    braid->add_flag("--reduced", reduced, "Orbit under <(q1 q2 q3)^2, q1 q3^-1> (r = 4)");
    braid->add_flag("--all", all_tuples, "List every tuple in the orbit");
    braid->callback([&] {
        action = [&] {
            std::vector<std::string> all = tuple;
            all.insert(all.end(), norm_gens.begin(), norm_gens.end());
            std::size_t n = parse_perms(all, ni_degree).front().degree();
            nielsen::OrbitSpec spec;
            spec.eq = eq == "none" ? nielsen::Equivalence::none
                      : eq == "inner" ? nielsen::Equivalence::inner
                                      : nielsen::Equivalence::absolute;
            if (!norm_gens.empty()) spec.normalizer = parse_perms(norm_gens, n);
            auto t = parse_perms(tuple, n);
            auto orbit = reduced ? nielsen::q2_reduced_orbit(t, spec) : nielsen::braid_orbit(t, spec);
            json j = {{"equivalence", eq}, {"reduced", reduced}, {"orbit_size", orbit.size()},
                      {"representative", perms_json(orbit.front())}};
            if (all_tuples) {
                json o = json::array();
                for (const auto& u : orbit) o.push_back(perms_json(u));
                j["orbit"] = o;
            }
            return j;
        };
    });
    auto* dick = ni->add_subcommand("dickson", "Dickson branch cycles");
    unsigned dn = 5;
    dick->add_option("--n", dn, "Odd degree")->required();
    dick->callback([&] {
        action = [&] {
            auto t = nielsen::dickson_cycles(dn);
            return json{{"n", dn}, {"tuple", perms_json(t)}, {"ok", nielsen::validate_tuple(t).ok()}, {"genus", nielsen::rh_genus(t)}};
        };
    });
    auto* tower = ni->add_subcommand("tower", "Branch cycles of a Dickson tower");
    std::string labels = "1,1";
    std::uint64_t tower_q = 0;
    tower->add_option("--n", dn, "Odd degree")->required();
    tower->add_option("--labels", labels, "Parameters a_1,..,a_m")->capture_default_str();
    tower->add_option("--q", tower_q, "Field size for the stated degree");
    tower->callback([&] {
        action = [&] {
            auto r = nielsen::dickson_tower_cycles(dn, parse_ints(labels),
                                                   tower_q ? std::optional<std::uint64_t>(tower_q) : std::nullopt);
            json j = {{"n", dn},
                      {"degree", r.degree},
                      {"product_one", r.product_one},
                      {"transitive", r.transitive},
                      {"infinity_n_cycles", r.infinity_n_cycles},
                      {"genus", r.genus},
                      {"braid_check", opt_json(r.braid_check)},
                      {"stated_degree", opt_json(r.stated_degree)}};
            if (r.degree <= 64) j["tuple"] = perms_json(r.tuple);
            return j;
        };
    });
    auto* modular = ni->add_subcommand("modular", "Modular curve Nielsen classes");
    std::uint64_t mp = 3, mk = 0;
    modular->add_option("--p", mp, "Odd prime")->required();
    modular->add_option("--k", mk, "Level exponent")->capture_default_str();
    modular->callback([&] {
        action = [&] {
            auto m = nielsen::modular_nielsen(mp, mk);
            return json{{"p", m.p},
                        {"k", m.k},
                        {"N", m.N},
                        {"tuple_count", m.tuples.size()},
                        {"abs_class_count", m.abs_class_count},
                        {"inner_class_count", m.inner_class_count},
                        {"inner_braid_orbit_count", m.inner_braid_orbit_count},
                        {"inner_orbit_sizes", m.inner_orbit_sizes}};
        };
    });
    auto* rational = ni->add_subcommand("rational", "Rational union test for class collections");
    rational->add_option("--class", class_reps, "Class representatives")->required();
    rational->add_option("--group", grp_gens, "Generators of G")->required();
    rational->add_option("--star", star_gens, "Generators of G* (default G)");
    rational->add_option("--degree", ni_degree, "Number of letters");
    rational->callback([&] {
        action = [&] {
            std::vector<std::string> all = class_reps;
            all.insert(all.end(), grp_gens.begin(), grp_gens.end());
            all.insert(all.end(), star_gens.begin(), star_gens.end());
            std::size_t n = parse_perms(all, ni_degree).front().degree();
            auto G = parse_perms(grp_gens, n);
            auto r = nielsen::rational_union_check(parse_perms(class_reps, n), G,
                                                   star_gens.empty() ? G : parse_perms(star_gens, n));
            return json{{"rational", r.rational}, {"failing_k", opt_json(r.failing_k)}};
        };
    });
    auto* ds = ni->add_subcommand("diffsets", "Cyclic difference sets");
    std::uint32_t ds_n = 7, ds_k = 3, ds_l = 1;
    ds->add_option("--n", ds_n, "Group order")->required();
    ds->add_option("--k", ds_k, "Set size")->required();
    ds->add_option("--lambda", ds_l, "Multiplicity")->capture_default_str();
    ds->callback([&] {
        action = [&] {
            auto sets = nielsen::difference_sets(ds_n, ds_k, ds_l);
            return json{{"n", ds_n}, {"k", ds_k}, {"lambda", ds_l}, {"count", sets.size()}, {"sets", sets}};
        };
    });

    // oit
    auto* oit = app.add_subcommand("oit", "Lattes map exceptionality scan");
    std::string curve = "ogg";
    std::uint64_t oit_p = 5, lmax = 60;
    unsigned oit_tmax = 1;
    oit->add_option("--curve", curve, "ogg or [a1,a2,a3,a4,a6]")->capture_default_str();
    oit->add_option("--p", oit_p, "Prime p > 3")->capture_default_str();
    oit->add_option("--lmax", lmax, "Largest ell")->capture_default_str();
    oit->add_option("--tmax", oit_tmax, "Largest t")->capture_default_str()->check(CLI::PositiveNumber);
    oit->callback([&] {
        action = [&] {
            auto E = lattes::parse_curve_spec(curve);
            auto rep = lattes::oit_scan(E, oit_p, lmax, oit_tmax);
            json primes = json::array(), rec = json::array();
            for (const auto& pr : rep.primes) {
                auto R = lattes::reduce(E, pr.ell);
                unsigned T = 0;
                std::uint64_t Q = 1;
                while (T < oit_tmax && Q * pr.ell <= gf::size_cap()) Q *= pr.ell, ++T;
                primes.push_back({{"ell", pr.ell},
                                  {"a_ell", pr.a_ell},
                                  {"irreducible_marker", pr.irreducible_marker},
                                  {"supersingular", pr.a_ell == 0},
                                  {"median_t", lattes::median_value_check(R, T)},
                                  {"predicted_set", pr.predicted_set ? to_json(*pr.predicted_set) : json(nullptr)}});
            }
            for (const auto& r : rep.records)
                rec.push_back({{"ell", r.ell},
                               {"t", r.t},
                               {"a_ell", r.a_ell},
                               {"s_t", r.s_t},
                               {"predicted", r.predicted},
                               {"bijective", r.bijective},
                               {"match", r.match()}});
            return json{{"curve", rep.curve},
                        {"j", E.j.str()},
                        {"discriminant", E.discriminant},
                        {"p", rep.p},
                        {"ell_max", rep.ell_max},
                        {"t_max", rep.t_max},
                        {"skipped", rep.skipped},
                        {"primes", primes},
                        {"records", rec},
                        {"mismatches", rep.mismatches()}};
        };
    });

    // pencil
    auto* pen = app.add_subcommand("pencil", "Hyperelliptic pencil sums and W = p N_f");
    std::uint64_t pen_p = 31;
    std::string pen_f;
    pen->add_option("--p", pen_p, "Odd prime")->capture_default_str();
    pen->add_option("--f", pen_f, "Polynomial spec")->required();
    pen->callback([&] {
        action = [&] {
            if (!nt::is_prime(pen_p)) throw ValidationError("--p must be prime");
            auto F = gf::make_field(pen_p);
            auto f = projmap::parse_map_spec(F, pen_f);
            if (!f.is_polynomial()) throw ValidationError("pencil needs a polynomial");
            auto r = pencil::pencil_scan(f.num());
            json j = {{"p", r.p},
                      {"f", projmap::to_spec(f)},
                      {"E", r.E},
                      {"W", r.W},
                      {"N_f", r.N_f},
                      {"identity_ok", r.identity_ok},
                      {"k_f_estimate", r.k_f_estimate},
                      {"deviation", r.deviation}};
            std::optional<group::MonodromyData> M;
            auto n = static_cast<unsigned>(f.degree());
            if (pen_f.rfind("cyclic:", 0) == 0) M = group::cyclic_model(n, pen_p);
            if (pen_f.rfind("dickson:", 0) == 0) M = group::dihedral_model(n, pen_p);
            if (M) {
                auto k = pencil::kf_cross_check(f.num(), *M);
                j["kf_check"] = {{"components", k.components}, {"deviation", k.deviation}, {"bound", k.bound}, {"ok", k.ok}};
            }
            return j;
        };
    });

    // selftest
    auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
    self->callback([&] {
        action = [&] {
            json crit = json::array();
            bool pass = true;
            acceptance::run_all([&](const acceptance::Criterion& c) {
                std::fprintf(stderr, "%s\n", acceptance::format(c).c_str());
                crit.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
                pass = pass && c.pass;
            });
            if (!pass) exit_code = kExitInvariant;
            return json{{"criteria", crit}, {"pass", pass}};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }
    try {
        if (cap) gf::set_size_cap(cap);
        json out = action();
        if (tsv)
            emit_tsv(out, std::cout);
        else
            std::cout << out.dump(pretty ? 2 : -1) << '\n';
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCap;
    } catch (const InvariantFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return exit_code;
}
