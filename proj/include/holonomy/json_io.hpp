#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "hurwitz.hpp"
#include "obstructions.hpp"
#include "orbits.hpp"
#include "rep_json.hpp"
#include "surgery.hpp"

namespace hol {

// ---- Scalars and small types ----

inline std::string exact_string(const KappaReal& v)
{
    std::string s = v.c.str();
    if (v.f == Field::Qw) s += "*sqrt(3)/2";
    return s;
}

inline json to_json(const KappaReal& v) { return json{{"value", v.value()}, {"exact", exact_string(v)}}; }

inline json to_json(const BranchData& bd) { return bd.orders(); }

template <class T>
json optional_json(const std::optional<T>& x)
{
    if (!x) return nullptr;
    if constexpr (std::is_arithmetic_v<T>) return *x;
    else return to_json(*x);
}

inline json to_json(const HermitianForm& h)
{
    return json{{"h00", h.h00}, {"h01", to_json(h.h01)}, {"h11", h.h11}};
}

inline json to_json(const CP1Point& p)
{
    if (p.is_infinity()) return "infinity";
    return to_json(p.value());
}

// ---- Classification and obstructions ----

inline json to_json(const ElementaryClass& c)
{
    return json{{"spherical", c.spherical},
                {"affine", c.affine},
                {"euclidean", c.euclidean},
                {"dihedral", c.dihedral},
                {"trivial", c.trivial},
                {"nonelementary", c.nonelementary},
                {"finite_order", optional_json(c.finite_order)},
                {"certificate", optional_json(c.certificate)},
                {"fixed_point", optional_json(c.fixed_point)}};
}

inline json to_json(const EuclideanSummary& e)
{
    json j{{"volume", e.volume}, {"volume_sign", e.volume_sign}, {"linear_order", optional_json(e.linear_order)}};
    if (e.volume_exact) j["volume_exact"] = exact_string(*e.volume_exact);
    if (e.rank) {
        j["lattice_rank"] = rank_name(*e.rank);
        j["area"] = e.area;
        if (e.area_exact) j["area_exact"] = exact_string(*e.area_exact);
    } else if (e.linear_order) {
        j["lattice_rank"] = nullptr;
        j["lattice_error"] = e.lattice_error;
    }
    return j;
}

inline json to_json(const HolonomyProfile& p)
{
    return json{{"genus", p.genus},
                {"class", to_json(p.cls)},
                {"sw", p.sw},
                {"image_order", optional_json(p.image_order)},
                {"order_unverified", p.order_unverified},
                {"euclidean", optional_json(p.euclid)}};
}

inline json to_json(const ObstructionReport& r)
{
    return json{{"verdict", r.verdict},
                {"checks",
                 {{"parity", r.parity_ok},
                  {"min_degree", r.min_degree_ok},
                  {"riemann_hurwitz", r.riemann_hurwitz_ok},
                  {"volume", r.volume_ok},
                  {"haupt", r.haupt_ok},
                  {"genus2_dihedral", r.genus2_dihedral_ok}}},
                {"annotations", r.annotations}};
}

inline json to_json(const MinDegree& m) { return json{{"d", m.d}, {"path", m.path}}; }

template <class S>
json to_json(const LatticeInfo<S>& l)
{
    json basis = json::array();
    for (auto& b : l.basis) basis.push_back(to_json(b));
    json j{{"rank", rank_name(l.rank)}, {"basis", basis}, {"linear_order", l.linear_order}};
    if constexpr (ScalarTraits<S>::exact) {
        j["area"] = l.area.value();
        j["area_exact"] = exact_string(l.area);
    } else {
        j["area"] = l.area;
    }
    return j;
}

// ---- Hurwitz ----

inline json to_json(const PermTuple& t)
{
    json cycles = json::array(), images = json::array();
    for (auto& p : t.perms) {
        cycles.push_back(p.str());
        images.push_back(to_json(p));
    }
    return json{{"degree", t.degree}, {"orders", t.orders}, {"cycles", cycles}, {"images", images}};
}

// ---- Orbits ----

inline json to_json(const OrbitInfo& o)
{
    return json{{"size", o.size},
                {"conjugacy_classes", o.conjugacy_classes},
                {"image_order", o.image_order},
                {"image_class", o.image_class},
                {"sw", o.sw},
                {"abelian_image_order", o.abelian_image_order},
                {"representative", o.representative}};
}

inline json to_json(const OrbitSummary& s)
{
    json orbits = json::array();
    for (auto& o : s.orbits) orbits.push_back(to_json(o));
    return json{{"group", s.group},
                {"genus", s.genus},
                {"surjective_only", s.surjective_only},
                {"hom_count", s.hom_count},
                {"surjective_count", s.surjective_count},
                {"orbit_count", s.orbit_count},
                {"orbits", orbits}};
}

namespace detail {

template <class T>
T field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("bad field ") + key);
    }
}

} // namespace detail

inline OrbitSummary orbit_summary_from_json(const json& j)
{
    using detail::field;
    OrbitSummary s;
    s.group = field<std::string>(j, "group");
    s.genus = field<int>(j, "genus");
    s.surjective_only = field<bool>(j, "surjective_only");
    s.hom_count = field<long long>(j, "hom_count");
    s.surjective_count = field<long long>(j, "surjective_count");
    s.orbit_count = field<int>(j, "orbit_count");
    for (const auto& o : field<json>(j, "orbits")) {
        OrbitInfo i;
        i.size = field<long long>(o, "size");
        i.conjugacy_classes = field<long long>(o, "conjugacy_classes");
        i.image_order = field<int>(o, "image_order");
        i.image_class = field<std::vector<int>>(o, "image_class");
        i.sw = field<int>(o, "sw");
        i.abelian_image_order = field<int>(o, "abelian_image_order");
        i.representative = field<std::vector<int>>(o, "representative");
        s.orbits.push_back(std::move(i));
    }
    if (int(s.orbits.size()) != s.orbit_count) throw InputError("orbit_count does not match the orbit list");
    return s;
}

// ---- Surgery ----

inline json to_json(const Slit& s)
{
    return json{{"sheet", s.sheet},
                {"dir", s.dir == SlitDir::horizontal ? "h" : "v"},
                {"x", s.x},
                {"y", s.y},
                {"length", s.length}};
}

inline json to_json(const GluingPattern& p)
{
    json slits = json::array(), pairings = json::array();
    for (auto& s : p.slits) slits.push_back(to_json(s));
    for (auto& q : p.pairings) pairings.push_back(json::array({q.a, q.b, q.label}));
    return json{{"n", p.n},
                {"sheets", p.sheets},
                {"height", p.height},
                {"layout", p.layout},
                {"slits", slits},
                {"pairings", pairings}};
}

inline GluingPattern gluing_pattern_from_json(const json& j)
{
    using detail::field;
    GluingPattern p;
    p.n = field<int>(j, "n");
    p.sheets = field<int>(j, "sheets");
    p.height = field<int>(j, "height");
    p.layout = j.value("layout", "");
    for (const auto& s : field<json>(j, "slits")) {
        Slit sl;
        sl.sheet = field<int>(s, "sheet");
        auto dir = field<std::string>(s, "dir");
        if (dir != "h" && dir != "v") throw InputError("slit dir must be h or v");
        sl.dir = dir == "h" ? SlitDir::horizontal : SlitDir::vertical;
        sl.x = field<int>(s, "x");
        sl.y = field<int>(s, "y");
        sl.length = field<int>(s, "length");
        p.slits.push_back(sl);
    }
    for (const auto& q : field<json>(j, "pairings")) {
        if (!q.is_array() || q.size() != 3) throw InputError("pairing must be [a, b, label]");
        try {
            p.pairings.push_back({q[0].get<int>(), q[1].get<int>(), q[2].get<int>()});
        } catch (const json::exception&) {
            throw InputError("pairing entries must be integers");
        }
    }
    return p;
}

inline json to_json(const ConeSurface& c)
{
    return json{{"genus", c.genus},
                {"cone_orders", to_json(c.cone_orders)},
                {"n", c.n},
                {"holonomy_order", c.holonomy_order},
                {"surjective", c.surjective()},
                {"components", c.components},
                {"sheets", c.sheets},
                {"euler", c.euler},
                {"gauss_bonnet", c.gauss_bonnet_holds()}};
}

// ---- Command results ----

// FNV-1a, 64 bit.
inline std::string digest(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct CommandResult {
    std::string command;
    std::string input_digest;
    json output;
    std::vector<std::string> warnings;
};

inline json to_json(const CommandResult& r)
{
    return json{{"command", r.command}, {"input_digest", r.input_digest}, {"output", r.output}, {"warnings", r.warnings}};
}

inline CommandResult command_result_from_json(const json& j)
{
    using detail::field;
    return {field<std::string>(j, "command"), field<std::string>(j, "input_digest"), field<json>(j, "output"),
            field<std::vector<std::string>>(j, "warnings")};
}

inline void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << '\n';
}

} // namespace hol
