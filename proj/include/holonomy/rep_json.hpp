#pragma once

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "surface_rep.hpp"

namespace hol {

using json = nlohmann::json;

using AnyRep = std::variant<SurfaceRep<MobiusF>, SurfaceRep<MobiusQ>, SurfaceRep<AffineF>, SurfaceRep<AffineQ>,
                            SurfaceRep<Perm>, SurfaceRep<CyclicElem>, SurfaceRep<DihedralElem>>;

namespace detail {

inline long long json_int(const json& j, const char* what)
{
    if (!j.is_number_integer()) throw InputError(std::string("expected integer for ") + what);
    return j.get<long long>();
}

inline bool is_exact_scalar(const json& j) { return j.is_object() && j.contains("num"); }

inline QExt parse_exact_scalar(const json& j)
{
    if (!j.contains("den") || !j["num"].is_array() || j["num"].size() != 2)
        throw InputError("exact scalar needs num:[p,q] and den");
    Rational p(BigInt(json_int(j["num"][0], "num")));
    Rational q(BigInt(json_int(j["num"][1], "num")));
    long long den = json_int(j["den"], "den");
    if (den == 0) throw InputError("exact scalar with zero denominator");
    std::string basis = j.value("basis", "1");
    Field f;
    if (basis == "1") {
        if (q != 0) throw InputError("basis 1 takes no second coordinate");
        f = Field::Q;
    } else if (basis == "i") {
        f = Field::Qi;
    } else if (basis == "w") {
        f = Field::Qw;
    } else {
        throw InputError("unknown basis: " + basis);
    }
    Rational d(den);
    if (q == 0) return QExt(p / d);
    return QExt(p / d, q / d, f);
}

inline Cplx parse_float_scalar(const json& j)
{
    if (is_exact_scalar(j)) return parse_exact_scalar(j).to_complex();
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("complex scalar must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

// Float pairs are converted exactly (dyadic rationals) and land in Q(i).
inline QExt parse_qext_scalar(const json& j)
{
    if (is_exact_scalar(j)) return parse_exact_scalar(j);
    Cplx z = parse_float_scalar(j);
    Rational re = rational_from_double(z.real()), im = rational_from_double(z.imag());
    if (im == 0) return QExt(re);
    return QExt(re, im, Field::Qi);
}

template <class S>
S parse_scalar(const json& j)
{
    if constexpr (ScalarTraits<S>::exact) return parse_qext_scalar(j);
    else return parse_float_scalar(j);
}

template <class S>
Mobius<S> parse_mobius(const json& j)
{
    if (!j.is_array() || j.size() != 4) throw InputError("Mobius element must list 4 entries");
    return Mobius<S>(parse_scalar<S>(j[0]), parse_scalar<S>(j[1]), parse_scalar<S>(j[2]), parse_scalar<S>(j[3]));
}

template <class S>
Affine<S> parse_affine(const json& j)
{
    if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw InputError("affine element needs a and b");
    return Affine<S>(parse_scalar<S>(j["a"]), parse_scalar<S>(j["b"]));
}

// One-line arrays are read 1-based unless they contain 0.
inline Perm parse_perm(const json& j, int d)
{
    if (!j.is_array() || int(j.size()) != d) throw InputError("permutation must have " + std::to_string(d) + " entries");
    std::vector<int> v;
    for (auto& x : j) v.push_back(int(json_int(x, "permutation entry")));
    bool zero_based = std::find(v.begin(), v.end(), 0) != v.end();
    if (!zero_based)
        for (auto& x : v) --x;
    return Perm(v);
}

inline std::pair<int, int> parse_rot_flip(const json& j)
{
    if (j.is_number_integer()) return {j.get<int>(), 0};
    if (!j.is_object() || !j.contains("rot")) throw InputError("expected {\"rot\": k, \"flip\": 0|1}");
    int flip = j.contains("flip") ? int(json_int(j["flip"], "flip")) : 0;
    if (flip != 0 && flip != 1) throw InputError("flip must be 0 or 1");
    return {int(json_int(j["rot"], "rot")), flip};
}

template <class E, class F>
SurfaceRep<E> parse_images(int genus, const json& images, const TargetTag& tag, F parse_one)
{
    std::vector<E> im;
    for (auto& x : images) im.push_back(parse_one(x));
    return SurfaceRep<E>(genus, std::move(im), tag);
}

} // namespace detail

inline AnyRep rep_from_json(const json& j, bool exact = false)
{
    if (!j.is_object() || !j.contains("genus") || !j.contains("target") || !j.contains("images"))
        throw InputError("representation needs genus, target and images");
    int genus = int(detail::json_int(j["genus"], "genus"));
    if (!j["target"].is_string()) throw InputError("target must be a string");
    TargetTag tag = TargetTag::parse(j["target"].get<std::string>());
    const json& images = j["images"];
    if (!images.is_array()) throw InputError("images must be an array");
    using K = TargetTag::Kind;
    switch (tag.kind) {
    case K::psl2c:
        if (exact) return detail::parse_images<MobiusQ>(genus, images, tag, detail::parse_mobius<QExt>);
        return detail::parse_images<MobiusF>(genus, images, tag, detail::parse_mobius<Cplx>);
    case K::affine:
    case K::euclidean:
    case K::circle_linear:
        if (exact) return detail::parse_images<AffineQ>(genus, images, tag, detail::parse_affine<QExt>);
        return detail::parse_images<AffineF>(genus, images, tag, detail::parse_affine<Cplx>);
    case K::permutation:
        return detail::parse_images<Perm>(genus, images, tag, [&](const json& x) { return detail::parse_perm(x, tag.param); });
    case K::cyclic:
        return detail::parse_images<CyclicElem>(genus, images, tag, [&](const json& x) {
            return CyclicElem(detail::parse_rot_flip(x).first, tag.param);
        });
    case K::dihedral:
        return detail::parse_images<DihedralElem>(genus, images, tag, [&](const json& x) {
            auto [r, f] = detail::parse_rot_flip(x);
            return DihedralElem(r, f, tag.param);
        });
    }
    throw InputError("unsupported target");
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline AnyRep load_rep(const std::string& path, bool exact = false) { return rep_from_json(read_json_file(path), exact); }

// ---- Serialization ----

inline json to_json(const Cplx& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const QExt& z)
{
    // Common denominator of both coordinates.
    BigInt den = boost::multiprecision::lcm(boost::multiprecision::denominator(z.x), boost::multiprecision::denominator(z.y));
    BigInt p = boost::multiprecision::numerator(z.x * Rational(den));
    BigInt q = boost::multiprecision::numerator(z.y * Rational(den));
    auto as_json = [](const BigInt& v) -> json {
        if (v > BigInt(std::numeric_limits<long long>::max()) || v < BigInt(std::numeric_limits<long long>::min()))
            throw DomainError("exact scalar too large to serialize");
        return v.convert_to<long long>();
    };
    return json{{"num", json::array({as_json(p), as_json(q)})}, {"den", as_json(den)}, {"basis", field_basis(z.f)}};
}

template <class S>
json to_json(const Mobius<S>& m)
{
    return json::array({to_json(m.a), to_json(m.b), to_json(m.c), to_json(m.d)});
}

template <class S>
json to_json(const Affine<S>& f)
{
    return json{{"a", to_json(f.a)}, {"b", to_json(f.b)}};
}

inline json to_json(const Perm& p)
{
    json a = json::array();
    for (int x : p.p) a.push_back(x + 1);
    return a;
}

inline json to_json(const CyclicElem& c) { return json{{"rot", c.k}, {"flip", 0}}; }
inline json to_json(const DihedralElem& d) { return json{{"rot", d.rot}, {"flip", d.flip}}; }

template <class E>
json to_json(const SurfaceRep<E>& rep)
{
    json im = json::array();
    for (auto& x : rep.images()) im.push_back(to_json(x));
    return json{{"genus", rep.genus()}, {"target", rep.tag().str()}, {"images", im}};
}

inline json to_json(const AnyRep& rep)
{
    return std::visit([](const auto& r) { return to_json(r); }, rep);
}

} // namespace hol
