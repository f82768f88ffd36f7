#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "affine.hpp"
#include "finite_elements.hpp"
#include "mobius.hpp"

namespace hol {

struct TargetTag {
    enum class Kind { psl2c, affine, euclidean, circle_linear, permutation, cyclic, dihedral };
    Kind kind = Kind::psl2c;
    int param = 0;

    static TargetTag psl2c() { return {Kind::psl2c, 0}; }
    static TargetTag affine() { return {Kind::affine, 0}; }
    static TargetTag euclidean() { return {Kind::euclidean, 0}; }
    static TargetTag circle_linear() { return {Kind::circle_linear, 0}; }
    static TargetTag permutation(int d) { return {Kind::permutation, d}; }
    static TargetTag cyclic(int n) { return {Kind::cyclic, n}; }
    static TargetTag dihedral(int n) { return {Kind::dihedral, n}; }

    std::string str() const
    {
        switch (kind) {
        case Kind::psl2c: return "psl2c";
        case Kind::affine: return "affine";
        case Kind::euclidean: return "euclidean";
        case Kind::circle_linear: return "circle-linear";
        case Kind::permutation: return "permutation(" + std::to_string(param) + ")";
        case Kind::cyclic: return "cyclic(" + std::to_string(param) + ")";
        case Kind::dihedral: return "dihedral(" + std::to_string(param) + ")";
        }
        return "?";
    }

    static TargetTag parse(const std::string& s)
    {
        auto arg = [&](const std::string& head) -> int {
            if (s.size() < head.size() + 3 || s.back() != ')') throw InputError("bad target tag: " + s);
            try {
                std::size_t used = 0;
                std::string num = s.substr(head.size() + 1, s.size() - head.size() - 2);
                int v = std::stoi(num, &used);
                if (used != num.size() || v < 1) throw InputError("");
                return v;
            } catch (const std::exception&) {
                throw InputError("bad target tag: " + s);
            }
        };
        if (s == "psl2c") return psl2c();
        if (s == "affine") return affine();
        if (s == "euclidean") return euclidean();
        if (s == "circle-linear") return circle_linear();
        if (s.rfind("permutation(", 0) == 0) return permutation(arg("permutation"));
        if (s.rfind("cyclic(", 0) == 0) return cyclic(arg("cyclic"));
        if (s.rfind("dihedral(", 0) == 0) return dihedral(arg("dihedral"));
        throw InputError("unknown target tag: " + s);
    }

    friend bool operator==(const TargetTag& a, const TargetTag& b) { return a.kind == b.kind && a.param == b.param; }
};

template <class S>
Mobius<S> identity_element(std::type_identity<Mobius<S>>, const TargetTag&) { return {}; }
template <class S>
Affine<S> identity_element(std::type_identity<Affine<S>>, const TargetTag&) { return {}; }
inline Perm identity_element(std::type_identity<Perm>, const TargetTag& t) { return Perm(t.param); }
inline CyclicElem identity_element(std::type_identity<CyclicElem>, const TargetTag& t) { return {0, t.param}; }
inline DihedralElem identity_element(std::type_identity<DihedralElem>, const TargetTag& t) { return {0, 0, t.param}; }

template <class E>
E identity_of(const TargetTag& t) { return identity_element(std::type_identity<E>{}, t); }

template <class E>
E commutator(const E& x, const E& y)
{
    return compose(compose(x, y), compose(invert(x), invert(y)));
}

// Product of [a_i, b_i] over the handles of a 2g-tuple.
template <class E>
E relator_product(const std::vector<E>& im, const TargetTag& tag)
{
    E p = identity_of<E>(tag);
    for (std::size_t i = 0; i + 1 < im.size(); i += 2) p = compose(p, commutator(im[i], im[i + 1]));
    return p;
}

template <class E>
bool relator_holds(const std::vector<E>& im, const TargetTag& tag)
{
    E p = relator_product(im, tag);
    if constexpr (std::is_same_v<E, MobiusF>) {
        double scale = 1.0;
        for (auto& m : im) scale = std::max(scale, frobenius(m));
        return same(p, MobiusF(), default_tolerance() * std::pow(scale, 4));
    } else if constexpr (std::is_same_v<E, AffineF>) {
        double scale = 1.0;
        for (auto& f : im) scale = std::max({scale, std::abs(f.a), std::abs(f.b)});
        return std::abs(p.a - 1.0) <= default_tolerance() * std::pow(scale, 4) &&
               std::abs(p.b) <= default_tolerance() * std::pow(scale, 4);
    } else {
        return is_identity(p);
    }
}

template <class E>
void check_tag(const E& x, const TargetTag& tag)
{
    using K = TargetTag::Kind;
    if constexpr (std::is_same_v<E, Perm>) {
        if (tag.kind != K::permutation || x.degree() != tag.param) throw InputError("element does not match tag " + tag.str());
    } else if constexpr (std::is_same_v<E, CyclicElem>) {
        if (tag.kind != K::cyclic || x.n != tag.param) throw InputError("element does not match tag " + tag.str());
    } else if constexpr (std::is_same_v<E, DihedralElem>) {
        if (tag.kind != K::dihedral || x.n != tag.param) throw InputError("element does not match tag " + tag.str());
    } else if constexpr (std::is_same_v<E, MobiusF> || std::is_same_v<E, MobiusQ>) {
        if (tag.kind != K::psl2c) throw InputError("Mobius element needs tag psl2c");
    } else {
        using S = decltype(x.a);
        if (tag.kind != K::affine && tag.kind != K::euclidean && tag.kind != K::circle_linear)
            throw InputError("affine element needs an affine-type tag");
        if (tag.kind != K::affine) {
            bool unit;
            if constexpr (ScalarTraits<S>::exact) unit = x.a.norm() == 1;
            else unit = std::abs(std::abs(x.a) - 1.0) <= default_tolerance() * kFixedSlack;
            if (!unit) throw InputError("linear part must have unit modulus for tag " + tag.str());
        }
        if (tag.kind == K::circle_linear && !ScalarTraits<S>::is_zero(x.b))
            throw InputError("circle-linear elements have no translation part");
    }
}

template <class E>
class SurfaceRep {
public:
    SurfaceRep(int genus, std::vector<E> images, TargetTag tag)
        : genus_(genus), images_(std::move(images)), tag_(tag)
    {
        if (genus_ < 0) throw InputError("negative genus");
        if (int(images_.size()) != 2 * genus_)
            throw InputError("expected " + std::to_string(2 * genus_) + " images, got " + std::to_string(images_.size()));
        for (auto& x : images_) check_tag(x, tag_);
        if (!relator_holds(images_, tag_)) throw DomainError("images violate the surface relator");
    }

    int genus() const { return genus_; }
    const std::vector<E>& images() const { return images_; }
    const TargetTag& tag() const { return tag_; }
    const E& a(int i) const { return images_[2 * i]; }
    const E& b(int i) const { return images_[2 * i + 1]; }

private:
    int genus_;
    std::vector<E> images_;
    TargetTag tag_;
};

template <class E>
bool relator_check(const SurfaceRep<E>& rep)
{
    return relator_holds(rep.images(), rep.tag());
}

template <class E>
SurfaceRep<E> conjugate_rep(const SurfaceRep<E>& rep, const E& h)
{
    std::vector<E> im;
    E hi = invert(h);
    for (auto& x : rep.images()) im.push_back(compose(compose(h, x), hi));
    return SurfaceRep<E>(rep.genus(), std::move(im), rep.tag());
}

template <class E>
bool all_identity(const std::vector<E>& im)
{
    for (auto& x : im)
        if (!is_identity(x)) return false;
    return true;
}

} // namespace hol
