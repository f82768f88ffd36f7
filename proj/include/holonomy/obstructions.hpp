#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branch_data.hpp"
#include "classify.hpp"
#include "euclidean.hpp"
#include "finite_group.hpp"

namespace hol {

inline constexpr double kVolumeThreshold = 1e-9;

// Volume and translation-lattice data of a Euclidean rep, exact when the input was exact.
struct EuclideanSummary {
    bool exact = false;
    double volume = 0;
    std::optional<KappaReal> volume_exact;
    int volume_sign = 0;
    std::optional<int> linear_order;  // absent: infinite linear part
    std::optional<LatticeRank> rank;   // absent: reduction failed, see lattice_error
    std::string lattice_error;
    double area = 0;
    std::optional<KappaReal> area_exact;

    bool has_lattice() const
    {
        if (!linear_order) return false;
        if (!rank) throw DomainError(lattice_error);
        return *rank == LatticeRank::Two;
    }

    // n Vol >= m Area(C / Lambda); requires has_lattice().
    bool haupt_holds(int m) const
    {
        int n = *linear_order;
        if (exact && volume_exact && area_exact) {
            const KappaReal &v = *volume_exact, &a = *area_exact;
            if (v.c == 0 || a.c == 0 || v.f == a.f) return Rational(n) * v.c >= Rational(m) * a.c;
        }
        double lhs = n * volume, rhs = m * area;
        return lhs >= rhs - default_tolerance() * std::max(1.0, std::abs(rhs));
    }
};

template <class S>
EuclideanSummary summarize_euclidean(const SurfaceRep<Affine<S>>& rep)
{
    EuclideanSummary e;
    e.exact = ScalarTraits<S>::exact;
    auto v = volume_pl(rep);
    e.volume = real_value(v);
    if constexpr (ScalarTraits<S>::exact) {
        e.volume_exact = v;
        e.volume_sign = v.sign();
    } else {
        e.volume_sign = v > kVolumeThreshold ? 1 : (v < -kVolumeThreshold ? -1 : 0);
    }
    e.linear_order = linear_order(rep.images());
    if (e.linear_order) {
        try {
            auto info = lattice_of(rep);
            e.rank = info.rank;
            e.area = real_value(info.area);
            if constexpr (ScalarTraits<S>::exact) e.area_exact = info.area;
        } catch (const DomainError& err) {
            e.lattice_error = err.what();
        }
    }
    return e;
}

// Everything the obstructions need to know about a rep.
struct HolonomyProfile {
    int genus = 0;
    ElementaryClass cls;
    int sw = 0;
    std::optional<int> image_order;  // finite image order in PSL(2,C)
    bool order_unverified = false;   // spherical, but no finite order found below the cap
    std::optional<EuclideanSummary> euclid;
    std::vector<std::string> warnings;
};

namespace detail {

inline void fill_order(HolonomyProfile& p)
{
    if (p.cls.spherical) {
        p.image_order = p.cls.finite_order;
        p.order_unverified = !p.image_order;
    }
    for (auto& w : p.cls.warnings) p.warnings.push_back(w);
}

inline MobiusF rotation_matrix(int k, int n)
{
    Cplx h = std::polar(1.0, kPi * k / n);
    return MobiusF(h, 0.0, 0.0, 1.0 / h);
}

inline SurfaceRep<MobiusF> with_images(int genus, std::vector<MobiusF> im)
{
    return SurfaceRep<MobiusF>(genus, std::move(im), TargetTag::psl2c());
}

} // namespace detail

inline HolonomyProfile profile(const SurfaceRep<MobiusF>& rep, int cap = kDefaultCap)
{
    HolonomyProfile p;
    p.genus = rep.genus();
    p.cls = classify(rep, cap);
    p.sw = sw(rep);
    detail::fill_order(p);
    if (p.cls.euclidean && p.cls.fixed_point) p.euclid = summarize_euclidean(to_affine_rep(rep, *p.cls.fixed_point));
    return p;
}

inline HolonomyProfile profile(const SurfaceRep<AffineF>& rep, int cap = kDefaultCap)
{
    HolonomyProfile p;
    p.genus = rep.genus();
    p.cls = classify(rep, cap);
    p.sw = 0;  // affine reps lift
    detail::fill_order(p);
    if (p.cls.euclidean) p.euclid = summarize_euclidean(rep);
    return p;
}

inline HolonomyProfile profile(const SurfaceRep<AffineQ>& rep, int cap = kDefaultCap)
{
    HolonomyProfile p;
    p.genus = rep.genus();
    p.cls = classify(rep);
    p.sw = 0;
    if (p.cls.spherical && !p.cls.finite_order) {
        std::vector<MobiusF> m;
        for (auto& f : rep.images()) m.push_back(embed(to_float(f)));
        p.cls.finite_order = finite_image_order(m, cap);
    }
    detail::fill_order(p);
    if (p.cls.euclidean) p.euclid = summarize_euclidean(rep);
    return p;
}

inline HolonomyProfile profile(const SurfaceRep<MobiusQ>& rep, int cap = kDefaultCap)
{
    if (auto aff = exact_affine_rep(rep)) {
        auto p = profile(*aff, cap);
        p.sw = sw(rep);
        return p;
    }
    std::vector<MobiusF> im;
    for (auto& m : rep.images()) im.push_back(to_float(m));
    auto p = profile(detail::with_images(rep.genus(), im), cap);
    p.sw = sw(rep);
    p.warnings.push_back("exact Mobius rep classified in floating point");
    return p;
}

// Finite targets go through their standard embeddings into PSL(2,C).
inline SurfaceRep<MobiusF> to_mobius(const SurfaceRep<CyclicElem>& rep)
{
    std::vector<MobiusF> im;
    for (auto& x : rep.images()) im.push_back(detail::rotation_matrix(x.k, x.n));
    return detail::with_images(rep.genus(), im);
}

inline SurfaceRep<MobiusF> to_mobius(const SurfaceRep<DihedralElem>& rep)
{
    std::vector<MobiusF> im;
    MobiusF s(0.0, Cplx(0, 1), Cplx(0, 1), 0.0);
    for (auto& x : rep.images()) {
        MobiusF m = detail::rotation_matrix(x.rot, x.n);
        im.push_back(x.flip ? compose(m, s) : m);
    }
    return detail::with_images(rep.genus(), im);
}

inline SurfaceRep<MobiusF> to_mobius(const SurfaceRep<Perm>& rep)
{
    int d = rep.images().empty() ? 0 : rep.images()[0].degree();
    FiniteGroup G = d == 4 ? FiniteGroup::symmetric4() : d == 5 ? FiniteGroup::alternating5()
                    : throw DomainError("no embedding into PSL(2,C) for permutations of degree " + std::to_string(d));
    std::vector<MobiusF> im;
    for (auto& x : rep.images()) {
        const SU2& u = G.lift(G.index_of(x));
        im.push_back(MobiusF(u[0], u[1], u[2], u[3]));
    }
    return detail::with_images(rep.genus(), im);
}

template <class E>
    requires(std::is_same_v<E, CyclicElem> || std::is_same_v<E, DihedralElem> || std::is_same_v<E, Perm>)
HolonomyProfile profile(const SurfaceRep<E>& rep, int cap = kDefaultCap)
{
    return profile(to_mobius(rep), cap);
}

// ---- The six checks ----

inline bool check_parity(int sw_value, const BranchData& bd) { return bd.total() % 2 == sw_value % 2; }

inline bool check_min_degree(const ElementaryClass& c, const BranchData& bd, int g)
{
    if (c.nonelementary) return true;
    if (c.spherical) return bd.total() >= 2 * g - 1;
    return bd.total() >= 2 * g - 2;
}

// n (chi + sum) >= 2 (max + 1); no finite order means nothing to check.
inline bool check_riemann_hurwitz(std::optional<int> n, int g, const BranchData& bd)
{
    if (!n) return true;
    return long(*n) * (2 - 2 * g + bd.total()) >= 2L * (bd.max() + 1);
}

inline bool check_volume(const EuclideanSummary& e, const BranchData& bd, int g)
{
    if (bd.total() != 2 * g - 2) return true;
    return e.volume_sign > 0;
}

inline bool check_haupt(const EuclideanSummary& e, const BranchData& bd, int g)
{
    if (bd.total() != 2 * g - 2) return true;
    if (!e.has_lattice()) return true;
    return e.haupt_holds(bd.max() + 1);
}

inline bool check_genus2_dihedral(const ElementaryClass& c, int sw_value, const BranchData& bd, int g)
{
    return !(g == 2 && bd == BranchData{2} && c.dihedral && !c.affine && sw_value == 0);
}

// ---- Decision ----

struct ObstructionReport {
    bool parity_ok = true, min_degree_ok = true, riemann_hurwitz_ok = true, volume_ok = true, haupt_ok = true,
         genus2_dihedral_ok = true, verdict = true;
    std::map<std::string, std::string> annotations;
    std::vector<std::string> warnings;
};

inline ObstructionReport decide_holonomy(const HolonomyProfile& p, const BranchData& bd)
{
    int g = p.genus;
    if (g < 2) throw GenusError(g);
    ObstructionReport r;
    r.warnings = p.warnings;
    r.parity_ok = check_parity(p.sw, bd);
    r.min_degree_ok = check_min_degree(p.cls, bd, g);
    if (p.cls.nonelementary) r.annotations["min_degree"] = "n/a: nonelementary";

    r.riemann_hurwitz_ok = check_riemann_hurwitz(p.image_order, g, bd);
    if (p.order_unverified) r.annotations["riemann_hurwitz"] = "unverified: cap";
    else if (!p.image_order) r.annotations["riemann_hurwitz"] = "n/a: image not finite";

    if (!p.cls.euclidean || !p.euclid) {
        r.annotations["volume"] = r.annotations["haupt"] = "n/a: not Euclidean";
    } else if (bd.total() != 2 * g - 2) {
        r.annotations["volume"] = r.annotations["haupt"] = "n/a: total branching differs from 2g-2";
    } else {
        r.volume_ok = check_volume(*p.euclid, bd, g);
        if (!p.euclid->linear_order) r.annotations["haupt"] = "n/a: infinite linear part";
        else if (!p.euclid->has_lattice()) r.annotations["haupt"] = "n/a: translations do not form a lattice";
        r.haupt_ok = check_haupt(*p.euclid, bd, g);
    }

    r.genus2_dihedral_ok = check_genus2_dihedral(p.cls, p.sw, bd, g);
    if (g != 2 || !(bd == BranchData{2})) r.annotations["genus2_dihedral"] = "n/a";

    r.verdict = r.parity_ok && r.min_degree_ok && r.riemann_hurwitz_ok && r.volume_ok && r.haupt_ok && r.genus2_dihedral_ok;
    return r;
}

template <class E>
ObstructionReport decide_holonomy(const SurfaceRep<E>& rep, const BranchData& bd, int cap = kDefaultCap)
{
    if (rep.genus() < 2) throw GenusError(rep.genus());
    return decide_holonomy(profile(rep, cap), bd);
}

// ---- Minimal total branching ----

struct MinDegree {
    int d = 0;
    std::vector<std::string> path;
};

inline MinDegree minimal_degree(const HolonomyProfile& p)
{
    int g = p.genus;
    if (g < 2) throw GenusError(g);
    MinDegree m;
    if (p.cls.nonelementary) {
        m.path = {"nonelementary", p.sw ? "does not lift" : "lifts"};
        m.d = p.sw;
        return m;
    }
    m.path.push_back("elementary");
    if (p.sw) {
        m.path.push_back("does not lift");
        m.d = 2 * g - 1;
        return m;
    }
    m.path.push_back("lifts");
    if (p.cls.spherical) {
        m.path.push_back("spherical");
        m.path.push_back(p.cls.trivial ? "trivial" : "nontrivial");
        m.d = p.cls.trivial ? 2 * g + 2 : 2 * g;
        return m;
    }
    m.path.push_back("not spherical");
    if (!p.cls.euclidean || !p.euclid) {
        m.path.push_back("not euclidean");
        m.d = 2 * g - 2;
        return m;
    }
    m.path.push_back("euclidean");
    const auto& e = *p.euclid;
    if (e.volume_sign <= 0) {
        m.path.push_back("volume not positive");
        m.d = 2 * g;
        return m;
    }
    m.path.push_back("volume positive");
    if (!e.linear_order) {
        m.path.push_back("infinite linear part");
        m.d = 2 * g - 2;
    } else if (!e.has_lattice()) {
        m.path.push_back("no lattice");
        m.d = 2 * g - 2;
    } else if (e.haupt_holds(2)) {
        m.path.push_back("lattice inequality holds");
        m.d = 2 * g - 2;
    } else {
        m.path.push_back("lattice inequality fails");
        m.d = 2 * g;
    }
    return m;
}

template <class E>
MinDegree minimal_degree(const SurfaceRep<E>& rep, int cap = kDefaultCap)
{
    if (rep.genus() < 2) throw GenusError(rep.genus());
    return minimal_degree(profile(rep, cap));
}

} // namespace hol
