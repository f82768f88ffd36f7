#include <gtest/gtest.h>

#include <random>

#include "holonomy/hurwitz.hpp"
#include "holonomy/obstructions.hpp"

using namespace hol;

namespace {

const Cplx I(0, 1);

SurfaceRep<MobiusF> mob(int g, std::vector<MobiusF> im) { return SurfaceRep<MobiusF>(g, std::move(im), TargetTag::psl2c()); }
SurfaceRep<AffineF> aff(int g, std::vector<AffineF> im) { return SurfaceRep<AffineF>(g, std::move(im), TargetTag::affine()); }
AffineF tr(Cplx t) { return AffineF::translation(t); }

MobiusF rot_z(double th) { return MobiusF(std::polar(1.0, th / 2), 0.0, 0.0, std::polar(1.0, -th / 2)); }
MobiusF rot_x(double th) { return MobiusF(std::cos(th / 2), I * std::sin(th / 2), I * std::sin(th / 2), std::cos(th / 2)); }

// Two loxodromics with disjoint axes.
MobiusF lox_a() { return MobiusF(2.0, 0.0, 0.0, 0.5); }
MobiusF lox_b() { return MobiusF(std::cosh(1.0), std::sinh(1.0), std::sinh(1.0), std::cosh(1.0)); }

SurfaceRep<MobiusF> trivial(int g) { return mob(g, std::vector<MobiusF>(2 * g)); }
SurfaceRep<MobiusF> nonelementary_lifting() { return mob(2, {lox_a(), lox_b(), lox_b(), lox_a()}); }
// A third handle of commuting half-turns flips the sign of the lifted relator.
SurfaceRep<MobiusF> nonelementary_nonlifting()
{
    return mob(3, {lox_a(), lox_b(), lox_b(), lox_a(), rot_z(kPi), rot_x(kPi)});
}
SurfaceRep<MobiusF> dihedral_sw1() { return mob(2, {rot_z(kPi), rot_x(kPi), MobiusF(), MobiusF()}); }
SurfaceRep<MobiusF> cyclic_rot(int n) { return mob(2, {rot_z(2 * kPi / n), MobiusF(), MobiusF(), MobiusF()}); }
SurfaceRep<MobiusF> dense_so3() { return mob(2, {rot_z(1.0), rot_x(1.0), rot_x(1.0), rot_z(1.0)}); }
SurfaceRep<AffineF> strictly_affine() { return aff(2, {AffineF(2.0, 0.0), AffineF(), tr(1.0), AffineF()}); }
SurfaceRep<AffineF> euclid_pass() { return aff(2, {tr(1.0), tr(I), tr(1.0), tr(I)}); }
SurfaceRep<AffineF> euclid_negative() { return aff(2, {tr(I), tr(1.0), AffineF(), AffineF()}); }
SurfaceRep<AffineF> euclid_small() { return aff(2, {tr(1.0), tr(I), AffineF(), AffineF()}); }
SurfaceRep<AffineF> euclid_dense() { return aff(2, {tr(1.0), tr(I), tr(std::sqrt(2.0)), tr(std::sqrt(3.0) * I)}); }
SurfaceRep<AffineF> euclid_irrational_rotation()
{
    return aff(2, {AffineF::linear(std::polar(1.0, 1.0)), AffineF(), tr(1.0), tr(I)});
}
SurfaceRep<AffineF> half_translation() { return aff(2, {AffineF::linear(-1.0), AffineF(), tr(1.0), tr(I)}); }
// z -> 1/z together with two commuting loxodromics fixing 0 and infinity.
SurfaceRep<MobiusF> dihedral_nonaffine()
{
    return mob(2, {MobiusF(0.0, 1.0, -1.0, 0.0), MobiusF(), MobiusF(std::sqrt(2.0), 0.0, 0.0, 1 / std::sqrt(2.0)),
                   MobiusF(std::sqrt(3.0), 0.0, 0.0, 1 / std::sqrt(3.0))});
}

template <class Rep>
int brute_min(const Rep& rep)
{
    auto p = profile(rep);
    for (int s = 0; s <= 2 * p.genus + 4; ++s)
        if (decide_holonomy(p, BranchData::ones(s)).verdict) return s;
    return -1;
}

MobiusF random_mobius(std::mt19937& rng)
{
    std::normal_distribution<double> N(0, 1);
    while (true) {
        MobiusF m(Cplx(N(rng), N(rng)), Cplx(N(rng), N(rng)), Cplx(N(rng), N(rng)), Cplx(N(rng), N(rng)));
        if (frobenius(m) < 6) return m;
    }
}

MoveWord random_word(std::mt19937& rng, int g, int len)
{
    auto moves = all_moves(g, true);
    std::uniform_int_distribution<int> pick(0, int(moves.size()) - 1);
    MoveWord w;
    for (int k = 0; k < len; ++k) w.push_back(moves[pick(rng)]);
    return w;
}

double max_entry(const SurfaceRep<MobiusF>& rep)
{
    double f = 0;
    for (auto& m : rep.images()) f = std::max(f, frobenius(m));
    return f;
}

bool same_report(const ObstructionReport& a, const ObstructionReport& b)
{
    return a.parity_ok == b.parity_ok && a.min_degree_ok == b.min_degree_ok && a.riemann_hurwitz_ok == b.riemann_hurwitz_ok &&
           a.volume_ok == b.volume_ok && a.haupt_ok == b.haupt_ok && a.genus2_dihedral_ok == b.genus2_dihedral_ok &&
           a.verdict == b.verdict;
}

} // namespace

TEST(Checks, Parity)
{
    EXPECT_TRUE(check_parity(0, {1, 1}));
    EXPECT_FALSE(check_parity(0, {1, 1, 1}));
    EXPECT_TRUE(check_parity(1, BranchData::ones(3)));
    EXPECT_EQ(profile(strictly_affine()).sw, 0);
    EXPECT_EQ(profile(dihedral_sw1()).sw, 1);
}

TEST(Checks, MinDegree)
{
    ElementaryClass ne;
    ne.nonelementary = true;
    EXPECT_TRUE(check_min_degree(ne, {}, 2));
    ElementaryClass eu;
    eu.affine = eu.euclidean = true;
    EXPECT_TRUE(check_min_degree(eu, {1, 3}, 3));
    ElementaryClass sp;
    sp.spherical = true;
    EXPECT_FALSE(check_min_degree(sp, {1, 1}, 2));
}

TEST(Checks, RiemannHurwitz)
{
    EXPECT_FALSE(check_riemann_hurwitz(1, 2, {6}));
    EXPECT_TRUE(check_riemann_hurwitz(6, 5, {14}));
    EXPECT_TRUE(check_riemann_hurwitz(1, 0, {1, 1}));
    EXPECT_TRUE(check_riemann_hurwitz(std::nullopt, 2, {100}));
}

TEST(Checks, Volume)
{
    auto pos = profile(euclid_small());
    EXPECT_TRUE(check_volume(*pos.euclid, {1, 1}, 2));
    auto neg = profile(euclid_negative());
    EXPECT_FALSE(check_volume(*neg.euclid, {1, 1}, 2));
    EXPECT_TRUE(check_volume(*neg.euclid, {1, 1, 1, 1}, 2));
}

TEST(Checks, Haupt)
{
    EXPECT_TRUE(check_haupt(*profile(euclid_pass()).euclid, {1, 1}, 2));
    EXPECT_FALSE(check_haupt(*profile(euclid_small()).euclid, {1, 1}, 2));
    auto h = profile(half_translation());
    EXPECT_EQ(h.euclid->linear_order, 2);
    EXPECT_NEAR(h.euclid->volume, 1.0, 1e-12);
    EXPECT_NEAR(h.euclid->area, 1.0, 1e-12);
    EXPECT_FALSE(check_haupt(*h.euclid, {2}, 2));
    EXPECT_TRUE(check_haupt(*profile(euclid_dense()).euclid, {1, 1}, 2));
    EXPECT_TRUE(check_haupt(*profile(euclid_irrational_rotation()).euclid, {1, 1}, 2));
}

TEST(Checks, HauptExactBoundary)
{
    SurfaceRep<AffineQ> r(2, {AffineQ::translation(QExt(1)), AffineQ::translation(QExt::i()), AffineQ::translation(QExt(1)),
                              AffineQ::translation(QExt::i())},
                          TargetTag::affine());
    auto p = profile(r);
    ASSERT_TRUE(p.euclid->exact);
    EXPECT_TRUE(check_haupt(*p.euclid, {1, 1}, 2));
    EXPECT_FALSE(check_haupt(*p.euclid, {2}, 2));
}

TEST(Checks, Genus2Dihedral)
{
    auto p = profile(dihedral_nonaffine());
    ASSERT_TRUE(p.cls.dihedral);
    ASSERT_FALSE(p.cls.affine);
    ASSERT_EQ(p.sw, 0);
    EXPECT_FALSE(check_genus2_dihedral(p.cls, p.sw, {2}, 2));
    EXPECT_TRUE(check_genus2_dihedral(p.cls, p.sw, {1, 1}, 2));
    EXPECT_TRUE(check_genus2_dihedral(p.cls, p.sw, {2}, 3));
}

TEST(Decide, Examples)
{
    EXPECT_TRUE(decide_holonomy(nonelementary_lifting(), {1, 1}).verdict);
    Perm x = Perm::cycle(5, {0, 1, 2}), y = Perm::cycle(5, {0, 1, 2, 3, 4});
    SurfaceRep<Perm> a5(2, {x, y, y, x}, TargetTag::permutation(5));
    auto p = profile(a5);
    EXPECT_EQ(p.image_order, 60);
    EXPECT_EQ(p.sw, 0);
    EXPECT_TRUE(decide_holonomy(p, {1, 1, 1, 1}).verdict);
    auto r = decide_holonomy(trivial(2), {2, 2});
    EXPECT_FALSE(r.verdict);
    EXPECT_FALSE(r.riemann_hurwitz_ok);
    EXPECT_TRUE(r.parity_ok);
}

TEST(Decide, GenusBelowTwoRejected)
{
    EXPECT_THROW(decide_holonomy(trivial(1), {1, 1}), GenusError);
    EXPECT_THROW(minimal_degree(trivial(1)), GenusError);
}

TEST(Decide, AnnotationsMarkInapplicableFlags)
{
    auto r = decide_holonomy(nonelementary_lifting(), {1, 1});
    EXPECT_EQ(r.annotations["volume"].substr(0, 3), "n/a");
    EXPECT_EQ(r.annotations["riemann_hurwitz"].substr(0, 3), "n/a");
    auto d = decide_holonomy(dense_so3(), {1, 1, 1, 1});
    EXPECT_EQ(d.annotations["riemann_hurwitz"], "unverified: cap");
    EXPECT_TRUE(d.verdict);
}

TEST(MinimalDegree, Leaves)
{
    struct Case {
        std::string name;
        MinDegree m;
        int brute, expected;
    };
    std::vector<Case> cases;
    auto add = [&](std::string name, auto rep, int expected) {
        cases.push_back({name, minimal_degree(rep), brute_min(rep), expected});
    };
    add("trivial", trivial(2), 6);
    add("trivial g3", trivial(3), 8);
    add("cyclic", cyclic_rot(5), 4);
    add("dense so3", dense_so3(), 4);
    add("dihedral sw1", dihedral_sw1(), 3);
    add("strictly affine", strictly_affine(), 2);
    add("dihedral non-affine", dihedral_nonaffine(), 2);
    add("euclid pass", euclid_pass(), 2);
    add("euclid negative volume", euclid_negative(), 4);
    add("euclid lattice fails", euclid_small(), 4);
    add("euclid dense", euclid_dense(), 2);
    add("euclid irrational rotation", euclid_irrational_rotation(), 2);
    add("nonelementary lifting", nonelementary_lifting(), 0);
    add("nonelementary non-lifting", nonelementary_nonlifting(), 1);
    for (auto& c : cases) {
        EXPECT_EQ(c.m.d, c.expected) << c.name;
        EXPECT_EQ(c.brute, c.expected) << c.name;
    }
    EXPECT_EQ(minimal_degree(trivial(2)).path, (std::vector<std::string>{"elementary", "lifts", "spherical", "trivial"}));
}

TEST(MinimalDegree, ValuesInAllowedSet)
{
    std::mt19937 rng(3);
    for (int t = 0; t < 30; ++t) {
        std::vector<AffineF> im;
        std::uniform_int_distribution<int> e(0, 5);
        std::normal_distribution<double> N(0, 1);
        im.push_back(AffineF::linear(root_of_unity(e(rng), 6)));
        im.push_back(AffineF());
        for (int k = 0; k < 2; ++k) im.push_back(tr(Cplx(N(rng), N(rng))));
        auto rep = aff(2, im);
        int d = minimal_degree(rep).d;
        EXPECT_TRUE(d == 0 || d == 1 || d == 2 || d == 3 || d == 4 || d == 6);
        EXPECT_EQ(d, brute_min(rep));
    }
}

TEST(Decide, DependsOnlyOnTotalMaxAndParity)
{
    std::mt19937 rng(5);
    std::vector<std::function<HolonomyProfile()>> reps{
        [] { return profile(trivial(2)); },           [] { return profile(cyclic_rot(3)); },
        [] { return profile(dihedral_sw1()); },       [] { return profile(euclid_pass()); },
        [] { return profile(half_translation()); },   [] { return profile(dihedral_nonaffine()); },
        [] { return profile(euclid_small()); }};
    for (auto& mk : reps) {
        auto p = mk();
        for (int t = 0; t < 100; ++t) {
            std::uniform_int_distribution<int> S(0, 10);
            int s = S(rng);
            if (s == 0) continue;
            std::uniform_int_distribution<int> M(1, s);
            int mx = M(rng);
            // Two random splittings of s - mx into parts of size <= mx.
            auto split = [&](int rest) {
                std::vector<int> v{mx};
                while (rest > 0) {
                    std::uniform_int_distribution<int> P(1, std::min(rest, mx));
                    int x = P(rng);
                    v.push_back(x);
                    rest -= x;
                }
                return BranchData(v);
            };
            auto a = split(s - mx), b = split(s - mx);
            EXPECT_TRUE(same_report(decide_holonomy(p, a), decide_holonomy(p, b))) << a.str() << " vs " << b.str();
        }
    }
}

TEST(Decide, ConjugationAndMoveInvariance)
{
    std::mt19937 rng(7);
    std::vector<SurfaceRep<MobiusF>> reps{nonelementary_lifting(), dihedral_sw1(), cyclic_rot(4), dihedral_nonaffine()};
    for (auto& f : {euclid_pass(), euclid_small(), half_translation()}) {
        std::vector<MobiusF> im;
        for (auto& x : f.images()) im.push_back(embed(x));
        reps.push_back(mob(2, im));
    }
    for (auto& rep : reps) {
        SCOPED_TRACE(&rep - &reps[0]);
        auto base = profile(rep);
        for (int t = 0; t < 15; ++t) {
            // Float mode: redraw words whose images grow past the working range.
            auto moved = apply_word(rep, random_word(rng, 2, 8));
            while (max_entry(moved) > 1e3) moved = apply_word(rep, random_word(rng, 2, 8));
            auto h = random_mobius(rng);
            auto conj = conjugate_rep(moved, h);
            SCOPED_TRACE(t);
            auto p = profile(conj);
            for (int s = 0; s <= 8; ++s)
                for (int mx = 1; mx <= std::max(1, s); ++mx) {
                    std::vector<int> v(std::max(0, s - mx), 1);
                    if (s > 0) v.push_back(mx);
                    BranchData bd(v);
                    if (bd.total() != s) continue;
                    EXPECT_TRUE(same_report(decide_holonomy(base, bd), decide_holonomy(p, bd))) << bd.str();
                }
            EXPECT_EQ(minimal_degree(base).d, minimal_degree(p).d);
        }
    }
}

TEST(Decide, TrivialRepMatchesBranchedCovers)
{
    for (int g = 2; g <= 3; ++g) {
        auto p = profile(trivial(g));
        for (int s = 0; s <= 12; ++s)
            for (int mx = 1; mx <= std::max(1, s); ++mx) {
                if (s == 0 && mx > 1) continue;
                std::vector<int> v;
                if (s > 0) {
                    v.assign(s - mx, 1);
                    v.push_back(mx);
                }
                BranchData bd(v);
                EXPECT_EQ(decide_holonomy(p, bd).verdict, realizable_cover(g, bd).has_value()) << "g=" << g << " " << bd.str();
            }
    }
}

TEST(Decide, FiniteTargetsEmbed)
{
    SurfaceRep<CyclicElem> c(2, {CyclicElem(1, 6), CyclicElem(0, 6), CyclicElem(0, 6), CyclicElem(0, 6)}, TargetTag::cyclic(6));
    auto p = profile(c);
    EXPECT_EQ(p.image_order, 6);
    EXPECT_TRUE(p.cls.spherical);
    SurfaceRep<DihedralElem> d(2, {DihedralElem(1, 0, 4), DihedralElem(2, 0, 4), DihedralElem(0, 1, 4), DihedralElem(0, 0, 4)},
                               TargetTag::dihedral(4));
    EXPECT_TRUE(relator_check(d));
    auto q = profile(d);
    EXPECT_EQ(q.image_order, 8);
    EXPECT_EQ(q.sw, FiniteGroup::dihedral(4).sw({dihedral_index(FiniteGroup::dihedral(4), d.a(0)),
                                                  dihedral_index(FiniteGroup::dihedral(4), d.b(0)),
                                                  dihedral_index(FiniteGroup::dihedral(4), d.a(1)), 0}));
}
