#include <gtest/gtest.h>

#include <random>
#include <set>

#include "holonomy/orbits.hpp"

using namespace hol;

TEST(FiniteGroup, Orders)
{
    EXPECT_EQ(FiniteGroup::cyclic(7).order(), 7);
    EXPECT_EQ(FiniteGroup::dihedral(2).order(), 4);
    EXPECT_EQ(FiniteGroup::dihedral(5).order(), 10);
    EXPECT_EQ(FiniteGroup::alternating4().order(), 12);
    EXPECT_EQ(FiniteGroup::symmetric4().order(), 24);
    EXPECT_EQ(FiniteGroup::alternating5().order(), 60);
    EXPECT_THROW(FiniteGroup::parse("Q8"), InputError);
}

TEST(FiniteGroup, LiftsAreProjectiveHomomorphisms)
{
    for (auto G : {FiniteGroup::dihedral(4), FiniteGroup::alternating4(), FiniteGroup::symmetric4(),
                   FiniteGroup::alternating5()}) {
        for (int i = 0; i < G.order(); ++i)
            for (int j = 0; j < G.order(); ++j) {
                SU2 p = su2_mul(G.lift(i), G.lift(j));
                SU2 q = G.lift(G.mul(i, j));
                double plus = 0, minus = 0;
                for (int k = 0; k < 4; ++k) {
                    plus += std::abs(p[k] - q[k]);
                    minus += std::abs(p[k] + q[k]);
                }
                EXPECT_LT(std::min(plus, minus), 1e-9) << G.name();
            }
    }
}

TEST(OrbitBfs, CyclicZ5)
{
    auto s = orbit_bfs(FiniteGroup::cyclic(5), 2, true);
    EXPECT_EQ(s.surjective_count, 624);
    EXPECT_EQ(s.orbit_count, 1);
}

TEST(OrbitBfs, KleinGenusOne)
{
    auto s = orbit_bfs(FiniteGroup::dihedral(2), 1, true);
    EXPECT_EQ(s.hom_count, 16);
    EXPECT_EQ(s.surjective_count, 6);
    EXPECT_EQ(s.orbit_count, 1);
}

TEST(OrbitBfs, A4SeparatedBySw)
{
    auto s = orbit_bfs(FiniteGroup::alternating4(), 2, true);
    ASSERT_EQ(s.orbit_count, 2);
    EXPECT_NE(s.orbits[0].sw, s.orbits[1].sw);
    long long total = 0;
    for (auto& o : s.orbits) total += o.size;
    EXPECT_EQ(total, s.surjective_count);
}

TEST(OrbitBfs, DihedralGenusTwo)
{
    for (int n = 2; n <= 6; ++n) {
        auto s = orbit_bfs(FiniteGroup::dihedral(n), 2, true);
        EXPECT_EQ(s.orbit_count, n % 2 ? 1 : 2) << "D" << n;
        if (s.orbit_count == 2) {
            EXPECT_NE(s.orbits[0].sw, s.orbits[1].sw);
        }
    }
}

TEST(OrbitBfs, AllHomsSplitByImage)
{
    auto s = orbit_bfs(FiniteGroup::cyclic(4), 1, false);
    EXPECT_EQ(s.hom_count, 16);
    long long total = 0;
    for (auto& o : s.orbits) total += o.size;
    EXPECT_EQ(total, 16);
    // Orbits are classified by the gcd: images of order 1, 2, 4.
    EXPECT_EQ(s.orbit_count, 3);
}

TEST(OrbitBfs, FeasibilityGuard)
{
    EXPECT_THROW(orbit_bfs(FiniteGroup::alternating5(), 3, true), DomainError);
    EXPECT_THROW(orbit_bfs(FiniteGroup::cyclic(3), 0, true), DomainError);
}

TEST(DihedralCanonical, ModelsAreFixed)
{
    for (int n : {2, 4, 6}) {
        auto rho = dihedral_model(n, 2, true);
        auto c = canonical_form_dihedral(rho);
        EXPECT_TRUE(c.lifts);
        EXPECT_EQ(c.representative.images(), rho.images());
        auto rho2 = dihedral_model(n, 2, false);
        auto c2 = canonical_form_dihedral(rho2);
        EXPECT_FALSE(c2.lifts);
        EXPECT_EQ(c2.representative.images(), rho2.images());
    }
}

TEST(DihedralCanonical, RandomD3ReachesLiftingModel)
{
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> rot(0, 2), flip(0, 1);
    int done = 0;
    while (done < 20) {
        std::vector<DihedralElem> im;
        for (int k = 0; k < 4; ++k) im.emplace_back(rot(rng), flip(rng), 3);
        if (!relator_holds(im, TargetTag::dihedral(3))) continue;
        FiniteGroup G = FiniteGroup::dihedral(3);
        std::vector<int> idx;
        for (auto& x : im) idx.push_back(dihedral_index(G, x));
        if (int(G.closure(idx).size()) != 6) continue;
        SurfaceRep<DihedralElem> rep(2, im, TargetTag::dihedral(3));
        auto c = canonical_form_dihedral(rep);
        EXPECT_TRUE(c.lifts);
        EXPECT_EQ(c.representative.images(), dihedral_model(3, 2, true).images());
        auto replay = conjugate_rep(apply_word(rep, c.moves), c.conjugator);
        EXPECT_EQ(replay.images(), c.representative.images());
        ++done;
    }
}

TEST(DihedralCanonical, LiftingAgreesWithSw)
{
    std::mt19937 rng(31);
    FiniteGroup G = FiniteGroup::dihedral(4);
    std::uniform_int_distribution<int> pick(0, G.order() - 1);
    int done = 0;
    while (done < 30) {
        std::vector<int> t{pick(rng), pick(rng), pick(rng), pick(rng)};
        if (detail::relator_value(G, t, 0, 4) != 0 || int(G.closure(t).size()) != 8) continue;
        std::vector<DihedralElem> im;
        for (int x : t) im.push_back(dihedral_element(G, 4, x));
        auto c = canonical_form_dihedral(SurfaceRep<DihedralElem>(2, im, TargetTag::dihedral(4)));
        EXPECT_EQ(c.lifts, G.sw(t) == 0);
        ++done;
    }
}

TEST(DihedralCanonical, RejectsNonSurjective)
{
    auto rep = SurfaceRep<DihedralElem>(2, std::vector<DihedralElem>(4, DihedralElem(0, 0, 3)), TargetTag::dihedral(3));
    EXPECT_THROW(canonical_form_dihedral(rep), DomainError);
}

// The twist along a_1 a_g: (zeta, id | ...) becomes (zeta, zeta * rho(a_g) | ...) inside the orbit.
TEST(DihedralCanonical, TwistAlongA1AgIsReachable)
{
    int n = 4;
    auto rho = dihedral_model(n, 2, true);
    std::vector<DihedralElem> target = rho.images();
    target[1] = compose(rho.a(0), rho.a(1));
    FiniteGroup G = FiniteGroup::dihedral(n);
    std::vector<int> t0, t1;
    for (auto& x : rho.images()) t0.push_back(dihedral_index(G, x));
    for (auto& x : target) t1.push_back(dihedral_index(G, x));
    ASSERT_EQ(detail::relator_value(G, t1, 0, 4), 0);
    auto s = orbit_bfs(G, 2, true);
    // Both tuples land in the same orbit: compare orbit representatives reached from each.
    auto from = [&](std::vector<int> t) {
        std::set<std::uint64_t> seen{detail::conjugation_code(G, t)};
        std::vector<std::uint64_t> stack{*seen.begin()};
        auto moves = all_moves(2);
        while (!stack.empty()) {
            auto c = stack.back();
            stack.pop_back();
            auto u = detail::decode_tuple(c, G.order(), 4);
            for (auto& m : moves) {
                auto v = detail::conjugation_code(G, detail::apply_move_indices(G, u, m));
                if (seen.insert(v).second) stack.push_back(v);
            }
        }
        return *seen.begin();
    };
    EXPECT_EQ(from(t0), from(t1));
    EXPECT_EQ(s.orbit_count, 2);
}
