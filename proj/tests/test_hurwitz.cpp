#include <gtest/gtest.h>

#include <random>

#include "holonomy/hurwitz.hpp"

using namespace hol;

namespace {

// All sorted tuples 1 <= n_1 <= ... <= n_k < d.
void sorted_tuples(int d, int k, std::vector<int>& cur, std::vector<BranchData>& out)
{
    if (int(cur.size()) == k) {
        out.emplace_back(cur);
        return;
    }
    for (int x = cur.empty() ? 1 : cur.back(); x < d; ++x) {
        cur.push_back(x);
        sorted_tuples(d, k, cur, out);
        cur.pop_back();
    }
}

} // namespace

TEST(Realizable, Examples)
{
    EXPECT_TRUE(realizable(2, {1, 1}));
    EXPECT_FALSE(realizable(2, {1, 1, 1}));
    EXPECT_TRUE(realizable(4, {3, 3}));
    EXPECT_THROW(realizable(3, {3, 1}), DomainError);
    EXPECT_THROW(realizable(1, {}), DomainError);
}

TEST(Realize, TwoFullCycles)
{
    auto t = realize(4, {3, 3});
    EXPECT_EQ(t.perms[0].str(), "(1 2 3 4)");
    EXPECT_EQ(t.perms[1].str(), "(1 4 3 2)");
    EXPECT_EQ(verify_cert(t).genus, 0);
}

TEST(Realize, ThreeFullCyclesOddDegree)
{
    auto t = realize(3, {2, 2, 2});
    EXPECT_EQ(t.perms[0].str(), "(1 2 3)");
    EXPECT_EQ(t.perms[1].str(), "(1 2 3)");
    // alpha_3 = alpha_1^-2, which in degree 3 is alpha_1 itself.
    EXPECT_EQ(t.perms[2], invert(compose(t.perms[0], t.perms[0])));
    EXPECT_EQ(verify_cert(t).genus, 1 - 3 + 3);
}

TEST(Realize, FourTranspositionsInDegreeThree)
{
    auto t = realize(3, {1, 1, 1, 1});
    EXPECT_EQ(verify_cert(t).genus, 0);
    EXPECT_EQ(t.perms.size(), 4u);
}

TEST(Realize, Deterministic)
{
    BranchData bd{2, 3, 3, 5, 6, 7};
    auto a = realize(8, bd), b = realize(8, bd);
    EXPECT_EQ(a.perms, b.perms);
}

TEST(Realize, RejectsUnrealizable)
{
    EXPECT_THROW(realize(4, {1, 1}), DomainError);
}

TEST(VerifyCert, Examples)
{
    PermTuple t{2, {Perm::cycle(2, {0, 1}), Perm::cycle(2, {0, 1})}, {1, 1}};
    EXPECT_EQ(verify_cert(t).genus, 0);
    PermTuple nt{4, {Perm::cycle(4, {0, 1}), Perm::cycle(4, {0, 1})}, {1, 1}};
    try {
        verify_cert(nt);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("not transitive"), std::string::npos);
    }
    PermTuple bad{3, {Perm::cycle(3, {0, 1}), Perm::cycle(3, {1, 2})}, {1, 2}};
    auto v = cert_violations(bad);
    EXPECT_EQ(v.size(), 2u);  // wrong cycle type and nontrivial product
}

TEST(BruteForce, Examples)
{
    EXPECT_TRUE(brute_force_realizable(5, {4, 4, 4}));
    EXPECT_FALSE(brute_force_realizable(4, {3, 3, 3}));
    EXPECT_TRUE(brute_force_realizable(3, {1, 1, 2}));
    EXPECT_THROW(brute_force_realizable(8, {1, 1}), DomainError);
    EXPECT_THROW(brute_force_realizable(4, {1, 1, 1, 1, 1, 1}), DomainError);
}

TEST(BruteForce, AgreesWithCriterionAndConstruction)
{
    for (int d = 2; d <= 6; ++d)
        for (int k = 0; k <= 4; ++k) {
            std::vector<BranchData> all;
            std::vector<int> cur;
            sorted_tuples(d, k, cur, all);
            for (auto& bd : all) {
                bool r = realizable(d, bd);
                EXPECT_EQ(r, brute_force_realizable(d, bd)) << "d=" << d << " bd=" << bd.str();
                if (r) {
                    auto t = realize(d, bd);
                    EXPECT_EQ(verify_cert(t).genus, bd.total() / 2 - d + 1) << "d=" << d << " bd=" << bd.str();
                }
            }
        }
}

TEST(Realize, RandomLargeInstances)
{
    std::mt19937 rng(41);
    int done = 0;
    while (done < 300) {
        std::uniform_int_distribution<int> D(2, 50), K(2, 10);
        int d = D(rng), k = K(rng);
        std::uniform_int_distribution<int> N(1, d - 1);
        std::vector<int> v;
        for (int i = 0; i < k; ++i) v.push_back(N(rng));
        BranchData bd(v);
        if (!realizable(d, bd)) continue;
        auto t = realize(d, bd);
        EXPECT_EQ(verify_cert(t).genus, bd.total() / 2 - d + 1);
        EXPECT_EQ(t.branch_data(), bd);
        ++done;
    }
}

TEST(RealizableCover, Examples)
{
    EXPECT_EQ(realizable_cover(2, BranchData::ones(6)), 2);
    EXPECT_EQ(realizable_cover(0, {1, 1, 2}), 3);
    EXPECT_FALSE(realizable_cover(2, {6}).has_value());
    EXPECT_FALSE(realizable_cover(2, {1, 2}).has_value());
}

TEST(RealizableCover, CoversHaveTheRequestedGenus)
{
    for (int g = 0; g <= 4; ++g)
        for (int s = 0; s <= 12; ++s)
            for (int mx = 1; mx <= s; ++mx) {
                std::vector<int> v(s - mx, 1);
                v.push_back(mx);
                BranchData bd(v);
                auto d = realizable_cover(g, bd);
                if (!d || *d < 2) continue;
                EXPECT_EQ(verify_cert(realize(*d, bd)).genus, g) << bd.str();
            }
}

TEST(BranchData, ParseAndDerived)
{
    auto bd = BranchData::parse("3, 1,2");
    EXPECT_EQ(bd.orders(), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(bd.total(), 6);
    EXPECT_EQ(bd.max(), 3);
    EXPECT_TRUE(BranchData::parse("").empty());
    EXPECT_THROW(BranchData::parse("1,x"), InputError);
    EXPECT_THROW(BranchData({0, 1}), InputError);
}
