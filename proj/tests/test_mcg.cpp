#include <gtest/gtest.h>

#include <random>

#include "holonomy/finite_group.hpp"
#include "holonomy/mcg.hpp"

using namespace hol;

namespace {

// Reduced words in the free group on x_1..x_{2g}; letter +-(k+1) stands for x_k^{+-1}.
using Word = std::vector<int>;

Word reduce(const Word& w)
{
    Word r;
    for (int x : w) {
        if (!r.empty() && r.back() == -x) r.pop_back();
        else r.push_back(x);
    }
    return r;
}

struct FreeWordOps {
    Word mul(const Word& a, const Word& b) const
    {
        Word r = a;
        r.insert(r.end(), b.begin(), b.end());
        return reduce(r);
    }
    Word inv(const Word& a) const
    {
        Word r;
        for (auto it = a.rbegin(); it != a.rend(); ++it) r.push_back(-*it);
        return r;
    }
};

std::vector<Word> free_generators(int g)
{
    std::vector<Word> v;
    for (int k = 0; k < 2 * g; ++k) v.push_back({k + 1});
    return v;
}

Word relator_word(const std::vector<Word>& im)
{
    FreeWordOps ops;
    Word r;
    for (std::size_t i = 0; i + 1 < im.size(); i += 2) {
        const Word &a = im[i], &b = im[i + 1];
        r = ops.mul(r, ops.mul(ops.mul(a, b), ops.mul(ops.inv(a), ops.inv(b))));
    }
    return r;
}

Word cyclic_reduce(Word w)
{
    w = reduce(w);
    while (w.size() >= 2 && w.front() == -w.back()) w = Word(w.begin() + 1, w.end() - 1);
    return w;
}

bool is_cyclic_rotation(const Word& a, const Word& b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t s = 0; s < a.size(); ++s)
        if (std::equal(a.begin(), a.end() - s, b.begin() + s) && std::equal(a.end() - s, a.end(), b.begin())) return true;
    return a.empty();
}

MoveWord random_word(std::mt19937& rng, int g, int len)
{
    auto moves = all_moves(g, true);
    std::uniform_int_distribution<int> pick(0, int(moves.size()) - 1);
    MoveWord w;
    for (int k = 0; k < len; ++k) w.push_back(moves[pick(rng)]);
    return w;
}

} // namespace

TEST(Moves, TwistExamples)
{
    DihedralElem r(1, 0, 4), e(0, 0, 4);
    SurfaceRep<DihedralElem> rep(2, {r, e, e, e}, TargetTag::dihedral(4));
    auto out = apply_move(rep, MCGMove::twist_a(1));
    EXPECT_TRUE(out.b(0) == r);
    EXPECT_TRUE(out.a(0) == r);
}

// Each move is an automorphism of the free group sending the relator to a conjugate of itself.
TEST(Moves, PreserveRelatorInFreeGroup)
{
    for (int g = 2; g <= 4; ++g)
        for (auto& m : all_moves(g, true)) {
            auto im = free_generators(g);
            apply_move_inplace(im, m, FreeWordOps{});
            Word r = cyclic_reduce(relator_word(im));
            Word base = cyclic_reduce(relator_word(free_generators(g)));
            EXPECT_TRUE(is_cyclic_rotation(base, r)) << m.str() << " at genus " << g;
        }
}

TEST(Moves, InversesUndoInFreeGroup)
{
    for (int g = 2; g <= 4; ++g)
        for (auto& m : all_moves(g)) {
            auto im = free_generators(g);
            apply_move_inplace(im, m, FreeWordOps{});
            apply_move_inplace(im, m.inverted(), FreeWordOps{});
            EXPECT_EQ(im, free_generators(g)) << m.str();
            auto jm = free_generators(g);
            apply_move_inplace(jm, m.inverted(), FreeWordOps{});
            apply_move_inplace(jm, m, FreeWordOps{});
            EXPECT_EQ(jm, free_generators(g)) << m.str();
        }
}

TEST(Moves, SwapExchangesHandlesUpToConjugation)
{
    auto im = free_generators(3);
    apply_move_inplace(im, MCGMove::swap_handles(1, 3), FreeWordOps{});
    // Abelianized, handle 1 and handle 3 trade places.
    auto M = symplectic_matrix({MCGMove::swap_handles(1, 3)}, 3);
    EXPECT_EQ(M[0][4], 1);
    EXPECT_EQ(M[1][5], 1);
    EXPECT_EQ(M[4][0], 1);
    EXPECT_EQ(M[2][2], 1);
}

TEST(Moves, PreserveRelatorExhaustively)
{
    for (auto G : {FiniteGroup::cyclic(4), FiniteGroup::dihedral(2), FiniteGroup::dihedral(3)}) {
        int n = G.order();
        auto moves = all_moves(2, true);
        for (int c = 0; c < n * n * n * n; ++c) {
            std::vector<int> t{c % n, c / n % n, c / n / n % n, c / n / n / n};
            auto rel = [&](const std::vector<int>& x) {
                int p = 0;
                for (int i = 0; i < 4; i += 2)
                    p = G.mul(p, G.mul(G.mul(x[i], x[i + 1]), G.mul(G.inv(x[i]), G.inv(x[i + 1]))));
                return p;
            };
            if (rel(t) != 0) continue;
            for (auto& m : moves) {
                auto u = t;
                apply_move_inplace(u, m, TableOps{&G});
                EXPECT_EQ(rel(u), 0) << G.name() << " " << m.str();
            }
        }
    }
}

TEST(Moves, TwistBRoundTripOnD4)
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> rot(0, 3), flip(0, 1);
    int done = 0;
    while (done < 100) {
        std::vector<DihedralElem> im;
        for (int k = 0; k < 4; ++k) im.emplace_back(rot(rng), flip(rng), 4);
        if (!relator_holds(im, TargetTag::dihedral(4))) continue;
        SurfaceRep<DihedralElem> rep(2, im, TargetTag::dihedral(4));
        auto back = apply_move(apply_move(rep, MCGMove::twist_b(1)), MCGMove::twist_b(1, true));
        EXPECT_EQ(back.images(), rep.images());
        ++done;
    }
}

TEST(Moves, OutOfRange)
{
    std::vector<CyclicElem> im(4, CyclicElem(0, 3));
    SurfaceRep<CyclicElem> rep(2, im, TargetTag::cyclic(3));
    EXPECT_THROW(apply_move(rep, MCGMove::twist_a(3)), DomainError);
    EXPECT_THROW(apply_move(rep, MCGMove::cross_twist(2)), DomainError);
    EXPECT_THROW(apply_move(rep, MCGMove::swap_handles(1, 1)), DomainError);
}

TEST(Moves, ParseRoundTrip)
{
    for (auto& m : all_moves(3, true)) EXPECT_TRUE(MCGMove::parse(m.str()) == m);
    EXPECT_THROW(MCGMove::parse("Spin(1)"), InputError);
}

TEST(Symplectic, MatricesAreSymplectic)
{
    for (int g = 1; g <= 4; ++g)
        for (auto& m : all_moves(g, true)) EXPECT_TRUE(is_symplectic(symplectic_matrix(m, g))) << m.str();
}

TEST(Symplectic, Examples)
{
    SurfaceRep<CyclicElem> rep(2, {CyclicElem(1, 5), CyclicElem(0, 5), CyclicElem(0, 5), CyclicElem(0, 5)},
                               TargetTag::cyclic(5));
    auto out = sp_action_abelian(rep, {MCGMove::twist_a(1)});
    EXPECT_EQ(out.b(0).k, 1);
    EXPECT_EQ(out.a(0).k, 1);
    EXPECT_EQ(sp_action_abelian(rep, {}).images(), rep.images());
    SurfaceRep<DihedralElem> d(1, {DihedralElem(1, 0, 3), DihedralElem(0, 0, 3)}, TargetTag::dihedral(3));
    EXPECT_THROW(sp_action_abelian(d, {}), DomainError);
}

TEST(Symplectic, AgreesWithMovesOnZ6)
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> e(0, 5);
    for (int t = 0; t < 200; ++t) {
        std::vector<CyclicElem> im;
        for (int k = 0; k < 4; ++k) im.emplace_back(e(rng), 6);
        SurfaceRep<CyclicElem> rep(2, im, TargetTag::cyclic(6));
        auto w = random_word(rng, 2, 12);
        EXPECT_EQ(sp_action_abelian(rep, w).images(), apply_word(rep, w).images());
    }
}

TEST(CyclicCanonical, Examples)
{
    auto mk = [](std::vector<int> v, int n) {
        std::vector<CyclicElem> im;
        for (int x : v) im.emplace_back(x, n);
        return SurfaceRep<CyclicElem>(int(v.size()) / 2, im, TargetTag::cyclic(n));
    };
    auto c = canonical_form_cyclic(mk({2, 0, 0, 0}, 5));
    EXPECT_EQ(c.rep.images(), mk({1, 0, 0, 0}, 5).images());
    EXPECT_EQ(apply_word(mk({2, 0, 0, 0}, 5), c.moves).images(), c.rep.images());

    auto t = canonical_form_cyclic(mk({0, 0, 0, 0}, 5));
    EXPECT_EQ(t.rep.images(), mk({0, 0, 0, 0}, 5).images());
    EXPECT_TRUE(t.moves.empty());

    auto s = canonical_form_cyclic(mk({0, 3, 0, 0}, 6));
    EXPECT_EQ(s.rep.images(), mk({3, 0, 0, 0}, 6).images());
    EXPECT_EQ(s.gcd, 3);
}

TEST(CyclicCanonical, RandomReplay)
{
    std::mt19937 rng(23);
    for (int n : {2, 3, 4, 6, 8, 12, 30})
        for (int g = 1; g <= 4; ++g)
            for (int t = 0; t < 20; ++t) {
                std::uniform_int_distribution<int> e(0, n - 1);
                std::vector<CyclicElem> im;
                int d = n;
                for (int k = 0; k < 2 * g; ++k) {
                    im.emplace_back(e(rng), n);
                    d = std::gcd(d, im.back().k);
                }
                SurfaceRep<CyclicElem> rep(g, im, TargetTag::cyclic(n));
                auto c = canonical_form_cyclic(rep);
                EXPECT_EQ(c.gcd, d);
                EXPECT_EQ(c.rep.a(0).k, d % n);
                for (int k = 1; k < 2 * g; ++k) EXPECT_EQ(c.rep.images()[k].k, 0);
                EXPECT_EQ(apply_word(rep, c.moves).images(), c.rep.images());
            }
}
