#include <gtest/gtest.h>

#include <random>

#include "holonomy/classify.hpp"

using namespace hol;

namespace {

MobiusF mob(Cplx a, Cplx b, Cplx c, Cplx d) { return MobiusF(a, b, c, d); }

MobiusF random_mobius(std::mt19937& rng, double spread = 1.0)
{
    std::normal_distribution<double> N(0.0, spread);
    while (true) {
        Cplx a(1 + N(rng), N(rng)), b(N(rng), N(rng)), c(N(rng), N(rng)), d(1 + N(rng), N(rng));
        if (std::abs(a * d - b * c) > 0.3) return MobiusF(a, b, c, d);
    }
}

// Rotation of the sphere by angle t about axis (x, y, z), as an element of SU(2).
MobiusF rotation(double t, double x, double y, double z)
{
    double n = std::sqrt(x * x + y * y + z * z);
    x /= n; y /= n; z /= n;
    double c = std::cos(t / 2), s = std::sin(t / 2);
    return mob(Cplx(c, s * z), Cplx(s * y, s * x), Cplx(-s * y, s * x), Cplx(c, -s * z));
}

SurfaceRep<MobiusF> conj_all(const SurfaceRep<MobiusF>& rep, const MobiusF& h) { return conjugate_rep(rep, h); }

std::vector<MobiusF> d4_images()
{
    // a1 = rotation of order 4 about z, b1 = id, a2 = id, b2 = half turn about x.
    MobiusF r = rotation(kPi / 2, 0, 0, 1), s = rotation(kPi, 1, 0, 0);
    return {r, MobiusF(), MobiusF(), s};
}

} // namespace

TEST(Sw, AffineLifts)
{
    std::vector<MobiusF> im{embed(AffineF(2.0, 1.0)), embed(AffineF(2.0, 1.0)), embed(AffineF(Cplx(0, 1), 3.0)),
                            embed(AffineF(Cplx(0, 1), 3.0))};
    EXPECT_EQ(sw(im), 0);
}

TEST(Sw, CommutingHalfTurnsDoNotLift)
{
    MobiusF neg = mob(Cplx(0, 1), 0, 0, Cplx(0, -1));      // z -> -z
    MobiusF recip = mob(0, Cplx(0, 1), Cplx(0, 1), 0);     // z -> 1/z
    std::vector<MobiusF> im{MobiusF(), MobiusF(), neg, recip};
    EXPECT_EQ(sw(im), 1);
    EXPECT_EQ(sw(std::vector<MobiusF>(4)), 0);
}

TEST(Sw, ExactMatchesFloat)
{
    MobiusQ neg(QExt::i(), QExt(0), QExt(0), -QExt::i());
    MobiusQ recip(QExt(0), QExt(1), QExt(1), QExt(0));
    std::vector<MobiusQ> im{MobiusQ(), MobiusQ(), neg, recip};
    EXPECT_EQ(sw(im), 1);
}

TEST(Sw, ConjugationInvariant)
{
    std::mt19937 rng(5);
    SurfaceRep<MobiusF> rep(2, d4_images(), TargetTag::psl2c());
    int s = sw(rep);
    for (int t = 0; t < 200; ++t) EXPECT_EQ(sw(conj_all(rep, random_mobius(rng))), s);
}

TEST(FixedPoints, Examples)
{
    auto p = fixed_points(embed(AffineF::translation(1.0)));
    ASSERT_EQ(p.kind, FixedPoints::Kind::One);
    EXPECT_TRUE(p.points[0].is_infinity());

    auto q = fixed_points(embed(AffineF::linear(2.0)));
    ASSERT_EQ(q.kind, FixedPoints::Kind::Two);
    bool zero = false, inf = false;
    for (auto& x : q.points) {
        if (x.is_infinity()) inf = true;
        else if (std::abs(x.value()) < 1e-12) zero = true;
    }
    EXPECT_TRUE(zero && inf);

    auto r = fixed_points(mob(0, Cplx(0, 1), Cplx(0, 1), 0));
    ASSERT_EQ(r.kind, FixedPoints::Kind::Two);
    std::vector<double> vals{r.points[0].value().real(), r.points[1].value().real()};
    std::sort(vals.begin(), vals.end());
    EXPECT_NEAR(vals[0], -1.0, 1e-12);
    EXPECT_NEAR(vals[1], 1.0, 1e-12);

    EXPECT_EQ(fixed_points(MobiusF()).kind, FixedPoints::Kind::Identity);
}

TEST(Classify, Translations)
{
    std::vector<MobiusF> im{embed(AffineF::translation(1.0)), embed(AffineF::translation(Cplx(0, 1))), MobiusF(),
                            MobiusF()};
    auto ec = classify(SurfaceRep<MobiusF>(2, im, TargetTag::psl2c()));
    EXPECT_TRUE(ec.affine);
    EXPECT_TRUE(ec.euclidean);
    EXPECT_FALSE(ec.dihedral);
    EXPECT_FALSE(ec.spherical);
    EXPECT_FALSE(ec.nonelementary);
}

TEST(Classify, DihedralNotAffine)
{
    MobiusF recip = mob(0, Cplx(0, 1), Cplx(0, 1), 0);
    // Both handles commute: (1/z, z) and (2z, 3z).
    std::vector<MobiusF> im{recip, MobiusF(), embed(AffineF::linear(2.0)), embed(AffineF::linear(3.0))};
    SurfaceRep<MobiusF> rep(2, im, TargetTag::psl2c());
    auto ec = classify(rep);
    EXPECT_TRUE(ec.dihedral);
    EXPECT_FALSE(ec.affine);
    EXPECT_FALSE(ec.spherical);
    EXPECT_FALSE(ec.finite_order.has_value());
}

TEST(Classify, RotationsAreSpherical)
{
    SurfaceRep<MobiusF> rep(2, d4_images(), TargetTag::psl2c());
    auto ec = classify(rep);
    EXPECT_TRUE(ec.spherical);
    ASSERT_TRUE(ec.certificate);
    EXPECT_TRUE(ec.certificate->positive_definite());
    for (auto& g : rep.images()) EXPECT_LT(ec.certificate->invariance_residual(g), 1e-9);
    EXPECT_TRUE(ec.dihedral);
    EXPECT_FALSE(ec.affine);
    EXPECT_EQ(ec.finite_order, 8);
}

TEST(Classify, TrivialShortCircuits)
{
    auto ec = classify(SurfaceRep<MobiusF>(2, std::vector<MobiusF>(4), TargetTag::psl2c()));
    EXPECT_TRUE(ec.trivial && ec.spherical && ec.affine && ec.dihedral && ec.euclidean);
    EXPECT_EQ(ec.finite_order, 1);
}

TEST(Classify, GenericIsNonelementary)
{
    std::mt19937 rng(7);
    // A free pair in the first handle is not a valid genus-1 rep, so use (A, B, B, A).
    MobiusF A = random_mobius(rng), B = random_mobius(rng);
    std::vector<MobiusF> im{A, B, B, A};
    SurfaceRep<MobiusF> rep(2, im, TargetTag::psl2c());
    auto ec = classify(rep);
    EXPECT_TRUE(ec.nonelementary);
    EXPECT_FALSE(ec.finite_order.has_value());
}

TEST(Classify, ConjugationEquivariant)
{
    std::mt19937 rng(11);
    std::vector<SurfaceRep<MobiusF>> reps{
        SurfaceRep<MobiusF>(2, d4_images(), TargetTag::psl2c()),
        SurfaceRep<MobiusF>(2, {embed(AffineF(Cplx(0, 1), 1.0)), MobiusF(), MobiusF(), embed(AffineF::translation(2.0))},
                            TargetTag::psl2c()),
        SurfaceRep<MobiusF>(2, {embed(AffineF(2.0, 1.0)), embed(AffineF(2.0, 1.0)), MobiusF(), MobiusF()},
                            TargetTag::psl2c()),
    };
    for (auto& rep : reps) {
        auto base = classify(rep);
        for (int t = 0; t < 100; ++t) {
            auto ec = classify(conj_all(rep, random_mobius(rng, 0.5)));
            EXPECT_EQ(ec.spherical, base.spherical);
            EXPECT_EQ(ec.affine, base.affine);
            EXPECT_EQ(ec.euclidean, base.euclidean);
            EXPECT_EQ(ec.dihedral, base.dihedral);
            EXPECT_EQ(ec.nonelementary, base.nonelementary);
            EXPECT_EQ(ec.finite_order, base.finite_order);
        }
    }
}

TEST(FiniteImageOrder, Examples)
{
    EXPECT_EQ(finite_image_order(std::vector<MobiusF>(4)), 1);
    std::vector<MobiusF> im{embed(AffineF::linear(root_of_unity(1, 5))), MobiusF()};
    EXPECT_EQ(finite_image_order(im), 5);
    EXPECT_EQ(finite_image_order(d4_images()), 8);
    std::vector<MobiusF> inf{embed(AffineF::translation(1.0)), MobiusF()};
    EXPECT_FALSE(finite_image_order(inf, 50).has_value());
}

TEST(Classify, ExactAffine)
{
    // Order-4 rotation about 1 and identity.
    AffineQ r(QExt::i(), QExt(1) - QExt::i());
    auto ec = classify(std::vector<AffineQ>{r, AffineQ(), AffineQ(), AffineQ()});
    EXPECT_TRUE(ec.spherical && ec.euclidean && ec.dihedral);
    EXPECT_EQ(ec.finite_order, 4);
    auto t = classify(std::vector<AffineQ>{AffineQ::translation(QExt(1)), AffineQ(), AffineQ(), AffineQ()});
    EXPECT_TRUE(t.euclidean);
    EXPECT_FALSE(t.dihedral);
    EXPECT_FALSE(t.spherical);
}

TEST(Classify, AmbiguousNearDegenerate)
{
    // Two loxodromics whose axes share one endpoint up to a perturbation just above tau.
    MobiusF a = embed(AffineF::linear(2.0));
    MobiusF h = mob(1.0, 0.0, 1e-5, 1.0);
    MobiusF b = compose(compose(h, embed(AffineF::linear(3.0))), invert(h));
    EXPECT_THROW(classify(std::vector<MobiusF>{a, b}), AmbiguousClassification);
}
