#pragma once

#include <cmath>

#include "mobius.hpp"

namespace hol {

// z -> a z + b with a != 0.
template <class S>
struct Affine {
    S a, b;

    Affine() : a(ScalarTraits<S>::from_int(1)), b() {}
    Affine(S a_, S b_) : a(a_), b(b_)
    {
        if (ScalarTraits<S>::is_zero(a, 0.0)) throw DomainError("affine map with zero linear part");
    }

    static Affine translation(S t) { return Affine(ScalarTraits<S>::from_int(1), t); }
    static Affine linear(S l) { return Affine(l, S()); }

    S operator()(const S& z) const { return a * z + b; }
};

using AffineF = Affine<Cplx>;
using AffineQ = Affine<QExt>;

template <class S>
Affine<S> compose(const Affine<S>& f, const Affine<S>& g)
{
    return Affine<S>(f.a * g.a, f.a * g.b + f.b);
}

template <class S>
Affine<S> invert(const Affine<S>& f)
{
    S one = ScalarTraits<S>::from_int(1);
    S inv = one / f.a;
    return Affine<S>(inv, -(f.b * inv));
}

template <class S>
bool same(const Affine<S>& f, const Affine<S>& g)
{
    double scale = std::max({1.0, ScalarTraits<S>::magnitude(f.b), ScalarTraits<S>::magnitude(g.b)});
    return ScalarTraits<S>::equal(f.a, g.a) && ScalarTraits<S>::equal(f.b, g.b, scale);
}

template <class S>
bool is_identity(const Affine<S>& f)
{
    return same(f, Affine<S>());
}

inline MobiusF embed(const AffineF& f)
{
    Cplx r = std::sqrt(f.a);
    return MobiusF(r, f.b / r, Cplx(0), Cplx(1) / r);
}

inline MobiusQ embed(const AffineQ& f) { return MobiusQ(f.a, f.b, QExt(0), QExt(1)); }

inline AffineF extract_affine(const MobiusF& m)
{
    if (std::abs(m.c) > default_tolerance() * std::max(1.0, frobenius(m)))
        throw DomainError("Mobius element does not fix infinity");
    return AffineF(m.a / m.d, m.b / m.d);
}

inline AffineQ extract_affine(const MobiusQ& m)
{
    if (!m.c.is_zero()) throw DomainError("Mobius element does not fix infinity");
    return AffineQ(m.a / m.d, m.b / m.d);
}

inline AffineF to_float(const AffineQ& f) { return AffineF(f.a.to_complex(), f.b.to_complex()); }

} // namespace hol
