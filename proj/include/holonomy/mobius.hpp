#pragma once

#include <array>
#include <cmath>

#include "scalar.hpp"

namespace hol {

// Element of PSL(2,C). Float entries are normalized to det 1 and compared up to sign;
// exact entries keep a projective representative and compare up to scalars.
template <class S>
struct Mobius {
    S a, b, c, d;

    Mobius() : a(ScalarTraits<S>::from_int(1)), b(), c(), d(ScalarTraits<S>::from_int(1)) {}

    Mobius(S a_, S b_, S c_, S d_) : a(a_), b(b_), c(c_), d(d_)
    {
        S det = a * d - b * c;
        if (ScalarTraits<S>::is_zero(det, 0.0)) throw DomainError("singular matrix is not a Mobius element");
        if constexpr (!ScalarTraits<S>::exact) {
            S r = std::sqrt(det);
            a /= r; b /= r; c /= r; d /= r;
        }
    }

    S det() const { return a * d - b * c; }

    std::array<S, 4> entries() const { return {a, b, c, d}; }
};

using MobiusF = Mobius<Cplx>;
using MobiusQ = Mobius<QExt>;

template <class S>
Mobius<S> compose(const Mobius<S>& m, const Mobius<S>& n)
{
    Mobius<S> r;
    r.a = m.a * n.a + m.b * n.c;
    r.b = m.a * n.b + m.b * n.d;
    r.c = m.c * n.a + m.d * n.c;
    r.d = m.c * n.b + m.d * n.d;
    return r;
}

template <class S>
Mobius<S> invert(const Mobius<S>& m)
{
    Mobius<S> r;
    r.a = m.d; r.b = -m.b; r.c = -m.c; r.d = m.a;
    return r;
}

inline double frobenius(const MobiusF& m)
{
    return std::sqrt(std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d));
}

// Index of the first entry whose modulus is within 1e-6 of the largest.
inline int leading_index(const MobiusF& m)
{
    auto e = m.entries();
    double mx = 0;
    for (auto& z : e) mx = std::max(mx, std::abs(z));
    for (int k = 0; k < 4; ++k)
        if (std::abs(e[k]) >= mx - 1e-6 * std::max(1.0, mx)) return k;
    return 0;
}

inline MobiusF sign_normalized(const MobiusF& m)
{
    auto e = m.entries();
    Cplx lead = e[leading_index(m)];
    bool flip = std::abs(lead.real()) > 1e-9 * std::abs(lead) ? lead.real() < 0 : lead.imag() < 0;
    if (!flip) return m;
    MobiusF r = m;
    r.a = -m.a; r.b = -m.b; r.c = -m.c; r.d = -m.d;
    return r;
}

inline bool same(const MobiusF& m, const MobiusF& n, double tol = default_tolerance())
{
    auto x = m.entries(), y = n.entries();
    int k = leading_index(m);
    double s = std::abs(x[k] - y[k]) <= std::abs(x[k] + y[k]) ? 1.0 : -1.0;
    double scale = std::max(1.0, frobenius(m));
    for (int i = 0; i < 4; ++i)
        if (std::abs(x[i] - s * y[i]) > tol * scale) return false;
    return true;
}

inline bool same(const MobiusQ& m, const MobiusQ& n)
{
    auto x = m.entries(), y = n.entries();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!(x[i] * y[j] - x[j] * y[i]).is_zero()) return false;
    // Proportional with a nonzero factor: some pair of matching entries is nonzero.
    for (int i = 0; i < 4; ++i)
        if (!x[i].is_zero()) return !y[i].is_zero();
    return false;
}

template <class S>
bool is_identity(const Mobius<S>& m)
{
    return same(m, Mobius<S>());
}

inline MobiusF to_float(const MobiusQ& m)
{
    return MobiusF(m.a.to_complex(), m.b.to_complex(), m.c.to_complex(), m.d.to_complex());
}

// SL(2) trace of the det-1 representative, defined up to sign.
inline Cplx trace(const MobiusF& m) { return m.a + m.d; }

} // namespace hol
