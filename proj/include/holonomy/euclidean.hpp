#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "classify.hpp"
#include "mcg.hpp"

namespace hol {

// ---- Volume ----

namespace detail {

inline double half(double x) { return 0.5 * x; }
inline KappaReal half(const KappaReal& x) { return Rational(1, 2) * x; }

template <class S>
S divide_by_int(const S& z, long k)
{
    if constexpr (ScalarTraits<S>::exact) return z * QExt(Rational(1, k));
    else return z / double(k);
}

// Values rho(w_j)(0) along the prefixes w_j of a_1 b_1 a_1^-1 b_1^-1 ... ; 4g values.
template <class S>
std::vector<S> prefix_values(const std::vector<Affine<S>>& im)
{
    std::vector<S> out;
    Affine<S> g;
    for (std::size_t i = 0; i + 1 < im.size(); i += 2) {
        const Affine<S> letters[4] = {im[i], im[i + 1], invert(im[i]), invert(im[i + 1])};
        for (auto& l : letters) {
            out.push_back(g(S()));
            g = compose(g, l);
        }
    }
    return out;
}

} // namespace detail

// Volume of the piecewise-affine equivariant map on the 4g-gon with the given center value.
template <class S>
typename ScalarTraits<S>::Real volume_pl(const std::vector<Affine<S>>& im, std::optional<std::type_identity_t<S>> center = std::nullopt)
{
    using R = typename ScalarTraits<S>::Real;
    auto f = detail::prefix_values(im);
    if (f.empty()) return R();
    S c;
    if (center) {
        c = *center;
    } else {
        for (auto& x : f) c += x;
        c = detail::divide_by_int(c, long(f.size()));
    }
    R total{};
    for (std::size_t j = 0; j < f.size(); ++j) {
        const S& p = f[j];
        const S& q = f[(j + 1) % f.size()];
        total = total + detail::half(ScalarTraits<S>::det(p - c, q - c));
    }
    return total;
}

template <class S>
typename ScalarTraits<S>::Real volume_pl(const SurfaceRep<Affine<S>>& rep, std::optional<std::type_identity_t<S>> center = std::nullopt)
{
    if (!center) return volume_pl(rep.images());
    return volume_pl(rep.images(), std::optional<S>(*center));
}

// Sum of det(t(a_i), t(b_i)); only for translation representations.
template <class S>
typename ScalarTraits<S>::Real volume_closed_form(const SurfaceRep<Affine<S>>& rep)
{
    using R = typename ScalarTraits<S>::Real;
    for (auto& f : rep.images())
        if (!ScalarTraits<S>::equal(f.a, ScalarTraits<S>::from_int(1), kFixedSlack))
            throw DomainError("closed-form volume needs trivial linear part");
    R total{};
    for (int i = 0; i < rep.genus(); ++i) total = total + ScalarTraits<S>::det(rep.a(i).b, rep.b(i).b);
    return total;
}

// ---- Linear part ----

namespace detail {

// e^{2 pi i / n} in the exact fields: n in {1, 2, 3, 4, 6}.
inline QExt exact_zeta(int n)
{
    switch (n) {
    case 1: return QExt(1);
    case 2: return QExt(-1);
    case 3: return QExt::w();
    case 4: return QExt::i();
    case 6: return QExt(1) + QExt::w();
    }
    throw DomainError("no exact primitive root of unity of order " + std::to_string(n));
}

// Smallest q <= cap with a^q = 1 for a unit complex number, 0 if none.
inline int float_root_order(Cplx a, int cap)
{
    if (std::abs(std::abs(a) - 1.0) > default_tolerance() * kFixedSlack) return 0;
    double t = std::arg(a) / (2 * kPi);
    for (int q = 1; q <= cap; ++q) {
        double x = t * q;
        if (std::abs(x - std::round(x)) <= default_tolerance() * q) return q;
    }
    return 0;
}

} // namespace detail

template <class S>
Affine<S> root_rotation(int n)
{
    if constexpr (ScalarTraits<S>::exact) return Affine<S>::linear(detail::exact_zeta(n));
    else return Affine<S>::linear(root_of_unity(1, n));
}

// Order of the image of the linear part; nullopt if infinite (or beyond cap in float mode).
template <class S>
std::optional<int> linear_order(const std::vector<Affine<S>>& im, int cap = kDefaultCap)
{
    long long n = 1;
    for (auto& f : im) {
        int k;
        if constexpr (ScalarTraits<S>::exact) k = detail::exact_root_order(f.a);
        else k = detail::float_root_order(f.a, cap);
        if (k == 0) return std::nullopt;
        n = std::lcm(n, (long long)k);
        if (n > cap) return std::nullopt;
    }
    return int(n);
}

// Exponents k with a = zeta_n^k.
template <class S>
std::vector<int> linear_exponents(const std::vector<Affine<S>>& im, int n)
{
    std::vector<int> ks;
    for (auto& f : im) {
        if constexpr (ScalarTraits<S>::exact) {
            QExt z = detail::exact_zeta(n), p(1);
            int k = 0;
            while (!(p == f.a)) {
                p *= z;
                if (++k > n) throw DomainError("linear part is not a power of the primitive root");
            }
            ks.push_back(k);
        } else {
            double t = std::arg(f.a) / (2 * kPi) * n;
            ks.push_back(int(((std::llround(t) % n) + n) % n));
        }
    }
    return ks;
}

template <class S>
struct EuclideanNormalForm {
    SurfaceRep<Affine<S>> rep;
    MoveWord moves;
    S translation;  // rep = T (moved input) T^-1 with T(z) = z + translation
    int n = 1;
};

// Moves and a conjugating translation bringing a finite-linear-part rep to (zeta z, z, z + z_3, ..., z + z_2g).
template <class S>
EuclideanNormalForm<S> normal_form_finite_linear(const SurfaceRep<Affine<S>>& rep)
{
    auto n_opt = linear_order(rep.images());
    if (!n_opt) throw DomainError("infinite linear part: Λ computed from ker α generators is out of scope");
    int n = *n_opt;
    if (n == 1) return {rep, {}, S(), 1};
    auto ks = linear_exponents(rep.images(), n);
    std::vector<CyclicElem> lin;
    for (int k : ks) lin.emplace_back(k, n);
    auto cf = canonical_form_cyclic(SurfaceRep<CyclicElem>(rep.genus(), lin, TargetTag::cyclic(n)));
    if (cf.gcd != 1) throw DomainError("linear exponents do not generate the claimed order");

    std::vector<Affine<S>> im = rep.images();
    for (auto& m : cf.moves) apply_move_inplace(im, m);
    S zeta = root_rotation<S>(n).a;
    S one = ScalarTraits<S>::from_int(1);
    S p = im[0].b / (one - im[0].a);
    auto T = Affine<S>::translation(-p), Ti = Affine<S>::translation(p);
    for (auto& f : im) f = compose(compose(T, f), Ti);
    if constexpr (!ScalarTraits<S>::exact) {
        // Snap linear parts onto the exact roots; the first b is forced to vanish by the relator.
        im[0] = Affine<S>(zeta, S());
        for (std::size_t k = 1; k < im.size(); ++k) im[k] = Affine<S>(one, im[k].b);
        im[1] = Affine<S>();
    }
    return {SurfaceRep<Affine<S>>(rep.genus(), std::move(im), rep.tag()), std::move(cf.moves), -p, n};
}

// ---- Lattices ----

enum class LatticeRank { Zero, One, Two, Dense };

inline const char* rank_name(LatticeRank r)
{
    switch (r) {
    case LatticeRank::Zero: return "0";
    case LatticeRank::One: return "1";
    case LatticeRank::Two: return "2";
    case LatticeRank::Dense: return "dense";
    }
    return "?";
}

template <class S>
struct LatticeInfo {
    LatticeRank rank = LatticeRank::Zero;
    std::vector<S> basis;
    typename ScalarTraits<S>::Real area{};
    int linear_order = 1;
    bool is_lattice() const { return rank == LatticeRank::Two; }
};

inline constexpr double kLatticeCollapse = 1e-6;
inline constexpr int kLatticeRounds = 60;

namespace detail {

inline double fdot(Cplx p, Cplx q) { return (std::conj(p) * q).real(); }
inline double fdet(Cplx p, Cplx q) { return (std::conj(p) * q).imag(); }

inline void gauss_reduce(Cplx& b1, Cplx& b2)
{
    for (int it = 0; it < 200; ++it) {
        if (std::norm(b2) < std::norm(b1)) std::swap(b1, b2);
        double mu = std::round(fdot(b1, b2) / std::norm(b1));
        if (mu == 0) break;
        b2 -= mu * b1;
    }
    if (std::norm(b2) < std::norm(b1)) std::swap(b1, b2);
}

inline void gauss_reduce(QExt& b1, QExt& b2)
{
    while (true) {
        if (b2.norm() < b1.norm()) std::swap(b1, b2);
        BigInt mu = round_nearest(exact_dot(b1, b2) / b1.norm());
        if (mu == 0) break;
        b2 = b2 - QExt(Rational(mu)) * b1;
    }
}

inline std::string lattice_indeterminate()
{
    return "lattice indeterminate: reduction did not stabilize within " + std::to_string(kLatticeRounds) +
           " rounds above the collapse threshold";
}

} // namespace detail

// Float mode: iterated reduction; a reduced vector below the collapse threshold means dense.
inline LatticeInfo<Cplx> lattice_from_generators(const std::vector<Cplx>& gens)
{
    LatticeInfo<Cplx> out;
    double scale = 0;
    for (auto& g : gens) scale = std::max(scale, std::abs(g));
    double eps = default_tolerance() * 10 * scale, collapse = kLatticeCollapse * scale;
    std::vector<Cplx> vs;
    for (auto& g : gens)
        if (std::abs(g) > eps) vs.push_back(g);
    if (vs.empty()) return out;

    std::size_t bi = 0, bj = 0;
    double best = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (std::abs(detail::fdet(vs[i], vs[j])) > best) { best = std::abs(detail::fdet(vs[i], vs[j])); bi = i; bj = j; }

    int rounds = 0;
    if (best <= eps * scale) {
        // Collinear: Euclid on the coordinates along the longest generator.
        Cplx u = *std::max_element(vs.begin(), vs.end(), [](Cplx a, Cplx b) { return std::abs(a) < std::abs(b); });
        u /= std::abs(u);
        double g = 0;
        for (auto& v : vs) {
            double a = std::abs(g), b = std::abs(detail::fdot(u, v));
            while (b > eps) {
                if (b < collapse) { out.rank = LatticeRank::Dense; return out; }
                if (++rounds > kLatticeRounds) throw DomainError(detail::lattice_indeterminate());
                double r = a - std::round(a / b) * b;
                a = b;
                b = std::abs(r);
            }
            g = a;
        }
        out.rank = LatticeRank::One;
        out.basis = {g * u};
        return out;
    }

    Cplx b1 = vs[bi], b2 = vs[bj];
    std::vector<Cplx> queue;
    for (std::size_t k = 0; k < vs.size(); ++k)
        if (k != bi && k != bj) queue.push_back(vs[k]);
    while (!queue.empty()) {
        Cplx v = queue.back();
        queue.pop_back();
        detail::gauss_reduce(b1, b2);
        double D = detail::fdet(b1, b2);
        double c1 = detail::fdet(v, b2) / D, c2 = detail::fdet(b1, v) / D;
        Cplx r = v - std::round(c1) * b1 - std::round(c2) * b2;
        if (std::abs(r) <= eps) continue;
        if (std::abs(r) < collapse) { out.rank = LatticeRank::Dense; return out; }
        if (++rounds > kLatticeRounds) throw DomainError(detail::lattice_indeterminate());
        double d1 = std::abs(detail::fdet(b1, r)), d2 = std::abs(detail::fdet(b2, r));
        // Keep the pair with the smaller nonzero covolume; the dropped vector is reduced again later.
        bool use1 = d1 > eps * scale && (d2 <= eps * scale || d1 <= d2);
        if (use1) { queue.push_back(b2); b2 = r; }
        else { queue.push_back(b1); b1 = r; }
        if (std::abs(detail::fdet(b1, b2)) < collapse * scale) { out.rank = LatticeRank::Dense; return out; }
    }
    detail::gauss_reduce(b1, b2);
    if (std::abs(b1) < collapse) { out.rank = LatticeRank::Dense; return out; }
    out.rank = LatticeRank::Two;
    out.basis = {b1, b2};
    out.area = std::abs(detail::fdet(b1, b2));
    return out;
}

// Exact mode: finitely generated subgroups of Q + Q u are always discrete; Hermite reduction over Z.
inline LatticeInfo<QExt> lattice_from_generators(const std::vector<QExt>& gens)
{
    LatticeInfo<QExt> out;
    Field f = Field::Q;
    for (auto& g : gens) f = join(f, g.f);
    BigInt D = 1;
    for (auto& g : gens)
        D = boost::multiprecision::lcm(D, boost::multiprecision::lcm(boost::multiprecision::denominator(g.x),
                                                                      boost::multiprecision::denominator(g.y)));
    std::vector<std::pair<BigInt, BigInt>> rows;
    for (auto& g : gens) {
        BigInt X = boost::multiprecision::numerator(g.x * Rational(D));
        BigInt Y = boost::multiprecision::numerator(g.y * Rational(D));
        if (X != 0 || Y != 0) rows.push_back({X, Y});
    }
    // Euclid on the first coordinate, then gcd of the second coordinates that remain.
    std::optional<std::pair<BigInt, BigInt>> pivot;
    BigInt second = 0;
    while (true) {
        std::size_t best = rows.size();
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (rows[k].first != 0 && (best == rows.size() || abs(rows[k].first) < abs(rows[best].first))) best = k;
        if (best == rows.size()) break;
        bool others = false;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == best || rows[k].first == 0) continue;
            BigInt q = rows[k].first / rows[best].first;
            rows[k].first -= q * rows[best].first;
            rows[k].second -= q * rows[best].second;
            others = true;
        }
        if (!others) {
            pivot = rows[best];
            rows.erase(rows.begin() + long(best));
            break;
        }
    }
    for (auto& r : rows) second = boost::multiprecision::gcd(second, r.second);
    auto to_q = [&](const BigInt& X, const BigInt& Y) {
        Rational x(X, D), y(Y, D);
        if (y == 0) return QExt(x);
        return QExt(x, y, f);
    };
    std::vector<QExt> basis;
    if (pivot) basis.push_back(to_q(pivot->first, pivot->second));
    if (second != 0) basis.push_back(to_q(0, second));
    if (basis.empty()) return out;
    if (basis.size() == 1) {
        out.rank = LatticeRank::One;
        out.basis = basis;
        return out;
    }
    detail::gauss_reduce(basis[0], basis[1]);
    out.rank = LatticeRank::Two;
    out.basis = basis;
    KappaReal d = exact_det(basis[0], basis[1]);
    out.area = d.sign() < 0 ? -d : d;
    return out;
}

// Translation subgroup of the image, for a finite linear part.
template <class S>
LatticeInfo<S> lattice_of(const SurfaceRep<Affine<S>>& rep)
{
    auto nf = normal_form_finite_linear(rep);
    std::vector<S> gens;
    if (nf.n == 1) {
        for (auto& f : rep.images()) gens.push_back(f.b);
    } else {
        S zeta = root_rotation<S>(nf.n).a;
        for (std::size_t k = 2; k < nf.rep.images().size(); ++k) {
            S t = nf.rep.images()[k].b;
            for (int j = 0; j < nf.n; ++j) {
                gens.push_back(t);
                t = t * zeta;
            }
        }
    }
    auto info = lattice_from_generators(gens);
    info.linear_order = nf.n;
    return info;
}

// ---- Moving a Euclidean Mobius rep into Aff(C) ----

// Conjugate by a unitary map sending p to infinity and read off the affine maps.
inline SurfaceRep<AffineF> to_affine_rep(const SurfaceRep<MobiusF>& rep, const CP1Point& p)
{
    MobiusF h(std::conj(p.u), std::conj(p.v), -p.v, p.u);
    MobiusF hi = invert(h);
    std::vector<AffineF> im;
    for (auto& m : rep.images()) {
        MobiusF c = compose(compose(h, m), hi);
        if (std::abs(c.c) > std::sqrt(default_tolerance()) * std::max(1.0, frobenius(c)))
            throw DomainError("common fixed point is not fixed to working precision");
        im.push_back(AffineF(c.a / c.d, c.b / c.d));
    }
    return SurfaceRep<AffineF>(rep.genus(), std::move(im), TargetTag::affine());
}

// Exact Mobius reps with every element fixing infinity.
inline std::optional<SurfaceRep<AffineQ>> exact_affine_rep(const SurfaceRep<MobiusQ>& rep)
{
    std::vector<AffineQ> im;
    for (auto& m : rep.images()) {
        if (!m.c.is_zero()) return std::nullopt;
        im.push_back(extract_affine(m));
    }
    return SurfaceRep<AffineQ>(rep.genus(), std::move(im), TargetTag::affine());
}

} // namespace hol
