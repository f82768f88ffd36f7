#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "surface_rep.hpp"

namespace hol {

// Homogeneous point (u : v) of CP^1, stored as a unit vector; v = 0 is infinity.
struct CP1Point {
    Cplx u{1.0}, v{0.0};

    CP1Point() = default;
    CP1Point(Cplx u_, Cplx v_) : u(u_), v(v_)
    {
        double n = std::sqrt(std::norm(u) + std::norm(v));
        if (n == 0) throw DomainError("zero vector is not a point of CP^1");
        u /= n; v /= n;
    }
    static CP1Point finite(Cplx z) { return {z, Cplx(1.0)}; }
    static CP1Point infinity() { return {Cplx(1.0), Cplx(0.0)}; }

    bool is_infinity(double tol = default_tolerance()) const { return std::abs(v) <= tol; }
    Cplx value() const { return u / v; }
};

inline double distance(const CP1Point& p, const CP1Point& q) { return std::abs(p.u * q.v - p.v * q.u); }

inline CP1Point apply(const MobiusF& m, const CP1Point& p) { return {m.a * p.u + m.b * p.v, m.c * p.u + m.d * p.v}; }

struct FixedPoints {
    enum class Kind { Identity, One, Two };
    Kind kind = Kind::Identity;
    std::vector<CP1Point> points;
};

namespace detail {

inline CP1Point eigvec(const MobiusF& m, Cplx lam)
{
    Cplx x1 = m.b, y1 = lam - m.a, x2 = lam - m.d, y2 = m.c;
    if (std::norm(x1) + std::norm(y1) >= std::norm(x2) + std::norm(y2)) return CP1Point(x1, y1);
    return CP1Point(x2, y2);
}

// Eigenvectors for both roots, even when they nearly coincide.
inline std::vector<CP1Point> eigen_points(const MobiusF& m)
{
    Cplx tr = m.a + m.d;
    Cplx disc = std::sqrt(tr * tr - 4.0);
    // Near a double root the split roots lose half the digits; tr/2 keeps them.
    if (std::abs(disc) <= std::sqrt(default_tolerance() * kFixedSlack)) return {eigvec(m, tr / 2.0)};
    return {eigvec(m, (tr + disc) / 2.0), eigvec(m, (tr - disc) / 2.0)};
}

} // namespace detail

inline FixedPoints fixed_points(const MobiusF& m)
{
    FixedPoints out;
    if (is_identity(m)) return out;
    Cplx tr = m.a + m.d;
    Cplx disc = std::sqrt(tr * tr - 4.0);
    auto eigvec = [&](Cplx lam) { return detail::eigvec(m, lam); };
    if (std::abs(disc) <= std::sqrt(default_tolerance() * kFixedSlack)) {
        out.kind = FixedPoints::Kind::One;
        out.points.push_back(eigvec(tr / 2.0));
    } else {
        out.kind = FixedPoints::Kind::Two;
        out.points.push_back(eigvec((tr + disc) / 2.0));
        out.points.push_back(eigvec((tr - disc) / 2.0));
    }
    return out;
}

// Three-valued outcome of a thresholded float test.
enum class Tri { No, Yes, Unknown };

inline Tri small_residual(double r)
{
    double tau = default_tolerance();
    if (r <= tau * kFixedSlack) return Tri::Yes;
    if (r >= std::sqrt(tau)) return Tri::No;
    return Tri::Unknown;
}

inline Tri tri_and(Tri a, Tri b)
{
    if (a == Tri::No || b == Tri::No) return Tri::No;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::Yes;
}

inline Tri tri_or(Tri a, Tri b)
{
    if (a == Tri::Yes || b == Tri::Yes) return Tri::Yes;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::No;
}

inline bool resolve(Tri t, const char* what)
{
    if (t == Tri::Unknown) throw AmbiguousClassification(what);
    return t == Tri::Yes;
}

inline Tri maps_to(const MobiusF& m, const CP1Point& p, const CP1Point& q)
{
    return small_residual(distance(apply(m, p), q) / std::max(1.0, frobenius(m)));
}

struct HermitianForm {
    // [[h00, h01], [conj(h01), h11]]
    double h00 = 1, h11 = 1;
    Cplx h01{0.0};

    double trace() const { return h00 + h11; }
    double det() const { return h00 * h11 - std::norm(h01); }
    bool positive_definite() const { return trace() > 0 && det() > 0; }
    double min_eigenvalue() const
    {
        double m = (h00 + h11) / 2, r = std::sqrt((h00 - h11) * (h00 - h11) / 4 + std::norm(h01));
        return m - r;
    }
    // Residual of g^dagger H g - H.
    double invariance_residual(const MobiusF& g) const
    {
        Eigen::Matrix2cd H, G;
        H << h00, h01, std::conj(h01), h11;
        G << g.a, g.b, g.c, g.d;
        return (G.adjoint() * H * G - H).norm();
    }
};

struct ElementaryClass {
    bool spherical = false, affine = false, euclidean = false, dihedral = false, trivial = false, nonelementary = false;
    std::optional<int> finite_order;
    std::optional<HermitianForm> certificate;
    // Common fixed point used for the Euclidean test, when affine.
    std::optional<CP1Point> fixed_point;
    std::vector<std::string> warnings;
    bool elementary() const { return !nonelementary; }
};

namespace detail {

using FloatKey = std::array<long long, 8>;

inline FloatKey float_key(const MobiusF& m)
{
    MobiusF n = sign_normalized(m);
    FloatKey k{};
    auto e = n.entries();
    for (int i = 0; i < 4; ++i) {
        k[2 * i] = std::llround(e[i].real() * 1e6);
        k[2 * i + 1] = std::llround(e[i].imag() * 1e6);
    }
    return k;
}

inline Eigen::Vector4d hermitian_image(const MobiusF& g, const Eigen::Vector4d& h)
{
    Eigen::Matrix2cd H, G;
    H << h(0), Cplx(h(1), h(2)), Cplx(h(1), -h(2)), h(3);
    G << g.a, g.b, g.c, g.d;
    Eigen::Matrix2cd R = G.adjoint() * H * G - H;
    return {R(0, 0).real(), R(0, 1).real(), R(0, 1).imag(), R(1, 1).real()};
}

inline double min_eig(const Eigen::Vector4d& h)
{
    double m = (h(0) + h(3)) / 2;
    double r = std::sqrt((h(0) - h(3)) * (h(0) - h(3)) / 4 + h(1) * h(1) + h(2) * h(2));
    return m - r;
}

// Point on the unit sphere of R^m from m-1 angles.
inline Eigen::VectorXd sphere_point(const std::vector<double>& ang, int m)
{
    Eigen::VectorXd c(m);
    double s = 1.0;
    for (int k = 0; k + 1 < m; ++k) {
        c(k) = s * std::cos(ang[k]);
        s *= std::sin(ang[k]);
    }
    c(m - 1) = s;
    return c;
}

inline std::optional<HermitianForm> invariant_form(const std::vector<MobiusF>& gens)
{
    if (gens.empty()) return HermitianForm{};
    int rows = 4 * int(gens.size());
    Eigen::MatrixXd A(rows, 4);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        double s = std::max(1.0, std::pow(frobenius(gens[i]), 2));
        for (int k = 0; k < 4; ++k) {
            Eigen::Vector4d e = Eigen::Vector4d::Zero();
            e(k) = 1;
            A.block(4 * i, k, 4, 1) = hermitian_image(gens[i], e) / s;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    Eigen::MatrixXd V = svd.matrixV();
    std::vector<int> null_cols;
    for (int k = 0; k < 4; ++k) {
        double s = k < sv.size() ? sv(k) : 0.0;
        Tri z = small_residual(s);
        if (z == Tri::Unknown) throw AmbiguousClassification("near-degenerate invariant Hermitian system");
        if (z == Tri::Yes) null_cols.push_back(k);
    }
    int m = int(null_cols.size());
    if (m == 0) return std::nullopt;
    Eigen::MatrixXd B(4, m);
    for (int j = 0; j < m; ++j) B.col(j) = V.col(null_cols[j]);

    auto score = [&](const std::vector<double>& ang) { return min_eig(B * sphere_point(ang, m)); };

    std::vector<double> best(std::max(0, m - 1), 0.0);
    double best_val = -1e300;
    const double step = 1e-2;
    auto decide = [&](const Eigen::Vector4d& h) -> std::optional<HermitianForm> {
        double v = min_eig(h);
        Tri pos = v >= std::sqrt(default_tolerance()) ? Tri::Yes
                  : (v <= default_tolerance() * kFixedSlack ? Tri::No : Tri::Unknown);
        if (!resolve(pos, "invariant Hermitian form is nearly degenerate")) return std::nullopt;
        return HermitianForm{h(0), h(3), Cplx(h(1), h(2))};
    };
    if (m == 1) {
        Eigen::Vector4d h = B.col(0);
        return decide(min_eig(h) >= min_eig(-h) ? h : Eigen::Vector4d(-h));
    }
    // Grid over angle space; the last angle spans a full circle.
    int coarse = m <= 3 ? 1 : 10;
    std::vector<int> counts(m - 1);
    for (int k = 0; k < m - 1; ++k) {
        double span = (k == m - 2) ? 2 * kPi : kPi;
        counts[k] = int(span / (step * coarse)) + 1;
    }
    std::vector<int> idx(m - 1, 0);
    while (true) {
        std::vector<double> ang(m - 1);
        for (int k = 0; k < m - 1; ++k) ang[k] = idx[k] * step * coarse;
        double v = score(ang);
        if (v > best_val) { best_val = v; best = ang; }
        int k = 0;
        while (k < m - 1 && ++idx[k] == counts[k]) idx[k++] = 0;
        if (k == m - 1) break;
    }
    for (double h = step * coarse; h > 1e-13; h /= 2) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int k = 0; k < m - 1; ++k)
                for (double dir : {1.0, -1.0}) {
                    auto t = best;
                    t[k] += dir * h;
                    double v = score(t);
                    if (v > best_val) { best_val = v; best = t; improved = true; }
                }
        }
    }
    return decide(B * sphere_point(best, m));
}

} // namespace detail

inline std::optional<int> finite_image_order(const std::vector<MobiusF>& gens, int cap = kDefaultCap)
{
    std::map<detail::FloatKey, int> seen;
    std::vector<MobiusF> elems{MobiusF()};
    seen[detail::float_key(MobiusF())] = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (auto& g : gens) {
            MobiusF x = compose(elems[i], g);
            // Finite-order elements are elliptic: real trace in [-2, 2]. Huge entries mean a parabolic.
            Cplx tr = trace(x);
            if (std::abs(tr.imag()) > 1e-6 || std::abs(tr.real()) > 2 + 1e-6 || frobenius(x) > 1e6) return std::nullopt;
            auto k = detail::float_key(x);
            if (seen.count(k)) continue;
            if (int(elems.size()) >= cap) return std::nullopt;
            seen[k] = int(elems.size());
            elems.push_back(x);
        }
    }
    return int(elems.size());
}

template <class E>
std::optional<int> finite_image_order(const SurfaceRep<E>& rep, int cap = kDefaultCap);

template <>
inline std::optional<int> finite_image_order(const SurfaceRep<MobiusF>& rep, int cap)
{
    return finite_image_order(rep.images(), cap);
}

// 0 if the rep lifts to SL(2,C), 1 otherwise.
inline int sw(const std::vector<MobiusF>& im)
{
    Eigen::Matrix2cd P = Eigen::Matrix2cd::Identity();
    double scale = 1.0;
    for (std::size_t i = 0; i + 1 < im.size(); i += 2) {
        Eigen::Matrix2cd A, B;
        A << im[i].a, im[i].b, im[i].c, im[i].d;
        B << im[i + 1].a, im[i + 1].b, im[i + 1].c, im[i + 1].d;
        P = P * A * B * A.inverse() * B.inverse();
        scale = std::max({scale, frobenius(im[i]), frobenius(im[i + 1])});
    }
    double tol = default_tolerance() * std::pow(scale, 4);
    if ((P - Eigen::Matrix2cd::Identity()).norm() <= tol) return 0;
    if ((P + Eigen::Matrix2cd::Identity()).norm() <= tol) return 1;
    throw DomainError("commutator product is not +-Id: broken relator");
}

inline int sw(const std::vector<MobiusQ>& im)
{
    auto mul = [](const std::array<QExt, 4>& x, const std::array<QExt, 4>& y) {
        return std::array<QExt, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                   x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
    };
    auto inv = [](const std::array<QExt, 4>& x) {
        QExt det = x[0] * x[3] - x[1] * x[2];
        return std::array<QExt, 4>{x[3] / det, -x[1] / det, -x[2] / det, x[0] / det};
    };
    std::array<QExt, 4> P{QExt(1), QExt(0), QExt(0), QExt(1)};
    for (std::size_t i = 0; i + 1 < im.size(); i += 2) {
        auto A = im[i].entries(), B = im[i + 1].entries();
        P = mul(P, mul(mul(A, B), mul(inv(A), inv(B))));
    }
    if (P[1].is_zero() && P[2].is_zero() && P[0] == P[3]) {
        if (P[0] == QExt(1)) return 0;
        if (P[0] == QExt(-1)) return 1;
    }
    throw DomainError("commutator product is not +-Id: broken relator");
}

template <class S>
int sw(const SurfaceRep<Mobius<S>>& rep) { return sw(rep.images()); }

inline ElementaryClass classify(const std::vector<MobiusF>& images, int cap = kDefaultCap)
{
    ElementaryClass ec;
    std::vector<MobiusF> gens;
    for (auto& m : images)
        if (!is_identity(m)) gens.push_back(m);
    if (gens.empty()) {
        ec.trivial = ec.spherical = ec.affine = ec.euclidean = ec.dihedral = true;
        ec.finite_order = 1;
        ec.certificate = HermitianForm{};
        ec.fixed_point = CP1Point::infinity();
        return ec;
    }

    std::vector<CP1Point> cand;
    for (auto& g : gens)
        for (auto& p : detail::eigen_points(g)) cand.push_back(p);
    auto fixed_by_all = [&](const CP1Point& p) {
        Tri t = Tri::Yes;
        for (auto& g : gens) t = tri_and(t, maps_to(g, p, p));
        return t;
    };
    std::vector<CP1Point> common;
    for (auto& p : cand) {
        if (!resolve(fixed_by_all(p), "candidate fixed point is nearly fixed")) continue;
        bool dup = false;
        for (auto& q : common)
            if (small_residual(distance(p, q)) != Tri::No) dup = true;
        if (!dup) common.push_back(p);
    }
    ec.affine = !common.empty();

    for (auto& p : common) {
        Tri unit = Tri::Yes;
        for (auto& g : gens) {
            // Eigenvalue at p: g p = lambda p.
            Cplx lam = (g.a * p.u + g.b * p.v) * std::conj(p.u) + (g.c * p.u + g.d * p.v) * std::conj(p.v);
            unit = tri_and(unit, small_residual(std::abs(std::abs(lam) - 1.0)));
        }
        if (resolve(unit, "linear part modulus is nearly one")) {
            ec.euclidean = true;
            ec.fixed_point = p;
            break;
        }
    }
    if (ec.affine && !ec.fixed_point) ec.fixed_point = common.front();

    std::vector<std::pair<CP1Point, CP1Point>> pairs;
    auto add_pair = [&](const MobiusF& m) {
        if (is_identity(m)) return;
        auto f = fixed_points(m);
        if (f.kind == FixedPoints::Kind::Two) pairs.emplace_back(f.points[0], f.points[1]);
    };
    for (auto& g : gens) add_pair(g);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            add_pair(compose(gens[i], gens[j]));
            add_pair(compose(gens[i], invert(gens[j])));
        }
    if (common.size() >= 2) pairs.emplace_back(common[0], common[1]);
    for (auto& [p, q] : pairs) {
        Tri inv = Tri::Yes;
        for (auto& g : gens) {
            Tri fix = tri_and(maps_to(g, p, p), maps_to(g, q, q));
            Tri swp = tri_and(maps_to(g, p, q), maps_to(g, q, p));
            inv = tri_and(inv, tri_or(fix, swp));
        }
        if (resolve(inv, "candidate invariant pair is nearly invariant")) {
            ec.dihedral = true;
            break;
        }
    }

    // A generator with a clearly non-elliptic trace rules out an invariant positive form.
    bool loxodromic = false;
    for (auto& g : gens) {
        Cplx t = trace(g);
        double slack = std::sqrt(default_tolerance()) * std::max(1.0, std::abs(t));
        if (std::abs(t.imag()) > slack || std::abs(t.real()) > 2 + slack) loxodromic = true;
    }
    if (!loxodromic) ec.certificate = detail::invariant_form(gens);
    ec.spherical = ec.certificate.has_value();
    ec.nonelementary = !(ec.spherical || ec.affine || ec.dihedral);
    ec.finite_order = finite_image_order(images, cap);
    if (ec.finite_order && !ec.spherical)
        throw AmbiguousClassification("finite image without an invariant positive form");
    return ec;
}

inline ElementaryClass classify(const SurfaceRep<MobiusF>& rep, int cap = kDefaultCap)
{
    return classify(rep.images(), cap);
}

namespace detail {

// Order of a root of unity in Q(i) or Q(w), or 0 when the element has infinite order.
inline int exact_root_order(const QExt& a)
{
    if (a.norm() != 1) return 0;
    QExt p = a;
    for (int k = 1; k <= 12; ++k) {
        if (p == QExt(1)) return k;
        p *= a;
    }
    return 0;
}

} // namespace detail

inline ElementaryClass classify(const std::vector<AffineQ>& images)
{
    ElementaryClass ec;
    ec.affine = true;
    ec.fixed_point = CP1Point::infinity();
    if (all_identity(images)) {
        ec.trivial = ec.spherical = ec.euclidean = ec.dihedral = true;
        ec.finite_order = 1;
        ec.certificate = HermitianForm{};
        return ec;
    }
    ec.euclidean = true;
    for (auto& f : images)
        if (f.a.norm() != 1) ec.euclidean = false;
    // Common finite fixed point p with a p + b = p.
    std::optional<QExt> p;
    bool common = true;
    for (auto& f : images) {
        if (is_identity(f)) continue;
        if (f.a == QExt(1)) { common = false; break; }
        QExt q = f.b / (QExt(1) - f.a);
        if (p && !(*p == q)) { common = false; break; }
        p = q;
    }
    ec.dihedral = common;
    ec.spherical = common && ec.euclidean;
    if (ec.spherical) {
        int n = 1;
        for (auto& f : images) {
            int k = detail::exact_root_order(f.a);
            n = k ? std::lcm(n, k) : 0;
            if (!n) break;
        }
        if (n) ec.finite_order = n;
        ec.warnings.push_back("exact affine classification: invariant form certificate not computed");
    }
    return ec;
}

inline ElementaryClass classify(const SurfaceRep<AffineQ>& rep) { return classify(rep.images()); }

inline ElementaryClass classify(const SurfaceRep<AffineF>& rep, int cap = kDefaultCap)
{
    std::vector<MobiusF> m;
    for (auto& f : rep.images()) m.push_back(embed(f));
    return classify(m, cap);
}

} // namespace hol
