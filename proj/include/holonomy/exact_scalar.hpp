#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <string>

#include "config.hpp"

namespace hol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_from_double(double v)
{
    if (!std::isfinite(v)) throw InputError("non-finite value cannot be made exact");
    if (v == 0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(v, &exp);
    // 53 bits of mantissa become an integer numerator.
    BigInt num(static_cast<long long>(std::ldexp(mant, 53)));
    exp -= 53;
    Rational r(num);
    if (exp > 0) r *= Rational(BigInt(1) << exp);
    else if (exp < 0) r /= Rational(BigInt(1) << -exp);
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_div(const Rational& r)
{
    BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

// Nearest integer, halves rounded down.
inline BigInt round_nearest(const Rational& r) { return floor_div(r + Rational(1, 2)); }

enum class Field { Q, Qi, Qw };

inline const char* field_basis(Field f)
{
    switch (f) {
    case Field::Qi: return "i";
    case Field::Qw: return "w";
    default: return "1";
    }
}

inline Field join(Field a, Field b)
{
    if (a == Field::Q) return b;
    if (b == Field::Q || a == b) return a;
    throw DomainError("cannot mix Q(i) and Q(w) scalars");
}

// x + y*u with u = i or w = exp(2 pi i / 3); field Q whenever y = 0.
struct QExt {
    Rational x, y;
    Field f = Field::Q;

    QExt() = default;
    QExt(long v) : x(v) {}
    QExt(Rational v) : x(std::move(v)) {}
    QExt(Rational a, Rational b, Field fld) : x(std::move(a)), y(std::move(b)), f(fld) { tidy(); }

    static QExt i() { return {0, 1, Field::Qi}; }
    static QExt w() { return {0, 1, Field::Qw}; }

    void tidy()
    {
        if (y == 0) f = Field::Q;
        else if (f == Field::Q) throw DomainError("nonzero u-coordinate needs a quadratic field");
    }

    bool is_zero() const { return x == 0 && y == 0; }

    friend bool operator==(const QExt& a, const QExt& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const QExt& a, const QExt& b) { return !(a == b); }

    friend QExt operator+(const QExt& a, const QExt& b) { return {a.x + b.x, a.y + b.y, join(a.f, b.f)}; }
    friend QExt operator-(const QExt& a, const QExt& b) { return {a.x - b.x, a.y - b.y, join(a.f, b.f)}; }
    QExt operator-() const { return {-x, -y, f}; }

    friend QExt operator*(const QExt& a, const QExt& b)
    {
        Field fl = join(a.f, b.f);
        if (fl == Field::Qw)
            return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x - a.y * b.y, fl};
        return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x, fl};
    }

    QExt conj() const
    {
        if (f == Field::Qw) return {x - y, -y, f};
        return {x, -y, f};
    }

    Rational norm() const
    {
        if (f == Field::Qw) return x * x - x * y + y * y;
        return x * x + y * y;
    }

    QExt inverse() const
    {
        if (is_zero()) throw DomainError("division by exact zero");
        QExt c = conj();
        Rational n = norm();
        return {c.x / n, c.y / n, c.f};
    }

    friend QExt operator/(const QExt& a, const QExt& b) { return a * b.inverse(); }

    QExt& operator+=(const QExt& o) { return *this = *this + o; }
    QExt& operator-=(const QExt& o) { return *this = *this - o; }
    QExt& operator*=(const QExt& o) { return *this = *this * o; }

    Rational re() const { return f == Field::Qw ? x - y / 2 : x; }
    // Imaginary part is kappa(f) * im_coeff() with kappa = 1 or sqrt(3)/2.
    Rational im_coeff() const { return y; }

    std::complex<double> to_complex() const
    {
        double a = to_double(x), b = to_double(y);
        if (f == Field::Qw) return {a - b / 2, b * std::sqrt(3.0) / 2};
        return {a, b};
    }

    std::string str() const
    {
        std::string s = x.str();
        if (y != 0) s += (y > 0 ? "+" : "") + y.str() + (f == Field::Qw ? "w" : "i");
        return s;
    }
};

inline double kappa(Field f) { return f == Field::Qw ? std::sqrt(3.0) / 2 : 1.0; }

// A real number of the form c * kappa(f); closed under the operations volume and area need.
struct KappaReal {
    Rational c;
    Field f = Field::Q;

    KappaReal() = default;
    KappaReal(Rational v, Field fld) : c(std::move(v)), f(fld)
    {
        if (c == 0) f = Field::Q;
    }

    friend KappaReal operator+(const KappaReal& a, const KappaReal& b) { return {a.c + b.c, join(a.f, b.f)}; }
    friend KappaReal operator-(const KappaReal& a, const KappaReal& b) { return {a.c - b.c, join(a.f, b.f)}; }
    friend KappaReal operator*(const Rational& s, const KappaReal& a) { return {s * a.c, a.f}; }
    KappaReal operator-() const { return {-c, f}; }

    int sign() const { return c > 0 ? 1 : (c < 0 ? -1 : 0); }
    double value() const { return to_double(c) * kappa(f); }

    friend bool operator==(const KappaReal& a, const KappaReal& b) { return a.c == b.c && (a.c == 0 || a.f == b.f); }
};

// det(p, q) = Im(conj(p) q), the signed area of the parallelogram on p, q.
inline KappaReal exact_det(const QExt& p, const QExt& q)
{
    QExt z = p.conj() * q;
    return {z.im_coeff(), z.f};
}

inline Rational exact_dot(const QExt& p, const QExt& q) { return (p.conj() * q).re(); }

} // namespace hol
