#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "config.hpp"
#include "exact_scalar.hpp"

namespace hol {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Cplx> {
    static constexpr bool exact = false;
    using Real = double;

    static Cplx from_int(long v) { return Cplx(double(v), 0.0); }
    static Cplx to_complex(const Cplx& z) { return z; }
    static Cplx conj(const Cplx& z) { return std::conj(z); }
    static bool is_zero(const Cplx& z, double scale = 1.0) { return std::abs(z) <= default_tolerance() * scale; }
    static bool equal(const Cplx& a, const Cplx& b, double scale = 1.0) { return is_zero(a - b, scale); }
    static double magnitude(const Cplx& z) { return std::abs(z); }
    static double det(const Cplx& p, const Cplx& q) { return (std::conj(p) * q).imag(); }
    static std::string str(const Cplx& z)
    {
        return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
    }
};

template <>
struct ScalarTraits<QExt> {
    static constexpr bool exact = true;
    using Real = KappaReal;

    static QExt from_int(long v) { return QExt(v); }
    static Cplx to_complex(const QExt& z) { return z.to_complex(); }
    static QExt conj(const QExt& z) { return z.conj(); }
    static bool is_zero(const QExt& z, double = 1.0) { return z.is_zero(); }
    static bool equal(const QExt& a, const QExt& b, double = 1.0) { return a == b; }
    static double magnitude(const QExt& z) { return std::sqrt(to_double(z.norm())); }
    static KappaReal det(const QExt& p, const QExt& q) { return exact_det(p, q); }
    static std::string str(const QExt& z) { return z.str(); }
};

inline double real_value(double v) { return v; }
inline double real_value(const KappaReal& v) { return v.value(); }

inline int real_sign(double v, double scale = 1.0)
{
    double t = default_tolerance() * std::max(1.0, scale);
    return v > t ? 1 : (v < -t ? -1 : 0);
}
inline int real_sign(const KappaReal& v, double = 1.0) { return v.sign(); }

inline Cplx root_of_unity(int k, int n) { return std::polar(1.0, 2 * kPi * k / n); }

} // namespace hol
