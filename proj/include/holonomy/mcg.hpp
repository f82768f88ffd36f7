#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "surface_rep.hpp"

namespace hol {

// Generators of the mapping class group acting on (a_1, b_1, ..., a_g, b_g).
// Handle indices are 1-based. CrossTwist(i) couples handles i and i+1.
struct MCGMove {
    enum class Kind { TwistA, TwistB, CrossTwist, SwapHandles, InvertHandle };
    Kind kind = Kind::TwistA;
    int i = 1, j = 0;
    bool inverse = false;

    static MCGMove twist_a(int i, bool inv = false) { return {Kind::TwistA, i, 0, inv}; }
    static MCGMove twist_b(int i, bool inv = false) { return {Kind::TwistB, i, 0, inv}; }
    static MCGMove cross_twist(int i, bool inv = false) { return {Kind::CrossTwist, i, 0, inv}; }
    static MCGMove swap_handles(int i, int j, bool inv = false) { return {Kind::SwapHandles, i, j, inv}; }
    static MCGMove invert_handle(int i, bool inv = false) { return {Kind::InvertHandle, i, 0, inv}; }

    MCGMove inverted() const
    {
        MCGMove m = *this;
        m.inverse = !inverse;
        return m;
    }

    std::string str() const
    {
        std::string s;
        switch (kind) {
        case Kind::TwistA: s = "TwistA(" + std::to_string(i) + ")"; break;
        case Kind::TwistB: s = "TwistB(" + std::to_string(i) + ")"; break;
        case Kind::CrossTwist: s = "CrossTwist(" + std::to_string(i) + ")"; break;
        case Kind::SwapHandles: s = "SwapHandles(" + std::to_string(i) + "," + std::to_string(j) + ")"; break;
        case Kind::InvertHandle: s = "InvertHandle(" + std::to_string(i) + ")"; break;
        }
        return inverse ? s + "^-1" : s;
    }

    static MCGMove parse(const std::string& text)
    {
        std::string t = text;
        bool inv = false;
        if (t.size() > 3 && t.substr(t.size() - 3) == "^-1") { inv = true; t.resize(t.size() - 3); }
        auto open = t.find('('), close = t.find(')');
        if (open == std::string::npos || close == std::string::npos) throw InputError("bad move: " + text);
        std::string name = t.substr(0, open), args = t.substr(open + 1, close - open - 1);
        int a = 0, b = 0;
        auto comma = args.find(',');
        try {
            a = std::stoi(args.substr(0, comma));
            if (comma != std::string::npos) b = std::stoi(args.substr(comma + 1));
        } catch (const std::exception&) {
            throw InputError("bad move arguments: " + text);
        }
        if (name == "TwistA") return twist_a(a, inv);
        if (name == "TwistB") return twist_b(a, inv);
        if (name == "CrossTwist") return cross_twist(a, inv);
        if (name == "SwapHandles") return swap_handles(a, b, inv);
        if (name == "InvertHandle") return invert_handle(a, inv);
        throw InputError("unknown move: " + text);
    }

    friend bool operator==(const MCGMove& x, const MCGMove& y)
    {
        return x.kind == y.kind && x.i == y.i && x.j == y.j && x.inverse == y.inverse;
    }
};

using MoveWord = std::vector<MCGMove>;

// Group operations through the free functions compose / invert.
struct FreeOps {
    template <class E>
    E mul(const E& x, const E& y) const { return compose(x, y); }
    template <class E>
    E inv(const E& x) const { return invert(x); }
};

namespace detail {

template <class T, class Ops>
void swap_adjacent(std::vector<T>& im, int h, bool inverse, const Ops& ops)
{
    // Handles h and h+1 (0-based).
    T A1 = im[2 * h], B1 = im[2 * h + 1], A2 = im[2 * h + 2], B2 = im[2 * h + 3];
    auto comm = [&](const T& x, const T& y) { return ops.mul(ops.mul(x, y), ops.mul(ops.inv(x), ops.inv(y))); };
    if (!inverse) {
        T c = comm(A1, B1), ci = ops.inv(c);
        im[2 * h] = ops.mul(ops.mul(c, A2), ci);
        im[2 * h + 1] = ops.mul(ops.mul(c, B2), ci);
        im[2 * h + 2] = A1;
        im[2 * h + 3] = B1;
    } else {
        T c = comm(A2, B2), ci = ops.inv(c);
        im[2 * h] = A2;
        im[2 * h + 1] = B2;
        im[2 * h + 2] = ops.mul(ops.mul(ci, A1), c);
        im[2 * h + 3] = ops.mul(ops.mul(ci, B1), c);
    }
}

} // namespace detail

inline void check_move(const MCGMove& m, int g)
{
    auto bad = [&] { throw DomainError("move " + m.str() + " out of range for genus " + std::to_string(g)); };
    if (m.i < 1 || m.i > g) bad();
    if (m.kind == MCGMove::Kind::CrossTwist && m.i + 1 > g) bad();
    if (m.kind == MCGMove::Kind::SwapHandles && (m.j < 1 || m.j > g || m.j == m.i)) bad();
}

template <class T, class Ops = FreeOps>
void apply_move_inplace(std::vector<T>& im, const MCGMove& m, const Ops& ops = Ops{})
{
    int g = int(im.size()) / 2;
    check_move(m, g);
    int h = m.i - 1;
    T& a = im[2 * h];
    T& b = im[2 * h + 1];
    switch (m.kind) {
    case MCGMove::Kind::TwistA:
        b = m.inverse ? ops.mul(b, ops.inv(a)) : ops.mul(b, a);
        break;
    case MCGMove::Kind::TwistB:
        a = m.inverse ? ops.mul(a, ops.inv(b)) : ops.mul(a, b);
        break;
    case MCGMove::Kind::InvertHandle: {
        T A = a, B = b;
        if (!m.inverse) {
            a = ops.mul(ops.mul(B, ops.inv(A)), ops.inv(B));
            b = ops.mul(ops.mul(ops.mul(B, A), ops.mul(ops.inv(B), ops.inv(A))), ops.inv(B));
        } else {
            a = ops.mul(ops.mul(ops.mul(A, B), ops.mul(ops.inv(A), ops.inv(B))), ops.inv(A));
            b = ops.mul(ops.mul(A, ops.inv(B)), ops.inv(A));
        }
        break;
    }
    case MCGMove::Kind::CrossTwist: {
        T& a2 = im[2 * h + 2];
        T& b2 = im[2 * h + 3];
        T A1 = a, B1 = b, A2 = a2, B2 = b2;
        if (!m.inverse) {
            T X = ops.mul(A1, A2), Xi = ops.inv(X);
            a = ops.mul(ops.mul(ops.inv(A2), A1), A2);
            b = ops.mul(ops.mul(ops.mul(Xi, A2), ops.mul(A1, B1)), X);
            a2 = ops.mul(ops.mul(Xi, A2), X);
            b2 = ops.mul(B2, ops.mul(A1, A2));
        } else {
            T X = ops.mul(A1, A2), Xi = ops.inv(X);
            T oa1 = ops.mul(ops.mul(X, A1), Xi);
            T oa2 = ops.mul(ops.mul(X, A2), Xi);
            a = oa1;
            a2 = oa2;
            b = ops.mul(ops.inv(ops.mul(oa2, oa1)), ops.mul(ops.mul(X, B1), Xi));
            b2 = ops.mul(B2, Xi);
        }
        break;
    }
    case MCGMove::Kind::SwapHandles: {
        int lo = std::min(m.i, m.j) - 1, hi = std::max(m.i, m.j) - 1;
        // Exchange handles lo and hi through adjacent swaps.
        std::vector<std::pair<int, bool>> steps;
        for (int k = lo; k < hi; ++k) steps.push_back({k, false});
        for (int k = hi - 2; k >= lo; --k) steps.push_back({k, false});
        if (!m.inverse) {
            for (auto [k, inv] : steps) detail::swap_adjacent(im, k, inv, ops);
        } else {
            for (auto it = steps.rbegin(); it != steps.rend(); ++it) detail::swap_adjacent(im, it->first, true, ops);
        }
        break;
    }
    }
}

template <class E>
SurfaceRep<E> apply_move(const SurfaceRep<E>& rep, const MCGMove& m)
{
    std::vector<E> im = rep.images();
    apply_move_inplace(im, m);
    return SurfaceRep<E>(rep.genus(), std::move(im), rep.tag());
}

template <class E>
SurfaceRep<E> apply_word(const SurfaceRep<E>& rep, const MoveWord& w)
{
    std::vector<E> im = rep.images();
    for (auto& m : w) apply_move_inplace(im, m);
    return SurfaceRep<E>(rep.genus(), std::move(im), rep.tag());
}

inline MoveWord inverse_word(const MoveWord& w)
{
    MoveWord r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverted());
    return r;
}

// Every generator and its inverse, for genus g.
inline MoveWord all_moves(int g, bool with_inverses = false)
{
    MoveWord out;
    for (int i = 1; i <= g; ++i) {
        out.push_back(MCGMove::twist_a(i));
        out.push_back(MCGMove::twist_b(i));
        out.push_back(MCGMove::invert_handle(i));
        if (i < g) out.push_back(MCGMove::cross_twist(i));
        for (int j = i + 1; j <= g; ++j) out.push_back(MCGMove::swap_handles(i, j));
    }
    if (with_inverses) {
        std::size_t n = out.size();
        for (std::size_t k = 0; k < n; ++k) out.push_back(out[k].inverted());
    }
    return out;
}

// ---- Abelian action ----

using IntMatrix = std::vector<std::vector<long long>>;

inline IntMatrix identity_matrix(int n)
{
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y)
{
    int n = int(x.size());
    IntMatrix r(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (x[i][k])
                for (int j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
    return r;
}

// Integer matrix of the induced action on H_1 = Z^{2g}: v' = M v.
inline IntMatrix symplectic_matrix(const MCGMove& m, int g)
{
    check_move(m, g);
    int n = 2 * g;
    // Compute through the abelian group Z^{2g}: images of basis vectors under the move.
    struct VecOps {
        std::vector<long long> mul(const std::vector<long long>& x, const std::vector<long long>& y) const
        {
            std::vector<long long> r(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) r[k] = x[k] + y[k];
            return r;
        }
        std::vector<long long> inv(const std::vector<long long>& x) const
        {
            std::vector<long long> r(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) r[k] = -x[k];
            return r;
        }
    };
    // Column c of the matrix: the action on a tuple whose only nonzero coordinate is c.
    IntMatrix M(n, std::vector<long long>(n, 0));
    for (int c = 0; c < n; ++c) {
        std::vector<std::vector<long long>> im(n, std::vector<long long>(1, 0));
        im[c][0] = 1;
        apply_move_inplace(im, m, VecOps{});
        for (int r = 0; r < n; ++r) M[r][c] = im[r][0];
    }
    return M;
}

inline IntMatrix symplectic_matrix(const MoveWord& w, int g)
{
    IntMatrix M = identity_matrix(2 * g);
    for (auto& m : w) M = mat_mul(symplectic_matrix(m, g), M);
    return M;
}

inline bool is_symplectic(const IntMatrix& M)
{
    int n = int(M.size());
    auto J = [&](int r, int c) -> long long {
        if (r / 2 != c / 2) return 0;
        if (r % 2 == 0 && c % 2 == 1) return 1;
        if (r % 2 == 1 && c % 2 == 0) return -1;
        return 0;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long s = 0;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) s += M[k][i] * J(k, l) * M[l][j];
            if (s != J(i, j)) return false;
        }
    return true;
}

// Apply the symplectic matrix of a move word to an abelian (cyclic) representation.
inline SurfaceRep<CyclicElem> sp_action_abelian(const SurfaceRep<CyclicElem>& rep, const MoveWord& w)
{
    int g = rep.genus(), n = rep.tag().param;
    IntMatrix M = symplectic_matrix(w, g);
    std::vector<CyclicElem> out;
    for (int r = 0; r < 2 * g; ++r) {
        long long s = 0;
        for (int c = 0; c < 2 * g; ++c) s = (s + M[r][c] % n * rep.images()[c].k) % n;
        out.emplace_back(int(s), n);
    }
    return SurfaceRep<CyclicElem>(g, std::move(out), rep.tag());
}

template <class E>
SurfaceRep<E> sp_action_abelian(const SurfaceRep<E>&, const MoveWord&)
{
    throw DomainError("symplectic action needs an abelian target");
}

struct CyclicCanonical {
    SurfaceRep<CyclicElem> rep;
    MoveWord moves;
    int gcd = 0;
};

namespace detail {

// Mutable exponent vector with a move log; every change goes through a move.
struct ExponentTracker {
    std::vector<long long> v;
    long long n;
    MoveWord log;

    void apply(const MCGMove& m)
    {
        struct ModOps {
            long long n;
            long long mul(long long x, long long y) const { return ((x + y) % n + n) % n; }
            long long inv(long long x) const { return ((-x) % n + n) % n; }
        };
        apply_move_inplace(v, m, ModOps{n});
        log.push_back(m);
    }
    void repeat(const MCGMove& m, long long times)
    {
        for (long long t = 0; t < times; ++t) apply(m);
    }
    long long a(int h) const { return v[2 * h]; }
    long long b(int h) const { return v[2 * h + 1]; }

    // Reduce handle h (0-based) to (gcd(a, b, n), 0).
    void reduce_handle(int h)
    {
        long long x = a(h), y = b(h);
        if (x == 0 && y == 0) return;
        if (x == 0) x = n;  // representative n of 0 folds n into the gcd
        int i = h + 1;
        // Integer Euclid on representatives; each subtraction is a twist.
        while (true) {
            if (y % n == 0) {
                if (n % x == 0) return;
                y = n;
            }
            long long q = x / y;
            if (q) { repeat(MCGMove::twist_b(i, true), q); x -= q * y; }
            if (x == 0) {
                apply(MCGMove::twist_b(i));
                apply(MCGMove::twist_a(i, true));
                x = y;
                y = 0;
                continue;
            }
            q = y / x;
            if (q) { repeat(MCGMove::twist_a(i, true), q); y -= q * x; }
        }
    }

    // T: b_h += a_{h+1}, b_{h+1} += a_h on the abelianization.
    void transfer(int h, bool inv)
    {
        int i = h + 1;
        if (!inv) {
            apply(MCGMove::cross_twist(i));
            apply(MCGMove::twist_a(i, true));
            apply(MCGMove::twist_a(i + 1, true));
        } else {
            apply(MCGMove::twist_a(i + 1));
            apply(MCGMove::twist_a(i));
            apply(MCGMove::cross_twist(i, true));
        }
    }

    // a_{h+1} -= a_h with all b's zero before and after.
    void sub_lower_from_upper(int h)
    {
        transfer(h, false);
        apply(MCGMove::twist_b(h + 2, true));
        transfer(h, true);
        apply(MCGMove::twist_a(h + 1, true));
    }

    // a_h -= a_{h+1} with all b's zero before and after.
    void sub_upper_from_lower(int h)
    {
        transfer(h, false);
        apply(MCGMove::twist_b(h + 1, true));
        transfer(h, true);
        apply(MCGMove::twist_a(h + 2, true));
    }
};

} // namespace detail

// Sp-moves bringing an abelian cyclic representation to (d, 0, ..., 0), d = gcd of all exponents and n.
inline CyclicCanonical canonical_form_cyclic(const SurfaceRep<CyclicElem>& rep)
{
    int g = rep.genus();
    long long n = rep.tag().param;
    detail::ExponentTracker t;
    t.n = n;
    for (auto& x : rep.images()) t.v.push_back(x.k);
    if (g > 0) {
        for (int h = 0; h < g; ++h) t.reduce_handle(h);
        for (int h = g - 2; h >= 0; --h) {
            // Euclid between a_h and a_{h+1}; b's stay zero.
            long long x = t.a(h), y = t.a(h + 1);
            while (y != 0 && x != 0) {
                if (x >= y) { long long q = x / y; for (long long k = 0; k < q; ++k) t.sub_upper_from_lower(h); x -= q * y; }
                else { long long q = y / x; for (long long k = 0; k < q; ++k) t.sub_lower_from_upper(h); y -= q * x; }
            }
            if (x == 0 && y != 0) {
                // Move a_{h+1} down: a_h += a_{h+1} then a_{h+1} -= a_h.
                t.transfer(h, false);
                t.apply(MCGMove::twist_b(h + 1));
                t.transfer(h, true);
                t.apply(MCGMove::twist_a(h + 2));
                t.sub_lower_from_upper(h);
            }
            t.reduce_handle(h);
        }
    }
    std::vector<CyclicElem> out;
    for (auto k : t.v) out.emplace_back(int(k), int(n));
    long long d = n;
    for (auto k : t.v) d = std::gcd(d, k);
    return {SurfaceRep<CyclicElem>(g, std::move(out), rep.tag()), std::move(t.log), int(d)};
}

} // namespace hol
