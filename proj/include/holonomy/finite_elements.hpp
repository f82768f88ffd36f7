#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "config.hpp"

namespace hol {

// One-line permutation of {0..d-1}; p[i] is the image of i. Composition applies the right factor first.
struct Perm {
    std::vector<int> p;

    Perm() = default;
    explicit Perm(int d) : p(d) { std::iota(p.begin(), p.end(), 0); }
    explicit Perm(std::vector<int> v) : p(std::move(v))
    {
        std::vector<char> seen(p.size(), 0);
        for (int x : p) {
            if (x < 0 || x >= int(p.size()) || seen[x]) throw InputError("not a permutation");
            seen[x] = 1;
        }
    }

    int degree() const { return int(p.size()); }
    int operator()(int i) const { return p[i]; }

    static Perm cycle(int d, const std::vector<int>& pts)
    {
        Perm r(d);
        for (std::size_t i = 0; i < pts.size(); ++i) r.p[pts[i]] = pts[(i + 1) % pts.size()];
        return r;
    }

    std::vector<std::vector<int>> cycles() const
    {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(p.size(), 0);
        for (int i = 0; i < degree(); ++i) {
            if (seen[i] || p[i] == i) continue;
            std::vector<int> c;
            for (int j = i; !seen[j]; j = p[j]) { seen[j] = 1; c.push_back(j); }
            out.push_back(std::move(c));
        }
        return out;
    }

    std::vector<int> support() const
    {
        std::vector<int> s;
        for (int i = 0; i < degree(); ++i)
            if (p[i] != i) s.push_back(i);
        return s;
    }

    // Cycle notation with points numbered from 1.
    std::string str() const
    {
        auto cs = cycles();
        if (cs.empty()) return "()";
        std::string s;
        for (auto& c : cs) {
            s += "(";
            for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i] + 1);
            s += ")";
        }
        return s;
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.p == b.p; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.p < b.p; }
};

inline Perm compose(const Perm& a, const Perm& b)
{
    if (a.degree() != b.degree()) throw DomainError("permutations of different degree");
    Perm r(a.degree());
    for (int i = 0; i < a.degree(); ++i) r.p[i] = a.p[b.p[i]];
    return r;
}

inline Perm invert(const Perm& a)
{
    Perm r(a.degree());
    for (int i = 0; i < a.degree(); ++i) r.p[a.p[i]] = i;
    return r;
}

inline bool same(const Perm& a, const Perm& b) { return a == b; }
inline bool is_identity(const Perm& a) { return a == Perm(a.degree()); }

inline Perm conjugate(const Perm& g, const Perm& x) { return compose(compose(g, x), invert(g)); }

// k in Z/n.
struct CyclicElem {
    int k = 0, n = 1;
    CyclicElem() = default;
    CyclicElem(int k_, int n_) : k(((k_ % n_) + n_) % n_), n(n_)
    {
        if (n_ < 1) throw InputError("cyclic order must be positive");
    }
    friend bool operator==(const CyclicElem& a, const CyclicElem& b) { return a.k == b.k && a.n == b.n; }
};

inline CyclicElem compose(const CyclicElem& a, const CyclicElem& b)
{
    if (a.n != b.n) throw DomainError("cyclic elements of different order");
    return {a.k + b.k, a.n};
}
inline CyclicElem invert(const CyclicElem& a) { return {-a.k, a.n}; }
inline bool same(const CyclicElem& a, const CyclicElem& b) { return a == b; }
inline bool is_identity(const CyclicElem& a) { return a.k == 0; }

// r^rot s^flip in the dihedral group of order 2n, with s r s = r^-1.
struct DihedralElem {
    int rot = 0, flip = 0, n = 1;
    DihedralElem() = default;
    DihedralElem(int r, int f, int n_) : rot(((r % n_) + n_) % n_), flip(f & 1), n(n_)
    {
        if (n_ < 1) throw InputError("dihedral order must be positive");
    }
    friend bool operator==(const DihedralElem& a, const DihedralElem& b)
    {
        return a.rot == b.rot && a.flip == b.flip && a.n == b.n;
    }
};

inline DihedralElem compose(const DihedralElem& a, const DihedralElem& b)
{
    if (a.n != b.n) throw DomainError("dihedral elements of different order");
    return {a.rot + (a.flip ? -b.rot : b.rot), a.flip ^ b.flip, a.n};
}
inline DihedralElem invert(const DihedralElem& a) { return {a.flip ? a.rot : -a.rot, a.flip, a.n}; }
inline bool same(const DihedralElem& a, const DihedralElem& b) { return a == b; }
inline bool is_identity(const DihedralElem& a) { return a.rot == 0 && a.flip == 0; }

} // namespace hol
