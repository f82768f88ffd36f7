#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "finite_elements.hpp"

namespace hol {

using SU2 = std::array<std::complex<double>, 4>;

inline SU2 su2_mul(const SU2& x, const SU2& y)
{
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

inline SU2 su2_inv(const SU2& x) { return {x[3], -x[1], -x[2], x[0]}; }

inline SU2 su2_identity() { return {1.0, 0.0, 0.0, 1.0}; }

namespace detail {

// Key of a matrix up to sign, rounded to 6 decimals.
inline std::vector<long long> su2_key(const SU2& m)
{
    int lead = 0;
    for (int k = 0; k < 4; ++k)
        if (std::abs(m[k]) > std::abs(m[lead]) + 1e-7) lead = k;
    double s = (m[lead].real() < -1e-7 || (std::abs(m[lead].real()) <= 1e-7 && m[lead].imag() < 0)) ? -1.0 : 1.0;
    std::vector<long long> key;
    for (auto& z : m) {
        key.push_back(std::llround(s * z.real() * 1e6));
        key.push_back(std::llround(s * z.imag() * 1e6));
    }
    return key;
}

inline bool su2_projective_identity(const SU2& m)
{
    return std::abs(m[1]) < 1e-6 && std::abs(m[2]) < 1e-6 && std::abs(m[0] - m[3]) < 1e-6 &&
           std::abs(std::abs(m[0].real()) - 1.0) < 1e-6;
}

inline int su2_projective_order(const SU2& m)
{
    SU2 p = m;
    for (int k = 1; k <= 1000; ++k) {
        if (su2_projective_identity(p)) return k;
        p = su2_mul(p, m);
    }
    return 0;
}

inline std::vector<SU2> su2_closure(const std::vector<SU2>& gens, std::size_t limit)
{
    std::vector<SU2> out{su2_identity()};
    std::map<std::vector<long long>, int> seen{{su2_key(out[0]), 0}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (auto& g : gens) {
            SU2 x = su2_mul(out[i], g);
            auto key = su2_key(x);
            if (seen.count(key)) continue;
            seen[key] = int(out.size());
            out.push_back(x);
            if (out.size() > limit) return out;
        }
    }
    return out;
}

} // namespace detail

// A finite group given by permutations, with multiplication and inverse tables.
// Elements are sorted; index 0 is the identity. Each element carries a lift to SU(2)
// through an embedding into PSU(2) = SO(3), used for the lifting obstruction.
class FiniteGroup {
public:
    FiniteGroup(std::string name, const std::vector<Perm>& gens, const std::vector<SU2>& matrix_gens)
        : name_(std::move(name))
    {
        if (gens.empty()) throw DomainError("group needs generators");
        int d = gens[0].degree();
        std::map<Perm, int> seen;
        std::vector<Perm> els{Perm(d)};
        seen[els[0]] = 0;
        for (std::size_t i = 0; i < els.size(); ++i)
            for (auto& g : gens) {
                Perm x = compose(els[i], g);
                if (seen.count(x)) continue;
                seen[x] = int(els.size());
                els.push_back(x);
            }
        std::sort(els.begin(), els.end());  // identity permutation sorts first
        elems_ = els;
        for (int i = 0; i < order(); ++i) index_[elems_[i]] = i;
        int n = order();
        mul_.assign(n, std::vector<int>(n));
        inv_.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) mul_[i][j] = index_.at(compose(elems_[i], elems_[j]));
            inv_[i] = index_.at(invert(elems_[i]));
        }
        for (auto& g : gens) gens_.push_back(index_.at(g));
        build_lifts(matrix_gens);
    }

    const std::string& name() const { return name_; }
    int order() const { return int(elems_.size()); }
    const Perm& element(int i) const { return elems_[i]; }
    int index_of(const Perm& p) const
    {
        auto it = index_.find(p);
        if (it == index_.end()) throw DomainError("permutation not in " + name_);
        return it->second;
    }
    int mul(int i, int j) const { return mul_[i][j]; }
    int inv(int i) const { return inv_[i]; }
    int conj(int g, int x) const { return mul_[mul_[g][x]][inv_[g]]; }
    const SU2& lift(int i) const { return lift_[i]; }
    const std::vector<int>& generators() const { return gens_; }

    int element_order(int i) const
    {
        int k = 1;
        for (int p = i; p != 0; p = mul_[p][i]) ++k;
        return k;
    }

    // Sorted element indices of the subgroup generated by xs.
    std::vector<int> closure(const std::vector<int>& xs) const
    {
        std::vector<char> in(order(), 0);
        std::vector<int> out{0};
        in[0] = 1;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (int g : xs) {
                int y = mul_[out[i]][g];
                if (!in[y]) { in[y] = 1; out.push_back(y); }
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<int> derived_subgroup() const
    {
        std::vector<int> comms;
        for (int i = 0; i < order(); ++i)
            for (int j = 0; j < order(); ++j) comms.push_back(mul_[mul_[i][j]][mul_[inv_[i]][inv_[j]]]);
        std::sort(comms.begin(), comms.end());
        comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
        return closure(comms);
    }

    // Smallest conjugate of a sorted subgroup, as a key for conjugacy classes of subgroups.
    std::vector<int> subgroup_class_key(const std::vector<int>& H) const
    {
        std::vector<int> best = H;
        for (int g = 0; g < order(); ++g) {
            std::vector<int> c;
            for (int h : H) c.push_back(conj(g, h));
            std::sort(c.begin(), c.end());
            best = std::min(best, c);
        }
        return best;
    }

    // Sign of the lifted relator: 0 when the tuple lifts to SU(2), 1 otherwise.
    int sw(const std::vector<int>& tuple) const
    {
        SU2 p = su2_identity();
        for (std::size_t i = 0; i + 1 < tuple.size(); i += 2) {
            const SU2& a = lift_[tuple[i]];
            const SU2& b = lift_[tuple[i + 1]];
            p = su2_mul(p, su2_mul(su2_mul(a, b), su2_mul(su2_inv(a), su2_inv(b))));
        }
        return p[0].real() > 0 ? 0 : 1;
    }

    static FiniteGroup cyclic(int n);
    static FiniteGroup dihedral(int n);
    static FiniteGroup alternating4();
    static FiniteGroup symmetric4();
    static FiniteGroup alternating5();
    static FiniteGroup parse(const std::string& s);

private:
    // Find a homomorphism from the generators onto the matrix group and read off lifts.
    void build_lifts(const std::vector<SU2>& matrix_gens)
    {
        int n = order();
        auto mats = detail::su2_closure(matrix_gens, std::size_t(n));
        if (int(mats.size()) != n) throw std::logic_error("matrix group of wrong order for " + name_);
        std::map<std::vector<long long>, int> mat_index;
        for (int i = 0; i < n; ++i) mat_index[detail::su2_key(mats[i])] = i;
        std::vector<std::vector<int>> mtab(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mtab[i][j] = mat_index.at(detail::su2_key(su2_mul(mats[i], mats[j])));
        std::vector<int> morder(n);
        for (int i = 0; i < n; ++i) morder[i] = detail::su2_projective_order(mats[i]);

        const auto& gens = gens_;
        std::vector<int> choice(gens.size(), 0);
        std::vector<int> phi;
        auto attempt = [&]() -> bool {
            phi.assign(n, -1);
            phi[0] = 0;
            std::queue<int> q;
            q.push(0);
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                for (std::size_t k = 0; k < gens.size(); ++k) {
                    int y = mul_[x][gens[k]];
                    int my = mtab[phi[x]][choice[k]];
                    if (phi[y] == -1) { phi[y] = my; q.push(y); }
                    else if (phi[y] != my) return false;
                }
            }
            std::vector<char> hit(n, 0);
            for (int v : phi) {
                if (v < 0 || hit[v]) return false;
                hit[v] = 1;
            }
            return true;
        };
        std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
            if (k == gens.size()) return attempt();
            for (int m = 0; m < n; ++m) {
                if (morder[m] != element_order(gens[k])) continue;
                choice[k] = m;
                if (search(k + 1)) return true;
            }
            return false;
        };
        if (!search(0)) throw std::logic_error("no embedding into PSU(2) found for " + name_);
        lift_.resize(n);
        for (int i = 0; i < n; ++i) lift_[i] = mats[phi[i]];
    }

    std::string name_;
    std::vector<Perm> elems_;
    std::map<Perm, int> index_;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<int> gens_;
    std::vector<SU2> lift_;
};

namespace detail {

inline SU2 su2_diag_angle(double t) { return {std::polar(1.0, t), 0.0, 0.0, std::polar(1.0, -t)}; }

inline SU2 su2_quaternion(double w, double x, double y, double z)
{
    // w + x i + y j + z k with i = diag(i,-i), j = [[0,1],[-1,0]], k = [[0,i],[i,0]].
    using C = std::complex<double>;
    return {C(w, x), C(y, z), C(-y, z), C(w, -x)};
}

inline SU2 su2_flip() { return {0.0, std::complex<double>(0, 1), std::complex<double>(0, 1), 0.0}; }

} // namespace detail

inline FiniteGroup FiniteGroup::cyclic(int n)
{
    if (n < 1) throw InputError("cyclic group order must be positive");
    std::vector<int> pts(n);
    std::iota(pts.begin(), pts.end(), 0);
    Perm r = n == 1 ? Perm(1) : Perm::cycle(n, pts);
    return FiniteGroup("Z" + std::to_string(n), {r}, {detail::su2_diag_angle(std::numbers::pi / n)});
}

inline std::pair<Perm, Perm> dihedral_generators(int n)
{
    if (n < 2) throw InputError("dihedral group needs n >= 2");
    if (n == 2) return {Perm(std::vector<int>{1, 0, 3, 2}), Perm(std::vector<int>{2, 3, 0, 1})};
    std::vector<int> r(n), s(n);
    for (int i = 0; i < n; ++i) {
        r[i] = (i + 1) % n;
        s[i] = (n - i) % n;
    }
    return {Perm(r), Perm(s)};
}

inline FiniteGroup FiniteGroup::dihedral(int n)
{
    auto [r, s] = dihedral_generators(n);
    return FiniteGroup("D" + std::to_string(n), {r, s}, {detail::su2_diag_angle(std::numbers::pi / n), detail::su2_flip()});
}

inline FiniteGroup FiniteGroup::alternating4()
{
    Perm x = Perm::cycle(4, {0, 1, 2});
    Perm y = Perm(std::vector<int>{1, 0, 3, 2});
    return FiniteGroup("A4", {x, y}, {detail::su2_quaternion(0.5, 0.5, 0.5, 0.5), detail::su2_quaternion(0, 1, 0, 0)});
}

inline FiniteGroup FiniteGroup::symmetric4()
{
    Perm x = Perm::cycle(4, {0, 1, 2});
    Perm y = Perm::cycle(4, {0, 1, 2, 3});
    double h = std::sqrt(0.5);
    return FiniteGroup("S4", {x, y}, {detail::su2_quaternion(0.5, 0.5, 0.5, 0.5), detail::su2_quaternion(h, h, 0, 0)});
}

inline FiniteGroup FiniteGroup::alternating5()
{
    Perm x = Perm::cycle(5, {0, 1, 2});
    Perm y = Perm::cycle(5, {0, 1, 2, 3, 4});
    double phi = (1 + std::sqrt(5.0)) / 2;
    return FiniteGroup("A5", {x, y},
                       {detail::su2_quaternion(0.5, 0.5, 0.5, 0.5), detail::su2_quaternion(phi / 2, 0.5 / phi, 0.5, 0)});
}

inline FiniteGroup FiniteGroup::parse(const std::string& s)
{
    if (s == "A4") return alternating4();
    if (s == "S4") return symmetric4();
    if (s == "A5") return alternating5();
    if (s.size() >= 2 && (s[0] == 'Z' || s[0] == 'D')) {
        int n = 0;
        try {
            n = std::stoi(s.substr(1));
        } catch (const std::exception&) {
            throw InputError("bad group name: " + s);
        }
        return s[0] == 'Z' ? cyclic(n) : dihedral(n);
    }
    throw InputError("unknown group: " + s + " (expected Zn, Dn, A4, S4 or A5)");
}

// Operations on element indices, for moves on tuples of group elements.
struct TableOps {
    const FiniteGroup* G;
    int mul(int x, int y) const { return G->mul(x, y); }
    int inv(int x) const { return G->inv(x); }
};

// Index of r^rot s^flip in FiniteGroup::dihedral(n).
inline int dihedral_index(const FiniteGroup& G, const DihedralElem& e)
{
    auto [r, s] = dihedral_generators(e.n);
    Perm p(r.degree());
    for (int k = 0; k < e.rot; ++k) p = compose(p, r);
    if (e.flip) p = compose(p, s);
    return G.index_of(p);
}

inline DihedralElem dihedral_element(const FiniteGroup& G, int n, int idx)
{
    for (int rot = 0; rot < n; ++rot)
        for (int f = 0; f < 2; ++f)
            if (dihedral_index(G, DihedralElem(rot, f, n)) == idx) return DihedralElem(rot, f, n);
    throw DomainError("index outside the dihedral group");
}

} // namespace hol
