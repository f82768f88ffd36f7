#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "branch_data.hpp"
#include "finite_elements.hpp"

namespace hol {

// Permutations alpha_1..alpha_k of {0..d-1}; perm i is a single (orders[i]+1)-cycle.
struct PermTuple {
    int degree = 0;
    std::vector<Perm> perms;
    std::vector<int> orders;

    BranchData branch_data() const { return BranchData(orders); }
};

struct CertResult {
    int genus = 0;
};

namespace detail {

[[noreturn]] inline void induction_bug(const std::string& what)
{
    throw std::logic_error("internal error in Hurwitz construction: " + what);
}

// gamma x gamma^-1 as a relabelling of points.
inline Perm relabel(const Perm& x, const Perm& gamma)
{
    Perm r(x.degree());
    for (int i = 0; i < x.degree(); ++i) r.p[gamma(i)] = gamma(x(i));
    return r;
}

inline Perm extend(const Perm& x, int d)
{
    Perm r(d);
    for (int i = 0; i < x.degree(); ++i) r.p[i] = x(i);
    return r;
}

inline Perm transposition(int d, int a, int b)
{
    Perm r(d);
    std::swap(r.p[a], r.p[b]);
    return r;
}

inline Perm full_cycle(int d)
{
    std::vector<int> pts(d);
    std::iota(pts.begin(), pts.end(), 0);
    return Perm::cycle(d, pts);
}

// Hurwitz move (x, y) -> (y, y^-1 x y); keeps the product and the cycle types.
inline void braid_swap(std::vector<Perm>& v, std::size_t i)
{
    Perm x = v[i], y = v[i + 1];
    v[i] = y;
    v[i + 1] = compose(compose(invert(y), x), y);
}

// The single nontrivial cycle of x, starting at its smallest point.
inline std::vector<int> only_cycle(const Perm& x)
{
    auto cs = x.cycles();
    if (cs.size() != 1) induction_bug("expected a single cycle");
    return cs[0];
}

// gamma with gamma c gamma^-1 = s for single cycles c, s of equal length; remaining points in increasing order.
inline Perm cycle_conjugator(const Perm& c, const Perm& s)
{
    auto cc = only_cycle(c), sc = only_cycle(s);
    if (cc.size() != sc.size()) induction_bug("cycle lengths differ in merge step");
    int d = c.degree();
    std::vector<int> g(d, -1);
    std::vector<char> used(d, 0);
    for (std::size_t j = 0; j < cc.size(); ++j) {
        g[cc[j]] = sc[j];
        used[sc[j]] = 1;
    }
    int next = 0;
    for (int i = 0; i < d; ++i) {
        if (g[i] >= 0) continue;
        while (used[next]) ++next;
        g[i] = next;
        used[next] = 1;
    }
    return Perm(g);
}

inline std::vector<Perm> solve(int d, const std::vector<int>& n);

inline std::vector<Perm> solve3(int d, const std::vector<int>& n)
{
    if (n[0] == d - 1 && n[1] == d - 1 && n[2] == d - 1) {
        if (d % 2 == 0) induction_bug("three full cycles in even degree");
        Perm c = full_cycle(d);
        return {c, c, invert(compose(c, c))};
    }
    if (d == 3 && n == std::vector<int>{1, 1, 2}) {
        Perm a = Perm::cycle(3, {0, 1}), b = Perm::cycle(3, {1, 2});
        return {a, b, invert(compose(a, b))};
    }
    // Keep the smallest entry, shrink the other two and splice the new point d-1 back in.
    auto sub = solve(d - 1, {n[0], n[1] - 1, n[2] - 1});
    int x = -1;
    auto s1 = sub[1].support(), s2 = sub[2].support();
    for (int p : s1)
        if (std::find(s2.begin(), s2.end(), p) != s2.end()) x = std::max(x, p);
    if (x < 0) induction_bug("no common support point in splice");
    if (x != d - 2) {
        Perm t = transposition(d - 1, x, d - 2);
        for (auto& q : sub) q = relabel(q, t);
    }
    Perm tau = transposition(d, d - 2, d - 1);
    return {extend(sub[0], d), compose(extend(sub[1], d), tau), compose(tau, extend(sub[2], d))};
}

inline std::vector<Perm> solve_sorted(int d, const std::vector<int>& n)
{
    int k = int(n.size());
    if (d == 2) {
        if (k % 2) induction_bug("odd number of transpositions in degree 2");
        return std::vector<Perm>(k, transposition(2, 0, 1));
    }
    if (k == 2) {
        if (n[0] != d - 1 || n[1] != d - 1) induction_bug("two-point data must be two full cycles");
        Perm c = full_cycle(d);
        return {c, invert(c)};
    }
    if (k == 3) return solve3(d, n);
    if (k < 2) induction_bug("fewer than two branch points");

    Perm alpha, beta;
    int m;
    if (n[0] + n[1] <= d - 1) {
        int L = n[0] + n[1] + 1;
        m = L - 1;
        auto t = solve(L, {n[0], n[1], m});
        alpha = extend(t[0], d);
        beta = extend(t[1], d);
    } else {
        // Parity picks the length of the merged cycle: d if possible, else d-1.
        m = (n[0] + n[1] + d - 1) % 2 == 0 ? d - 1 : d - 2;
        auto t = solve(d, {n[0], n[1], m});
        alpha = t[0];
        beta = t[1];
    }
    std::vector<int> rest{m};
    rest.insert(rest.end(), n.begin() + 2, n.end());
    auto r = solve(d, rest);
    Perm gamma = cycle_conjugator(compose(alpha, beta), r[0]);
    std::vector<Perm> out{relabel(alpha, gamma), relabel(beta, gamma)};
    out.insert(out.end(), r.begin() + 1, r.end());
    return out;
}

// Solve for data in the given order: solve sorted, then braid back.
inline std::vector<Perm> solve(int d, const std::vector<int>& n)
{
    std::vector<std::size_t> idx(n.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return n[a] < n[b]; });
    std::vector<int> ns;
    for (auto i : idx) ns.push_back(n[i]);
    auto v = solve_sorted(d, ns);
    for (std::size_t pass = 0; pass < idx.size(); ++pass)
        for (std::size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] > idx[i + 1]) {
                braid_swap(v, i);
                std::swap(idx[i], idx[i + 1]);
            }
    return v;
}

inline void check_degree_and_orders(int d, const BranchData& bd)
{
    if (d < 2) throw DomainError("degree must be at least 2");
    if (bd.max() >= d)
        throw DomainError("branch order " + std::to_string(bd.max()) + " needs a cycle longer than the degree " +
                          std::to_string(d));
}

} // namespace detail

inline bool realizable(int d, const BranchData& bd)
{
    detail::check_degree_and_orders(d, bd);
    return bd.total() % 2 == 0 && bd.total() >= 2 * d - 2;
}

// List of violated tuple conditions; empty when the tuple is a valid certificate.
inline std::vector<std::string> cert_violations(const PermTuple& t)
{
    std::vector<std::string> out;
    int d = t.degree;
    if (t.orders.size() != t.perms.size()) out.push_back("orders and permutations differ in length");
    for (std::size_t i = 0; i < t.perms.size(); ++i) {
        if (t.perms[i].degree() != d) {
            out.push_back("permutation " + std::to_string(i + 1) + " has the wrong degree");
            return out;
        }
        auto cs = t.perms[i].cycles();
        int want = i < t.orders.size() ? t.orders[i] + 1 : -1;
        if (cs.size() != 1 || int(cs[0].size()) != want)
            out.push_back("permutation " + std::to_string(i + 1) + " is not a single " + std::to_string(want) + "-cycle");
    }
    Perm prod(d);
    for (auto& p : t.perms) prod = compose(prod, p);
    if (!is_identity(prod)) out.push_back("product is not the identity");
    // Orbits of the generated group via union-find.
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& p : t.perms)
        for (int i = 0; i < d; ++i) parent[find(i)] = find(p(i));
    for (int i = 1; i < d; ++i)
        if (find(i) != find(0)) {
            out.push_back("not transitive");
            break;
        }
    return out;
}

inline CertResult verify_cert(const PermTuple& t)
{
    auto v = cert_violations(t);
    if (!v.empty()) {
        std::string msg;
        for (auto& s : v) msg += (msg.empty() ? "" : "; ") + s;
        throw DomainError(msg);
    }
    int s = std::accumulate(t.orders.begin(), t.orders.end(), 0);
    return {(s - 2 * t.degree + 2) / 2};
}

inline PermTuple realize(int d, const BranchData& bd)
{
    if (!realizable(d, bd)) throw DomainError("branch data " + bd.str() + " is not realizable in degree " + std::to_string(d));
    return {d, detail::solve(d, bd.orders()), bd.orders()};
}

// Exhaustive search: fix the first cycle, then track (partial product, orbit partition) states.
inline bool brute_force_realizable(int d, const BranchData& bd)
{
    if (d > 7 || bd.k() > 5) throw DomainError("brute force limited to degree <= 7 and at most 5 branch points");
    detail::check_degree_and_orders(d, bd);
    const auto& n = bd.orders();
    int k = bd.k();
    if (k < 2) return false;

    auto cycles_of_length = [d](int m) {
        std::vector<Perm> out;
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            if (__builtin_popcount(mask) != m) continue;
            std::vector<int> pts;
            for (int i = 0; i < d; ++i)
                if (mask >> i & 1) pts.push_back(i);
            std::vector<int> tail(pts.begin() + 1, pts.end());
            do {
                std::vector<int> c{pts[0]};
                c.insert(c.end(), tail.begin(), tail.end());
                out.push_back(Perm::cycle(d, c));
            } while (std::next_permutation(tail.begin(), tail.end()));
        }
        return out;
    };
    struct State {
        Perm prod;
        std::vector<int> block;
    };
    auto merge = [d](std::vector<int> block, const Perm& c) {
        for (int i = 0; i < d; ++i) {
            int a = block[i], b = block[c(i)];
            if (a == b) continue;
            for (auto& x : block)
                if (x == b) x = a;
        }
        // Canonical labels by first occurrence.
        std::vector<int> map(d, -1);
        int next = 0;
        for (auto& x : block) {
            if (map[x] < 0) map[x] = next++;
            x = map[x];
        }
        return block;
    };
    auto key = [d](const State& s) {
        std::uint64_t h = 0;
        for (int i = 0; i < d; ++i) h = h * 8 + std::uint64_t(s.prod(i));
        for (int i = 0; i < d; ++i) h = h * 8 + std::uint64_t(s.block[i]);
        return h;
    };
    std::vector<int> first(n[0] + 1);
    std::iota(first.begin(), first.end(), 0);
    Perm a1 = Perm::cycle(d, first);
    std::vector<int> id(d);
    std::iota(id.begin(), id.end(), 0);
    std::vector<State> states{{a1, merge(id, a1)}};
    for (int i = 1; i + 1 < k; ++i) {
        auto cs = cycles_of_length(n[i] + 1);
        std::unordered_set<std::uint64_t> seen;
        std::vector<State> next;
        for (auto& s : states)
            for (auto& c : cs) {
                State t{compose(s.prod, c), merge(s.block, c)};
                if (seen.insert(key(t)).second) next.push_back(std::move(t));
            }
        states = std::move(next);
    }
    for (auto& s : states) {
        Perm last = invert(s.prod);
        auto cs = last.cycles();
        if (cs.size() != 1 || int(cs[0].size()) != n[k - 1] + 1) continue;
        auto b = merge(s.block, last);
        if (std::all_of(b.begin(), b.end(), [](int x) { return x == 0; })) return true;
    }
    return false;
}

// Degree of a branched cover of the sphere by a genus-g surface with the given simple-cycle data.
inline std::optional<int> realizable_cover(int g, const BranchData& bd)
{
    if (g < 0) throw DomainError("genus must be non-negative");
    int s = bd.total();
    if (s % 2) return std::nullopt;
    int d = s / 2 - g + 1;
    if (d < 1 || bd.max() > d - 1) return std::nullopt;
    return d;
}

} // namespace hol
