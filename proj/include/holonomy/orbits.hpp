#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "finite_group.hpp"
#include "mcg.hpp"

namespace hol {

struct OrbitInfo {
    long long size = 0;              // homomorphisms in the orbit
    long long conjugacy_classes = 0; // tuples up to simultaneous conjugation
    int image_order = 0;
    std::vector<int> image_class;    // smallest conjugate of the image subgroup
    int sw = 0;
    int abelian_image_order = 0;     // order of the image in G / [G, G]
    std::vector<int> representative;
};

struct OrbitSummary {
    std::string group;
    int genus = 0;
    bool surjective_only = true;
    long long hom_count = 0;
    long long surjective_count = 0;
    int orbit_count = 0;
    std::vector<OrbitInfo> orbits;
};

namespace detail {

inline std::uint64_t encode_tuple(const std::vector<int>& t, int n)
{
    std::uint64_t c = 0;
    for (int x : t) c = c * std::uint64_t(n) + std::uint64_t(x);
    return c;
}

inline std::vector<int> decode_tuple(std::uint64_t c, int n, int len)
{
    std::vector<int> t(len);
    for (int i = len - 1; i >= 0; --i) {
        t[i] = int(c % std::uint64_t(n));
        c /= std::uint64_t(n);
    }
    return t;
}

// Lexicographically smallest simultaneous conjugate, as a code.
inline std::uint64_t conjugation_code(const FiniteGroup& G, const std::vector<int>& t)
{
    std::uint64_t best = UINT64_MAX;
    std::vector<int> c(t.size());
    for (int g = 0; g < G.order(); ++g) {
        for (std::size_t i = 0; i < t.size(); ++i) c[i] = G.conj(g, t[i]);
        best = std::min(best, encode_tuple(c, G.order()));
    }
    return best;
}

inline int relator_value(const FiniteGroup& G, const std::vector<int>& t, std::size_t from, std::size_t to)
{
    int p = 0;
    for (std::size_t i = from; i + 1 < to; i += 2) {
        int a = t[i], b = t[i + 1];
        p = G.mul(p, G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
    }
    return p;
}

// All tuples of `handles` handles, grouped by their commutator product.
inline std::vector<std::vector<std::uint64_t>> half_tuples(const FiniteGroup& G, int handles)
{
    int n = G.order();
    std::vector<std::vector<std::uint64_t>> buckets(n);
    std::uint64_t total = 1;
    for (int i = 0; i < 2 * handles; ++i) total *= std::uint64_t(n);
    for (std::uint64_t c = 0; c < total; ++c) {
        auto t = decode_tuple(c, n, 2 * handles);
        buckets[relator_value(G, t, 0, t.size())].push_back(c);
    }
    return buckets;
}

inline void check_feasible(const FiniteGroup& G, int genus)
{
    if (genus < 1) throw DomainError("orbit tools need genus >= 1");
    double size = std::pow(double(G.order()), 2.0 * genus);
    if (size > 1e9)
        throw DomainError("enumeration infeasible: |G|^(2g) = " + std::to_string(size) + " exceeds 1e9");
}

inline std::vector<int> apply_move_indices(const FiniteGroup& G, std::vector<int> t, const MCGMove& m)
{
    apply_move_inplace(t, m, TableOps{&G});
    return t;
}

} // namespace detail

// Enumerate Hom(Gamma_g, G), optionally keep the surjective ones, and split them into
// orbits of the move set combined with simultaneous conjugation.
inline OrbitSummary orbit_bfs(const FiniteGroup& G, int genus, bool surjective_only)
{
    detail::check_feasible(G, genus);
    int n = G.order();
    int len = 2 * genus;
    int h1 = genus / 2, h2 = genus - h1;
    auto left = detail::half_tuples(G, h1);
    auto right = detail::half_tuples(G, h2);

    OrbitSummary out;
    out.group = G.name();
    out.genus = genus;
    out.surjective_only = surjective_only;

    std::unordered_map<std::uint64_t, long long> class_size;
    std::uint64_t right_total = 1;
    for (int i = 0; i < 2 * h2; ++i) right_total *= std::uint64_t(n);
    for (int p = 0; p < n; ++p) {
        const auto& R = right[G.inv(p)];
        for (auto lc : left[p])
            for (auto rc : R) {
                ++out.hom_count;
                auto t = detail::decode_tuple(lc * right_total + rc, n, len);
                bool surj = int(G.closure(t).size()) == n;
                if (surj) ++out.surjective_count;
                if (surjective_only && !surj) continue;
                ++class_size[detail::conjugation_code(G, t)];
            }
    }

    std::vector<std::uint64_t> codes;
    codes.reserve(class_size.size());
    for (auto& kv : class_size) codes.push_back(kv.first);
    std::sort(codes.begin(), codes.end());
    std::unordered_map<std::uint64_t, int> label;
    auto moves = all_moves(genus);
    auto derived = G.derived_subgroup();

    for (auto start : codes) {
        if (label.count(start)) continue;
        int id = int(out.orbits.size());
        OrbitInfo info;
        info.representative = detail::decode_tuple(start, n, len);
        std::queue<std::uint64_t> q;
        q.push(start);
        label[start] = id;
        while (!q.empty()) {
            auto c = q.front();
            q.pop();
            info.size += class_size.at(c);
            ++info.conjugacy_classes;
            auto t = detail::decode_tuple(c, n, len);
            std::vector<std::uint64_t> next;
            for (auto& m : moves) next.push_back(detail::conjugation_code(G, detail::apply_move_indices(G, t, m)));
            std::sort(next.begin(), next.end());
            for (auto nc : next) {
                if (label.count(nc)) continue;
                if (!class_size.count(nc)) throw std::logic_error("move left the enumerated set");
                label[nc] = id;
                q.push(nc);
            }
        }
        auto image = G.closure(info.representative);
        info.image_order = int(image.size());
        info.image_class = G.subgroup_class_key(image);
        info.sw = G.sw(info.representative);
        auto with_derived = info.representative;
        with_derived.insert(with_derived.end(), derived.begin(), derived.end());
        info.abelian_image_order = int(G.closure(with_derived).size() / derived.size());
        out.orbits.push_back(std::move(info));
    }
    out.orbit_count = int(out.orbits.size());
    return out;
}

// ---- Dihedral canonical form ----

struct DihedralCanonical {
    bool lifts = false;
    SurfaceRep<DihedralElem> representative;
    MoveWord moves;
    DihedralElem conjugator;  // representative = conjugator * (rep after moves) * conjugator^-1
};

// The two models: a_1 = r, b_g = s, everything else trivial, except a_g = r^(n/2) in the second.
inline SurfaceRep<DihedralElem> dihedral_model(int n, int genus, bool lifting)
{
    if (genus < 2) throw DomainError("dihedral models need genus >= 2");
    if (!lifting && n % 2) throw DomainError("the non-lifting dihedral model needs n even");
    std::vector<DihedralElem> im(2 * genus, DihedralElem(0, 0, n));
    im[0] = DihedralElem(1, 0, n);
    im[2 * genus - 1] = DihedralElem(0, 1, n);
    if (!lifting) im[2 * genus - 2] = DihedralElem(n / 2, 0, n);
    return SurfaceRep<DihedralElem>(genus, std::move(im), TargetTag::dihedral(n));
}

// Breadth-first search through the orbit (up to conjugation) until a model is reached.
inline DihedralCanonical canonical_form_dihedral(const SurfaceRep<DihedralElem>& rep)
{
    int n = rep.tag().param, genus = rep.genus();
    if (genus < 2) throw DomainError("dihedral canonical form needs genus >= 2");
    FiniteGroup G = FiniteGroup::dihedral(n);
    int order = G.order();
    std::vector<int> t0;
    for (auto& x : rep.images()) t0.push_back(dihedral_index(G, x));
    if (int(G.closure(t0).size()) != order) throw DomainError("representation is not surjective onto D" + std::to_string(n));

    auto to_indices = [&](const SurfaceRep<DihedralElem>& r) {
        std::vector<int> t;
        for (auto& x : r.images()) t.push_back(dihedral_index(G, x));
        return t;
    };
    auto model_l = dihedral_model(n, genus, true);
    std::uint64_t target_l = detail::conjugation_code(G, to_indices(model_l));
    std::uint64_t target_n = UINT64_MAX;
    if (n % 2 == 0) target_n = detail::conjugation_code(G, to_indices(dihedral_model(n, genus, false)));

    auto moves = all_moves(genus);
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, int>> parent;
    std::uint64_t start = detail::conjugation_code(G, t0);
    parent[start] = {start, -1};
    std::queue<std::uint64_t> q;
    q.push(start);
    std::uint64_t found = UINT64_MAX;
    while (!q.empty() && found == UINT64_MAX) {
        auto c = q.front();
        q.pop();
        if (c == target_l || c == target_n) { found = c; break; }
        auto t = detail::decode_tuple(c, order, 2 * genus);
        for (int k = 0; k < int(moves.size()); ++k) {
            auto nc = detail::conjugation_code(G, detail::apply_move_indices(G, t, moves[k]));
            if (parent.count(nc)) continue;
            parent[nc] = {c, k};
            q.push(nc);
        }
    }
    if (found == UINT64_MAX) throw std::logic_error("dihedral orbit misses both models");

    DihedralCanonical out{found == target_l, found == target_l ? model_l : dihedral_model(n, genus, false), {}, DihedralElem(0, 0, n)};
    for (auto c = found; parent.at(c).second >= 0; c = parent.at(c).first) out.moves.push_back(moves[parent.at(c).second]);
    std::reverse(out.moves.begin(), out.moves.end());

    // Moves commute with conjugation, so replaying them on the input gives a conjugate of the model.
    auto moved = to_indices(apply_word(rep, out.moves));
    auto target = to_indices(out.representative);
    for (int g = 0; g < order; ++g) {
        bool ok = true;
        for (std::size_t i = 0; i < moved.size() && ok; ++i) ok = G.conj(g, moved[i]) == target[i];
        if (ok) {
            out.conjugator = dihedral_element(G, n, g);
            return out;
        }
    }
    throw std::logic_error("replayed dihedral moves do not reach the model");
}

} // namespace hol
