#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "branch_data.hpp"
#include "config.hpp"

namespace hol {

// Each sheet is a sphere whose equatorial annulus is the grid [0, n] x [0, height] with x taken mod n.
// Translating by 1 in x is the order n rotation, so pairing labels live in Z_n.

enum class SlitDir { horizontal, vertical };

// positive: above a horizontal slit, right of a vertical one.
enum class SlitSide { positive, negative };

struct Slit {
    int sheet = 0;
    SlitDir dir = SlitDir::horizontal;
    int x = 0;
    int y = 1;
    int length = 1;
};

// The positive side of slit a is glued to the negative side of slit b by the translation x -> x + label.
struct SlitPairing {
    int a = 0;
    int b = 0;
    int label = 0;
};

struct GluingPattern {
    int n = 2;
    int sheets = 1;
    int height = 2;
    std::string layout;
    std::vector<Slit> slits;
    std::vector<SlitPairing> pairings;
};

struct ConeSurface {
    int genus = 0;
    BranchData cone_orders;
    int n = 1;
    int holonomy_order = 1;  // order of the image in Z_n
    int components = 1;
    int sheets = 1;
    int euler = 2;

    bool surjective() const { return holonomy_order == n; }
    bool connected() const { return components == 1; }
    // Excess of all flat cones: branch points plus -2 per sheet for the pyramid apex and base.
    int flat_excess() const { return cone_orders.total() - 2 * sheets; }
    bool gauss_bonnet_holds() const { return flat_excess() == 2 * genus - 2 * components; }
};

namespace detail {

inline int mod(int a, int n) { return ((a % n) + n) % n; }

inline void check_pattern(const GluingPattern& p)
{
    if (p.n < 1) throw DomainError("pattern: n must be positive");
    if (p.sheets < 1) throw DomainError("pattern: at least one sheet required");
    if (p.height < 2) throw DomainError("pattern: annulus height must be at least 2");
    int S = int(p.slits.size());
    for (int i = 0; i < S; ++i) {
        const auto& s = p.slits[i];
        std::string id = "slit " + std::to_string(i);
        if (s.sheet < 0 || s.sheet >= p.sheets) throw DomainError(id + ": sheet out of range");
        if (s.x < 0 || s.x >= p.n) throw DomainError(id + ": x out of range");
        if (s.length < 1) throw DomainError(id + ": length must be positive");
        if (s.dir == SlitDir::horizontal) {
            if (s.y < 1 || s.y > p.height - 1) throw DomainError(id + ": row must be interior");
            if (s.length >= p.n) throw DomainError(id + ": horizontal slit wraps the annulus");
        } else if (s.y < 1 || s.y + s.length > p.height - 1) {
            throw DomainError(id + ": vertical slit leaves the annulus interior");
        }
    }
    // Each side of each slit is used exactly once.
    std::vector<int> pos(S, 0), neg(S, 0);
    for (const auto& q : p.pairings) {
        if (q.a < 0 || q.a >= S || q.b < 0 || q.b >= S) throw DomainError("dangling pairing: unknown slit");
        ++pos[q.a];
        ++neg[q.b];
        const auto &A = p.slits[q.a], &B = p.slits[q.b];
        std::string id = "pairing " + std::to_string(q.a) + "->" + std::to_string(q.b);
        if (A.length != B.length) throw DomainError(id + ": non-matching slit lengths");
        if (A.dir != B.dir) throw DomainError(id + ": non-matching slit directions");
        if (A.y != B.y) throw DomainError(id + ": slits are not horizontal translates");
        if (mod(B.x - A.x - q.label, p.n) != 0)
            throw DomainError(id + ": label is not the translation between the slits");
    }
    for (int i = 0; i < S; ++i)
        if (pos[i] != 1 || neg[i] != 1)
            throw DomainError("dangling pairing: slit " + std::to_string(i) + " sides used " +
                              std::to_string(pos[i]) + " and " + std::to_string(neg[i]) + " times");
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int a) { return up[a] == a ? a : up[a] = find(up[a]); }
    void unite(int a, int b) { up[find(a)] = find(b); }
};

} // namespace detail

inline ConeSurface glue_and_analyze(const GluingPattern& p)
{
    detail::check_pattern(p);
    const int n = p.n, H = p.height;
    const int cells = n * H;
    const int per_sheet = cells + 2;  // grid cells, bottom cap, top cap
    const int F = p.sheets * per_sheet;

    // Undirected grid edges; plus direction is +x for horizontal and +y for vertical edges.
    const int hcount = n * (H + 1), vcount = n * H;
    auto hedge = [&](int s, int x, int y) { return s * (hcount + vcount) + y * n + detail::mod(x, n); };
    auto vedge = [&](int s, int x, int y) { return s * (hcount + vcount) + hcount + y * n + detail::mod(x, n); };
    const int E = p.sheets * (hcount + vcount);

    std::vector<int> face, next, twin, plus(E, -1), minus(E, -1), label;
    std::vector<char> flat;
    auto add_face = [&](int f, bool is_flat, const std::vector<std::pair<int, bool>>& edges) {
        int first = int(face.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            int h = int(face.size());
            face.push_back(f);
            flat.push_back(is_flat);
            next.push_back(i + 1 < edges.size() ? h + 1 : first);
            (edges[i].second ? plus : minus)[edges[i].first] = h;
        }
    };
    for (int s = 0; s < p.sheets; ++s) {
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < n; ++x)
                add_face(s * per_sheet + y * n + x, true,
                         {{hedge(s, x, y), true}, {vedge(s, x + 1, y), true},
                          {hedge(s, x, y + 1), false}, {vedge(s, x, y), false}});
        std::vector<std::pair<int, bool>> bottom, top;
        for (int x = n - 1; x >= 0; --x) bottom.push_back({hedge(s, x, 0), false});
        for (int x = 0; x < n; ++x) top.push_back({hedge(s, x, H), true});
        add_face(s * per_sheet + cells, false, bottom);
        add_face(s * per_sheet + cells + 1, false, top);
    }
    const int HE = int(face.size());
    twin.assign(HE, -1);
    label.assign(HE, 0);
    for (int e = 0; e < E; ++e) {
        twin[plus[e]] = minus[e];
        twin[minus[e]] = plus[e];
    }

    // Half-edges on each side of a slit, edge by edge from its start point.
    auto side = [&](const Slit& s, SlitSide which, int j) {
        if (s.dir == SlitDir::horizontal) {
            int e = hedge(s.sheet, s.x + j, s.y);
            return which == SlitSide::positive ? plus[e] : minus[e];
        }
        int e = vedge(s.sheet, s.x, s.y + j);
        return which == SlitSide::positive ? minus[e] : plus[e];
    };
    std::vector<char> cut(E, 0);
    for (const auto& s : p.slits)
        for (int j = 0; j < s.length; ++j) {
            int e = s.dir == SlitDir::horizontal ? hedge(s.sheet, s.x + j, s.y) : vedge(s.sheet, s.x, s.y + j);
            if (cut[e]) throw DomainError("pattern: slits overlap along an edge");
            cut[e] = 1;
        }
    for (const auto& q : p.pairings) {
        const auto &A = p.slits[q.a], &B = p.slits[q.b];
        for (int j = 0; j < A.length; ++j) {
            int u = side(A, SlitSide::positive, j), v = side(B, SlitSide::negative, j);
            twin[u] = v;
            twin[v] = u;
            label[u] = detail::mod(q.label, n);
            label[v] = detail::mod(-q.label, n);
        }
    }

    ConeSurface out;
    out.n = n;
    out.sheets = p.sheets;

    // Vertices are orbits of next o twin; each half-edge stands for the corner at its tail.
    std::vector<char> seen(HE, 0);
    std::vector<int> vert_of(HE, -1), orders;
    int V = 0;
    for (int h = 0; h < HE; ++h) {
        if (seen[h]) continue;
        int corners = 0;
        bool all_flat = true;
        for (int e = h; !seen[e]; e = next[twin[e]]) {
            seen[e] = 1;
            vert_of[e] = V;
            ++corners;
            all_flat = all_flat && flat[e];
        }
        ++V;
        if (!all_flat) continue;  // touches a cap, hence away from every slit
        if (corners % 4 != 0) throw std::logic_error("cone angle is not a multiple of 2 pi");
        if (corners > 4) orders.push_back(corners / 4 - 1);
    }
    out.cone_orders = BranchData(orders);

    detail::UnionFind uf(F);
    for (int h = 0; h < HE; ++h) uf.unite(face[h], face[twin[h]]);
    std::vector<int> root_index(F, -1);
    int C = 0;
    for (int f = 0; f < F; ++f)
        if (uf.find(f) == f) root_index[f] = C++;
    std::vector<long> chi(C, 0);
    for (int f = 0; f < F; ++f) ++chi[root_index[uf.find(f)]];
    for (int h = 0; h < HE; ++h) {
        int c = root_index[uf.find(face[h])];
        if (h < twin[h]) --chi[c];
    }
    std::vector<char> vseen(V, 0);
    for (int h = 0; h < HE; ++h)
        if (!vseen[vert_of[h]]) {
            vseen[vert_of[h]] = 1;
            ++chi[root_index[uf.find(face[h])]];
        }
    out.components = C;
    out.euler = 0;
    out.genus = 0;
    for (long c : chi) {
        if ((2 - c) % 2 != 0) throw std::logic_error("odd Euler characteristic");
        out.euler += int(c);
        out.genus += int((2 - c) / 2);
    }

    // Chart potentials on faces; holonomy of the loop closed by each half-edge.
    std::vector<int> pot(F, -1), stack;
    std::vector<std::vector<int>> out_edges(F);
    for (int h = 0; h < HE; ++h) out_edges[face[h]].push_back(h);
    int g = n;
    for (int f0 = 0; f0 < F; ++f0) {
        if (pot[f0] >= 0) continue;
        pot[f0] = 0;
        stack.push_back(f0);
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int h : out_edges[f]) {
                int f2 = face[twin[h]], val = detail::mod(pot[f] + label[h], n);
                if (pot[f2] < 0) {
                    pot[f2] = val;
                    stack.push_back(f2);
                } else {
                    g = std::gcd(g, detail::mod(val - pot[f2], n));
                }
            }
        }
    }
    out.holonomy_order = n / g;
    return out;
}

namespace detail {

// Row and band occupancy while laying out slits.
struct SlitLayout {
    int n, sheets, height;
    std::vector<std::vector<char>> row;               // row 1 points, per sheet
    std::vector<std::vector<std::vector<char>>> band;  // vertical slots per band
    std::vector<int> load;                             // slits per sheet
    std::vector<Slit> slits;
    std::vector<int> family;

    SlitLayout(int n_, int sheets_, int bands)
        : n(n_), sheets(sheets_), height(bands + 2), row(sheets_, std::vector<char>(n_, 0)),
          band(bands, std::vector<std::vector<char>>(sheets_, std::vector<char>(n_, 0))), load(sheets_, 0)
    {
    }

    bool row_free(int s, int x, int len) const
    {
        for (int i = 0; i <= len; ++i)
            if (row[s][mod(x + i, n)]) return false;
        return true;
    }

    // Horizontal segments starting at x, one per family id.
    void put_run(int s, int x, const std::vector<int>& fams)
    {
        for (std::size_t i = 0; i <= fams.size(); ++i) row[s][mod(x + int(i), n)] = 1;
        for (std::size_t i = 0; i < fams.size(); ++i) {
            slits.push_back({s, SlitDir::horizontal, mod(x + int(i), n), 1, 1});
            family.push_back(fams[i]);
        }
        ++load[s];
    }

    // Sheets ordered by load, then index.
    std::vector<int> sheet_order() const
    {
        std::vector<int> o(sheets);
        std::iota(o.begin(), o.end(), 0);
        std::stable_sort(o.begin(), o.end(), [&](int a, int b) { return load[a] < load[b]; });
        return o;
    }

    bool place_run(const std::vector<int>& fams)
    {
        int len = int(fams.size());
        if (len + 1 > n) return false;
        for (int s : sheet_order())
            for (int x = 0; x < n; ++x)
                if (row_free(s, x, len)) {
                    put_run(s, x, fams);
                    return true;
                }
        return false;
    }

    // Vertical member of band j (band 0 is the top one); its bottom lies on row height - 2 - j.
    void put_vertical(int j, int s, int x, int fam)
    {
        int bands = int(band.size());
        band[j][s][x] = 1;
        if (j == bands - 1) row[s][x] = 1;
        slits.push_back({s, SlitDir::vertical, x, bands - j, 1});
        family.push_back(fam);
        ++load[s];
    }

    bool vertical_free(int j, int s, int x, bool contact_ok) const
    {
        int bands = int(band.size());
        if (band[j][s][x]) return false;
        if (j + 1 < bands && band[j + 1][s][x]) return false;
        if (j > 0 && band[j - 1][s][x]) return false;
        return contact_ok || j != bands - 1 || !row[s][x];
    }

    // Scanning from a moving cursor spreads members over x, which keeps the holonomy surjective.
    bool place_vertical(int j, int fam)
    {
        for (int s : sheet_order())
            for (int i = 0; i < n; ++i) {
                int x = mod(cursor[s] + i, n);
                if (vertical_free(j, s, x, false)) {
                    put_vertical(j, s, x, fam);
                    cursor[s] = x + 1;
                    return true;
                }
            }
        return false;
    }
    std::vector<int> cursor = std::vector<int>(sheets, 1);

    GluingPattern finish(std::string layout) const
    {
        GluingPattern p;
        p.n = n;
        p.sheets = sheets;
        p.height = height;
        p.layout = std::move(layout);
        p.slits = slits;
        int fams = family.empty() ? 0 : *std::max_element(family.begin(), family.end()) + 1;
        for (int f = 0; f < fams; ++f) {
            std::vector<int> members;
            for (std::size_t i = 0; i < family.size(); ++i)
                if (family[i] == f) members.push_back(int(i));
            for (std::size_t i = 0; i < members.size(); ++i) {
                int a = members[i], b = members[(i + 1) % members.size()];
                p.pairings.push_back({a, b, mod(slits[b].x - slits[a].x, n)});
            }
        }
        return p;
    }
};

} // namespace detail

inline constexpr int kMaxChainOrders = 5000;

// Slit pattern whose glued surface has genus g, cone orders bd and holonomy onto Z_n, on l + 1 sheets.
//
// Vertical families F_0, ..., F_{r-1} (r = k - 1) sit in stacked bands, the i-th with m_i members glued
// cyclically; one member of each is in column x = 0 of sheet 0, so the bottom cone of F_i and the top
// cone of F_{i+1} meet and give n_{i+1}. The last cone is finished on row 1 by horizontal families made of
// single segments and adjacent pairs. Each pair or vertical contact merges two endpoint cycles, and the
// pairs are distributed over several horizontal families so that all merges join distinct cycles.
inline GluingPattern build_cyclic_pattern(int n, int g, int l, const BranchData& bd)
{
    if (n < 2) throw DomainError("n = " + std::to_string(n) + " violates n >= 2");
    if (g < 1) throw DomainError("genus " + std::to_string(g) + " violates g >= 1");
    if (l < 0) throw DomainError("l = " + std::to_string(l) + " violates l >= 0");
    if (bd.total() != 2 * g + 2 * l)
        throw DomainError("sum n_i = " + std::to_string(bd.total()) + " violates sum n_i = 2g + 2l = " +
                          std::to_string(2 * g + 2 * l));
    if (bd.max() >= n * (l + 1))
        throw DomainError("n_k = " + std::to_string(bd.max()) + " violates n_k < n(l+1) = " +
                          std::to_string(n * (l + 1)));

    const int k = bd.k(), r = k - 1, sheets = l + 1;
    std::vector<int> ns = bd.orders(), m(std::max(r, 0));
    int last = 1;  // members of the family touching row 1
    bool need_row = true;

    // doubled: junction i where F_i and F_{i+1} touch twice, at consecutive members of both; the second
    // contact splits a regular point off the junction cone, lowering it by 2. Needed when n = 2.
    auto attempt = [&](int contacts, int pairs, int doubled) -> std::optional<GluingPattern> {
        detail::SlitLayout L(n, sheets, r);
        int fam = 0;
        std::vector<int> vfam(r, -1), placed(r, 0);
        for (int i = 0; i < r; ++i)
            if (m[i] >= 2) vfam[i] = fam++;
        auto put = [&](int i, int s, int x) {
            L.put_vertical(i, s, x, vfam[i]);
            ++placed[i];
        };
        bool ok = true;
        auto columns = [&] {
            for (int i = 0; i < r; ++i)
                if (vfam[i] >= 0) put(i, 0, 0);
            if (doubled < 0) return;
            ok = false;
            for (int sh : L.sheet_order())
                for (int x = 0; x < n && !ok; ++x)
                    if ((sh != 0 || x != 0) && L.vertical_free(doubled, sh, x, false) &&
                        L.vertical_free(doubled + 1, sh, x, false)) {
                        put(doubled, sh, x);
                        put(doubled + 1, sh, x);
                        ok = true;
                    }
        };
        if (need_row) {
            int points = ns[k - 1] + 1 + (contacts > 0 ? contacts - last : 0);
            if ((points - 3 * pairs) % 2 != 0 || points < 3 * pairs) return std::nullopt;
            int singles = (points - 3 * pairs) / 2;
            int c = contacts == 2 ? pairs / 2 + 1 : (pairs + 1) / 2;
            std::vector<int> cyc(c);
            for (int j = 0; j < c; ++j) cyc[j] = fam++;
            // Internal pairs join the left and right cycles of one family, linking pairs join family j + 1
            // on the west to family j on the east.
            std::vector<std::vector<int>> runs;
            for (int j = (contacts == 2 ? 1 : 0); j < c; ++j) runs.push_back({cyc[j], cyc[j]});
            for (int j = 0; j + 1 < c; ++j) runs.push_back({cyc[j + 1], cyc[j]});
            if (contacts == 2) {
                if (--singles < 0) return std::nullopt;
                L.put_run(0, 0, {cyc[0]});
                columns();
                put(r - 1, 0, 1);
            } else {
                if (n < 3) return std::nullopt;
                L.put_run(0, 0, runs.front());
                runs.erase(runs.begin());
                columns();
            }
            for (int i = 0; i < singles; ++i) runs.push_back({cyc[0]});
            for (const auto& run : runs)
                if (!L.place_run(run)) return std::nullopt;
        } else {
            columns();
        }
        if (!ok) return std::nullopt;
        for (int i = r - 1; i >= 0; --i) {
            if (vfam[i] < 0) continue;
            if (placed[i] > m[i]) return std::nullopt;
            for (int j = placed[i]; j < m[i]; ++j)
                if (!L.place_vertical(i, vfam[i])) return std::nullopt;
        }
        for (int s = 0; s < sheets; ++s)
            if (L.load[s] == 0) return std::nullopt;
        std::string layout = k >= 2 ? "staircase" : pairs == 1 ? "row" : "double-slit";
        return L.finish(layout);
    };

    // Cones are chained in sorted order first; other orders are tried when the sorted chain needs a
    // horizontal pair that does not fit (n = 2).
    int tries = 0;
    do {
        for (int doubled = -1; doubled < std::max(r - 1, 0); ++doubled) {
            bool positive = true;
            for (int i = 0; i < r && positive; ++i) {
                m[i] = i == 0 ? ns[0] + 1 : ns[i] + 2 + 2 * (doubled == i - 1) - m[i - 1];
                positive = m[i] >= (doubled == i || doubled == i - 1 ? 2 : 1);
            }
            if (!positive || (r > 0 && ns[k - 1] < m[r - 1] - 1)) continue;
            last = r > 0 ? m[r - 1] : 1;
            need_row = ns[k - 1] != last - 1;
            if (!need_row) {
                if (auto p = attempt(1, 0, doubled)) return *p;
                continue;
            }
            for (int pairs = 0; 3 * pairs <= ns[k - 1] + 3; ++pairs) {
                int contacts = pairs % 2 == 1 ? 1 : 2;
                if (contacts == 2 && last < 2) continue;
                if (auto p = attempt(contacts, pairs, doubled)) return *p;
            }
        }
    } while (++tries < kMaxChainOrders && std::next_permutation(ns.begin(), ns.end()));
    throw DomainError("no slit layout found for n = " + std::to_string(n) + ", bd = " + bd.str() +
                      " on " + std::to_string(sheets) + " sheets");
}

} // namespace hol
