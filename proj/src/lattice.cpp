#include "eulat/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eulat/canonical.hpp"
#include "eulat/planarity.hpp"

namespace eulat {

namespace {

std::vector<int> mask_to_list(std::uint32_t m) {
    std::vector<int> v;
    while (m) {
        v.push_back(__builtin_ctz(m));
        m &= m - 1;
    }
    return v;
}

// Rebuild a boundary cycle from the 2-element subsets sitting below a ridge.
std::vector<int> cycle_from_edges(std::uint32_t ridge_mask,
                                  const std::vector<std::uint32_t>& edge_masks) {
    auto verts = mask_to_list(ridge_mask);
    std::map<int, std::vector<int>> nbr;
    int used = 0;
    for (auto em : edge_masks) {
        if ((em & ridge_mask) != em) continue;
        auto e = mask_to_list(em);
        if (e.size() != 2) throw LatticeError("ridge has a non-edge rank-2 face below it");
        nbr[e[0]].push_back(e[1]);
        nbr[e[1]].push_back(e[0]);
        ++used;
    }
    if (used != int(verts.size())) throw LatticeError("ridge boundary is not a single cycle");
    for (int v : verts)
        if (nbr[v].size() != 2) throw LatticeError("ridge boundary vertex degree != 2");
    std::vector<int> cyc{verts[0]};
    int prev = -1, cur = verts[0];
    while (true) {
        int nxt = (nbr[cur][0] == prev) ? nbr[cur][1] : nbr[cur][0];
        if (nxt == cyc[0]) break;
        cyc.push_back(nxt);
        prev = cur;
        cur = nxt;
        if (cyc.size() > verts.size()) throw LatticeError("ridge boundary walk does not close");
    }
    if (cyc.size() != verts.size()) throw LatticeError("ridge boundary is disconnected");
    return normalize_cycle(cyc);
}

void sort_faces(FaceLattice& L) {
    std::sort(L.edge_masks.begin(), L.edge_masks.end());
    {
        std::vector<size_t> idx(L.ridge_masks.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            if (L.ridge_masks[a] != L.ridge_masks[b]) return L.ridge_masks[a] < L.ridge_masks[b];
            return L.ridge_cycles[a] < L.ridge_cycles[b];
        });
        std::vector<std::uint32_t> rm;
        std::vector<std::vector<int>> rc;
        for (size_t i : idx) {
            rm.push_back(L.ridge_masks[i]);
            rc.push_back(L.ridge_cycles[i]);
        }
        L.ridge_masks = std::move(rm);
        L.ridge_cycles = std::move(rc);
    }
    std::sort(L.facet_masks.begin(), L.facet_masks.end());
}

// Fill ridge_edges / facet_ridges from masks and cycles.
void link_faces(FaceLattice& L) {
    L.ridge_edges.assign(L.ridge_masks.size(), {});
    for (size_t r = 0; r < L.ridge_masks.size(); ++r) {
        const auto& cyc = L.ridge_cycles[r];
        for (size_t i = 0; i < cyc.size(); ++i) {
            int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            std::uint32_t em = (1u << a) | (1u << b);
            auto it = std::lower_bound(L.edge_masks.begin(), L.edge_masks.end(), em);
            if (it == L.edge_masks.end() || *it != em)
                throw ContainmentAnomalyError("ridge cycle edge is not a face");
            L.ridge_edges[r].push_back(int(it - L.edge_masks.begin()));
        }
    }
    L.facet_ridges.assign(L.facet_masks.size(), {});
    for (size_t f = 0; f < L.facet_masks.size(); ++f)
        for (size_t r = 0; r < L.ridge_masks.size(); ++r)
            if ((L.ridge_masks[r] & L.facet_masks[f]) == L.ridge_masks[r])
                L.facet_ridges[f].push_back(int(r));
}

}  // namespace

std::vector<std::vector<int>> FaceLattice::facet_lists() const {
    std::vector<std::vector<int>> out;
    for (auto m : facet_masks) out.push_back(mask_to_list(m));
    return out;
}

FaceLattice assemble(const Graph& g, const std::vector<FacetCandidate>& facets,
                     const std::vector<RidgeCandidate>& ridges, const SolutionMask& sol) {
    FaceLattice L;
    L.n = g.n;
    for (auto [u, v] : g.edges()) L.edge_masks.push_back((1u << u) | (1u << v));
    for (int j : sol.ridges) {
        L.ridge_masks.push_back(std::uint32_t(ridges[size_t(j)].vmask));
        L.ridge_cycles.push_back(ridges[size_t(j)].cycle);
    }
    std::set<std::uint32_t> chosen_facets;
    for (int i : sol.facets) chosen_facets.insert(std::uint32_t(facets[size_t(i)].vmask));
    L.facet_masks.assign(chosen_facets.begin(), chosen_facets.end());
    sort_faces(L);

    // every vertex needs an edge, every edge a ridge
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) == 0) throw ContainmentAnomalyError("isolated vertex");
    for (auto em : L.edge_masks) {
        bool covered = false;
        for (size_t r = 0; r < L.ridge_masks.size() && !covered; ++r) {
            const auto& cyc = L.ridge_cycles[r];
            for (size_t i = 0; i < cyc.size(); ++i) {
                std::uint32_t ce = (1u << cyc[i]) | (1u << cyc[(i + 1) % cyc.size()]);
                if (ce == em) {
                    covered = true;
                    break;
                }
            }
        }
        if (!covered) throw ContainmentAnomalyError("edge lies in no chosen ridge");
    }
    link_faces(L);

    // keep only the chosen facet>ridge incidences coming from embedding faces
    // (link_faces uses vertex containment, which is equivalent here because
    // candidate facets are induced subgraphs, but restrict to be safe)
    std::map<std::uint32_t, const FacetCandidate*> by_mask;
    for (int i : sol.facets) by_mask[std::uint32_t(facets[size_t(i)].vmask)] = &facets[size_t(i)];
    for (size_t f = 0; f < L.facet_masks.size(); ++f) {
        const FacetCandidate* fc = by_mask[L.facet_masks[f]];
        std::vector<int> keep;
        for (int r : L.facet_ridges[f]) {
            if (std::binary_search(fc->face_cycles.begin(), fc->face_cycles.end(),
                                   L.ridge_cycles[size_t(r)]))
                keep.push_back(r);
        }
        L.facet_ridges[f] = keep;
    }
    return L;
}

FaceLattice from_facet_list(int n, const std::vector<std::vector<int>>& facet_vertex_sets) {
    if (n < 1 || n > 31) throw LatticeError("vertex count out of range");
    std::set<std::uint32_t> closure;
    for (const auto& fv : facet_vertex_sets) {
        std::uint32_t m = 0;
        for (int v : fv) {
            if (v < 0 || v >= n) throw LatticeError("facet vertex out of range");
            m |= 1u << v;
        }
        closure.insert(m);
    }
    // meet-closure of the facet sets
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint32_t> cur(closure.begin(), closure.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j)
                if (closure.insert(cur[i] & cur[j]).second) grew = true;
    }
    closure.erase(0u);
    std::uint32_t full = (n == 31) ? 0x7fffffffu : ((1u << n) - 1);

    // longest-chain rank from the bottom
    std::vector<std::uint32_t> elems(closure.begin(), closure.end());
    std::sort(elems.begin(), elems.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::vector<int> rk(elems.size(), 1);
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if ((elems[j] & elems[i]) == elems[j] && elems[j] != elems[i])
                rk[i] = std::max(rk[i], rk[j] + 1);

    FaceLattice L;
    L.n = n;
    std::uint32_t seen_verts = 0;
    for (size_t i = 0; i < elems.size(); ++i) {
        int pc = __builtin_popcount(elems[i]);
        switch (rk[i]) {
            case 1:
                if (pc != 1) throw LatticeError("rank-1 face is not a vertex");
                seen_verts |= elems[i];
                break;
            case 2:
                if (pc != 2) throw LatticeError("rank-2 face is not an edge");
                L.edge_masks.push_back(elems[i]);
                break;
            case 3:
                L.ridge_masks.push_back(elems[i]);
                break;
            case 4:
                L.facet_masks.push_back(elems[i]);
                break;
            default:
                throw LatticeError("closure poset has rank > 4 proper faces");
        }
    }
    if (seen_verts != full) throw LatticeError("some vertex lies in no facet");
    if (L.facet_masks.size() != facet_vertex_sets.size())
        throw LatticeError("closure ranks do not reproduce the facet list");
    for (auto rm : L.ridge_masks) L.ridge_cycles.push_back(cycle_from_edges(rm, L.edge_masks));
    sort_faces(L);
    link_faces(L);
    return L;
}

PosetView poset(const FaceLattice& L) {
    PosetView P;
    int n_elems = 2 + L.n + int(L.edge_masks.size() + L.ridge_masks.size() + L.facet_masks.size());
    P.rank.assign(size_t(n_elems), 0);
    P.vset.assign(size_t(n_elems), 0);
    P.leq.assign(size_t(n_elems), std::vector<char>(size_t(n_elems), 0));
    P.bottom = 0;
    P.top = n_elems - 1;
    int idx = 1;
    std::vector<int> vstart(size_t(L.n));
    for (int v = 0; v < L.n; ++v, ++idx) {
        vstart[size_t(v)] = idx;
        P.rank[size_t(idx)] = 1;
        P.vset[size_t(idx)] = 1u << v;
    }
    int estart = idx;
    for (auto em : L.edge_masks) {
        P.rank[size_t(idx)] = 2;
        P.vset[size_t(idx)] = em;
        ++idx;
    }
    int rstart = idx;
    for (auto rm : L.ridge_masks) {
        P.rank[size_t(idx)] = 3;
        P.vset[size_t(idx)] = rm;
        ++idx;
    }
    int fstart = idx;
    for (auto fm : L.facet_masks) {
        P.rank[size_t(idx)] = 4;
        P.vset[size_t(idx)] = fm;
        ++idx;
    }
    std::uint32_t full = 0;
    for (int v = 0; v < L.n; ++v) full |= 1u << v;
    P.rank[size_t(P.top)] = 5;
    P.vset[size_t(P.top)] = full;

    // covers
    std::vector<std::vector<int>> up;
    up.resize(size_t(n_elems));
    for (int v = 0; v < L.n; ++v) up[size_t(P.bottom)].push_back(vstart[size_t(v)]);
    for (size_t e = 0; e < L.edge_masks.size(); ++e) {
        auto vs = mask_to_list(L.edge_masks[e]);
        for (int v : vs) up[size_t(vstart[size_t(v)])].push_back(estart + int(e));
    }
    for (size_t r = 0; r < L.ridge_masks.size(); ++r)
        for (int e : L.ridge_edges[r]) up[size_t(estart + e)].push_back(rstart + int(r));
    for (size_t f = 0; f < L.facet_masks.size(); ++f)
        for (int r : L.facet_ridges[f]) up[size_t(rstart + r)].push_back(fstart + int(f));
    for (size_t f = 0; f < L.facet_masks.size(); ++f)
        up[size_t(fstart + int(f))].push_back(P.top);

    // transitive closure, processing by rank
    for (int i = 0; i < n_elems; ++i) P.leq[size_t(i)][size_t(i)] = 1;
    std::vector<int> order;
    order.resize(size_t(n_elems));
    for (int i = 0; i < n_elems; ++i) order[size_t(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return P.rank[size_t(a)] > P.rank[size_t(b)]; });
    for (int a : order)
        for (int b : up[size_t(a)])
            for (int c = 0; c < n_elems; ++c)
                if (P.leq[size_t(b)][size_t(c)]) P.leq[size_t(a)][size_t(c)] = 1;
    return P;
}

bool is_graded(const PosetView& P) {
    int n = int(P.rank.size());
    for (int a = 0; a < n; ++a) {
        if (!P.leq[size_t(P.bottom)][size_t(a)] || !P.leq[size_t(a)][size_t(P.top)]) return false;
        for (int b = 0; b < n; ++b) {
            if (a == b || !P.leq[size_t(a)][size_t(b)]) continue;
            bool cover = true;
            for (int c = 0; c < n && cover; ++c)
                if (c != a && c != b && P.leq[size_t(a)][size_t(c)] && P.leq[size_t(c)][size_t(b)])
                    cover = false;
            if (cover && P.rank[size_t(b)] != P.rank[size_t(a)] + 1) return false;
        }
    }
    return P.rank[size_t(P.top)] == 5;
}

bool is_eulerian(const PosetView& P) {
    if (!is_graded(P)) return false;
    int n = int(P.rank.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !P.leq[size_t(a)][size_t(b)]) continue;
            int odd = 0, even = 0;
            for (int c = 0; c < n; ++c)
                if (P.leq[size_t(a)][size_t(c)] && P.leq[size_t(c)][size_t(b)]) {
                    if (P.rank[size_t(c)] & 1)
                        ++odd;
                    else
                        ++even;
                }
            if (odd != even) return false;
        }
    return true;
}

bool is_interval_connected(const PosetView& P) {
    if (!is_graded(P)) return false;
    int n = int(P.rank.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !P.leq[size_t(a)][size_t(b)]) continue;
            if (P.rank[size_t(b)] - P.rank[size_t(a)] < 3) continue;
            std::vector<int> mid;
            for (int c = 0; c < n; ++c)
                if (c != a && c != b && P.leq[size_t(a)][size_t(c)] && P.leq[size_t(c)][size_t(b)])
                    mid.push_back(c);
            if (mid.empty()) return false;
            // connectivity of the comparability graph of the proper part
            std::vector<char> vis(mid.size(), 0);
            std::vector<size_t> stack{0};
            vis[0] = 1;
            size_t cnt = 1;
            while (!stack.empty()) {
                size_t i = stack.back();
                stack.pop_back();
                for (size_t j = 0; j < mid.size(); ++j) {
                    if (vis[j]) continue;
                    int x = mid[i], y = mid[j];
                    if (P.leq[size_t(x)][size_t(y)] || P.leq[size_t(y)][size_t(x)]) {
                        vis[j] = 1;
                        ++cnt;
                        stack.push_back(j);
                    }
                }
            }
            if (cnt != mid.size()) return false;
        }
    return true;
}

bool has_intersection_property(const PosetView& P) {
    int n = int(P.rank.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            std::vector<int> lower;
            for (int c = 0; c < n; ++c)
                if (P.leq[size_t(c)][size_t(a)] && P.leq[size_t(c)][size_t(b)]) lower.push_back(c);
            // maximal common lower bounds
            std::vector<int> maximal;
            for (int x : lower) {
                bool is_max = true;
                for (int y : lower)
                    if (y != x && P.leq[size_t(x)][size_t(y)]) {
                        is_max = false;
                        break;
                    }
                if (is_max) maximal.push_back(x);
            }
            if (maximal.size() != 1) return false;
            if (P.vset[size_t(maximal[0])] != (P.vset[size_t(a)] & P.vset[size_t(b)]))
                return false;
        }
    return true;
}

bool is_eulerian(const FaceLattice& L) { return is_eulerian(poset(L)); }
bool is_interval_connected(const FaceLattice& L) { return is_interval_connected(poset(L)); }
bool has_intersection_property(const FaceLattice& L) {
    return has_intersection_property(poset(L));
}

FaceLattice dual(const FaceLattice& L) {
    FaceLattice D;
    D.n = int(L.facet_masks.size());
    if (D.n > 31) throw LatticeError("dual: too many facets");
    // dual edges: one per ridge, joining the two facets above it
    for (size_t r = 0; r < L.ridge_masks.size(); ++r) {
        std::uint32_t m = 0;
        int cnt = 0;
        for (size_t f = 0; f < L.facet_masks.size(); ++f)
            for (int rr : L.facet_ridges[f])
                if (size_t(rr) == r) {
                    m |= 1u << int(f);
                    ++cnt;
                }
        if (cnt != 2) throw LatticeError("dual: ridge not in exactly two facets");
        D.edge_masks.push_back(m);
    }
    // dual ridges: one per edge, the facet cycle around it
    for (size_t e = 0; e < L.edge_masks.size(); ++e) {
        std::vector<int> fs, rs;
        for (size_t f = 0; f < L.facet_masks.size(); ++f)
            if ((L.edge_masks[e] & L.facet_masks[f]) == L.edge_masks[e]) fs.push_back(int(f));
        for (size_t r = 0; r < L.ridge_masks.size(); ++r)
            if (std::find(L.ridge_edges[r].begin(), L.ridge_edges[r].end(), int(e)) !=
                L.ridge_edges[r].end())
                rs.push_back(int(r));
        if (fs.size() != rs.size() || fs.size() < 3)
            throw LatticeError("dual: edge interval is not a polygon");
        // walk facet -> ridge -> facet around the edge
        auto facets_of_ridge = [&](int r) {
            std::vector<int> out;
            for (int f : fs)
                for (int rr : L.facet_ridges[size_t(f)])
                    if (rr == r) out.push_back(f);
            return out;
        };
        auto ridges_of_facet = [&](int f) {
            std::vector<int> out;
            for (int r : rs)
                for (int rr : L.facet_ridges[size_t(f)])
                    if (rr == r) out.push_back(r);
            return out;
        };
        std::vector<int> cyc{fs[0]};
        auto r0s = ridges_of_facet(fs[0]);
        if (r0s.size() != 2) throw LatticeError("dual: edge polygon walk broken");
        int prev_r = r0s[0];
        while (true) {
            int cur_f = cyc.back();
            auto rr = ridges_of_facet(cur_f);
            if (rr.size() != 2) throw LatticeError("dual: edge polygon walk broken");
            int nxt_r = (rr[0] == prev_r) ? rr[1] : rr[0];
            auto ff = facets_of_ridge(nxt_r);
            if (ff.size() != 2) throw LatticeError("dual: edge polygon walk broken");
            int nxt_f = (ff[0] == cur_f) ? ff[1] : ff[0];
            if (nxt_f == cyc[0]) break;
            cyc.push_back(nxt_f);
            prev_r = nxt_r;
            if (cyc.size() > fs.size()) throw LatticeError("dual: edge polygon does not close");
        }
        if (cyc.size() != fs.size()) throw LatticeError("dual: edge polygon disconnected");
        std::uint32_t m = 0;
        for (int f : cyc) m |= 1u << f;
        D.ridge_masks.push_back(m);
        D.ridge_cycles.push_back(normalize_cycle(cyc));
    }
    // dual facets: one per vertex, all facets above it
    for (int v = 0; v < L.n; ++v) {
        std::uint32_t m = 0;
        for (size_t f = 0; f < L.facet_masks.size(); ++f)
            if ((L.facet_masks[f] >> v) & 1) m |= 1u << int(f);
        D.facet_masks.push_back(m);
    }
    sort_faces(D);
    link_faces(D);
    return D;
}

FVector f_vector(const FaceLattice& L) {
    return {L.n, (long long)L.edge_masks.size(), (long long)L.ridge_masks.size(),
            (long long)L.facet_masks.size()};
}

long long flag_f03(const FaceLattice& L) {
    long long s = 0;
    for (auto fm : L.facet_masks) s += __builtin_popcount(fm);
    return s;
}

bool is_2s2s(const FaceLattice& L) {
    for (const auto& cyc : L.ridge_cycles)
        if (cyc.size() != 3) return false;
    for (auto em : L.edge_masks) {
        int cnt = 0;
        for (auto fm : L.facet_masks)
            if ((fm & em) == em) ++cnt;
        if (cnt != 3) return false;
    }
    return true;
}

std::string lattice_code(const FaceLattice& L) {
    int k = int(L.facet_masks.size());
    Graph b(L.n + k);
    std::vector<int> color(size_t(L.n + k), 0);
    for (int f = 0; f < k; ++f) {
        color[size_t(L.n + f)] = 1;
        for (int v : mask_to_list(L.facet_masks[size_t(f)])) b.add_edge(v, L.n + f);
    }
    CanonResult c = canonical_form(b, color);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned char ch : c.cert) {
        out.push_back(hex[ch >> 4]);
        out.push_back(hex[ch & 15]);
    }
    return out;
}

Graph skeleton(const FaceLattice& L) {
    Graph g(L.n);
    for (auto em : L.edge_masks) {
        auto e = mask_to_list(em);
        g.add_edge(e[0], e[1]);
    }
    return g;
}

}  // namespace eulat
