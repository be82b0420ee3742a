#include "eulat/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

namespace eulat {

namespace {

using Simplex = std::vector<int>;

// all k-element subsets of the faces of the maximal simplices
std::vector<std::vector<Simplex>> face_table(const SimplicialComplex& K) {
    std::vector<std::set<Simplex>> faces(5);  // by cardinality 1..4 at index card-1
    for (const auto& s : K.maximal) {
        int card = int(s.size());
        for (std::uint32_t sub = 1; sub < (1u << card); ++sub) {
            Simplex f;
            for (int i = 0; i < card; ++i)
                if ((sub >> i) & 1) f.push_back(s[size_t(i)]);
            faces[f.size() - 1].insert(f);
        }
    }
    std::vector<std::vector<Simplex>> out(5);
    for (int k = 0; k < 5; ++k) out[size_t(k)].assign(faces[size_t(k)].begin(), faces[size_t(k)].end());
    return out;
}

// Smith normal form rank and invariant factors of an integer matrix.
// Entries stay tiny for incidence matrices when pivoting on the smallest
// magnitude, but fall back to big integers if anything grows.
struct SnfResult {
    int rank = 0;
    bool nontrivial_factor = false;  // some invariant factor with |d| > 1
};

SnfResult smith_rank(std::vector<std::vector<long long>> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    SnfResult res;
    size_t r = 0, c = 0;
    auto too_big = [](long long v) { return v > (1LL << 45) || v < -(1LL << 45); };
    while (r < rows && c < cols) {
        // smallest nonzero pivot in the remaining block
        size_t pr = rows, pc = cols;
        long long best = 0;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = c; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < std::abs(best))) {
                    best = m[i][j];
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[r], m[pr]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);
        bool clean = true;
        for (size_t i = r + 1; i < rows && clean; ++i) {
            if (m[i][c] == 0) continue;
            long long q = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) {
                m[i][j] -= q * m[r][j];
                if (too_big(m[i][j])) throw std::overflow_error("snf overflow");
            }
            if (m[i][c] != 0) clean = false;
        }
        if (clean)
            for (size_t j = c + 1; j < cols && clean; ++j) {
                if (m[r][j] == 0) continue;
                long long q = m[r][j] / m[r][c];
                for (size_t i = r; i < rows; ++i) {
                    m[i][j] -= q * m[i][c];
                    if (too_big(m[i][j])) throw std::overflow_error("snf overflow");
                }
                if (m[r][j] != 0) clean = false;
            }
        if (!clean) continue;  // new smaller residues appeared; re-pivot this block
        if (std::abs(m[r][c]) != 1) res.nontrivial_factor = true;
        ++res.rank;
        ++r;
        ++c;
    }
    return res;
}

SnfResult smith_rank_big(std::vector<std::vector<BigInt>> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    SnfResult res;
    size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        size_t pr = rows, pc = cols;
        BigInt best = 0;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = c; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || abs(m[i][j]) < abs(best))) {
                    best = m[i][j];
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[r], m[pr]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);
        bool clean = true;
        for (size_t i = r + 1; i < rows && clean; ++i) {
            if (m[i][c] == 0) continue;
            BigInt q = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
            if (m[i][c] != 0) clean = false;
        }
        if (clean)
            for (size_t j = c + 1; j < cols && clean; ++j) {
                if (m[r][j] == 0) continue;
                BigInt q = m[r][j] / m[r][c];
                for (size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
                if (m[r][j] != 0) clean = false;
            }
        if (!clean) continue;
        if (abs(m[r][c]) != 1) res.nontrivial_factor = true;
        ++res.rank;
        ++r;
        ++c;
    }
    return res;
}

}  // namespace

int SimplicialComplex::dim() const {
    int d = -1;
    for (const auto& s : maximal) d = std::max(d, int(s.size()) - 1);
    return d;
}

long long SimplicialComplex::euler_characteristic() const {
    auto faces = face_table(*this);
    long long chi = 0;
    for (int k = 0; k < 5; ++k) {
        long long cnt = (long long)faces[size_t(k)].size();
        chi += (k % 2 == 0) ? cnt : -cnt;
    }
    return chi;
}

SimplicialComplex triangulate(const FaceLattice& L) {
    // complex vertices: proper faces of L, indexed rank by rank
    int vcount = L.n;
    int estart = vcount;
    vcount += int(L.edge_masks.size());
    int rstart = vcount;
    vcount += int(L.ridge_masks.size());
    int fstart = vcount;
    vcount += int(L.facet_masks.size());

    SimplicialComplex K;
    K.nverts = vcount;
    // maximal chains vertex < edge < ridge < facet
    for (size_t f = 0; f < L.facet_masks.size(); ++f)
        for (int r : L.facet_ridges[f])
            for (int e : L.ridge_edges[size_t(r)]) {
                std::uint32_t em = L.edge_masks[size_t(e)];
                std::uint32_t mm = em;
                while (mm) {
                    int v = __builtin_ctz(mm);
                    mm &= mm - 1;
                    K.maximal.push_back({v, estart + e, rstart + r, fstart + int(f)});
                }
            }
    for (auto& s : K.maximal) std::sort(s.begin(), s.end());
    std::sort(K.maximal.begin(), K.maximal.end());
    K.maximal.erase(std::unique(K.maximal.begin(), K.maximal.end()), K.maximal.end());
    return K;
}

BettiVector betti_numbers(const SimplicialComplex& K) {
    auto faces = face_table(K);
    // boundary matrix of dimension k: rows (k-1)-faces, columns k-faces
    auto boundary = [&](int k) {
        const auto& lo = faces[size_t(k - 1)];
        const auto& hi = faces[size_t(k)];
        std::map<Simplex, int> loidx;
        for (size_t i = 0; i < lo.size(); ++i) loidx[lo[i]] = int(i);
        std::vector<std::vector<long long>> m(lo.size(), std::vector<long long>(hi.size(), 0));
        for (size_t j = 0; j < hi.size(); ++j) {
            const Simplex& s = hi[j];
            for (size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f;
                for (size_t i = 0; i < s.size(); ++i)
                    if (i != drop) f.push_back(s[i]);
                m[size_t(loidx.at(f))][j] = (drop % 2 == 0) ? 1 : -1;
            }
        }
        return m;
    };

    std::array<SnfResult, 4> d;  // d[k] = SNF of boundary_k for k=1..3 at index k; d[0] unused rank 0
    for (int k = 1; k <= 3; ++k) {
        if (faces[size_t(k)].empty()) {
            d[size_t(k)] = {};
            continue;
        }
        auto m = boundary(k);
        try {
            d[size_t(k)] = smith_rank(m);
        } catch (const std::overflow_error&) {
            std::vector<std::vector<BigInt>> big(m.size(), std::vector<BigInt>(m[0].size()));
            for (size_t i = 0; i < m.size(); ++i)
                for (size_t j = 0; j < m[i].size(); ++j) big[i][j] = m[i][j];
            d[size_t(k)] = smith_rank_big(big);
        }
    }

    BettiVector bv;
    std::array<long long, 4> nfaces{};
    for (int k = 0; k <= 3; ++k) nfaces[size_t(k)] = (long long)faces[size_t(k)].size();
    for (int k = 0; k <= 3; ++k) {
        long long rank_k = (k >= 1) ? d[size_t(k)].rank : 0;
        long long rank_k1 = (k + 1 <= 3) ? d[size_t(k + 1)].rank : 0;
        bv.b[size_t(k)] = nfaces[size_t(k)] - rank_k - rank_k1;
        // torsion in H_k comes from the invariant factors of boundary_{k+1}
        bv.torsion[size_t(k)] = (k + 1 <= 3) && d[size_t(k + 1)].nontrivial_factor;
    }
    return bv;
}

namespace {

using Tet = std::array<int, 4>;

struct TetComplex {
    std::set<Tet> tets;
    std::map<std::array<int, 3>, std::vector<Tet>> tri2tets;
    std::map<std::array<int, 2>, std::vector<Tet>> edge2tets;
    std::map<int, int> vertex_degree;  // tets per vertex

    static std::array<int, 3> tri_of(const Tet& t, int drop) {
        std::array<int, 3> tr;
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != drop) tr[size_t(k++)] = t[size_t(i)];
        return tr;
    }

    void add(const Tet& t) {
        tets.insert(t);
        for (int d = 0; d < 4; ++d) tri2tets[tri_of(t, d)].push_back(t);
        for (int i = 0; i < 4; ++i) {
            vertex_degree[t[size_t(i)]]++;
            for (int j = i + 1; j < 4; ++j) edge2tets[{t[size_t(i)], t[size_t(j)]}].push_back(t);
        }
    }
    void remove(const Tet& t) {
        tets.erase(t);
        auto drop_from = [&](auto& map, const auto& key) {
            auto& v = map[key];
            v.erase(std::find(v.begin(), v.end(), t));
            if (v.empty()) map.erase(key);
        };
        for (int d = 0; d < 4; ++d) drop_from(tri2tets, tri_of(t, d));
        for (int i = 0; i < 4; ++i) {
            if (--vertex_degree[t[size_t(i)]] == 0) vertex_degree.erase(t[size_t(i)]);
            for (int j = i + 1; j < 4; ++j)
                drop_from(edge2tets, std::array<int, 2>{t[size_t(i)], t[size_t(j)]});
        }
    }
    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        return edge2tets.count({a, b}) > 0;
    }
    bool has_tri(std::array<int, 3> t) const {
        std::sort(t.begin(), t.end());
        return tri2tets.count(t) > 0;
    }
};

TetComplex build_tc(const SimplicialComplex& K) {
    TetComplex tc;
    for (const auto& s : K.maximal) {
        if (s.size() != 4) throw std::invalid_argument("bistellar_reduce: complex is not pure 3d");
        tc.add({s[0], s[1], s[2], s[3]});
    }
    return tc;
}

// 3->2 move on edge e: its three tets are replaced by two. Valid when the
// link of e is a 3-cycle {a,b,c} and abc is not a face.
bool try_edge_candidates(const TetComplex& tc, std::vector<std::pair<std::array<int, 2>, std::array<int, 3>>>& out) {
    out.clear();
    for (const auto& [e, ts] : tc.edge2tets) {
        if (ts.size() != 3) continue;
        std::set<int> link;
        for (const auto& t : ts)
            for (int v : t)
                if (v != e[0] && v != e[1]) link.insert(v);
        if (link.size() != 3) continue;
        std::array<int, 3> abc;
        std::copy(link.begin(), link.end(), abc.begin());
        if (tc.has_tri(abc)) continue;
        out.push_back({e, abc});
    }
    return !out.empty();
}

// 4->1 move at vertex v: its four tets are replaced by the opposite tet.
bool try_vertex_candidates(const TetComplex& tc, std::vector<std::pair<int, Tet>>& out) {
    out.clear();
    for (const auto& [v, deg] : tc.vertex_degree) {
        if (deg != 4) continue;
        std::set<int> link;
        std::vector<Tet> ts;
        for (const auto& t : tc.tets)
            if (std::find(t.begin(), t.end(), v) != t.end()) {
                ts.push_back(t);
                for (int u : t)
                    if (u != v) link.insert(u);
            }
        if (ts.size() != 4 || link.size() != 4) continue;
        Tet opp;
        std::copy(link.begin(), link.end(), opp.begin());
        if (tc.tets.count(opp)) continue;
        out.push_back({v, opp});
    }
    return !out.empty();
}

// 2->3 move on triangle t with apexes u,w: valid when uw is not an edge.
bool try_tri_candidates(const TetComplex& tc, std::vector<std::pair<std::array<int, 3>, std::array<int, 2>>>& out) {
    out.clear();
    for (const auto& [tri, ts] : tc.tri2tets) {
        if (ts.size() != 2) continue;
        int u = -1, w = -1;
        for (int v : ts[0])
            if (std::find(tri.begin(), tri.end(), v) == tri.end()) u = v;
        for (int v : ts[1])
            if (std::find(tri.begin(), tri.end(), v) == tri.end()) w = v;
        if (u == w || tc.has_edge(u, w)) continue;
        out.push_back({tri, {std::min(u, w), std::max(u, w)}});
    }
    return !out.empty();
}

Tet sorted_tet(std::array<int, 4> t) {
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

bool is_closed_pseudomanifold(const SimplicialComplex& K) {
    if (K.maximal.empty() || K.dim() != 3) return false;
    for (const auto& s : K.maximal)
        if (s.size() != 4) return false;
    std::map<std::vector<int>, int> tri_count;
    for (const auto& s : K.maximal)
        for (size_t d = 0; d < 4; ++d) {
            std::vector<int> tri;
            for (size_t i = 0; i < 4; ++i)
                if (i != d) tri.push_back(s[i]);
            tri_count[tri]++;
        }
    for (const auto& [tri, c] : tri_count)
        if (c != 2) return false;
    return true;
}

bool is_boundary_of_4simplex(const SimplicialComplex& K) {
    if (K.maximal.size() != 5) return false;
    std::set<int> verts;
    for (const auto& s : K.maximal) {
        if (s.size() != 4) return false;
        verts.insert(s.begin(), s.end());
    }
    if (verts.size() != 5) return false;
    // all five 4-subsets must be present
    std::set<std::vector<int>> tets(K.maximal.begin(), K.maximal.end());
    std::vector<int> vs(verts.begin(), verts.end());
    for (size_t d = 0; d < 5; ++d) {
        std::vector<int> t;
        for (size_t i = 0; i < 5; ++i)
            if (i != d) t.push_back(vs[i]);
        if (!tets.count(t)) return false;
    }
    return true;
}

BistellarResult bistellar_reduce(const SimplicialComplex& K, std::uint64_t budget,
                                 std::uint64_t seed) {
    BistellarResult res;
    if (!is_closed_pseudomanifold(K)) return res;
    SimplicialComplex cur = K;
    if (is_boundary_of_4simplex(cur)) {
        res.reduced = true;
        return res;
    }
    std::mt19937_64 rng(seed);
    TetComplex tc = build_tc(cur);

    std::vector<std::pair<int, Tet>> vc;
    std::vector<std::pair<std::array<int, 2>, std::array<int, 3>>> ec;
    std::vector<std::pair<std::array<int, 3>, std::array<int, 2>>> tcands;

    auto reached_minimum = [&]() {
        if (tc.tets.size() != 5) return false;
        SimplicialComplex fin;
        fin.nverts = cur.nverts;
        for (const auto& t : tc.tets) fin.maximal.push_back({t[0], t[1], t[2], t[3]});
        return is_boundary_of_4simplex(fin);
    };

    while (res.flips_tried < budget) {
        Flip flip;
        if (try_vertex_candidates(tc, vc)) {
            auto [v, opp] = vc[rng() % vc.size()];
            flip.kind = 3;
            for (const auto& t : tc.tets)
                if (std::find(t.begin(), t.end(), v) != t.end()) flip.removed.push_back(t);
            flip.added.push_back(opp);
        } else if (try_edge_candidates(tc, ec)) {
            auto [e, abc] = ec[rng() % ec.size()];
            flip.kind = 2;
            flip.removed = tc.edge2tets.at(e);
            flip.added.push_back(sorted_tet({e[0], abc[0], abc[1], abc[2]}));
            flip.added.push_back(sorted_tet({e[1], abc[0], abc[1], abc[2]}));
        } else if (try_tri_candidates(tc, tcands)) {
            auto [tri, uw] = tcands[rng() % tcands.size()];
            flip.kind = 1;
            flip.removed = tc.tri2tets.at(tri);
            flip.added.push_back(sorted_tet({tri[0], tri[1], uw[0], uw[1]}));
            flip.added.push_back(sorted_tet({tri[0], tri[2], uw[0], uw[1]}));
            flip.added.push_back(sorted_tet({tri[1], tri[2], uw[0], uw[1]}));
        } else {
            return res;  // no move available (cannot happen on a sphere)
        }
        for (const auto& t : flip.removed) tc.remove(t);
        for (const auto& t : flip.added) tc.add(t);
        res.flips.push_back(flip);
        ++res.flips_tried;
        if (reached_minimum()) {
            res.reduced = true;
            return res;
        }
    }
    return res;  // budget exhausted: undecided
}

SimplicialComplex replay_flips(const SimplicialComplex& K, const std::vector<Flip>& flips) {
    TetComplex tc = build_tc(K);
    auto check_pm = [&]() {
        for (const auto& [tri, ts] : tc.tri2tets)
            if (ts.size() != 2) throw std::runtime_error("replay: not a closed pseudomanifold");
    };
    check_pm();
    for (size_t i = 0; i < flips.size(); ++i) {
        const Flip& f = flips[i];
        for (const auto& t : f.removed)
            if (!tc.tets.count(t)) throw std::runtime_error("replay: removed tet missing");
        // revalidate the move precondition
        if (f.kind == 3) {
            if (f.removed.size() != 4 || f.added.size() != 1)
                throw std::runtime_error("replay: malformed vertex move");
        } else if (f.kind == 2) {
            if (f.removed.size() != 3 || f.added.size() != 2)
                throw std::runtime_error("replay: malformed edge move");
        } else if (f.kind == 1) {
            if (f.removed.size() != 2 || f.added.size() != 3)
                throw std::runtime_error("replay: malformed triangle move");
        } else {
            throw std::runtime_error("replay: unknown move kind");
        }
        for (const auto& t : f.added)
            if (tc.tets.count(t)) throw std::runtime_error("replay: added tet already present");
        for (const auto& t : f.removed) tc.remove(t);
        for (const auto& t : f.added) tc.add(t);
        check_pm();
    }
    SimplicialComplex out;
    out.nverts = K.nverts;
    for (const auto& t : tc.tets) out.maximal.push_back({t[0], t[1], t[2], t[3]});
    return out;
}

}  // namespace eulat
