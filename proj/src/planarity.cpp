#include "eulat/planarity.hpp"

#include <algorithm>
#include <optional>

namespace eulat {

namespace {

// One fragment of G relative to the embedded subgraph H: either a chord
// (both ends in H) or a connected component of G-V(H) plus its edges to H.
struct Fragment {
    std::uint64_t comp = 0;          // interior vertices (empty for a chord)
    std::uint64_t attach = 0;        // attachment vertices (in H)
    std::pair<int, int> chord{-1, -1};
};

// Planarity by iterative face embedding (Demoucron-Malgrange-Pertuiset).
// Requires a 2-connected input with at least one cycle. Returns the face
// list on success, nullopt if nonplanar.
std::optional<std::vector<std::vector<int>>> dmp_embed(const Graph& g) {
    int n = g.n;
    long long m = g.edge_count();
    if (n >= 3 && m > 3LL * n - 6) return std::nullopt;

    // find any cycle by walking from an arbitrary vertex (min degree >= 2)
    std::vector<int> parent(n, -1), order;
    std::vector<char> seen(n, 0);
    std::vector<int> cyc;
    {
        std::vector<int> stack{0};
        seen[0] = 1;
        int cu = -1, cv = -1;
        while (!stack.empty() && cu < 0) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n && cu < 0; ++v) {
                if (!g.has_edge(u, v) || v == parent[u]) continue;
                if (seen[v]) {
                    cu = u;
                    cv = v;  // back edge closes a cycle
                } else {
                    seen[v] = 1;
                    parent[v] = u;
                    stack.push_back(v);
                }
            }
        }
        if (cu < 0) return std::nullopt;  // acyclic: caller handles trees separately
        // walk parents from cu up to cv
        std::vector<int> path;
        for (int x = cu; x != -1; x = parent[x]) {
            path.push_back(x);
            if (x == cv) break;
        }
        if (path.back() != cv) {
            // cv is not an ancestor of cu; since DFS stack order above is not a
            // strict DFS tree, fall back to BFS path cu->cv avoiding edge (cu,cv)
            std::vector<int> par2(n, -2);
            par2[cu] = -1;
            std::vector<int> q{cu};
            for (size_t qi = 0; qi < q.size(); ++qi) {
                int u = q[qi];
                for (int v = 0; v < n; ++v) {
                    if (!g.has_edge(u, v) || par2[v] != -2) continue;
                    if (u == cu && v == cv) continue;
                    par2[v] = u;
                    q.push_back(v);
                }
            }
            path.clear();
            for (int x = cv; x != -1; x = par2[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
        }
        cyc = path;
    }

    std::vector<std::vector<int>> faces;
    faces.push_back(cyc);
    std::vector<int> rcyc(cyc.rbegin(), cyc.rend());
    faces.push_back(rcyc);

    Graph emb(n);  // embedded edges
    std::uint64_t inH = 0;
    for (size_t i = 0; i < cyc.size(); ++i) {
        emb.add_edge(cyc[i], cyc[(i + 1) % cyc.size()]);
        inH |= std::uint64_t(1) << cyc[i];
    }
    long long embedded = (long long)cyc.size();

    while (embedded < m) {
        // collect fragments
        std::vector<Fragment> frags;
        for (int u = 0; u < n; ++u) {
            if (!((inH >> u) & 1)) continue;
            for (int v = u + 1; v < n; ++v)
                if (((inH >> v) & 1) && g.has_edge(u, v) && !emb.has_edge(u, v)) {
                    Fragment f;
                    f.attach = (std::uint64_t(1) << u) | (std::uint64_t(1) << v);
                    f.chord = {u, v};
                    frags.push_back(f);
                }
        }
        std::uint64_t outside = ~inH & ((n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1));
        std::uint64_t todo = outside;
        while (todo) {
            int s = __builtin_ctzll(todo);
            // component of s in G - H
            std::uint64_t comp = std::uint64_t(1) << s, frontier = comp;
            while (frontier) {
                std::uint64_t next = 0, f = frontier;
                while (f) {
                    int v = __builtin_ctzll(f);
                    f &= f - 1;
                    next |= g.adj[v] & outside & ~comp;
                }
                comp |= next;
                frontier = next;
            }
            todo &= ~comp;
            Fragment fr;
            fr.comp = comp;
            std::uint64_t f = comp;
            while (f) {
                int v = __builtin_ctzll(f);
                f &= f - 1;
                fr.attach |= g.adj[v] & inH;
            }
            frags.push_back(fr);
        }

        // admissible faces per fragment
        int best = -1;
        size_t best_count = SIZE_MAX;
        int best_face = -1;
        for (size_t i = 0; i < frags.size(); ++i) {
            size_t count = 0;
            int firstf = -1;
            for (size_t fi = 0; fi < faces.size(); ++fi) {
                std::uint64_t fmask = 0;
                for (int v : faces[fi]) fmask |= std::uint64_t(1) << v;
                if ((frags[i].attach & ~fmask) == 0) {
                    ++count;
                    if (firstf < 0) firstf = int(fi);
                }
            }
            if (count == 0) return std::nullopt;
            if (count < best_count) {
                best_count = count;
                best = int(i);
                best_face = firstf;
            }
        }
        const Fragment fr = frags[size_t(best)];

        // alpha path through the fragment between two distinct attachments
        std::vector<int> path;
        if (fr.chord.first >= 0) {
            path = {fr.chord.first, fr.chord.second};
        } else {
            int a = __builtin_ctzll(fr.attach);
            std::vector<int> par(n, -2);
            std::vector<int> q;
            std::uint64_t f = g.adj[a] & fr.comp;
            while (f) {
                int v = __builtin_ctzll(f);
                f &= f - 1;
                par[v] = a;
                q.push_back(v);
            }
            int endb = -1, endin = -1;
            for (size_t qi = 0; qi < q.size() && endb < 0; ++qi) {
                int u = q[qi];
                std::uint64_t att = g.adj[u] & fr.attach & ~(std::uint64_t(1) << a);
                if (att) {
                    endb = __builtin_ctzll(att);
                    endin = u;
                    break;
                }
                std::uint64_t nb = g.adj[u] & fr.comp;
                while (nb) {
                    int v = __builtin_ctzll(nb);
                    nb &= nb - 1;
                    if (par[v] == -2) {
                        par[v] = u;
                        q.push_back(v);
                    }
                }
            }
            if (endb < 0) return std::nullopt;  // cannot happen in 2-connected input
            for (int x = endin; x != a; x = par[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            path.insert(path.begin(), a);
            path.push_back(endb);
        }

        // split chosen face by the path
        std::vector<int> face = faces[size_t(best_face)];
        faces.erase(faces.begin() + best_face);
        int a = path.front(), b = path.back();
        size_t ia = 0, ib = 0;
        for (size_t i = 0; i < face.size(); ++i) {
            if (face[i] == a) ia = i;
            if (face[i] == b) ib = i;
        }
        std::vector<int> arc1, arc2;
        for (size_t i = ia;; i = (i + 1) % face.size()) {
            arc1.push_back(face[i]);
            if (i == ib) break;
        }
        for (size_t i = ib;; i = (i + 1) % face.size()) {
            arc2.push_back(face[i]);
            if (i == ia) break;
        }
        std::vector<int> f1 = arc1;  // a..b then path interior reversed
        for (size_t i = path.size() - 2; i >= 1; --i) f1.push_back(path[i]);
        std::vector<int> f2 = arc2;  // b..a then path interior forward
        for (size_t i = 1; i + 1 < path.size(); ++i) f2.push_back(path[i]);
        faces.push_back(f1);
        faces.push_back(f2);

        for (size_t i = 0; i + 1 < path.size(); ++i) {
            emb.add_edge(path[i], path[i + 1]);
            ++embedded;
        }
        for (int v : path) inH |= std::uint64_t(1) << v;
    }
    return faces;
}

// Biconnected components as edge lists (Hopcroft-Tarjan lowpoint algorithm).
std::vector<std::vector<std::pair<int, int>>> blocks(const Graph& g) {
    int n = g.n;
    std::vector<int> num(n, -1), low(n, 0), parent(n, -1);
    std::vector<std::pair<int, int>> estack;
    std::vector<std::vector<std::pair<int, int>>> out;
    int counter = 0;

    struct Frame {
        int v;
        int next = 0;
    };
    for (int s = 0; s < n; ++s) {
        if (num[s] >= 0) continue;
        std::vector<Frame> st{{s}};
        num[s] = low[s] = counter++;
        while (!st.empty()) {
            Frame& fr = st.back();
            int v = fr.v;
            if (fr.next < n) {
                int w = fr.next++;
                if (!g.has_edge(v, w) || w == parent[v]) continue;
                if (num[w] < 0) {
                    estack.push_back({v, w});
                    parent[w] = v;
                    num[w] = low[w] = counter++;
                    st.push_back({w});
                } else if (num[w] < num[v]) {
                    estack.push_back({v, w});
                    low[v] = std::min(low[v], num[w]);
                }
            } else {
                st.pop_back();
                if (!st.empty()) {
                    int u = st.back().v;
                    low[u] = std::min(low[u], low[v]);
                    if (low[v] >= num[u]) {
                        // pop the block rooted at edge (u,v)
                        std::vector<std::pair<int, int>> blk;
                        while (!estack.empty()) {
                            auto e = estack.back();
                            estack.pop_back();
                            blk.push_back(e);
                            if (e == std::make_pair(u, v)) break;
                        }
                        if (!blk.empty()) out.push_back(blk);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

bool is_planar(const Graph& g) {
    if (g.n <= 4) return true;
    long long m = g.edge_count();
    if (m > 3LL * g.n - 6) return false;
    for (const auto& blk : blocks(g)) {
        if (blk.size() <= 2) continue;  // bridge or two-edge block: planar
        std::uint64_t vmask = 0;
        for (auto [u, v] : blk) vmask |= (std::uint64_t(1) << u) | (std::uint64_t(1) << v);
        std::vector<int> labels;
        Graph sub(g.induced(vmask, &labels));
        // keep only the block's own edges (induced can pick up edges of other
        // blocks only at cut vertices, and blocks share at most one vertex,
        // so induced == block subgraph here)
        if (!dmp_embed(sub)) return false;
    }
    return true;
}

std::vector<int> normalize_cycle(const std::vector<int>& cycle) {
    size_t k = cycle.size();
    std::vector<int> best;
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<int> c = cycle;
        if (dir) std::reverse(c.begin(), c.end());
        for (size_t s = 0; s < k; ++s) {
            std::vector<int> rot(k);
            for (size_t i = 0; i < k; ++i) rot[i] = c[(s + i) % k];
            if (best.empty() || rot < best) best = rot;
        }
    }
    return best;
}

std::vector<std::vector<int>> embedding_faces(const Graph& g) {
    if (!is_k_connected(g, 3)) throw NotPlanar3ConnectedError();
    auto faces = dmp_embed(g);
    if (!faces) throw NotPlanar3ConnectedError();
    std::vector<std::vector<int>> out;
    for (auto& f : *faces) out.push_back(normalize_cycle(f));
    std::sort(out.begin(), out.end());
    long long n = g.n, m = g.edge_count();
    if (n - m + (long long)out.size() != 2)
        throw std::logic_error("embedding face count violates Euler relation");
    return out;
}

}  // namespace eulat
