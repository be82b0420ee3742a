#include "eulat/graph.hpp"

#include <algorithm>

namespace eulat {

Graph Graph::induced(std::uint64_t mask, std::vector<int>* labels) const {
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1) verts.push_back(v);
    Graph h(static_cast<int>(verts.size()));
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if (has_edge(verts[i], verts[j])) h.add_edge(int(i), int(j));
    if (labels) *labels = verts;
    return h;
}

Graph Graph::relabeled(const std::vector<int>& pos_to_old) const {
    Graph h(n);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[pos_to_old[i]] = i;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (has_edge(u, v)) h.add_edge(pos[u], pos[v]);
    return h;
}

bool is_connected_within(const Graph& g, std::uint64_t mask) {
    if (mask == 0) return true;
    int start = __builtin_ctzll(mask);
    std::uint64_t seen = std::uint64_t(1) << start;
    std::uint64_t frontier = seen;
    while (frontier) {
        std::uint64_t next = 0;
        std::uint64_t f = frontier;
        while (f) {
            int v = __builtin_ctzll(f);
            f &= f - 1;
            next |= g.adj[v] & mask & ~seen;
        }
        seen |= next;
        frontier = next;
    }
    return seen == mask;
}

bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    std::uint64_t all = (g.n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << g.n) - 1);
    return is_connected_within(g, all);
}

// Direct definition: no vertex cut of size < k. Subset scan is cheap at the
// sizes we care about; a max-flow based check lives in the tests as oracle.
bool is_k_connected(const Graph& g, int k) {
    if (k < 1) return true;
    if (g.n <= k) return false;
    if (!is_connected(g)) return false;
    std::uint64_t all = (g.n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << g.n) - 1);
    // all subsets S with 1 <= |S| <= k-1: G - S must stay connected
    std::vector<int> pick;
    struct Rec {
        const Graph& g;
        std::uint64_t all;
        int k;
        bool ok = true;
        void run(int first, std::uint64_t removed, int cnt) {
            if (!ok) return;
            if (cnt > 0) {
                std::uint64_t rest = all & ~removed;
                if (__builtin_popcountll(rest) > 1 && !is_connected_within(g, rest)) {
                    ok = false;
                    return;
                }
            }
            if (cnt == k - 1) return;
            for (int v = first; v < g.n; ++v) run(v + 1, removed | (std::uint64_t(1) << v), cnt + 1);
        }
    } rec{g, all, k};
    rec.run(0, 0, 0);
    return rec.ok;
}

std::string graph6_encode(const Graph& g) {
    if (g.n > 62) throw std::invalid_argument("graph6: n > 62");
    std::string out;
    out.push_back(char(g.n + 63));
    int bitpos = 0;
    unsigned cur = 0;
    for (int j = 1; j < g.n; ++j)
        for (int i = 0; i < j; ++i) {
            cur = (cur << 1) | unsigned(g.has_edge(i, j));
            if (++bitpos == 6) {
                out.push_back(char(cur + 63));
                cur = 0;
                bitpos = 0;
            }
        }
    if (bitpos > 0) out.push_back(char((cur << (6 - bitpos)) + 63));
    return out;
}

Graph graph6_decode(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("graph6: empty");
    int n = s[0] - 63;
    if (n < 0 || n > 62) throw std::invalid_argument("graph6: bad n byte");
    Graph g(n);
    size_t idx = 1;
    int bitpos = 6;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (bitpos == 6) {
                if (idx >= s.size()) throw std::invalid_argument("graph6: truncated");
                bitpos = 0;
                ++idx;
            }
            unsigned byte = unsigned(s[idx - 1] - 63);
            if ((byte >> (5 - bitpos)) & 1) g.add_edge(i, j);
            ++bitpos;
        }
    return g;
}

}  // namespace eulat
