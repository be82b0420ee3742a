#include "eulat/graph_enum.hpp"

#include <algorithm>

#include "eulat/canonical.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eulat {

namespace {

// Feasibility prune while growing the sparse side.
//  - complement side: complement degrees only grow, so cap them at
//    n-1-min_degree (min degree on the real graph).
//  - direct side: every vertex still needs to reach min_degree; each new edge
//    lowers the total deficit by at most 2.
bool prune_ok(const Graph& g, int cur_edges, int max_edges, int max_degree, int min_degree_target,
              bool complement_side) {
    if (complement_side) {
        for (int v = 0; v < g.n; ++v)
            if (g.degree(v) > max_degree) return false;
        return true;
    }
    int deficit = 0;
    for (int v = 0; v < g.n; ++v) deficit += std::max(0, min_degree_target - g.degree(v));
    return deficit <= 2 * (max_edges - cur_edges);
}

std::vector<std::string> expand_one(const std::string& code, int max_edges, int max_degree,
                                    int min_degree_target, bool complement_side) {
    std::vector<std::string> out;
    Graph g = graph6_decode(code);
    int cur = g.edge_count();
    if (cur >= max_edges) return out;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            if (g.has_edge(u, v)) continue;
            g.add_edge(u, v);
            if (prune_ok(g, cur + 1, max_edges, max_degree, min_degree_target, complement_side))
                out.push_back(canonical_code(g));
            g.remove_edge(u, v);
        }
    return out;
}

}  // namespace

std::vector<std::string> expand_level(const std::vector<std::string>& level, int n, int max_edges,
                                      int max_degree, int min_degree_target, bool complement_side,
                                      bool parallel) {
    (void)n;
    std::vector<std::string> children;
    if (parallel) {
#ifdef _OPENMP
        std::vector<std::vector<std::string>> per(level.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < (long long)level.size(); ++i)
            per[i] = expand_one(level[i], max_edges, max_degree, min_degree_target,
                                complement_side);
        for (auto& p : per) children.insert(children.end(), p.begin(), p.end());
        return children;
#endif
    }
    for (const auto& code : level) {
        auto c = expand_one(code, max_edges, max_degree, min_degree_target, complement_side);
        children.insert(children.end(), c.begin(), c.end());
    }
    return children;
}

std::vector<Graph> enumerate_graphs(int n, int m, const GraphEnumOptions& opts) {
    std::vector<Graph> result;
    if (n < 1 || m < 0) return result;
    long long maxm = (long long)n * (n - 1) / 2;
    if (m > maxm) return result;
    if (opts.connectivity != 2 && opts.connectivity != 4)
        throw std::invalid_argument("connectivity must be 2 or 4");

    // grow whichever of graph/complement has fewer edges
    bool complement_side = m > maxm - m;
    int grow_edges = complement_side ? int(maxm - m) : m;
    int max_degree = complement_side ? (n - 1 - opts.min_degree) : n - 1;
    if (complement_side && max_degree < 0) return result;

    std::vector<std::string> level{graph6_encode(Graph(n))};
    for (int e = 0; e < grow_edges; ++e) {
        auto children = expand_level(level, n, grow_edges, max_degree, opts.min_degree,
                                     complement_side, opts.parallel);
        std::sort(children.begin(), children.end());
        children.erase(std::unique(children.begin(), children.end()), children.end());
        level = std::move(children);
        if (level.empty()) return result;
    }

    std::vector<std::string> codes;
    for (const auto& code : level) {
        Graph g = graph6_decode(code);
        if (complement_side) g = g.complement();
        if (g.min_degree() < opts.min_degree) continue;
        if (!is_k_connected(g, opts.connectivity)) continue;
        codes.push_back(complement_side ? canonical_code(g) : code);
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    for (const auto& c : codes) result.push_back(graph6_decode(c));
    return result;
}

}  // namespace eulat
