#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace eulat {

// Simple undirected graph on vertices 0..n-1. Everything in this project
// lives on a few dozen vertices at most, so adjacency rows are 64-bit masks.
struct Graph {
    int n = 0;
    std::vector<std::uint64_t> adj;  // adj[v] has bit u set iff uv is an edge

    Graph() = default;
    explicit Graph(int n_) : n(n_), adj(n_, 0) {}

    bool has_edge(int u, int v) const { return (adj[u] >> v) & 1; }
    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("loop edge");
        adj[u] |= std::uint64_t(1) << v;
        adj[v] |= std::uint64_t(1) << u;
    }
    void remove_edge(int u, int v) {
        adj[u] &= ~(std::uint64_t(1) << v);
        adj[v] &= ~(std::uint64_t(1) << u);
    }
    int degree(int v) const { return __builtin_popcountll(adj[v]); }
    int edge_count() const {
        int s = 0;
        for (int v = 0; v < n; ++v) s += degree(v);
        return s / 2;
    }
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (has_edge(u, v)) e.push_back({u, v});
        return e;
    }
    int min_degree() const {
        int d = n;
        for (int v = 0; v < n; ++v) d = std::min(d, degree(v));
        return n == 0 ? 0 : d;
    }
    Graph complement() const {
        Graph c(n);
        std::uint64_t all = (n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1);
        for (int v = 0; v < n; ++v) c.adj[v] = all & ~adj[v] & ~(std::uint64_t(1) << v);
        return c;
    }
    // Induced subgraph on the vertices of `mask`, relabeled 0..k-1 in
    // increasing original order. Optionally reports the original labels.
    Graph induced(std::uint64_t mask, std::vector<int>* labels = nullptr) const;
    Graph relabeled(const std::vector<int>& pos_to_old) const;

    bool operator==(const Graph& o) const { return n == o.n && adj == o.adj; }
};

// Connected on the full vertex set (empty graph counts as connected for n<=1).
bool is_connected(const Graph& g);
bool is_connected_within(const Graph& g, std::uint64_t mask);

// True iff g has more than k vertices and no cut set of fewer than k vertices.
bool is_k_connected(const Graph& g, int k);

// graph6 encoding of a labeled graph (n <= 62). Used as the printable form of
// canonical codes.
std::string graph6_encode(const Graph& g);
Graph graph6_decode(const std::string& s);

}  // namespace eulat
