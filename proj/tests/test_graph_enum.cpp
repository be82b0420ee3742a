#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "eulat/canonical.hpp"
#include "eulat/graph.hpp"
#include "eulat/graph_enum.hpp"

using namespace eulat;

TEST_SUITE_BEGIN("test_graph_enum");

namespace {

// oracle: all edge subsets, isomorph rejection by canonical code
std::map<int, std::set<std::string>> brute_force_classes(int n, int min_degree,
                                                         int connectivity) {
    std::vector<std::pair<int, int>> all_edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all_edges.push_back({u, v});
    int m = int(all_edges.size());
    std::map<int, std::set<std::string>> by_edge_count;
    for (std::uint32_t sub = 0; sub < (1u << m); ++sub) {
        Graph g(n);
        for (int i = 0; i < m; ++i)
            if ((sub >> i) & 1) g.add_edge(all_edges[size_t(i)].first, all_edges[size_t(i)].second);
        if (g.min_degree() < min_degree) continue;
        if (!is_k_connected(g, connectivity)) continue;
        by_edge_count[g.edge_count()].insert(canonical_code(g));
    }
    return by_edge_count;
}

// max-flow vertex connectivity oracle (node splitting, unit capacities)
int flow_connectivity(const Graph& g) {
    int n = g.n;
    if (n <= 1) return 0;
    int best = n;
    auto maxflow = [&](int s, int t) {
        // nodes: 2*v for in, 2*v+1 for out; dense capacity matrix
        int N = 2 * n;
        std::vector<std::vector<int>> cap(size_t(N), std::vector<int>(size_t(N), 0));
        for (int v = 0; v < n; ++v) cap[size_t(2 * v)][size_t(2 * v + 1)] = (v == s || v == t) ? n : 1;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && g.has_edge(u, v)) cap[size_t(2 * u + 1)][size_t(2 * v)] = n;
        int flow = 0;
        while (true) {
            std::vector<int> prev(size_t(N), -1);
            std::vector<int> q{2 * s + 1};
            prev[size_t(2 * s + 1)] = 2 * s + 1;
            for (size_t qi = 0; qi < q.size() && prev[size_t(2 * t)] == -1; ++qi) {
                int x = q[qi];
                for (int y = 0; y < N; ++y) {
                    if (cap[size_t(x)][size_t(y)] <= 0 || prev[size_t(y)] != -1) continue;
                    prev[size_t(y)] = x;
                    q.push_back(y);
                }
            }
            if (prev[size_t(2 * t)] == -1) break;
            for (int x = 2 * t; x != 2 * s + 1; x = prev[size_t(x)]) {
                cap[size_t(prev[size_t(x)])][size_t(x)] -= 1;
                cap[size_t(x)][size_t(prev[size_t(x)])] += 1;
            }
            ++flow;
        }
        return flow;
    };
    bool any_pair = false;
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t)
            if (!g.has_edge(s, t)) {
                any_pair = true;
                best = std::min(best, maxflow(s, t));
            }
    if (!any_pair) return n - 1;  // complete graph
    return best;
}

}  // namespace

TEST_CASE("is_k_connected basics") {
    Graph k5(5);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v);
    CHECK(is_k_connected(k5, 4));
    CHECK_FALSE(is_k_connected(k5, 5));
    Graph c4(4);
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 0);
    CHECK(is_k_connected(c4, 2));
    CHECK_FALSE(is_k_connected(c4, 3));
}

TEST_CASE("is_k_connected agrees with max-flow oracle on random graphs") {
    std::mt19937_64 rng(5);
    int done = 0;
    while (done < 200) {
        int n = 4 + int(rng() % 7);
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 100 < 55) g.add_edge(u, v);
        if (!is_connected(g)) continue;
        int kappa = flow_connectivity(g);
        for (int k = 1; k <= n; ++k) {
            bool expect = (kappa >= k) && (g.n > k);
            CHECK(is_k_connected(g, k) == expect);
        }
        ++done;
    }
}

TEST_CASE("forced small classes") {
    auto g1 = enumerate_graphs(5, 10, {4, 2});
    REQUIRE(g1.size() == 1);  // K5
    CHECK(g1[0].edge_count() == 10);
    auto g2 = enumerate_graphs(6, 12, {4, 2});
    REQUIRE(g2.size() == 1);  // octahedron
    CHECK(g2[0].min_degree() == 4);
    CHECK(is_k_connected(g2[0], 4));
    auto none = enumerate_graphs(5, 11, {4, 2});
    CHECK(none.empty());
}

TEST_CASE("enumeration equals brute force for n <= 7") {
    for (int n = 4; n <= 7; ++n) {
        auto oracle = brute_force_classes(n, 4, 2);
        long long maxm = n * (n - 1) / 2;
        for (int m = 0; m <= maxm; ++m) {
            auto got = enumerate_graphs(n, m, {4, 2});
            std::set<std::string> codes;
            for (const auto& g : got) {
                CHECK(g.edge_count() == m);
                CHECK(g.min_degree() >= 4);
                CHECK(is_k_connected(g, 2));
                codes.insert(canonical_code(g));
            }
            CHECK(codes.size() == got.size());  // pairwise distinct
            auto it = oracle.find(m);
            std::set<std::string> expect = (it == oracle.end()) ? std::set<std::string>{} : it->second;
            CHECK(codes == expect);
        }
    }
}

TEST_CASE("connectivity-4 parameter matches the oracle") {
    for (int n = 5; n <= 7; ++n) {
        auto oracle = brute_force_classes(n, 4, 4);
        long long maxm = n * (n - 1) / 2;
        for (int m = 2 * n; m <= maxm; ++m) {
            auto got = enumerate_graphs(n, m, {4, 4});
            std::set<std::string> codes;
            for (const auto& g : got) {
                CHECK(is_k_connected(g, 4));
                codes.insert(canonical_code(g));
            }
            auto it = oracle.find(m);
            std::set<std::string> expect =
                (it == oracle.end()) ? std::set<std::string>{} : it->second;
            CHECK(codes == expect);
        }
    }
}

TEST_CASE("determinism: two runs produce identical streams") {
    auto a = enumerate_graphs(7, 16, {4, 2});
    auto b = enumerate_graphs(7, 16, {4, 2});
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    std::vector<std::string> codes;
    for (const auto& g : a) codes.push_back(graph6_encode(g));
    CHECK(std::is_sorted(codes.begin(), codes.end()));
}

TEST_CASE("serial and parallel level expansion agree") {
    std::vector<std::string> level{graph6_encode(Graph(6))};
    for (int e = 0; e < 4; ++e) {
        auto ser = expand_level(level, 6, 9, 5, 0, true, false);
        auto par = expand_level(level, 6, 9, 5, 0, true, true);
        std::sort(ser.begin(), ser.end());
        std::sort(par.begin(), par.end());
        CHECK(ser == par);
        ser.erase(std::unique(ser.begin(), ser.end()), ser.end());
        level = ser;
    }
}

TEST_SUITE_END();
