#include <doctest.h>

#include <algorithm>
#include <set>

#include "eulat/facets.hpp"
#include "eulat/fvector.hpp"
#include "eulat/graph.hpp"
#include "eulat/io.hpp"
#include "eulat/lattice.hpp"
#include "eulat/planarity.hpp"

using namespace eulat;

TEST_SUITE_BEGIN("test_facets");

namespace {

Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph octahedron() {
    Graph g(6);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v)
            if (v != u + 3) g.add_edge(u, v);
    return g;
}

// brute-force oracle over all induced subgraphs with independent tests
std::set<std::uint64_t> oracle_candidates(const Graph& g) {
    std::set<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << g.n); ++mask) {
        if (__builtin_popcountll(mask) < 4) continue;
        Graph sub = g.induced(mask);
        if (is_k_connected(sub, 3) && is_planar(sub)) out.insert(mask);
    }
    return out;
}

}  // namespace

TEST_CASE("K5 yields the five tetrahedra") {
    auto cands = enumerate_facet_candidates(complete(5));
    REQUIRE(cands.size() == 5);
    for (const auto& c : cands) {
        CHECK(c.vertices.size() == 4);
        CHECK(c.face_cycles.size() == 4);
    }
}

TEST_CASE("octahedron yields six wheels and itself") {
    auto cands = enumerate_facet_candidates(octahedron());
    REQUIRE(cands.size() == 7);
    int five = 0, six = 0;
    for (const auto& c : cands) {
        if (c.vertices.size() == 5) {
            ++five;
            CHECK(c.face_cycles.size() == 5);  // square pyramid: 4 triangles + 1 square
        }
        if (c.vertices.size() == 6) {
            ++six;
            CHECK(c.face_cycles.size() == 8);
        }
    }
    CHECK(five == 6);
    CHECK(six == 1);
}

TEST_CASE("candidates match the brute-force oracle on small graphs") {
    std::uint64_t state = 99;
    auto rnd = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    };
    for (int trial = 0; trial < 25; ++trial) {
        int n = 5 + int(rnd() % 3);
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rnd() % 100 < 60) g.add_edge(u, v);
        auto cands = enumerate_facet_candidates(g);
        std::set<std::uint64_t> got;
        for (const auto& c : cands) got.insert(c.vmask);
        CHECK(got.size() == cands.size());
        CHECK(got == oracle_candidates(g));
    }
}

TEST_CASE("facet candidates satisfy the Steinitz test") {
    auto cands = enumerate_facet_candidates(octahedron());
    for (const auto& c : cands) {
        FVector3 v{(long long)c.vertices.size(), (long long)c.edge_count,
                   (long long)c.face_cycles.size()};
        CHECK(steinitz3_member(v));
    }
}

TEST_CASE("collect_ridges on K5: ten triangles in two candidates each") {
    auto cands = enumerate_facet_candidates(complete(5));
    auto ridges = collect_ridges(cands);
    CHECK(ridges.size() == 10);
    for (const auto& r : ridges) {
        CHECK(r.cycle.size() == 3);
        CHECK(r.in_facets.size() == 2);
    }
    for (const auto& c : cands) CHECK(c.ridge_ids.size() == 4);
}

TEST_CASE("ridge identity is the cycle, not the vertex set") {
    // two squares abcd and abdc cannot both arise from induced candidates,
    // but normalize_cycle must distinguish them
    std::vector<int> a{0, 1, 2, 3};
    std::vector<int> b{0, 1, 3, 2};
    CHECK(normalize_cycle(a) != normalize_cycle(b));
    std::vector<int> arot{2, 3, 0, 1};
    std::vector<int> aref{3, 2, 1, 0};
    CHECK(normalize_cycle(a) == normalize_cycle(arot));
    CHECK(normalize_cycle(a) == normalize_cycle(aref));
}

TEST_CASE("sphere skeleton candidates contain the sphere's facets") {
    auto file = load_facet_list(std::string(EULAT_DATA_DIR) + "/sphere_10_32_33_11_0.json");
    FaceLattice L = from_facet_list(int(file.f.f0), file.facets);
    Graph g = skeleton(L);
    CHECK(g.edge_count() == 32);
    auto cands = enumerate_facet_candidates(g);
    std::set<std::uint64_t> got;
    for (const auto& c : cands) got.insert(c.vmask);
    for (const auto& fv : file.facets) {
        std::uint64_t m = 0;
        for (int v : fv) m |= std::uint64_t(1) << v;
        CHECK(got.count(m));
    }
    // and the collected ridges contain all 33 lattice ridges
    auto ridges = collect_ridges(cands);
    std::set<std::vector<int>> rc;
    for (const auto& r : ridges) rc.insert(r.cycle);
    CHECK(L.ridge_cycles.size() == 33);
    for (const auto& cyc : L.ridge_cycles) CHECK(rc.count(cyc));
}

TEST_CASE("monotone sanity: deleting a vertex never adds candidates containing it") {
    Graph g = octahedron();
    auto before = enumerate_facet_candidates(g);
    std::uint64_t mask_no5 = (1u << 5) - 1;  // drop vertex 5
    Graph h = g.induced(mask_no5);
    auto after = enumerate_facet_candidates(h);
    // every candidate of h is a candidate of g not containing vertex 5
    std::set<std::uint64_t> bset;
    for (const auto& c : before) bset.insert(c.vmask);
    for (const auto& c : after) CHECK(bset.count(c.vmask));
}

TEST_SUITE_END();
