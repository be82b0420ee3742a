// serial vs OpenMP kernel comparison on the data-parallel hot spots:
// level expansion in graph enumeration, the facet-pair properness matrix,
// and the Grassmann-Pluecker violation scan.

#include <benchmark/benchmark.h>

#include "eulat/chirotope.hpp"
#include "eulat/facets.hpp"
#include "eulat/feasibility.hpp"
#include "eulat/graph_enum.hpp"
#include "eulat/io.hpp"
#include "eulat/lattice.hpp"

using namespace eulat;

namespace {

std::vector<std::string> level_fixture() {
    // a mid-sized level of the (10,32) complement enumeration
    std::vector<std::string> level{graph6_encode(Graph(10))};
    for (int e = 0; e < 6; ++e) {
        auto children = expand_level(level, 10, 13, 5, 4, true, false);
        std::sort(children.begin(), children.end());
        children.erase(std::unique(children.begin(), children.end()), children.end());
        level = std::move(children);
    }
    return level;
}

struct FacetFixture {
    Graph g;
    std::vector<FacetCandidate> cands;
    FacetFixture() {
        auto file = load_facet_list(std::string(EULAT_DATA_DIR) + "/sphere_10_32_33_11_0.json");
        FaceLattice L = from_facet_list(10, file.facets);
        g = skeleton(L);
        cands = enumerate_facet_candidates(g);
        collect_ridges(cands);
    }
};

}  // namespace

static void BM_expand_level_serial(benchmark::State& state) {
    auto level = level_fixture();
    for (auto _ : state) {
        auto out = expand_level(level, 10, 13, 5, 4, true, false);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_expand_level_serial)->Unit(benchmark::kMillisecond);

static void BM_expand_level_parallel(benchmark::State& state) {
    auto level = level_fixture();
    for (auto _ : state) {
        auto out = expand_level(level, 10, 13, 5, 4, true, true);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_expand_level_parallel)->Unit(benchmark::kMillisecond);

static void BM_improper_matrix_serial(benchmark::State& state) {
    FacetFixture fx;
    for (auto _ : state) {
        auto m = improper_matrix(fx.cands, fx.g, false);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_improper_matrix_serial)->Unit(benchmark::kMicrosecond);

static void BM_improper_matrix_parallel(benchmark::State& state) {
    FacetFixture fx;
    for (auto _ : state) {
        auto m = improper_matrix(fx.cands, fx.g, true);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_improper_matrix_parallel)->Unit(benchmark::kMicrosecond);

static void BM_propagate_and_search(benchmark::State& state) {
    auto file = load_facet_list(std::string(EULAT_DATA_DIR) + "/sphere_10_32_33_11_0.json");
    FaceLattice L = from_facet_list(10, file.facets);
    for (auto _ : state) {
        PartialChirotope chi = seed(L, {0, 2, 4, 9});
        propagate(chi, L);
        auto cert = contradiction_search(chi);
        benchmark::DoNotOptimize(cert);
    }
}
BENCHMARK(BM_propagate_and_search)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
