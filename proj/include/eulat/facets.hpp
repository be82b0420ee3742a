#pragma once

#include <cstdint>
#include <vector>

#include "eulat/graph.hpp"

namespace eulat {

// Potential ridge: a face cycle of some facet candidate's embedding.
// Identity is the boundary cycle up to rotation/reflection.
struct RidgeCandidate {
    std::uint64_t vmask = 0;
    std::vector<int> cycle;       // normalized (original vertex labels)
    std::vector<int> in_facets;   // facet candidate indices containing it
};

// Potential facet: induced planar 3-connected subgraph with the 2-faces of
// its unique embedding.
struct FacetCandidate {
    std::uint64_t vmask = 0;
    std::vector<int> vertices;               // sorted
    std::vector<std::vector<int>> face_cycles;  // normalized, original labels
    std::vector<int> ridge_ids;              // filled by collect_ridges
    int edge_count = 0;
};

// All vertex subsets of size >= 4 whose induced subgraph is planar and
// 3-connected, with embedding faces. Sorted by vertex mask.
std::vector<FacetCandidate> enumerate_facet_candidates(const Graph& g);

// Union of all facet faces, deduplicated by normalized boundary cycle.
// Fills ridge_ids on the facets.
std::vector<RidgeCandidate> collect_ridges(std::vector<FacetCandidate>& facets);

}  // namespace eulat
