#pragma once

#include <functional>
#include <vector>

#include "eulat/graph.hpp"

namespace eulat {

struct GraphEnumOptions {
    int min_degree = 4;
    int connectivity = 2;  // 2 or 4
    bool parallel = true;  // OpenMP child expansion; serial path kept for tests
};

// Isomorph-free enumeration of simple graphs on n vertices with m edges,
// minimum degree >= min_degree and the requested vertex connectivity.
// One canonical representative per isomorphism class, sorted by canonical
// code. Enumeration runs level by level on the sparser of graph/complement,
// extending only canonical representatives and deduplicating children by
// canonical code.
std::vector<Graph> enumerate_graphs(int n, int m, const GraphEnumOptions& opts = {});

// Children of one level, canonical codes, not yet deduplicated. Exposed so
// the serial/parallel kernels can be compared directly.
std::vector<std::string> expand_level(const std::vector<std::string>& level, int n, int max_edges,
                                      int max_degree, int min_degree_target, bool complement_side,
                                      bool parallel);

}  // namespace eulat
