#pragma once

#include <stdexcept>
#include <vector>

#include "eulat/graph.hpp"

namespace eulat {

struct NotPlanar3ConnectedError : std::runtime_error {
    NotPlanar3ConnectedError()
        : std::runtime_error("embedding_faces: graph is not planar or not 3-connected") {}
};

bool is_planar(const Graph& g);

// Face cycles of the (combinatorially unique) planar embedding of a
// 3-connected planar graph. Each cycle is rotated/reflected to a canonical
// start so output is deterministic. Throws NotPlanar3ConnectedError.
std::vector<std::vector<int>> embedding_faces(const Graph& g);

// Canonical form of a cyclic vertex sequence under rotation and reflection.
std::vector<int> normalize_cycle(const std::vector<int>& cycle);

}  // namespace eulat
