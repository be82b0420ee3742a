#pragma once

#include <string>
#include <vector>

#include "eulat/graph.hpp"

namespace eulat {

// Canonical form of a vertex-colored graph: equitable partition refinement
// followed by individualization search, keeping the lexicographically
// smallest leaf certificate. Automorphisms discovered from equal leaves are
// used for orbit pruning at branch nodes.
struct CanonResult {
    // labeling[i] = original vertex placed at canonical position i
    std::vector<int> labeling;
    // byte string; two colored graphs get equal certs iff isomorphic
    // (colors must use the same value scheme on both sides)
    std::string cert;
};

CanonResult canonical_form(const Graph& g, const std::vector<int>& color = {});

// Canonical code of an uncolored graph in printable form: graph6 of the
// canonically relabeled graph.
std::string canonical_code(const Graph& g);

}  // namespace eulat
