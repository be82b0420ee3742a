#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eulat/facets.hpp"
#include "eulat/feasibility.hpp"
#include "eulat/fvector.hpp"
#include "eulat/graph.hpp"

namespace eulat {

struct LatticeError : std::runtime_error {
    explicit LatticeError(const std::string& what) : std::runtime_error(what) {}
};
struct ContainmentAnomalyError : LatticeError {
    explicit ContainmentAnomalyError(const std::string& what) : LatticeError(what) {}
};

// Ranked face structure of a length-5 lattice candidate: atoms 0..n-1,
// rank-2 faces (edges), rank-3 faces (ridges, with boundary cycles),
// rank-4 faces (facets). Bottom and top are implicit.
struct FaceLattice {
    int n = 0;
    std::vector<std::uint32_t> edge_masks;
    std::vector<std::uint32_t> ridge_masks;
    std::vector<std::vector<int>> ridge_cycles;
    std::vector<std::uint32_t> facet_masks;
    std::vector<std::vector<int>> ridge_edges;   // ridge -> incident edge ids
    std::vector<std::vector<int>> facet_ridges;  // facet -> incident ridge ids

    std::vector<std::vector<int>> facet_lists() const;
};

// Explicit bounded poset, for the interval predicates. Element 0 is the
// bottom; ranks run 0..5. Tests mutate these directly.
struct PosetView {
    std::vector<int> rank;
    std::vector<std::uint32_t> vset;
    std::vector<std::vector<char>> leq;  // reflexive
    int bottom = 0, top = 0;
};

PosetView poset(const FaceLattice& L);

// Face poset assembled from a feasibility solution on graph g.
FaceLattice assemble(const Graph& g, const std::vector<FacetCandidate>& facets,
                     const std::vector<RidgeCandidate>& ridges, const SolutionMask& sol);

// Reconstruction from facet vertex sets alone, via the meet-closure of the
// facet sets. Throws LatticeError when the closure is not a graded length-5
// atomic structure (eg. mutilated input).
FaceLattice from_facet_list(int n, const std::vector<std::vector<int>>& facet_vertex_sets);

bool is_graded(const PosetView& P);
bool is_eulerian(const PosetView& P);
bool is_interval_connected(const PosetView& P);
bool has_intersection_property(const PosetView& P);

bool is_eulerian(const FaceLattice& L);
bool is_interval_connected(const FaceLattice& L);
bool has_intersection_property(const FaceLattice& L);

// Order-reversed lattice, re-graded so facets become atoms.
FaceLattice dual(const FaceLattice& L);

FVector f_vector(const FaceLattice& L);
long long flag_f03(const FaceLattice& L);
bool is_2s2s(const FaceLattice& L);

// Canonical form of the vertex-facet incidence (which determines the lattice
// under the intersection property), hex-encoded.
std::string lattice_code(const FaceLattice& L);

// The 1-skeleton as a Graph.
Graph skeleton(const FaceLattice& L);

}  // namespace eulat
