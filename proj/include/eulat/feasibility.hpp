#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "eulat/facets.hpp"
#include "eulat/fvector.hpp"
#include "eulat/graph.hpp"

namespace eulat {

struct TriviallyInfeasibleError : std::runtime_error {
    TriviallyInfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceededError : std::runtime_error {
    BudgetExceededError() : std::runtime_error("search node budget exceeded") {}
};

// Linear constraint lo <= sum coef_i * var_i <= hi over binary variables.
// Variable ids: 0..num_x-1 are facet variables, then ridge variables.
struct LinCon {
    std::vector<std::pair<int, int>> terms;  // (var, coef)
    int lo = 0, hi = 0;
};

struct FeasibilityInstance {
    int num_x = 0, num_y = 0;
    std::vector<LinCon> cons;
    // metadata for output and for assembling lattices
    const Graph* graph = nullptr;
    const std::vector<FacetCandidate>* facets = nullptr;
    const std::vector<RidgeCandidate>* ridges = nullptr;
    FVector f;
};

struct SolutionMask {
    std::vector<int> facets;  // chosen facet candidate indices, sorted
    std::vector<int> ridges;  // chosen ridge candidate indices, sorted
    bool operator==(const SolutionMask&) const = default;
    bool operator<(const SolutionMask& o) const {
        return facets != o.facets ? facets < o.facets : ridges < o.ridges;
    }
};

// False iff the vertex intersection is empty, a single vertex, an edge of g,
// or a common ridge of both candidates (same boundary cycle).
bool improper_pair(const FacetCandidate& a, const FacetCandidate& b, const Graph& g);

// Pairwise properness matrix kernel; OpenMP and serial reference variants.
std::vector<std::uint8_t> improper_matrix(const std::vector<FacetCandidate>& facets,
                                          const Graph& g, bool parallel);

// edge_lb: minimum number of chosen facets per graph edge (3 for the target
// class, 1 for the weaker generic bound).
FeasibilityInstance build_instance(const Graph& g, const std::vector<FacetCandidate>& facets,
                                   const std::vector<RidgeCandidate>& ridges, const FVector& f,
                                   int edge_lb = 3);

enum class SolveMode { Backtrack, Blocking };

// Exhaustive, deterministic enumeration of all 0/1 solutions. Throws
// BudgetExceededError when max_nodes > 0 is hit.
void enumerate_solutions(const FeasibilityInstance& inst,
                         const std::function<void(const SolutionMask&)>& emit,
                         SolveMode mode = SolveMode::Backtrack, std::uint64_t max_nodes = 0);

std::vector<SolutionMask> all_solutions(const FeasibilityInstance& inst,
                                        SolveMode mode = SolveMode::Backtrack,
                                        std::uint64_t max_nodes = 0);

// Independent verifier: evaluates every constraint on a full assignment.
bool check_solution(const FeasibilityInstance& inst, const SolutionMask& sol);

}  // namespace eulat
