#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eulat/lattice.hpp"

namespace eulat {

// Simplicial complex given by its maximal simplices (sorted vertex tuples).
struct SimplicialComplex {
    int nverts = 0;
    std::vector<std::vector<int>> maximal;

    int dim() const;
    long long euler_characteristic() const;
};

// Order complex of the proper part of L (barycentric subdivision):
// one complex vertex per proper face, simplices are the chains.
SimplicialComplex triangulate(const FaceLattice& L);

struct BettiVector {
    std::array<long long, 4> b{0, 0, 0, 0};
    std::array<bool, 4> torsion{false, false, false, false};
    bool operator==(const BettiVector&) const = default;
};

// Integral homology ranks and torsion flags, via Smith normal form of the
// boundary matrices.
BettiVector betti_numbers(const SimplicialComplex& K);

// One bistellar move on a closed 3-pseudomanifold, recorded for replay.
struct Flip {
    // kind 1: 2->3 on a triangle, kind 2: 3->2 on an edge, kind 3: 4->1
    // removing a vertex (the only kinds the reduction uses)
    int kind = 0;
    std::vector<std::array<int, 4>> removed;
    std::vector<std::array<int, 4>> added;
};

struct BistellarResult {
    bool reduced = false;  // reached the boundary of the 4-simplex
    std::vector<Flip> flips;
    std::uint64_t flips_tried = 0;
};

// Random-restart greedy descent to the boundary complex of the 4-simplex.
// Never returns a false positive: `reduced` is set only when the final
// complex is the full boundary of a 4-simplex. Reproducible given (seed,
// budget).
BistellarResult bistellar_reduce(const SimplicialComplex& K, std::uint64_t budget = 100000,
                                 std::uint64_t seed = 1);

// Replays a flip sequence, revalidating each move and the pseudomanifold
// property; returns the final complex. Throws on an invalid step.
SimplicialComplex replay_flips(const SimplicialComplex& K, const std::vector<Flip>& flips);

bool is_closed_pseudomanifold(const SimplicialComplex& K);
bool is_boundary_of_4simplex(const SimplicialComplex& K);

}  // namespace eulat
