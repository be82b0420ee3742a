#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eulat/fvector.hpp"
#include "eulat/lattice.hpp"

namespace eulat {

struct BaseInsideRidgeError : std::runtime_error {
    BaseInsideRidgeError() : std::runtime_error("seed base lies inside a ridge") {}
};
struct DegenerateCellError : std::runtime_error {
    explicit DegenerateCellError(const std::string& w) : std::runtime_error(w) {}
};
struct MalformedStepError : std::runtime_error {
    size_t index;
    explicit MalformedStepError(size_t i)
        : std::runtime_error("malformed certificate step " + std::to_string(i)), index(i) {}
};

enum class Rule : int { Seed = 0, CoplanarZero = 1, FacetSide = 2, GpPropagate = 3 };

struct DerivationStep {
    Rule rule;
    std::array<int, 5> basis{};  // sorted
    int sign = 0;                // value of the sorted basis
    int facet = -1;              // Seed / CoplanarZero / FacetSide
    std::vector<std::array<int, 5>> premises;  // sorted premise bases
    std::array<int, 3> sigma{-1, -1, -1};      // GpPropagate
    std::array<int, 4> quad{-1, -1, -1, -1};
};

struct GpViolation {
    std::array<int, 3> sigma{};
    std::array<int, 4> quad{};
    std::array<int, 3> products{};  // sign-folded three-term products
    bool operator==(const GpViolation&) const = default;
};

struct Certificate {
    std::array<int, 4> base{};  // the seeded 4-tuple, in seed order
    std::vector<DerivationStep> steps;
    GpViolation violation;                 // the selected (lex-first) violation
    std::vector<GpViolation> all_violations;
};

constexpr std::int8_t kUnknown = 2;

// Rank-5 sign map on sorted 5-subsets of 0..n-1, with derivation log.
struct PartialChirotope {
    int n = 0;
    std::vector<std::int8_t> val;   // by combination rank; kUnknown if unset
    std::vector<int> step_of;       // combination rank -> step index or -1
    std::vector<DerivationStep> steps;
    std::array<int, 4> base{};      // seed base (ordered as given)
    long long side_conflicts = 0;   // facet-side derivations contradicting known values
    // propagation halts at the first violated triple it meets
    std::optional<GpViolation> halted_at;

    explicit PartialChirotope(int n_ = 0);
    // value of the ordered tuple (parity-adjusted); kUnknown when unset
    std::int8_t lookup(const std::array<int, 5>& tuple) const;
    std::int8_t lookup5(int a, int b, int c, int d, int e) const {
        return lookup({a, b, c, d, e});
    }
};

// +1/-1 parity of the permutation sorting `t`; requires distinct entries.
int perm_parity5(const std::array<int, 5>& t);

// chi(base, v) = +1 for every v outside the (unique) facet containing base;
// chi = 0 on every 5-subset of a single facet's vertex set.
// degenerate=true seeds the coplanar branch chi(base, .) = 0 instead.
PartialChirotope seed(const FaceLattice& L, const std::array<int, 4>& base,
                      bool degenerate = false);

// Closure under the facet-side rule and 3-term Grassmann-Pluecker forcing.
void propagate(PartialChirotope& chi, const FaceLattice& L);

// Scans all (sigma, quad) pairs at fixpoint; returns a certificate built
// around the lexicographically first violated triple, or nullopt.
std::optional<Certificate> contradiction_search(const PartialChirotope& chi);

// Replays a certificate against L. Returns false at the first semantically
// unjustified step; throws MalformedStepError on structurally broken steps.
bool verify_certificate(const Certificate& cert, const FaceLattice& L);

using Point4 = std::array<Rational, 4>;
using Point3 = std::array<Rational, 3>;

// Total chirotope of a rational point configuration (homogenized 5x5
// determinant signs).
PartialChirotope chirotope_from_points(const std::vector<Point4>& pts);

// True iff no 3-term Grassmann-Pluecker relation is violated among known
// values.
bool gp_consistent(const PartialChirotope& chi);

// Exact diagram verification: every non-base cell is a 3-polytope realizing
// its facet's ridge structure, the base cell realizes the base facet and
// contains everything, interior ridges separate their two cells, and the
// cell volumes add up to the base volume exactly.
bool verify_diagram(const FaceLattice& L, int base_facet, const std::vector<Point3>& coords,
                    std::string* why = nullptr);

}  // namespace eulat
