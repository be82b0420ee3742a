#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "eulat/chirotope.hpp"
#include "eulat/fvector.hpp"
#include "eulat/io.hpp"
#include "eulat/lattice.hpp"
#include "eulat/topology.hpp"

namespace eulat {

struct InconsistentFVectorError : std::runtime_error {
    InconsistentFVectorError(const std::string& w) : std::runtime_error(w) {}
};

struct PipelineOptions {
    int workers = 0;  // 0: $EULAT_WORKERS, else OpenMP default
    std::uint64_t budget_nodes = 0;  // per-graph solver node budget, 0 = unlimited
    int edge_lb = 3;
    std::uint64_t bistellar_budget = 100000;
    std::uint64_t bistellar_seed = 1;
    bool require_4_connected = true;  // post-filter; off reproduces the relaxed run
    bool search_certificates = true;
    std::string out_dir;              // persistence + resume when nonempty
    std::vector<FVector> known_polytopes;  // tick-off allowlist
};

struct ClassificationRecord {
    std::string lattice_code;
    std::string graph_code;
    FVector f;
    std::vector<std::vector<int>> facets;
    bool eulerian = false, interval_connected = false, intersection = false;
    BettiVector betti;
    bool betti_sphere = false;
    std::string bistellar = "-";  // "reduced" | "undecided" | "-"
    std::optional<Certificate> certificate;
    bool two_s_two_s = false, self_dual = false;
    std::string structure_error;  // set when the lattice could not be built

    bool accepted() const { return eulerian && interval_connected && intersection; }
    bool sphere() const { return accepted() && betti_sphere && bistellar == "reduced"; }
};

struct RunResult {
    std::vector<ClassificationRecord> records;  // sorted by lattice code
    bool partial = false;
    bool ticked_off = false;
    int graphs_total = 0;
    int graphs_done = 0;
};

// Algorithm steps (i)-(v) end to end for one f-vector, with optional
// persistence and resumption keyed by graph canonical codes.
RunResult find_lattices(const FVector& f, const PipelineOptions& opts = {});

// Verification-only path: all lattice/topology/chirotope checks on a given
// facet list, no enumeration. Throws InconsistentFVectorError when the
// declared f-vector disagrees with the reconstructed face counts.
ClassificationRecord verify_bundle(const FacetListFile& file, const PipelineOptions& opts = {});

// Flag/certification block shared by both paths.
void certify_record(ClassificationRecord& rec, const FaceLattice& L, const PipelineOptions& opts);

nlohmann::json record_json(const ClassificationRecord& rec);
ClassificationRecord record_from_json(const nlohmann::json& j);

struct ReportRow {
    FVector f;
    int lattices = 0, spheres = 0, np = 0, undecided = 0;
    bool partial = false;
};
ReportRow report(const std::string& dir);

}  // namespace eulat
