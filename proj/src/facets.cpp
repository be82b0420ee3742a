#include "eulat/facets.hpp"

#include <algorithm>
#include <map>

#include "eulat/planarity.hpp"

namespace eulat {

std::vector<FacetCandidate> enumerate_facet_candidates(const Graph& g) {
    std::vector<FacetCandidate> out;
    if (g.n < 4) return out;
    if (g.n > 25) throw std::invalid_argument("facet candidate scan: graph too large");
    std::uint64_t full = (std::uint64_t(1) << g.n) - 1;
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
        int k = __builtin_popcountll(mask);
        if (k < 4) continue;
        std::vector<int> labels;
        Graph sub = g.induced(mask, &labels);
        // a vertex of induced degree < 3 can never sit in a 3-connected subgraph
        if (sub.min_degree() < 3) continue;
        if (!is_k_connected(sub, 3)) continue;
        if (!is_planar(sub)) continue;
        FacetCandidate fc;
        fc.vmask = mask;
        fc.vertices = labels;
        fc.edge_count = sub.edge_count();
        for (const auto& cyc : embedding_faces(sub)) {
            std::vector<int> orig(cyc.size());
            for (size_t i = 0; i < cyc.size(); ++i) orig[i] = labels[size_t(cyc[i])];
            fc.face_cycles.push_back(normalize_cycle(orig));
        }
        std::sort(fc.face_cycles.begin(), fc.face_cycles.end());
        out.push_back(std::move(fc));
    }
    return out;
}

std::vector<RidgeCandidate> collect_ridges(std::vector<FacetCandidate>& facets) {
    std::map<std::vector<int>, int> index;  // normalized cycle -> ridge id
    std::vector<RidgeCandidate> ridges;
    for (size_t fi = 0; fi < facets.size(); ++fi) {
        facets[fi].ridge_ids.clear();
        for (const auto& cyc : facets[fi].face_cycles) {
            auto it = index.find(cyc);
            int id;
            if (it == index.end()) {
                id = int(ridges.size());
                index.emplace(cyc, id);
                RidgeCandidate r;
                r.cycle = cyc;
                for (int v : cyc) r.vmask |= std::uint64_t(1) << v;
                ridges.push_back(std::move(r));
            } else {
                id = it->second;
            }
            ridges[size_t(id)].in_facets.push_back(int(fi));
            facets[fi].ridge_ids.push_back(id);
        }
    }
    return ridges;
}

}  // namespace eulat
