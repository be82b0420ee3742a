#include "eulat/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "eulat/canonical.hpp"
#include "eulat/graph_enum.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eulat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int resolve_workers(const PipelineOptions& opts) {
    if (opts.workers > 0) return opts.workers;
    if (const char* env = std::getenv("EULAT_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// np-certificate search: scan seed bases (facet by facet, lexicographic
// 4-subsets) until a propagation fixpoint contains a violated triple.
std::optional<Certificate> search_certificate(const FaceLattice& L) {
    for (size_t f = 0; f < L.facet_masks.size(); ++f) {
        std::vector<int> vs;
        for (int v = 0; v < L.n; ++v)
            if ((L.facet_masks[f] >> v) & 1) vs.push_back(v);
        int k = int(vs.size());
        if (k < 4) continue;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int c = b + 1; c < k; ++c)
                    for (int d = c + 1; d < k; ++d) {
                        std::array<int, 4> base{vs[size_t(a)], vs[size_t(b)], vs[size_t(c)],
                                                vs[size_t(d)]};
                        PartialChirotope chi(L.n);
                        try {
                            chi = seed(L, base);
                        } catch (const BaseInsideRidgeError&) {
                            continue;
                        } catch (const std::invalid_argument&) {
                            continue;
                        }
                        propagate(chi, L);
                        auto cert = contradiction_search(chi);
                        if (cert) return cert;
                    }
    }
    return std::nullopt;
}

}  // namespace

void certify_record(ClassificationRecord& rec, const FaceLattice& L,
                    const PipelineOptions& opts) {
    rec.f = f_vector(L);
    rec.facets = L.facet_lists();
    rec.lattice_code = lattice_code(L);
    PosetView P = poset(L);
    rec.eulerian = is_eulerian(P);
    rec.interval_connected = is_interval_connected(P);
    rec.intersection = has_intersection_property(P);
    if (!rec.accepted()) return;
    SimplicialComplex K = triangulate(L);
    rec.betti = betti_numbers(K);
    rec.betti_sphere = rec.betti.b == std::array<long long, 4>{1, 0, 0, 1} &&
                       !rec.betti.torsion[0] && !rec.betti.torsion[1] && !rec.betti.torsion[2] &&
                       !rec.betti.torsion[3];
    if (rec.betti_sphere) {
        auto br = bistellar_reduce(K, opts.bistellar_budget, opts.bistellar_seed);
        rec.bistellar = br.reduced ? "reduced" : "undecided";
    }
    rec.two_s_two_s = is_2s2s(L);
    rec.self_dual = lattice_code(dual(L)) == rec.lattice_code;
    if (rec.sphere() && opts.search_certificates) rec.certificate = search_certificate(L);
}

json record_json(const ClassificationRecord& rec) {
    json j;
    j["lattice_code"] = rec.lattice_code;
    j["graph"] = rec.graph_code;
    j["f"] = {rec.f.f0, rec.f.f1, rec.f.f2, rec.f.f3};
    j["facets"] = rec.facets;
    j["flags"] = {{"eulerian", rec.eulerian},
                  {"interval_connected", rec.interval_connected},
                  {"intersection", rec.intersection},
                  {"betti", rec.betti.b},
                  {"torsion", rec.betti.torsion},
                  {"betti_sphere", rec.betti_sphere},
                  {"bistellar", rec.bistellar},
                  {"two_simple_two_simplicial", rec.two_s_two_s},
                  {"self_dual", rec.self_dual}};
    if (!rec.structure_error.empty()) j["structure_error"] = rec.structure_error;
    j["certificate"] = rec.certificate ? certificate_json(*rec.certificate) : json(nullptr);
    return j;
}

ClassificationRecord record_from_json(const json& j) {
    ClassificationRecord rec;
    rec.lattice_code = j.at("lattice_code").get<std::string>();
    rec.graph_code = j.value("graph", "");
    auto fv = j.at("f");
    rec.f = {fv[0].get<long long>(), fv[1].get<long long>(), fv[2].get<long long>(),
             fv[3].get<long long>()};
    for (const auto& fa : j.at("facets")) rec.facets.push_back(fa.get<std::vector<int>>());
    const auto& fl = j.at("flags");
    rec.eulerian = fl.at("eulerian").get<bool>();
    rec.interval_connected = fl.at("interval_connected").get<bool>();
    rec.intersection = fl.at("intersection").get<bool>();
    for (int i = 0; i < 4; ++i) {
        rec.betti.b[size_t(i)] = fl.at("betti")[size_t(i)].get<long long>();
        rec.betti.torsion[size_t(i)] = fl.at("torsion")[size_t(i)].get<bool>();
    }
    rec.betti_sphere = fl.at("betti_sphere").get<bool>();
    rec.bistellar = fl.at("bistellar").get<std::string>();
    rec.two_s_two_s = fl.at("two_simple_two_simplicial").get<bool>();
    rec.self_dual = fl.at("self_dual").get<bool>();
    if (j.contains("structure_error")) rec.structure_error = j.at("structure_error");
    if (j.contains("certificate") && !j.at("certificate").is_null())
        rec.certificate = parse_certificate(j.at("certificate"));
    return rec;
}

ClassificationRecord verify_bundle(const FacetListFile& file, const PipelineOptions& opts) {
    ClassificationRecord rec;
    rec.f = file.f;
    rec.facets = file.facets;
    FaceLattice L;
    try {
        L = from_facet_list(int(file.f.f0), file.facets);
    } catch (const LatticeError& e) {
        rec.structure_error = e.what();
        return rec;
    }
    FVector got = f_vector(L);
    if (!(got == file.f))
        throw InconsistentFVectorError("declared f-vector " + file.f.str() +
                                       " disagrees with face counts " + got.str());
    certify_record(rec, L, opts);
    return rec;
}

namespace {

struct GraphJob {
    std::string code;
    std::string status = "pending";  // pending | done | partial
    std::vector<ClassificationRecord> found;
};

void process_graph(GraphJob& job, const FVector& f, const PipelineOptions& opts) {
    Graph g = graph6_decode(job.code);
    try {
        auto facets = enumerate_facet_candidates(g);
        if ((long long)facets.size() < f.f3) {
            job.status = "done";
            return;
        }
        auto ridges = collect_ridges(facets);
        FeasibilityInstance inst;
        try {
            inst = build_instance(g, facets, ridges, f, opts.edge_lb);
        } catch (const TriviallyInfeasibleError&) {
            job.status = "done";
            return;
        }
        enumerate_solutions(
            inst,
            [&](const SolutionMask& sol) {
                FaceLattice L;
                try {
                    L = assemble(g, facets, ridges, sol);
                } catch (const ContainmentAnomalyError&) {
                    return;
                }
                PosetView P = poset(L);
                if (!is_eulerian(P) || !is_interval_connected(P) ||
                    !has_intersection_property(P))
                    return;
                if (!(f_vector(L) == f)) return;  // re-check at emission
                ClassificationRecord rec;
                rec.graph_code = job.code;
                rec.lattice_code = lattice_code(L);
                rec.f = f_vector(L);
                rec.facets = L.facet_lists();
                rec.eulerian = rec.interval_connected = rec.intersection = true;
                job.found.push_back(rec);
            },
            SolveMode::Backtrack, opts.budget_nodes);
        job.status = "done";
    } catch (const BudgetExceededError&) {
        job.status = "partial";
        job.found.clear();
    }
}

}  // namespace

RunResult find_lattices(const FVector& f, const PipelineOptions& opts) {
    if (!screen(f).passed) throw std::invalid_argument("f-vector fails the screen: " + f.str());
    RunResult result;
    for (const auto& known : opts.known_polytopes)
        if (known == f) {
            result.ticked_off = true;
            return result;
        }

    fs::path dir = opts.out_dir.empty() ? fs::path() : fs::path(opts.out_dir);
    json manifest;
    std::map<std::string, std::vector<ClassificationRecord>> done_results;
    std::set<std::string> done_codes;
    if (!dir.empty()) {
        fs::create_directories(dir);
        if (fs::exists(dir / "manifest.json")) {
            manifest = load_json((dir / "manifest.json").string());
            FVector mf{manifest.at("f")[0].get<long long>(), manifest.at("f")[1].get<long long>(),
                       manifest.at("f")[2].get<long long>(), manifest.at("f")[3].get<long long>()};
            if (!(mf == f)) throw std::runtime_error("run directory belongs to f " + mf.str());
            for (auto& [code, status] : manifest.at("graphs").items())
                if (status.get<std::string>() == "done") done_codes.insert(code);
            if (fs::exists(dir / "results.jsonl")) {
                std::ifstream in(dir / "results.jsonl");
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    json j = json::parse(line);
                    auto rec = record_from_json(j);
                    if (done_codes.count(rec.graph_code))
                        done_results[rec.graph_code].push_back(rec);
                }
            }
        }
    }

    // step (i): candidate skeleta
    GraphEnumOptions genopts;
    genopts.min_degree = 4;
    genopts.connectivity = 2;
    auto graphs = enumerate_graphs(int(f.f0), int(f.f1), genopts);
    std::vector<GraphJob> jobs;
    for (const auto& g : graphs) {
        if (opts.require_4_connected && !is_k_connected(g, 4)) continue;
        GraphJob job;
        job.code = graph6_encode(g);
        if (done_codes.count(job.code)) {
            job.status = "done";
            job.found = done_results[job.code];
        }
        jobs.push_back(std::move(job));
    }
    result.graphs_total = int(jobs.size());

    int workers = resolve_workers(opts);
    std::ofstream jsonl;
    if (!dir.empty()) jsonl.open(dir / "results.jsonl", done_codes.empty() ? std::ios::trunc : std::ios::app);

    auto dump_manifest = [&](bool complete_known, bool complete) {
        json m;
        m["f"] = {f.f0, f.f1, f.f2, f.f3};
        m["config"] = {{"edge_lb", opts.edge_lb},
                       {"budget_nodes", opts.budget_nodes},
                       {"require_4_connected", opts.require_4_connected},
                       {"bistellar_budget", opts.bistellar_budget},
                       {"bistellar_seed", opts.bistellar_seed}};
        json gs = json::object();
        for (const auto& job : jobs) gs[job.code] = job.status;
        m["graphs"] = gs;
        if (complete_known) m["complete"] = complete;
        save_json((dir / "manifest.json").string(), m);
    };

    long long completed = 0;
    long long checkpoint_every = std::max<long long>(1, (long long)jobs.size() / 64);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
    for (long long i = 0; i < (long long)jobs.size(); ++i) {
        if (jobs[size_t(i)].status == "done") continue;
        process_graph(jobs[size_t(i)], f, opts);
        if (!dir.empty()) {
#ifdef _OPENMP
#pragma omp critical(eulat_jsonl)
#endif
            {
                for (const auto& rec : jobs[size_t(i)].found) jsonl << record_json(rec).dump() << "\n";
                jsonl.flush();
                if (++completed % checkpoint_every == 0) dump_manifest(false, false);
            }
        }
    }
    (void)workers;

    for (auto& job : jobs) {
        if (job.status == "done") ++result.graphs_done;
        if (job.status == "partial") result.partial = true;
    }

    // reduction: dedup by lattice code across graphs, deterministic order
    std::map<std::string, ClassificationRecord> by_code;
    for (auto& job : jobs)
        for (auto& rec : job.found)
            if (!by_code.count(rec.lattice_code)) by_code[rec.lattice_code] = rec;
    for (auto& [code, rec] : by_code) {
        FaceLattice L = from_facet_list(int(f.f0), rec.facets);
        certify_record(rec, L, opts);
        result.records.push_back(rec);
    }

    if (!dir.empty()) {
        dump_manifest(true, !result.partial);
        json recs = json::array();
        for (const auto& rec : result.records) recs.push_back(record_json(rec));
        save_json((dir / "records.json").string(), recs);
    }
    return result;
}

ReportRow report(const std::string& dir) {
    ReportRow row;
    json m = load_json((fs::path(dir) / "manifest.json").string());
    row.f = {m.at("f")[0].get<long long>(), m.at("f")[1].get<long long>(),
             m.at("f")[2].get<long long>(), m.at("f")[3].get<long long>()};
    row.partial = !m.value("complete", false);
    json recs = json::array();
    if (fs::exists(fs::path(dir) / "records.json")) {
        recs = load_json((fs::path(dir) / "records.json").string());
    } else if (fs::exists(fs::path(dir) / "results.jsonl")) {
        // in-flight run: fall back to the raw per-graph results
        std::ifstream in(fs::path(dir) / "results.jsonl");
        std::string line;
        std::set<std::string> seen;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line);
            if (seen.insert(j.at("lattice_code").get<std::string>()).second) recs.push_back(j);
        }
        row.partial = true;
    }
    for (const auto& rj : recs) {
        auto rec = record_from_json(rj);
        ++row.lattices;
        if (rec.sphere()) {
            ++row.spheres;
            if (rec.certificate)
                ++row.np;
            else
                ++row.undecided;  // sphere, polytopality unresolved
        } else if (rec.bistellar == "undecided") {
            ++row.undecided;
        }
    }
    return row;
}

}  // namespace eulat
