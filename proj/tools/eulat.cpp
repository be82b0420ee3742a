// eulat: classify f-vectors of 4-dimensional polytopes and 3-spheres by
// enumerating interval-connected Eulerian lattices of length 5, verifying
// sphere-hood, and certifying non-polytopality via partial chirotopes.

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>

#include "eulat/canonical.hpp"
#include "eulat/chirotope.hpp"
#include "eulat/facets.hpp"
#include "eulat/feasibility.hpp"
#include "eulat/fvector.hpp"
#include "eulat/graph_enum.hpp"
#include "eulat/io.hpp"
#include "eulat/lattice.hpp"
#include "eulat/pipeline.hpp"
#include "eulat/topology.hpp"

using namespace eulat;
using nlohmann::json;

namespace {

FVector parse_fvector(const std::string& s) {
    FVector f;
    long long* slot[4] = {&f.f0, &f.f1, &f.f2, &f.f3};
    size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        size_t comma = s.find(',', pos);
        std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        *slot[i] = std::stoll(part);
        if (i < 3) {
            if (comma == std::string::npos) throw CLI::ValidationError("expected f0,f1,f2,f3");
            pos = comma + 1;
        }
    }
    return f;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        std::string part = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!part.empty() && (part[0] == 'v' || part[0] == 'V')) part = part.substr(1);
        out.push_back(std::stoi(part));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int resolve_base_facet(const FaceLattice& L, const FacetListFile& file, std::string spec) {
    if (!spec.empty() && (spec[0] == 'F' || spec[0] == 'f')) spec = spec.substr(1);
    int idx = std::stoi(spec);
    if (idx < 0 || idx >= int(file.facets.size()))
        throw std::runtime_error("base facet index out of range");
    std::uint32_t want = 0;
    for (int v : file.facets[size_t(idx)]) want |= 1u << v;
    for (size_t f = 0; f < L.facet_masks.size(); ++f)
        if (L.facet_masks[f] == want) return int(f);
    throw std::runtime_error("base facet not found in lattice");
}

void apply_config(PipelineOptions& opts, const std::string& path) {
    if (path.empty()) return;
    json j = load_json(path);
    if (j.contains("workers")) opts.workers = j["workers"].get<int>();
    if (j.contains("budget_nodes")) opts.budget_nodes = j["budget_nodes"].get<std::uint64_t>();
    if (j.contains("edge_lb")) opts.edge_lb = j["edge_lb"].get<int>();
    if (j.contains("bistellar_budget"))
        opts.bistellar_budget = j["bistellar_budget"].get<std::uint64_t>();
    if (j.contains("bistellar_seed")) opts.bistellar_seed = j["bistellar_seed"].get<std::uint64_t>();
    if (j.contains("require_4_connected"))
        opts.require_4_connected = j["require_4_connected"].get<bool>();
    if (j.contains("known_polytopes"))
        for (const auto& fv : j["known_polytopes"])
            opts.known_polytopes.push_back({fv[0].get<long long>(), fv[1].get<long long>(),
                                            fv[2].get<long long>(), fv[3].get<long long>()});
}

void print_record(const ClassificationRecord& rec) {
    std::cout << "lattice " << rec.lattice_code.substr(0, 16) << "...  f=" << rec.f.str() << "\n";
    if (!rec.structure_error.empty()) {
        std::cout << "  structure error: " << rec.structure_error << "\n";
        return;
    }
    std::cout << "  eulerian: " << (rec.eulerian ? "yes" : "no")
              << "\n  interval-connected: " << (rec.interval_connected ? "yes" : "no")
              << "\n  intersection property: " << (rec.intersection ? "yes" : "no") << "\n";
    if (rec.accepted()) {
        std::cout << "  betti: (" << rec.betti.b[0] << "," << rec.betti.b[1] << ","
                  << rec.betti.b[2] << "," << rec.betti.b[3] << ")"
                  << (rec.betti_sphere ? " torsion-free" : "") << "\n  bistellar: " << rec.bistellar
                  << "\n  2-simple 2-simplicial: " << (rec.two_s_two_s ? "yes" : "no")
                  << "\n  self-dual: " << (rec.self_dual ? "yes" : "no") << "\n  non-polytopal: "
                  << (rec.certificate ? "certified" : "no certificate found") << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"enumeration and certification toolchain for f-vectors of 4-polytopes"};
    app.require_subcommand(1);

    auto* filter_cmd = app.add_subcommand("filter", "screen one f-vector");
    std::vector<long long> filter_f;
    filter_cmd->add_option("f", filter_f, "f0 f1 f2 f3")->expected(4);

    auto* cand_cmd = app.add_subcommand("candidates", "stream screen-passing f-vectors");
    long long max_size = 0;
    cand_cmd->add_option("--max-size", max_size, "maximum size f0+f3-10")->required();

    auto* graphs_cmd = app.add_subcommand("graphs", "enumerate candidate 1-skeleta");
    int gn = 0, gm = 0;
    bool g4 = false;
    graphs_cmd->add_option("--n", gn)->required();
    graphs_cmd->add_option("--m", gm)->required();
    graphs_cmd->add_flag("--require-4-connected", g4);

    auto* facets_cmd = app.add_subcommand("facets", "facet candidates of a graph");
    std::string facets_code;
    facets_cmd->add_option("--graph", facets_code, "graph6 code")->required();

    auto* solve_cmd = app.add_subcommand("solve", "enumerate 0/1 solutions for one graph");
    std::string solve_code, solve_f, solve_mode = "backtrack";
    int solve_lb = 3;
    solve_cmd->add_option("--graph", solve_code)->required();
    solve_cmd->add_option("--f", solve_f)->required();
    solve_cmd->add_option("--edge-lb", solve_lb)->check(CLI::IsMember({1, 3}));
    solve_cmd->add_option("--mode", solve_mode)->check(CLI::IsMember({"backtrack", "blocking"}));

    auto* vl_cmd = app.add_subcommand("verify-lattice", "lattice predicates for a facet list");
    std::string vl_file;
    vl_cmd->add_option("file", vl_file)->required();

    auto* vs_cmd = app.add_subcommand("verify-sphere", "betti numbers and bistellar reduction");
    std::string vs_file, vs_log;
    std::uint64_t vs_seed = 1, vs_budget = 100000;
    vs_cmd->add_option("file", vs_file)->required();
    vs_cmd->add_option("--seed", vs_seed);
    vs_cmd->add_option("--budget", vs_budget);
    vs_cmd->add_option("--flip-log", vs_log, "write the replayable flip sequence here");

    auto* cert_cmd = app.add_subcommand("certify", "search a non-polytopality certificate");
    std::string cert_file, cert_base, cert_out;
    bool case_split = false;
    cert_cmd->add_option("file", cert_file)->required();
    cert_cmd->add_option("--base", cert_base, "seed base, e.g. 0,2,4,9");
    cert_cmd->add_flag("--case-split", case_split, "also explore the coplanar seed branch");
    cert_cmd->add_option("--out", cert_out, "write the certificate JSON here");

    auto* vc_cmd = app.add_subcommand("verify-certificate", "replay a certificate");
    std::string vc_lattice, vc_cert;
    vc_cmd->add_option("lattice", vc_lattice)->required();
    vc_cmd->add_option("certificate", vc_cert)->required();

    auto* vd_cmd = app.add_subcommand("verify-diagram", "exact diagram verification");
    std::string vd_file, vd_base, vd_coords;
    vd_cmd->add_option("file", vd_file)->required();
    vd_cmd->add_option("--base-facet", vd_base)->required();
    vd_cmd->add_option("--coords", vd_coords)->required();

    auto* fl_cmd = app.add_subcommand("find-lattices", "full enumeration for one f-vector");
    std::string fl_f, fl_out, fl_config, fl_allow;
    PipelineOptions fl_opts;
    fl_cmd->add_option("--f", fl_f)->required();
    fl_cmd->add_option("--out", fl_out, "run directory (resumable)");
    fl_cmd->add_option("--workers", fl_opts.workers);
    fl_cmd->add_option("--budget-nodes", fl_opts.budget_nodes);
    fl_cmd->add_option("--edge-lb", fl_opts.edge_lb)->check(CLI::IsMember({1, 3}));
    fl_cmd->add_option("--config", fl_config, "JSON config file");
    fl_cmd->add_option("--known-polytopes", fl_allow, "allowlist JSON to tick off known f-vectors");
    bool fl_relaxed = false;
    fl_cmd->add_flag("--no-require-4-connected", fl_relaxed,
                     "keep all 2-connected skeleta (the relaxed run)");

    auto* vb_cmd = app.add_subcommand("verify", "all checks on a facet list, no enumeration");
    std::string vb_file;
    vb_cmd->add_option("file", vb_file)->required();

    auto* rep_cmd = app.add_subcommand("report", "summary row for a run directory");
    std::string rep_dir;
    rep_cmd->add_option("dir", rep_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*filter_cmd) {
            FVector f{filter_f[0], filter_f[1], filter_f[2], filter_f[3]};
            auto r = screen(f);
            std::cout << "f = (" << f.str() << ")\n";
            std::cout << "size = " << size_functional(f) << "\n";
            if (f.f0 + f.f3 != 10) std::cout << "fatness = " << rational_str(fatness(f)) << "\n";
            if (r.passed) {
                std::cout << "passed\n";
            } else {
                std::cout << "violated:";
                for (const auto& v : r.violated) std::cout << " " << v;
                std::cout << "\n";
            }
            return r.passed ? 0 : 1;
        }
        if (*cand_cmd) {
            for (const auto& v : candidate_stream(max_size)) std::cout << v.str() << "\n";
            return 0;
        }
        if (*graphs_cmd) {
            GraphEnumOptions o;
            o.min_degree = 4;
            o.connectivity = 2;
            for (const auto& g : enumerate_graphs(gn, gm, o)) {
                if (g4 && !is_k_connected(g, 4)) continue;
                std::cout << graph6_encode(g) << "\n";
            }
            return 0;
        }
        if (*facets_cmd) {
            Graph g = graph6_decode(facets_code);
            for (const auto& c : enumerate_facet_candidates(g)) {
                std::cout << "[";
                for (size_t i = 0; i < c.vertices.size(); ++i)
                    std::cout << (i ? "," : "") << c.vertices[i];
                std::cout << "] faces:";
                for (const auto& cyc : c.face_cycles) {
                    std::cout << " (";
                    for (size_t i = 0; i < cyc.size(); ++i) std::cout << (i ? "," : "") << cyc[i];
                    std::cout << ")";
                }
                std::cout << "\n";
            }
            return 0;
        }
        if (*solve_cmd) {
            Graph g = graph6_decode(solve_code);
            FVector f = parse_fvector(solve_f);
            auto cands = enumerate_facet_candidates(g);
            auto ridges = collect_ridges(cands);
            FeasibilityInstance inst = build_instance(g, cands, ridges, f, solve_lb);
            SolveMode mode = solve_mode == "blocking" ? SolveMode::Blocking : SolveMode::Backtrack;
            enumerate_solutions(inst, [&](const SolutionMask& s) {
                std::vector<std::vector<int>> lists;
                for (int i : s.facets) lists.push_back(cands[size_t(i)].vertices);
                std::sort(lists.begin(), lists.end());
                std::cout << json(lists).dump() << "\n";
            }, mode);
            return 0;
        }
        if (*vl_cmd) {
            auto file = load_facet_list(vl_file);
            FaceLattice L = from_facet_list(int(file.f.f0), file.facets);
            PosetView P = poset(L);
            std::cout << "f = (" << f_vector(L).str() << ")\n";
            std::cout << "eulerian: " << (is_eulerian(P) ? "yes" : "no") << "\n";
            std::cout << "interval-connected: " << (is_interval_connected(P) ? "yes" : "no")
                      << "\n";
            std::cout << "intersection property: "
                      << (has_intersection_property(P) ? "yes" : "no") << "\n";
            return 0;
        }
        if (*vs_cmd) {
            auto file = load_facet_list(vs_file);
            FaceLattice L = from_facet_list(int(file.f.f0), file.facets);
            SimplicialComplex K = triangulate(L);
            BettiVector b = betti_numbers(K);
            std::cout << "betti = (" << b.b[0] << "," << b.b[1] << "," << b.b[2] << "," << b.b[3]
                      << ")";
            bool tors = b.torsion[0] || b.torsion[1] || b.torsion[2] || b.torsion[3];
            std::cout << (tors ? " with torsion" : " torsion-free") << "\n";
            auto r = bistellar_reduce(K, vs_budget, vs_seed);
            std::cout << "bistellar: " << (r.reduced ? "reduced-to-simplex-boundary" : "undecided")
                      << " after " << r.flips_tried << " flips\n";
            if (!vs_log.empty() && r.reduced) {
                json flips = json::array();
                for (const auto& fl : r.flips)
                    flips.push_back({{"kind", fl.kind}, {"removed", fl.removed}, {"added", fl.added}});
                save_json(vs_log, flips);
            }
            return r.reduced ? 0 : 2;
        }
        if (*cert_cmd) {
            auto file = load_facet_list(cert_file);
            FaceLattice L = from_facet_list(int(file.f.f0), file.facets);
            std::optional<Certificate> cert;
            auto try_base = [&](const std::array<int, 4>& base, bool degenerate) {
                PartialChirotope chi = seed(L, base, degenerate);
                propagate(chi, L);
                return contradiction_search(chi);
            };
            if (!cert_base.empty()) {
                auto ints = parse_ints(cert_base);
                if (ints.size() != 4) throw std::runtime_error("--base needs 4 vertices");
                std::array<int, 4> base{ints[0], ints[1], ints[2], ints[3]};
                cert = try_base(base, false);
                if (case_split) {
                    auto degen = try_base(base, true);
                    std::cout << "coplanar branch: "
                              << (degen ? "contradiction" : "no contradiction") << "\n";
                }
            } else {
                for (size_t f = 0; f < L.facet_masks.size() && !cert; ++f) {
                    std::vector<int> vs;
                    for (int v = 0; v < L.n; ++v)
                        if ((L.facet_masks[f] >> v) & 1) vs.push_back(v);
                    int k = int(vs.size());
                    for (int a = 0; a < k && !cert; ++a)
                        for (int b = a + 1; b < k && !cert; ++b)
                            for (int c = b + 1; c < k && !cert; ++c)
                                for (int d = c + 1; d < k && !cert; ++d) {
                                    try {
                                        cert = try_base({vs[size_t(a)], vs[size_t(b)],
                                                         vs[size_t(c)], vs[size_t(d)]}, false);
                                    } catch (const BaseInsideRidgeError&) {
                                    }
                                }
                }
            }
            if (!cert) {
                std::cout << "no contradiction found (not certified)\n";
                return 2;
            }
            std::cout << "non-polytopality certificate found: " << cert->steps.size()
                      << " steps, violated triple sigma=(" << cert->violation.sigma[0] << ","
                      << cert->violation.sigma[1] << "," << cert->violation.sigma[2] << ") quad=("
                      << cert->violation.quad[0] << "," << cert->violation.quad[1] << ","
                      << cert->violation.quad[2] << "," << cert->violation.quad[3]
                      << ") products=(" << cert->violation.products[0] << ","
                      << cert->violation.products[1] << "," << cert->violation.products[2]
                      << ")\n";
            std::cout << "replay check: " << (verify_certificate(*cert, L) ? "ok" : "FAILED")
                      << "\n";
            if (!cert_out.empty()) save_json(cert_out, certificate_json(*cert));
            return 0;
        }
        if (*vc_cmd) {
            auto file = load_facet_list(vc_lattice);
            FaceLattice L = from_facet_list(int(file.f.f0), file.facets);
            Certificate cert = parse_certificate(load_json(vc_cert));
            bool ok = verify_certificate(cert, L);
            std::cout << (ok ? "certificate valid" : "certificate INVALID") << "\n";
            return ok ? 0 : 1;
        }
        if (*vd_cmd) {
            auto file = load_facet_list(vd_file);
            FaceLattice L = from_facet_list(int(file.f.f0), file.facets);
            auto coords = load_coords3(vd_coords);
            int base = resolve_base_facet(L, file, vd_base);
            std::string why;
            bool ok = verify_diagram(L, base, coords, &why);
            std::cout << (ok ? "diagram verified" : "diagram INVALID: " + why) << "\n";
            return ok ? 0 : 1;
        }
        if (*fl_cmd) {
            PipelineOptions opts = fl_opts;
            apply_config(opts, fl_config);
            if (fl_relaxed) opts.require_4_connected = false;
            if (!fl_out.empty()) opts.out_dir = fl_out;
            if (!fl_allow.empty()) {
                json allow = load_json(fl_allow);
                for (const auto& fv : allow)
                    opts.known_polytopes.push_back({fv[0].get<long long>(), fv[1].get<long long>(),
                                                    fv[2].get<long long>(),
                                                    fv[3].get<long long>()});
            }
            FVector f = parse_fvector(fl_f);
            auto res = find_lattices(f, opts);
            if (res.ticked_off) {
                std::cout << "ticked off: known polytope f-vector, enumeration skipped\n";
                return 0;
            }
            std::cout << res.records.size() << " lattice(s) from " << res.graphs_total
                      << " graph(s)" << (res.partial ? " [PARTIAL RUN]" : "") << "\n";
            for (const auto& rec : res.records) print_record(rec);
            return res.partial ? 3 : 0;
        }
        if (*vb_cmd) {
            auto rec = verify_bundle(load_facet_list(vb_file), PipelineOptions{});
            print_record(rec);
            return 0;
        }
        if (*rep_cmd) {
            auto row = report(rep_dir);
            std::cout << "f = (" << row.f.str() << ")  lattices=" << row.lattices
                      << " spheres=" << row.spheres << " np=" << row.np
                      << " undecided=" << row.undecided << (row.partial ? " [partial]" : "")
                      << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
