#include "eulat/feasibility.hpp"

#include <algorithm>
#include <numeric>

#include "eulat/planarity.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eulat {

bool improper_pair(const FacetCandidate& a, const FacetCandidate& b, const Graph& g) {
    std::uint64_t inter = a.vmask & b.vmask;
    int k = __builtin_popcountll(inter);
    if (k <= 1) return false;
    if (k == 2) {
        int u = __builtin_ctzll(inter);
        int v = 63 - __builtin_clzll(inter);
        return !g.has_edge(u, v);
    }
    // k >= 3: proper only when the intersection is a ridge of both, with the
    // same boundary cycle
    for (const auto& ca : a.face_cycles) {
        std::uint64_t cmask = 0;
        for (int v : ca) cmask |= std::uint64_t(1) << v;
        if (cmask != inter) continue;
        if (std::binary_search(b.face_cycles.begin(), b.face_cycles.end(), ca)) return false;
    }
    return true;
}

std::vector<std::uint8_t> improper_matrix(const std::vector<FacetCandidate>& facets,
                                          const Graph& g, bool parallel) {
    size_t k = facets.size();
    std::vector<std::uint8_t> m(k * k, 0);
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
        for (long long i = 0; i < (long long)k; ++i)
            for (size_t j = size_t(i) + 1; j < k; ++j) {
                bool imp = improper_pair(facets[size_t(i)], facets[j], g);
                m[size_t(i) * k + j] = m[j * k + size_t(i)] = imp ? 1 : 0;
            }
        return m;
#endif
    }
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            bool imp = improper_pair(facets[i], facets[j], g);
            m[i * k + j] = m[j * k + i] = imp ? 1 : 0;
        }
    return m;
}

FeasibilityInstance build_instance(const Graph& g, const std::vector<FacetCandidate>& facets,
                                   const std::vector<RidgeCandidate>& ridges, const FVector& f,
                                   int edge_lb) {
    if ((long long)facets.size() < f.f3)
        throw TriviallyInfeasibleError("fewer facet candidates than f3");
    if ((long long)ridges.size() < f.f2)
        throw TriviallyInfeasibleError("fewer ridge candidates than f2");

    FeasibilityInstance inst;
    inst.num_x = int(facets.size());
    inst.num_y = int(ridges.size());
    inst.graph = &g;
    inst.facets = &facets;
    inst.ridges = &ridges;
    inst.f = f;
    auto yvar = [&](int j) { return inst.num_x + j; };

    {  // sum x_i = f3, sum y_j = f2
        LinCon c;
        for (int i = 0; i < inst.num_x; ++i) c.terms.push_back({i, 1});
        c.lo = c.hi = int(f.f3);
        inst.cons.push_back(c);
        LinCon d;
        for (int j = 0; j < inst.num_y; ++j) d.terms.push_back({yvar(j), 1});
        d.lo = d.hi = int(f.f2);
        inst.cons.push_back(d);
    }
    // 2 y_j - sum_{F_i contains R_j} x_i = 0
    for (int j = 0; j < inst.num_y; ++j) {
        LinCon c;
        c.terms.push_back({yvar(j), 2});
        for (int i : ridges[size_t(j)].in_facets) c.terms.push_back({i, -1});
        c.lo = c.hi = 0;
        inst.cons.push_back(c);
    }
    // vertex links: deg(v) - #ridges at v + #facets at v = 2
    for (int v = 0; v < g.n; ++v) {
        LinCon c;
        for (int j = 0; j < inst.num_y; ++j)
            if ((ridges[size_t(j)].vmask >> v) & 1) c.terms.push_back({yvar(j), -1});
        for (int i = 0; i < inst.num_x; ++i)
            if ((facets[size_t(i)].vmask >> v) & 1) c.terms.push_back({i, 1});
        c.lo = c.hi = 2 - g.degree(v);
        inst.cons.push_back(c);
    }
    // edge intervals: #ridges on e = #facets containing e, and >= edge_lb
    for (auto [u, v] : g.edges()) {
        std::vector<int> rids, fids;
        for (int j = 0; j < inst.num_y; ++j) {
            const auto& cyc = ridges[size_t(j)].cycle;
            for (size_t t = 0; t < cyc.size(); ++t) {
                int a = cyc[t], b = cyc[(t + 1) % cyc.size()];
                if ((a == u && b == v) || (a == v && b == u)) {
                    rids.push_back(j);
                    break;
                }
            }
        }
        std::uint64_t em = (std::uint64_t(1) << u) | (std::uint64_t(1) << v);
        for (int i = 0; i < inst.num_x; ++i)
            if ((facets[size_t(i)].vmask & em) == em) fids.push_back(i);
        LinCon c;
        for (int j : rids) c.terms.push_back({yvar(j), 1});
        for (int i : fids) c.terms.push_back({i, -1});
        c.lo = c.hi = 0;
        inst.cons.push_back(c);
        LinCon d;
        for (int i : fids) d.terms.push_back({i, 1});
        d.lo = edge_lb;
        d.hi = int(fids.size());
        inst.cons.push_back(d);
    }
    // improper pairs: x_a + x_b <= 1
    auto imp = improper_matrix(facets, g, true);
    for (size_t a = 0; a < facets.size(); ++a)
        for (size_t b = a + 1; b < facets.size(); ++b)
            if (imp[a * facets.size() + b]) {
                LinCon c;
                c.terms.push_back({int(a), 1});
                c.terms.push_back({int(b), 1});
                c.lo = 0;
                c.hi = 1;
                inst.cons.push_back(c);
            }
    return inst;
}

namespace {

// Backtracking all-solutions search with bound propagation on the linear
// constraints. Facet variables are branched in descending ridge-overlap
// order; ridge variables are only ever set by propagation.
struct Solver {
    const FeasibilityInstance& inst;
    int nvars;
    std::vector<std::vector<std::pair<int, int>>> var_cons;  // var -> (con idx, coef)
    std::vector<int8_t> assign;     // -1 unknown
    std::vector<int> fixed_sum;     // per con: sum of coef over vars fixed to 1
    std::vector<int> pos_unk;       // per con: sum of positive coefs over unknowns
    std::vector<int> neg_unk;       // per con: sum of negative coefs over unknowns
    std::vector<int> order;         // branching order over x vars
    std::uint64_t nodes = 0, max_nodes = 0;
    std::vector<std::pair<int, int8_t>> trail;
    const std::function<void(const SolutionMask&)>* emit = nullptr;
    std::vector<LinCon> extra;      // blocking clauses
    bool stop_after_first = false;
    bool found_one = false;

    explicit Solver(const FeasibilityInstance& in) : inst(in) {
        nvars = inst.num_x + inst.num_y;
        assign.assign(size_t(nvars), -1);
        rebuild();
        // branch order: facets by descending number of ridges, then index
        order.resize(size_t(inst.num_x));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return (*inst.facets)[size_t(a)].face_cycles.size() >
                   (*inst.facets)[size_t(b)].face_cycles.size();
        });
    }

    std::vector<LinCon> all_cons;
    void rebuild() {
        all_cons = inst.cons;
        all_cons.insert(all_cons.end(), extra.begin(), extra.end());
        var_cons.assign(size_t(nvars), {});
        fixed_sum.assign(all_cons.size(), 0);
        pos_unk.assign(all_cons.size(), 0);
        neg_unk.assign(all_cons.size(), 0);
        for (size_t c = 0; c < all_cons.size(); ++c)
            for (auto [v, coef] : all_cons[c].terms) {
                var_cons[size_t(v)].push_back({int(c), coef});
                if (coef > 0)
                    pos_unk[c] += coef;
                else
                    neg_unk[c] += coef;
            }
    }

    bool set_var(int v, int8_t val, std::vector<int>& touched) {
        assign[size_t(v)] = val;
        trail.push_back({v, val});
        for (auto [c, coef] : var_cons[size_t(v)]) {
            if (val == 1) fixed_sum[size_t(c)] += coef;
            if (coef > 0)
                pos_unk[size_t(c)] -= coef;
            else
                neg_unk[size_t(c)] -= coef;
            touched.push_back(c);
        }
        return true;
    }

    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            auto [v, val] = trail.back();
            trail.pop_back();
            for (auto [c, coef] : var_cons[size_t(v)]) {
                if (val == 1) fixed_sum[size_t(c)] -= coef;
                if (coef > 0)
                    pos_unk[size_t(c)] += coef;
                else
                    neg_unk[size_t(c)] += coef;
            }
            assign[size_t(v)] = -1;
        }
    }

    // returns false on conflict
    bool propagate(std::vector<int> queue) {
        while (!queue.empty()) {
            int c = queue.back();
            queue.pop_back();
            const LinCon& con = all_cons[size_t(c)];
            int lo = fixed_sum[size_t(c)] + neg_unk[size_t(c)];
            int hi = fixed_sum[size_t(c)] + pos_unk[size_t(c)];
            if (lo > con.hi || hi < con.lo) return false;
            for (auto [v, coef] : con.terms) {
                if (assign[size_t(v)] != -1) continue;
                // value forcing by bounds
                int lo1 = lo + (coef > 0 ? coef : 0);   // min if v = 1
                int hi1 = hi + (coef < 0 ? coef : 0);   // max if v = 1
                int lo0 = lo - (coef < 0 ? coef : 0);   // min if v = 0
                int hi0 = hi - (coef > 0 ? coef : 0);   // max if v = 0
                bool ok1 = lo1 <= con.hi && hi1 >= con.lo;
                bool ok0 = lo0 <= con.hi && hi0 >= con.lo;
                if (!ok0 && !ok1) return false;
                if (ok0 == ok1) continue;
                std::vector<int> touched;
                set_var(v, ok1 ? 1 : 0, touched);
                for (int t : touched) queue.push_back(t);
                // restart this constraint's scan with fresh bounds
                lo = fixed_sum[size_t(c)] + neg_unk[size_t(c)];
                hi = fixed_sum[size_t(c)] + pos_unk[size_t(c)];
                if (lo > con.hi || hi < con.lo) return false;
            }
        }
        return true;
    }

    void emit_solution() {
        SolutionMask s;
        for (int i = 0; i < inst.num_x; ++i)
            if (assign[size_t(i)] == 1) s.facets.push_back(i);
        for (int j = 0; j < inst.num_y; ++j)
            if (assign[size_t(inst.num_x + j)] == 1) s.ridges.push_back(j);
        if (!check_solution(inst, s))
            throw std::logic_error("solver emitted an assignment violating a constraint");
        found_one = true;
        (*emit)(s);
    }

    bool all_assigned() const {
        for (int v = 0; v < nvars; ++v)
            if (assign[size_t(v)] == -1) return false;
        return true;
    }

    void search() {
        if (max_nodes && ++nodes > max_nodes) throw BudgetExceededError();
        if (stop_after_first && found_one) return;
        int branch = -1;
        for (int i : order)
            if (assign[size_t(i)] == -1) {
                branch = i;
                break;
            }
        if (branch == -1) {
            // all x decided; y must be fully forced by the ridge equations
            for (int j = 0; j < inst.num_y; ++j)
                if (assign[size_t(inst.num_x + j)] == -1) {
                    // ridge with zero incident facets chosen and no forcing:
                    // its equation is 2y = 0, propagation should have set it;
                    // being here means inconsistent bookkeeping
                    throw std::logic_error("undecided ridge variable at full facet assignment");
                }
            emit_solution();
            return;
        }
        for (int8_t val : {int8_t(1), int8_t(0)}) {
            size_t mark = trail.size();
            std::vector<int> touched;
            set_var(branch, val, touched);
            if (propagate(touched)) search();
            undo_to(mark);
            if (stop_after_first && found_one) return;
        }
    }

    void run(const std::function<void(const SolutionMask&)>& em) {
        emit = &em;
        std::vector<int> all(all_cons.size());
        std::iota(all.begin(), all.end(), 0);
        size_t mark = trail.size();
        if (propagate(all)) search();
        undo_to(mark);
    }
};

}  // namespace

void enumerate_solutions(const FeasibilityInstance& inst,
                         const std::function<void(const SolutionMask&)>& emit, SolveMode mode,
                         std::uint64_t max_nodes) {
    if (mode == SolveMode::Backtrack) {
        Solver s(inst);
        s.max_nodes = max_nodes;
        s.run(emit);
        return;
    }
    // blocking-clause mode: find one solution, exclude its facet set, repeat
    std::vector<LinCon> blocks;
    std::uint64_t spent = 0;
    while (true) {
        if (max_nodes && spent >= max_nodes) throw BudgetExceededError();
        Solver s(inst);
        s.extra = blocks;
        s.rebuild();
        s.stop_after_first = true;
        s.max_nodes = max_nodes ? max_nodes - spent : 0;
        SolutionMask found;
        bool have = false;
        s.run([&](const SolutionMask& m) {
            found = m;
            have = true;
        });
        spent += s.nodes;
        if (!have) return;
        emit(found);
        LinCon c;
        for (int i : found.facets) c.terms.push_back({i, 1});
        c.lo = 0;
        c.hi = int(found.facets.size()) - 1;
        blocks.push_back(c);
    }
}

std::vector<SolutionMask> all_solutions(const FeasibilityInstance& inst, SolveMode mode,
                                        std::uint64_t max_nodes) {
    std::vector<SolutionMask> out;
    enumerate_solutions(inst, [&](const SolutionMask& s) { out.push_back(s); }, mode, max_nodes);
    std::sort(out.begin(), out.end());
    return out;
}

bool check_solution(const FeasibilityInstance& inst, const SolutionMask& sol) {
    std::vector<int8_t> val(size_t(inst.num_x + inst.num_y), 0);
    for (int i : sol.facets) val[size_t(i)] = 1;
    for (int j : sol.ridges) val[size_t(inst.num_x + j)] = 1;
    for (const auto& c : inst.cons) {
        int s = 0;
        for (auto [v, coef] : c.terms) s += coef * val[size_t(v)];
        if (s < c.lo || s > c.hi) return false;
    }
    return true;
}

}  // namespace eulat
