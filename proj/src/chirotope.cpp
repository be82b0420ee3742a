#include "eulat/chirotope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace eulat {

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// colexicographic rank of a sorted 5-subset
size_t rank5(const std::array<int, 5>& t) {
    long long r = 0;
    for (int i = 0; i < 5; ++i) r += binom(t[size_t(i)], i + 1);
    return size_t(r);
}

std::array<int, 5> sorted5(std::array<int, 5> t) {
    std::sort(t.begin(), t.end());
    return t;
}

struct FacetCtx {
    int n = 0;
    std::vector<std::uint32_t> facets;
    std::vector<std::uint32_t> ridges;
};

FacetCtx make_ctx(const FaceLattice& L) {
    FacetCtx c;
    c.n = L.n;
    c.facets = L.facet_masks;
    c.ridges = L.ridge_masks;
    return c;
}

std::uint32_t mask_of(const int* b, int k) {
    std::uint32_t m = 0;
    for (int i = 0; i < k; ++i) m |= 1u << b[i];
    return m;
}

}  // namespace

int perm_parity5(const std::array<int, 5>& t) {
    int inv = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (t[size_t(i)] > t[size_t(j)]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

PartialChirotope::PartialChirotope(int n_) : n(n_) {
    size_t sz = (n >= 5) ? size_t(binom(n, 5)) : 0;
    val.assign(sz, kUnknown);
    step_of.assign(sz, -1);
}

std::int8_t PartialChirotope::lookup(const std::array<int, 5>& tuple) const {
    auto s = sorted5(tuple);
    std::int8_t v = val[rank5(s)];
    if (v == kUnknown || v == 0) return v;
    return std::int8_t(v * perm_parity5(tuple));
}

namespace {

// Assign the sorted basis; returns false (and counts a conflict) when the
// value is already known and differs.
bool set_value(PartialChirotope& chi, const std::array<int, 5>& sorted_basis, int sign,
               DerivationStep step, bool* fresh = nullptr) {
    size_t r = rank5(sorted_basis);
    if (chi.val[r] != kUnknown) {
        if (fresh) *fresh = false;
        return chi.val[r] == sign;
    }
    chi.val[r] = std::int8_t(sign);
    step.basis = sorted_basis;
    step.sign = sign;
    chi.step_of[r] = int(chi.steps.size());
    chi.steps.push_back(std::move(step));
    if (fresh) *fresh = true;
    return true;
}

}  // namespace

PartialChirotope seed(const FaceLattice& L, const std::array<int, 4>& base, bool degenerate) {
    if (L.n < 5) throw std::invalid_argument("seed: need at least 5 vertices");
    std::uint32_t bmask = mask_of(base.data(), 4);
    if (__builtin_popcount(bmask) != 4) throw std::invalid_argument("seed: base not 4 distinct");
    FacetCtx ctx = make_ctx(L);
    int containing = -1;
    for (size_t f = 0; f < ctx.facets.size(); ++f)
        if ((bmask & ctx.facets[f]) == bmask) {
            containing = int(f);
            break;
        }
    if (containing < 0) throw std::invalid_argument("seed: base not contained in any facet");
    for (auto rm : ctx.ridges)
        if ((bmask & rm) == bmask) throw BaseInsideRidgeError();

    PartialChirotope chi(L.n);
    chi.base = base;

    // coplanar zeros: 5-subsets inside one facet
    for (size_t f = 0; f < ctx.facets.size(); ++f) {
        std::vector<int> vs;
        for (int v = 0; v < L.n; ++v)
            if ((ctx.facets[f] >> v) & 1) vs.push_back(v);
        int k = int(vs.size());
        if (k < 5) continue;
        for (std::uint32_t sub = 0; sub < (1u << k); ++sub) {
            if (__builtin_popcount(sub) != 5) continue;
            std::array<int, 5> t;
            int p = 0;
            for (int i = 0; i < k; ++i)
                if ((sub >> i) & 1) t[size_t(p++)] = vs[size_t(i)];
            DerivationStep st;
            st.rule = Rule::CoplanarZero;
            st.facet = int(f);
            set_value(chi, t, 0, st);
        }
    }

    std::uint32_t fmask = ctx.facets[size_t(containing)];
    for (int v = 0; v < L.n; ++v) {
        if ((fmask >> v) & 1) continue;
        std::array<int, 5> ordered{base[0], base[1], base[2], base[3], v};
        int sign = degenerate ? 0 : perm_parity5(ordered);
        DerivationStep st;
        st.rule = Rule::Seed;
        st.facet = containing;
        set_value(chi, sorted5(ordered), sign, st);
    }
    return chi;
}

namespace {

struct GpTermEval {
    int value = kUnknown;     // -1,0,1 or kUnknown
    int unknown_factor = -1;  // 0 or 1 when exactly that factor is unknown
    std::array<std::array<int, 5>, 2> factors;
    std::array<int, 2> fval;  // factor lookups
};

GpTermEval eval_term(const PartialChirotope& chi, const std::array<int, 3>& sg, int a, int b,
                     int c, int d, int fold) {
    GpTermEval t;
    t.factors[0] = {sg[0], sg[1], sg[2], a, b};
    t.factors[1] = {sg[0], sg[1], sg[2], c, d};
    t.fval[0] = chi.lookup(t.factors[0]);
    t.fval[1] = chi.lookup(t.factors[1]);
    if (t.fval[0] == 0 || t.fval[1] == 0) {
        t.value = 0;
        return t;
    }
    if (t.fval[0] == kUnknown && t.fval[1] == kUnknown) return t;
    if (t.fval[0] == kUnknown || t.fval[1] == kUnknown) {
        t.unknown_factor = (t.fval[0] == kUnknown) ? 0 : 1;
        return t;
    }
    t.value = fold * t.fval[0] * t.fval[1];
    return t;
}

// premise tuples that pin down a known term value
void term_premises(const GpTermEval& t, std::vector<std::array<int, 5>>& out) {
    if (t.value == 0) {
        if (t.fval[0] == 0) out.push_back(sorted5(t.factors[0]));
        if (t.fval[1] == 0) out.push_back(sorted5(t.factors[1]));
    } else {
        out.push_back(sorted5(t.factors[0]));
        out.push_back(sorted5(t.factors[1]));
    }
}

constexpr int kFold[3] = {1, -1, 1};

struct TripleEval {
    std::array<GpTermEval, 3> t;
};

TripleEval eval_triple(const PartialChirotope& chi, const std::array<int, 3>& sg,
                       const std::array<int, 4>& q) {
    TripleEval e;
    e.t[0] = eval_term(chi, sg, q[0], q[1], q[2], q[3], kFold[0]);
    e.t[1] = eval_term(chi, sg, q[0], q[2], q[1], q[3], kFold[1]);
    e.t[2] = eval_term(chi, sg, q[0], q[3], q[1], q[2], kFold[2]);
    return e;
}

bool violated(const TripleEval& e) {
    int pos = 0, neg = 0, zero = 0;
    for (const auto& t : e.t) {
        if (t.value == kUnknown) return false;
        if (t.value > 0) ++pos;
        if (t.value < 0) ++neg;
        if (t.value == 0) ++zero;
    }
    (void)zero;
    if (pos + neg == 0) return false;   // all zero: fine
    return !(pos > 0 && neg > 0);       // needs both signs to balance
}

// Scan order: descending colexicographic, sigma triples outermost and quads
// within each sigma. This mirrors the order in which the contradiction
// derivations proceed (the useful relations sit on the high-index triples,
// which share the most known values with the seeds). fn returning false
// aborts the scan.
template <typename F>
bool for_each_triple(int n, F&& fn) {
    std::array<int, 3> sg;
    for (sg[2] = n - 1; sg[2] >= 2; --sg[2])
        for (sg[1] = sg[2] - 1; sg[1] >= 1; --sg[1])
            for (sg[0] = sg[1] - 1; sg[0] >= 0; --sg[0]) {
                std::vector<int> rest;
                for (int v = n - 1; v >= 0; --v)
                    if (v != sg[0] && v != sg[1] && v != sg[2]) rest.push_back(v);
                int m = int(rest.size());
                std::array<int, 4> q;
                for (int a = 0; a < m; ++a)
                    for (int b = a + 1; b < m; ++b)
                        for (int c = b + 1; c < m; ++c)
                            for (int d = c + 1; d < m; ++d) {
                                // rest is descending, so emit the quad sorted
                                q = {rest[size_t(d)], rest[size_t(c)], rest[size_t(b)],
                                     rest[size_t(a)]};
                                if (!fn(sg, q)) return false;
                            }
            }
    return true;
}

// facet-side closure from a worklist of known-nonzero sorted tuples
void side_closure(PartialChirotope& chi, const FacetCtx& ctx,
                  std::vector<std::array<int, 5>>& work) {
    while (!work.empty()) {
        std::array<int, 5> T = work.back();
        work.pop_back();
        int tval = chi.val[rank5(T)];
        if (tval == 0 || tval == kUnknown) continue;
        for (int drop = 0; drop < 5; ++drop) {
            std::array<int, 4> S;
            int p = 0;
            for (int i = 0; i < 5; ++i)
                if (i != drop) S[size_t(p++)] = T[size_t(i)];
            int u = T[size_t(drop)];
            std::uint32_t smask = mask_of(S.data(), 4);
            std::array<int, 5> su{S[0], S[1], S[2], S[3], u};
            int val_su = chi.lookup(su);
            if (val_su == 0 || val_su == kUnknown) continue;
            for (size_t f = 0; f < ctx.facets.size(); ++f) {
                std::uint32_t fm = ctx.facets[f];
                if ((smask & fm) != smask) continue;
                if ((fm >> u) & 1) continue;
                for (int v = 0; v < ctx.n; ++v) {
                    if ((fm >> v) & 1) continue;
                    if ((smask >> v) & 1) continue;
                    if (v == u) continue;
                    std::array<int, 5> sv{S[0], S[1], S[2], S[3], v};
                    auto target = sorted5(sv);
                    size_t r = rank5(target);
                    if (chi.val[r] != kUnknown) {
                        if (chi.lookup(sv) != val_su) ++chi.side_conflicts;
                        continue;
                    }
                    int stored = perm_parity5(sv) * val_su;
                    DerivationStep st;
                    st.rule = Rule::FacetSide;
                    st.facet = int(f);
                    st.premises.push_back(T);
                    bool fresh = false;
                    set_value(chi, target, stored, st, &fresh);
                    if (fresh && stored != 0) work.push_back(target);
                }
            }
        }
    }
}

bool gp_pass(PartialChirotope& chi, std::vector<std::array<int, 5>>& work) {
    bool any = false;
    for_each_triple(chi.n, [&](const std::array<int, 3>& sg, const std::array<int, 4>& q) {
        TripleEval e = eval_triple(chi, sg, q);
        int unknown_count = 0, uk = -1;
        for (int k = 0; k < 3; ++k)
            if (e.t[size_t(k)].value == kUnknown) {
                ++unknown_count;
                uk = k;
            }
        if (unknown_count == 0 && violated(e)) {
            chi.halted_at = GpViolation{sg, q, {e.t[0].value, e.t[1].value, e.t[2].value}};
            return false;  // the derivation ends at its first contradiction
        }
        if (unknown_count != 1) return true;
        const GpTermEval& tu = e.t[size_t(uk)];
        if (tu.unknown_factor < 0) return true;  // both factors unknown
        int A = e.t[size_t((uk + 1) % 3)].value;
        int B = e.t[size_t((uk + 2) % 3)].value;
        int needed;
        if (A == 0 && B == 0)
            needed = 0;
        else if (A == 0)
            needed = -B;
        else if (B == 0)
            needed = -A;
        else if (A == B)
            needed = -A;
        else
            return true;  // opposite signs already present
        int g = tu.fval[size_t(1 - tu.unknown_factor)];
        int fu = needed * kFold[uk] * g;  // needed = fold * fu * g over {-1,0,1}
        const auto& tup = tu.factors[size_t(tu.unknown_factor)];
        auto target = sorted5(tup);
        size_t r = rank5(target);
        if (chi.val[r] != kUnknown) return true;  // set earlier in this pass
        int stored = (fu == 0) ? 0 : perm_parity5(tup) * fu;
        DerivationStep st;
        st.rule = Rule::GpPropagate;
        st.sigma = sg;
        st.quad = q;
        term_premises(e.t[size_t((uk + 1) % 3)], st.premises);
        term_premises(e.t[size_t((uk + 2) % 3)], st.premises);
        st.premises.push_back(sorted5(tu.factors[size_t(1 - tu.unknown_factor)]));
        bool fresh = false;
        set_value(chi, target, stored, st, &fresh);
        if (fresh) {
            any = true;
            if (stored != 0) work.push_back(target);
        }
        return true;
    });
    return any;
}

}  // namespace

void propagate(PartialChirotope& chi, const FaceLattice& L) {
    FacetCtx ctx = make_ctx(L);
    std::vector<std::array<int, 5>> work;
    // start from everything currently known nonzero
    {
        std::array<int, 5> t;
        for (t[0] = 0; t[0] < chi.n; ++t[0])
            for (t[1] = t[0] + 1; t[1] < chi.n; ++t[1])
                for (t[2] = t[1] + 1; t[2] < chi.n; ++t[2])
                    for (t[3] = t[2] + 1; t[3] < chi.n; ++t[3])
                        for (t[4] = t[3] + 1; t[4] < chi.n; ++t[4]) {
                            auto v = chi.val[rank5(t)];
                            if (v == 1 || v == -1) work.push_back(t);
                        }
    }
    side_closure(chi, ctx, work);
    while (!chi.halted_at) {
        bool any = gp_pass(chi, work);
        if (chi.halted_at) break;
        if (!work.empty()) {
            side_closure(chi, ctx, work);
            any = true;
        }
        if (!any) break;
    }
}

std::optional<Certificate> contradiction_search(const PartialChirotope& chi) {
    std::vector<GpViolation> found;
    for_each_triple(chi.n, [&](const std::array<int, 3>& sg, const std::array<int, 4>& q) {
        TripleEval e = eval_triple(chi, sg, q);
        if (violated(e)) {
            GpViolation v;
            v.sigma = sg;
            v.quad = q;
            v.products = {e.t[0].value, e.t[1].value, e.t[2].value};
            found.push_back(v);
        }
        return true;
    });
    if (found.empty()) return std::nullopt;
    Certificate cert;
    cert.base = chi.base;
    // the violation the derivation stopped at, when there is one
    cert.violation = chi.halted_at ? *chi.halted_at : found.front();
    cert.all_violations = found;

    // back-trace the steps needed to justify the selected violation
    std::set<size_t> needed_ranks;
    {
        TripleEval e = eval_triple(chi, cert.violation.sigma, cert.violation.quad);
        std::vector<std::array<int, 5>> prem;
        for (int k = 0; k < 3; ++k) term_premises(e.t[size_t(k)], prem);
        std::vector<size_t> stack;
        for (auto& p : prem) stack.push_back(rank5(p));
        while (!stack.empty()) {
            size_t r = stack.back();
            stack.pop_back();
            if (needed_ranks.count(r)) continue;
            needed_ranks.insert(r);
            int si = chi.step_of[r];
            if (si < 0) continue;
            for (const auto& p : chi.steps[size_t(si)].premises) stack.push_back(rank5(p));
        }
    }
    std::vector<int> step_ids;
    for (size_t r : needed_ranks)
        if (chi.step_of[r] >= 0) step_ids.push_back(chi.step_of[r]);
    std::sort(step_ids.begin(), step_ids.end());
    for (int si : step_ids) cert.steps.push_back(chi.steps[size_t(si)]);
    return cert;
}

bool verify_certificate(const Certificate& cert, const FaceLattice& L) {
    FacetCtx ctx = make_ctx(L);
    int n = L.n;
    PartialChirotope map(n);  // plain value store; steps unused
    std::uint32_t bmask = mask_of(cert.base.data(), 4);
    bool base_in_ridge = false;
    for (auto rm : ctx.ridges)
        if ((bmask & rm) == bmask) base_in_ridge = true;

    auto structural = [&](bool ok, size_t i) {
        if (!ok) throw MalformedStepError(i);
    };

    // seeds must be uniformly the +1 scheme or uniformly the coplanar branch:
    // mixing them would assert extra degeneracies that nothing justifies
    int seed_mode = 0;  // 0 unset, 1 nondegenerate, -1 degenerate

    for (size_t i = 0; i < cert.steps.size(); ++i) {
        const DerivationStep& st = cert.steps[i];
        auto b = st.basis;
        structural(std::is_sorted(b.begin(), b.end()) &&
                       std::adjacent_find(b.begin(), b.end()) == b.end() && b[0] >= 0 &&
                       b[4] < n,
                   i);
        structural(st.sign == -1 || st.sign == 0 || st.sign == 1, i);
        bool ok = false;
        switch (st.rule) {
            case Rule::Seed: {
                structural(st.facet >= 0 && st.facet < int(ctx.facets.size()), i);
                std::uint32_t fm = ctx.facets[size_t(st.facet)];
                std::uint32_t basis_mask = mask_of(b.data(), 5);
                if ((bmask & fm) != bmask || base_in_ridge) break;
                if ((basis_mask & bmask) != bmask) break;
                std::uint32_t vm = basis_mask & ~bmask;
                if (__builtin_popcount(vm) != 1) break;
                int v = __builtin_ctz(vm);
                if ((fm >> v) & 1) break;
                std::array<int, 5> ordered{cert.base[0], cert.base[1], cert.base[2], cert.base[3],
                                           v};
                int expect = perm_parity5(ordered);
                int mode = (st.sign == 0) ? -1 : ((st.sign == expect) ? 1 : 0);
                if (mode == 0) break;
                if (seed_mode == 0) seed_mode = mode;
                ok = (mode == seed_mode);
                break;
            }
            case Rule::CoplanarZero: {
                structural(st.facet >= 0 && st.facet < int(ctx.facets.size()), i);
                std::uint32_t fm = ctx.facets[size_t(st.facet)];
                std::uint32_t basis_mask = mask_of(b.data(), 5);
                ok = ((basis_mask & fm) == basis_mask) && st.sign == 0;
                break;
            }
            case Rule::FacetSide: {
                structural(st.premises.size() == 1, i);
                structural(st.facet >= 0 && st.facet < int(ctx.facets.size()), i);
                auto P = st.premises[0];
                structural(map.val[rank5(P)] != kUnknown, i);
                std::uint32_t pm = mask_of(P.data(), 5);
                std::uint32_t basis_mask = mask_of(b.data(), 5);
                std::uint32_t smask = pm & basis_mask;
                if (__builtin_popcount(smask) != 4) break;
                std::array<int, 4> S;
                int p = 0;
                for (int v = 0; v < n; ++v)
                    if ((smask >> v) & 1) S[size_t(p++)] = v;
                int u = __builtin_ctz(pm & ~smask);
                int v = __builtin_ctz(basis_mask & ~smask);
                std::uint32_t fm = ctx.facets[size_t(st.facet)];
                if ((smask & fm) != smask) break;
                if (((fm >> u) & 1) || ((fm >> v) & 1)) break;
                std::array<int, 5> su{S[0], S[1], S[2], S[3], u};
                std::array<int, 5> sv{S[0], S[1], S[2], S[3], v};
                int val_su = map.lookup(su);
                if (val_su == 0 || val_su == kUnknown) break;
                int expect_stored = perm_parity5(sv) * val_su;
                ok = (st.sign == expect_stored);
                break;
            }
            case Rule::GpPropagate: {
                auto sg = st.sigma;
                auto q = st.quad;
                structural(std::is_sorted(sg.begin(), sg.end()) && sg[0] >= 0 && sg[2] < n, i);
                structural(std::is_sorted(q.begin(), q.end()) && q[0] >= 0 && q[3] < n, i);
                for (const auto& p : st.premises) structural(map.val[rank5(p)] != kUnknown, i);
                size_t concl = rank5(b);
                // evaluate the triple with the conclusion hidden
                PartialChirotope view = map;
                view.val[concl] = kUnknown;
                TripleEval e = eval_triple(view, sg, q);
                int unknown_count = 0, uk = -1;
                for (int k = 0; k < 3; ++k)
                    if (e.t[size_t(k)].value == kUnknown) {
                        ++unknown_count;
                        uk = k;
                    }
                if (unknown_count != 1) break;
                const GpTermEval& tu = e.t[size_t(uk)];
                if (tu.unknown_factor < 0) break;
                if (rank5(sorted5(tu.factors[size_t(tu.unknown_factor)])) != concl) break;
                int A = e.t[size_t((uk + 1) % 3)].value;
                int B = e.t[size_t((uk + 2) % 3)].value;
                int needed;
                if (A == 0 && B == 0)
                    needed = 0;
                else if (A == 0)
                    needed = -B;
                else if (B == 0)
                    needed = -A;
                else if (A == B)
                    needed = -A;
                else
                    break;
                int g = tu.fval[size_t(1 - tu.unknown_factor)];
                int fu = needed * kFold[uk] * g;
                const auto& tup = tu.factors[size_t(tu.unknown_factor)];
                int stored = (fu == 0) ? 0 : perm_parity5(tup) * fu;
                ok = (st.sign == stored);
                break;
            }
        }
        if (!ok) return false;
        size_t r = rank5(b);
        if (map.val[r] != kUnknown && map.val[r] != st.sign) return false;
        map.val[r] = std::int8_t(st.sign);
    }

    // final violation must be fully justified
    TripleEval e = eval_triple(map, cert.violation.sigma, cert.violation.quad);
    for (int k = 0; k < 3; ++k) {
        if (e.t[size_t(k)].value == kUnknown) return false;
        if (e.t[size_t(k)].value != cert.violation.products[size_t(k)]) return false;
    }
    return violated(e);
}

PartialChirotope chirotope_from_points(const std::vector<Point4>& pts) {
    int n = int(pts.size());
    if (n < 5) throw std::invalid_argument("chirotope_from_points: need >= 5 points");
    PartialChirotope chi(n);
    chi.base = {0, 1, 2, 3};
    std::array<int, 5> t;
    for (t[0] = 0; t[0] < n; ++t[0])
        for (t[1] = t[0] + 1; t[1] < n; ++t[1])
            for (t[2] = t[1] + 1; t[2] < n; ++t[2])
                for (t[3] = t[2] + 1; t[3] < n; ++t[3])
                    for (t[4] = t[3] + 1; t[4] < n; ++t[4]) {
                        // homogeneous 5x5 determinant, exact
                        std::array<std::array<Rational, 5>, 5> m;
                        for (int i = 0; i < 5; ++i) {
                            m[size_t(i)][0] = 1;
                            for (int j = 0; j < 4; ++j)
                                m[size_t(i)][size_t(j + 1)] = pts[size_t(t[size_t(i)])][size_t(j)];
                        }
                        int sign = 1;
                        Rational det = 1;
                        for (int c = 0; c < 5 && sign != 0; ++c) {
                            int piv = -1;
                            for (int r = c; r < 5; ++r)
                                if (m[size_t(r)][size_t(c)] != 0) {
                                    piv = r;
                                    break;
                                }
                            if (piv < 0) {
                                sign = 0;
                                break;
                            }
                            if (piv != c) {
                                std::swap(m[size_t(piv)], m[size_t(c)]);
                                sign = -sign;
                            }
                            for (int r = c + 1; r < 5; ++r) {
                                if (m[size_t(r)][size_t(c)] == 0) continue;
                                Rational q = m[size_t(r)][size_t(c)] / m[size_t(c)][size_t(c)];
                                for (int j = c; j < 5; ++j)
                                    m[size_t(r)][size_t(j)] -= q * m[size_t(c)][size_t(j)];
                            }
                            det *= m[size_t(c)][size_t(c)];
                        }
                        int dsign = (sign == 0) ? 0 : (det > 0 ? sign : -sign);
                        chi.val[rank5(t)] = std::int8_t(dsign);
                    }
    return chi;
}

bool gp_consistent(const PartialChirotope& chi) {
    return for_each_triple(chi.n, [&](const std::array<int, 3>& sg, const std::array<int, 4>& q) {
        return !violated(eval_triple(chi, sg, q));
    });
}

// ---------------------------------------------------------------------------
// diagram verification

namespace {

using V3 = std::array<Rational, 3>;

V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 cross(const V3& a, const V3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Rational dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Rational det3(const V3& a, const V3& b, const V3& c) { return dot(a, cross(b, c)); }
int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int orient3(const V3& a, const V3& b, const V3& c, const V3& d) {
    return sgn(det3(sub(b, a), sub(c, a), sub(d, a)));
}

std::vector<int> mask_list(std::uint32_t m) {
    std::vector<int> v;
    while (m) {
        v.push_back(__builtin_ctz(m));
        m &= m - 1;
    }
    return v;
}

struct RidgePlane {
    V3 origin;
    V3 normal;  // from the cycle's first non-collinear triple, fixed per ridge
    bool valid = false;
};

}  // namespace

bool verify_diagram(const FaceLattice& L, int base_facet, const std::vector<Point3>& coords,
                    std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (base_facet < 0 || base_facet >= int(L.facet_masks.size()))
        throw std::invalid_argument("verify_diagram: base facet out of range");
    if (int(coords.size()) != L.n)
        throw std::invalid_argument("verify_diagram: wrong number of coordinates");

    // fixed plane per ridge, from the stored cycle
    std::vector<RidgePlane> planes(L.ridge_masks.size());
    for (size_t r = 0; r < L.ridge_masks.size(); ++r) {
        const auto& cyc = L.ridge_cycles[r];
        size_t k = cyc.size();
        for (size_t i = 0; i < k && !planes[r].valid; ++i) {
            const V3& p0 = coords[size_t(cyc[i % k])];
            const V3& p1 = coords[size_t(cyc[(i + 1) % k])];
            const V3& p2 = coords[size_t(cyc[(i + 2) % k])];
            V3 nrm = cross(sub(p1, p0), sub(p2, p0));
            if (nrm[0] != 0 || nrm[1] != 0 || nrm[2] != 0) {
                planes[r] = {p0, nrm, true};
            }
        }
        if (!planes[r].valid) return fail("ridge cycle is collinear");
        // every cycle vertex on the plane
        for (int v : cyc)
            if (dot(planes[r].normal, sub(coords[size_t(v)], planes[r].origin)) != 0)
                return fail("ridge cycle is not coplanar");
    }
    auto side = [&](size_t r, int v) {
        return sgn(dot(planes[r].normal, sub(coords[size_t(v)], planes[r].origin)));
    };

    // per-cell combinatorial hull check; remembers which side of each ridge
    // the cell lies on
    std::vector<std::map<int, int>> cell_side(L.facet_masks.size());
    for (size_t f = 0; f < L.facet_masks.size(); ++f) {
        auto verts = mask_list(L.facet_masks[f]);
        // full-dimensional cell
        bool fulldim = false;
        for (size_t a = 0; a < verts.size() && !fulldim; ++a)
            for (size_t b = a + 1; b < verts.size() && !fulldim; ++b)
                for (size_t c = b + 1; c < verts.size() && !fulldim; ++c)
                    for (size_t d = c + 1; d < verts.size() && !fulldim; ++d)
                        if (orient3(coords[size_t(verts[a])], coords[size_t(verts[b])],
                                    coords[size_t(verts[c])], coords[size_t(verts[d])]) != 0)
                            fulldim = true;
        if (!fulldim) throw DegenerateCellError("cell vertices are coplanar");

        for (int r : L.facet_ridges[f]) {
            std::uint32_t rm = L.ridge_masks[size_t(r)];
            int s = 0;
            for (int v : verts) {
                if ((rm >> v) & 1) continue;
                int sv = side(size_t(r), v);
                if (sv == 0) return fail("cell vertex lies on a ridge plane");
                if (s == 0) s = sv;
                if (sv != s) return fail("cell vertices on both sides of a ridge plane");
            }
            if (s == 0) return fail("cell has no vertex off a ridge plane");
            cell_side[f][r] = s;

            // cycle must traverse a strictly convex polygon within the plane
            const auto& cyc = L.ridge_cycles[size_t(r)];
            size_t k = cyc.size();
            const V3& N = planes[size_t(r)].normal;
            int winding = 0;
            for (size_t i = 0; i < k; ++i) {
                const V3& a = coords[size_t(cyc[i])];
                const V3& b = coords[size_t(cyc[(i + 1) % k])];
                int es = 0;
                for (size_t j = 0; j < k; ++j) {
                    if (j == i || j == (i + 1) % k) continue;
                    int s2 = sgn(dot(N, cross(sub(b, a), sub(coords[size_t(cyc[j])], a))));
                    if (s2 == 0) return fail("three collinear points on a ridge polygon");
                    if (es == 0) es = s2;
                    if (s2 != es) return fail("ridge polygon not convex in cycle order");
                }
                if (winding == 0) winding = es;
                if (es != winding) return fail("ridge polygon winding inconsistent");
            }
        }
    }

    // base cell contains every vertex (weakly inside all base ridge planes)
    for (int r : L.facet_ridges[size_t(base_facet)]) {
        int inner = cell_side[size_t(base_facet)][r];
        for (int v = 0; v < L.n; ++v) {
            int s = side(size_t(r), v);
            if (s != 0 && s != inner) return fail("a vertex lies outside the base cell");
        }
    }

    // interior ridges separate their two cells
    for (size_t r = 0; r < L.ridge_masks.size(); ++r) {
        std::vector<int> cells;
        for (size_t f = 0; f < L.facet_masks.size(); ++f)
            if (std::find(L.facet_ridges[f].begin(), L.facet_ridges[f].end(), int(r)) !=
                L.facet_ridges[f].end())
                cells.push_back(int(f));
        if (cells.size() != 2) return fail("ridge not in exactly two facets");
        bool interior = cells[0] != base_facet && cells[1] != base_facet;
        if (!interior) continue;
        if (cell_side[size_t(cells[0])][int(r)] == cell_side[size_t(cells[1])][int(r)])
            return fail("interior ridge does not separate its two cells");
    }

    // exact volume identity: sum of cells equals the base cell
    auto cell_volume6 = [&](size_t f) {
        Rational vol = 0;
        auto verts = mask_list(L.facet_masks[f]);
        for (int r : L.facet_ridges[f]) {
            std::vector<int> cyc = L.ridge_cycles[size_t(r)];
            // orient the polygon outward: interior side must be negative
            int w = -1;
            std::uint32_t rm = L.ridge_masks[size_t(r)];
            for (int v : verts)
                if (!((rm >> v) & 1)) {
                    w = v;
                    break;
                }
            const V3& a = coords[size_t(cyc[0])];
            const V3& b = coords[size_t(cyc[1])];
            const V3& c = coords[size_t(cyc[2])];
            if (orient3(a, b, c, coords[size_t(w)]) > 0) std::reverse(cyc.begin(), cyc.end());
            for (size_t i = 1; i + 1 < cyc.size(); ++i)
                vol += det3(coords[size_t(cyc[0])], coords[size_t(cyc[i])],
                            coords[size_t(cyc[i + 1])]);
        }
        return vol;  // 6 * volume, positive for outward orientation
    };

    Rational total = 0;
    for (size_t f = 0; f < L.facet_masks.size(); ++f) {
        Rational v6 = cell_volume6(f);
        if (v6 <= 0) return fail("cell volume not positive");
        if (int(f) != base_facet) total += v6;
    }
    if (total != cell_volume6(size_t(base_facet))) return fail("cell volumes do not add up");
    if (why) why->clear();
    return true;
}

}  // namespace eulat
