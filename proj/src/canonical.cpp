#include "eulat/canonical.hpp"

#include <algorithm>
#include <map>

namespace eulat {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

using Cells = std::vector<std::vector<int>>;

// 1-dimensional Weisfeiler-Leman refinement to an equitable ordered
// partition. Subcells are ordered by neighbor count, so the result is
// isomorphism-invariant.
void refine(const Graph& g, Cells& cells) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t w = 0; w < cells.size() && !changed; ++w) {
            std::uint64_t wmask = 0;
            for (int v : cells[w]) wmask |= std::uint64_t(1) << v;
            for (size_t x = 0; x < cells.size(); ++x) {
                if (cells[x].size() <= 1) continue;
                std::map<int, std::vector<int>> split;
                for (int v : cells[x]) split[__builtin_popcountll(g.adj[v] & wmask)].push_back(v);
                if (split.size() <= 1) continue;
                Cells repl;
                for (auto& [k, vs] : split) repl.push_back(std::move(vs));
                cells.erase(cells.begin() + long(x));
                cells.insert(cells.begin() + long(x), repl.begin(), repl.end());
                changed = true;
                break;
            }
        }
    }
}

struct Searcher {
    const Graph& g;
    std::vector<int> color;
    std::string best;
    std::vector<int> bestlab;
    bool have = false;
    Dsu orbits;

    Searcher(const Graph& g_, std::vector<int> color_)
        : g(g_), color(std::move(color_)), orbits(g_.n) {}

    std::string cert_of(const std::vector<int>& lab) const {
        std::string c;
        c.reserve(size_t(2 + g.n + (g.n * (g.n - 1) / 2 + 7) / 8));
        c.push_back(char(g.n));
        for (int i = 0; i < g.n; ++i) c.push_back(char(color[lab[i]]));
        unsigned cur = 0;
        int bits = 0;
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j) {
                cur = (cur << 1) | unsigned(g.has_edge(lab[i], lab[j]));
                if (++bits == 8) {
                    c.push_back(char(cur));
                    cur = 0;
                    bits = 0;
                }
            }
        if (bits) c.push_back(char(cur << (8 - bits)));
        return c;
    }

    void leaf(const Cells& cells) {
        std::vector<int> lab;
        lab.reserve(g.n);
        for (auto& c : cells) lab.push_back(c[0]);
        std::string cert = cert_of(lab);
        if (!have || cert < best) {
            best = std::move(cert);
            bestlab = lab;
            have = true;
        } else if (cert == best) {
            // bestlab[i] -> lab[i] is an automorphism; record its orbits
            for (int i = 0; i < g.n; ++i) orbits.unite(bestlab[i], lab[i]);
        }
    }

    void rec(Cells cells) {
        refine(g, cells);
        size_t target = cells.size();
        for (size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1) {
                target = i;
                break;
            }
        if (target == cells.size()) {
            leaf(cells);
            return;
        }
        std::vector<int> tried;
        for (int v : cells[target]) {
            bool skip = false;
            for (int u : tried)
                if (orbits.find(u) == orbits.find(v)) {
                    skip = true;
                    break;
                }
            if (skip) continue;
            tried.push_back(v);
            Cells child = cells;
            std::vector<int> rest;
            for (int u : cells[target])
                if (u != v) rest.push_back(u);
            child[target] = {v};
            child.insert(child.begin() + long(target) + 1, rest);
            rec(std::move(child));
        }
    }
};

}  // namespace

CanonResult canonical_form(const Graph& g, const std::vector<int>& color) {
    std::vector<int> col = color.empty() ? std::vector<int>(g.n, 0) : color;
    if (int(col.size()) != g.n) throw std::invalid_argument("canonical_form: bad color vector");
    if (g.n == 0) return {{}, std::string(1, char(0))};
    // initial cells grouped by color value, ascending
    std::map<int, std::vector<int>> by;
    for (int v = 0; v < g.n; ++v) by[col[v]].push_back(v);
    Cells cells;
    for (auto& [c, vs] : by) cells.push_back(vs);
    Searcher s(g, col);
    s.rec(cells);
    return {s.bestlab, s.best};
}

std::string canonical_code(const Graph& g) {
    CanonResult c = canonical_form(g);
    return graph6_encode(g.relabeled(c.labeling));
}

}  // namespace eulat
