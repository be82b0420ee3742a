#include <doctest.h>

#include <algorithm>
#include <set>

#include "eulat/io.hpp"
#include "eulat/lattice.hpp"
#include "eulat/topology.hpp"

using namespace eulat;

TEST_SUITE_BEGIN("test_topology");

namespace {

std::string data(const char* name) { return std::string(EULAT_DATA_DIR) + "/" + name; }

FaceLattice load(const char* name) {
    auto file = load_facet_list(data(name));
    return from_facet_list(int(file.f.f0), file.facets);
}

SimplicialComplex simplex_boundary() {
    SimplicialComplex K;
    K.nverts = 5;
    for (int d = 0; d < 5; ++d) {
        std::vector<int> t;
        for (int v = 0; v < 5; ++v)
            if (v != d) t.push_back(v);
        K.maximal.push_back(t);
    }
    return K;
}

// field-rank homology oracle: ranks of the boundary maps over F_p
long long rank_mod_p(std::vector<std::vector<long long>> m, long long p) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    long long r = 0;
    size_t lead = 0;
    for (size_t c = 0; c < cols && lead < rows; ++c) {
        size_t piv = lead;
        while (piv < rows && ((m[piv][c] % p) + p) % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[lead]);
        // normalize and eliminate
        long long inv = 1, a = ((m[lead][c] % p) + p) % p;
        for (long long x = 1; x < p; ++x)
            if (a * x % p == 1) {
                inv = x;
                break;
            }
        for (size_t j = 0; j < cols; ++j) m[lead][j] = ((m[lead][j] % p) + p) % p * inv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == lead) continue;
            long long f = ((m[i][c] % p) + p) % p;
            if (!f) continue;
            for (size_t j = 0; j < cols; ++j)
                m[i][j] = (((m[i][j] - f * m[lead][j]) % p) + p) % p;
        }
        ++lead;
        ++r;
    }
    return r;
}

// boundary matrices straight from the complex, for the oracle
std::vector<std::vector<std::vector<long long>>> boundaries(const SimplicialComplex& K) {
    std::vector<std::set<std::vector<int>>> faces(4);
    for (const auto& s : K.maximal)
        for (std::uint32_t sub = 1; sub < (1u << s.size()); ++sub) {
            std::vector<int> f;
            for (size_t i = 0; i < s.size(); ++i)
                if ((sub >> i) & 1) f.push_back(s[i]);
            if (f.size() <= 4) faces[f.size() - 1].insert(f);
        }
    std::vector<std::vector<std::vector<int>>> fl(4);
    for (int k = 0; k < 4; ++k) fl[size_t(k)].assign(faces[size_t(k)].begin(), faces[size_t(k)].end());
    std::vector<std::vector<std::vector<long long>>> out(4);
    for (int k = 1; k <= 3; ++k) {
        auto& lo = fl[size_t(k - 1)];
        auto& hi = fl[size_t(k)];
        std::vector<std::vector<long long>> m(lo.size(), std::vector<long long>(hi.size(), 0));
        for (size_t j = 0; j < hi.size(); ++j)
            for (size_t drop = 0; drop < hi[j].size(); ++drop) {
                std::vector<int> f;
                for (size_t i = 0; i < hi[j].size(); ++i)
                    if (i != drop) f.push_back(hi[j][i]);
                size_t row = size_t(std::lower_bound(lo.begin(), lo.end(), f) - lo.begin());
                m[row][j] = (drop % 2 == 0) ? 1 : -1;
            }
        out[size_t(k)] = m;
    }
    return out;
}

}  // namespace

TEST_CASE("triangulating the simplex boundary lattice") {
    FaceLattice L = load("simplex_4d.json");
    SimplicialComplex K = triangulate(L);
    CHECK(K.nverts == 30);      // 5+10+10+5 proper faces
    CHECK(K.maximal.size() == 120);  // one tetrahedron per maximal chain
    CHECK(K.euler_characteristic() == 0);
    CHECK(is_closed_pseudomanifold(K));
}

TEST_CASE("euler characteristic consistency for the paper spheres") {
    for (const char* name :
         {"sphere_10_32_33_11_0.json", "sphere_10_33_35_12.json", "sphere_11_35_35_11_1.json"}) {
        FaceLattice L = load(name);
        FVector f = f_vector(L);
        long long chi_lattice = f.f0 - f.f1 + f.f2 - f.f3;
        SimplicialComplex K = triangulate(L);
        CHECK(K.euler_characteristic() == chi_lattice);
        CHECK(K.euler_characteristic() == 0);
        CHECK(is_closed_pseudomanifold(K));
    }
}

TEST_CASE("betti numbers of spheres and basic complexes") {
    BettiVector s3 = betti_numbers(triangulate(load("simplex_4d.json")));
    CHECK(s3.b == std::array<long long, 4>{1, 0, 0, 1});
    CHECK_FALSE(s3.torsion[0]);
    CHECK_FALSE(s3.torsion[1]);
    CHECK_FALSE(s3.torsion[2]);

    // boundary of a 3-simplex: a 2-sphere, b = (1,0,1,0)
    SimplicialComplex s2;
    s2.nverts = 4;
    for (int d = 0; d < 4; ++d) {
        std::vector<int> t;
        for (int v = 0; v < 4; ++v)
            if (v != d) t.push_back(v);
        s2.maximal.push_back(t);
    }
    BettiVector b2 = betti_numbers(s2);
    CHECK(b2.b == std::array<long long, 4>{1, 0, 1, 0});

    BettiVector bs = betti_numbers(simplex_boundary());
    CHECK(bs.b == std::array<long long, 4>{1, 0, 0, 1});
}

TEST_CASE("torsion is detected: RP^2") {
    // minimal 6-vertex triangulation of the real projective plane
    SimplicialComplex rp2;
    rp2.nverts = 6;
    rp2.maximal = {{0, 1, 4}, {0, 1, 5}, {0, 2, 3}, {0, 2, 5}, {0, 3, 4},
                   {1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}};
    BettiVector b = betti_numbers(rp2);
    CHECK(b.b[0] == 1);
    CHECK(b.b[1] == 0);
    CHECK(b.b[2] == 0);
    CHECK(b.torsion[1]);  // H_1 = Z/2
}

TEST_CASE("smith ranks agree with mod-p ranks when no torsion") {
    for (const char* name : {"simplex_4d.json", "sphere_10_32_33_11_0.json"}) {
        FaceLattice L = load(name);
        SimplicialComplex K = triangulate(L);
        BettiVector bv = betti_numbers(K);
        CHECK_FALSE(bv.torsion[1]);
        auto mats = boundaries(K);
        // recompute betti over F_p and compare
        std::vector<long long> ranks(4, 0);
        for (int k = 1; k <= 3; ++k) ranks[size_t(k)] = rank_mod_p(mats[size_t(k)], 1000003);
        std::vector<long long> counts(4, 0);
        {
            std::set<std::vector<int>> faces[4];
            for (const auto& s : K.maximal)
                for (std::uint32_t sub = 1; sub < (1u << s.size()); ++sub) {
                    std::vector<int> f;
                    for (size_t i = 0; i < s.size(); ++i)
                        if ((sub >> i) & 1) f.push_back(s[i]);
                    faces[f.size() - 1].insert(f);
                }
            for (int k = 0; k < 4; ++k) counts[size_t(k)] = (long long)faces[k].size();
        }
        for (int k = 0; k <= 3; ++k) {
            long long rk = (k >= 1) ? ranks[size_t(k)] : 0;
            long long rk1 = (k + 1 <= 3) ? ranks[size_t(k + 1)] : 0;
            CHECK(bv.b[size_t(k)] == counts[size_t(k)] - rk - rk1);
        }
    }
}

TEST_CASE("bistellar: simplex boundary needs no flips") {
    auto r = bistellar_reduce(simplex_boundary(), 1000, 1);
    CHECK(r.reduced);
    CHECK(r.flips.empty());
}

TEST_CASE("bistellar reduces the barycentric simplex boundary") {
    FaceLattice L = load("simplex_4d.json");
    SimplicialComplex K = triangulate(L);
    auto r = bistellar_reduce(K, 100000, 1);
    CHECK(r.reduced);
    // replay validates every move and must land on the boundary of a simplex
    SimplicialComplex fin = replay_flips(K, r.flips);
    CHECK(is_boundary_of_4simplex(fin));
    // homology is preserved end to end
    CHECK(betti_numbers(fin).b == betti_numbers(K).b);
}

TEST_CASE("bistellar reduces the paper spheres") {
    for (const char* name :
         {"sphere_10_32_33_11_0.json", "sphere_10_32_33_11_1.json", "sphere_10_33_35_12.json",
          "sphere_11_35_35_11_0.json", "sphere_11_35_35_11_1.json"}) {
        CAPTURE(name);
        FaceLattice L = load(name);
        SimplicialComplex K = triangulate(L);
        BettiVector bv = betti_numbers(K);
        CHECK(bv.b == std::array<long long, 4>{1, 0, 0, 1});
        auto r = bistellar_reduce(K, 100000, 1);
        CHECK(r.reduced);
        SimplicialComplex fin = replay_flips(K, r.flips);
        CHECK(is_boundary_of_4simplex(fin));
    }
}

TEST_CASE("bistellar is reproducible for fixed seed and budget") {
    FaceLattice L = load("simplex_4d.json");
    SimplicialComplex K = triangulate(L);
    auto a = bistellar_reduce(K, 100000, 42);
    auto b = bistellar_reduce(K, 100000, 42);
    CHECK(a.reduced == b.reduced);
    CHECK(a.flips_tried == b.flips_tried);
    REQUIRE(a.flips.size() == b.flips.size());
    for (size_t i = 0; i < a.flips.size(); ++i) {
        CHECK(a.flips[i].kind == b.flips[i].kind);
        CHECK(a.flips[i].removed == b.flips[i].removed);
        CHECK(a.flips[i].added == b.flips[i].added);
    }
}

TEST_CASE("triangulated dual has the same betti numbers") {
    FaceLattice L = load("sphere_10_33_35_12.json");
    BettiVector a = betti_numbers(triangulate(L));
    BettiVector d = betti_numbers(triangulate(dual(L)));
    CHECK(a.b == d.b);
}

TEST_SUITE_END();
