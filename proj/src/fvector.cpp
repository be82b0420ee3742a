#include "eulat/fvector.hpp"

#include <algorithm>

namespace eulat {

std::string FVector::str() const {
    return std::to_string(f0) + "," + std::to_string(f1) + "," + std::to_string(f2) + "," +
           std::to_string(f3);
}

bool steinitz3_member(const FVector3& v) {
    return v.f0 - v.f1 + v.f2 == 2 && v.f2 <= 2 * v.f0 - 4 && v.f0 <= 2 * v.f2 - 4;
}

FilterReport screen(const FVector& v) {
    FilterReport r;
    auto check = [&](bool ok, const char* name) {
        if (!ok) r.violated.push_back(name);
    };
    check(v.f0 - v.f1 + v.f2 - v.f3 == 0, "euler");
    check(v.f1 >= 2 * v.f0, "f1-lower");
    check(v.f2 >= 2 * v.f3, "f2-lower");
    check(2 * v.f3 <= v.f0 * (v.f0 - 3), "f3-upper");
    check(2 * v.f0 <= v.f3 * (v.f3 - 3), "f0-upper");
    check(v.f0 >= 5, "f0-min");
    check(v.f3 >= 5, "f3-min");
    check(2 * v.f1 <= v.f0 * (v.f0 - 1), "f1-upper");
    check(2 * v.f2 <= v.f3 * (v.f3 - 1), "f2-upper");
    r.passed = r.violated.empty();
    return r;
}

long long size_functional(const FVector& v) { return v.f0 + v.f3 - 10; }

Rational fatness(const FVector& v) {
    if (v.f0 + v.f3 == 10) throw SimplexDenominatorError();
    return Rational(v.f1 + v.f2 - 20, v.f0 + v.f3 - 10);
}

std::vector<FVector> candidate_stream(long long max_size) {
    std::vector<FVector> out;
    if (max_size < 0) return out;
    // f0,f3 >= 5 and f0+f3 <= 10+max_size bound the vertex/facet counts;
    // f1 is capped by the simple-graph bound, f2 follows from Euler.
    for (long long f0 = 5; f0 + 5 <= 10 + max_size; ++f0)
        for (long long f3 = 5; f0 + f3 <= 10 + max_size; ++f3)
            for (long long f1 = 2 * f0; 2 * f1 <= f0 * (f0 - 1); ++f1) {
                FVector v{f0, f1, f1 + f3 - f0, f3};
                if (v.f2 >= 0 && screen(v).passed) out.push_back(v);
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace eulat
