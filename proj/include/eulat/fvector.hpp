#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace eulat {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct FVector {
    long long f0 = 0, f1 = 0, f2 = 0, f3 = 0;
    bool operator==(const FVector&) const = default;
    bool operator<(const FVector& o) const {
        if (f0 != o.f0) return f0 < o.f0;
        if (f1 != o.f1) return f1 < o.f1;
        if (f2 != o.f2) return f2 < o.f2;
        return f3 < o.f3;
    }
    FVector reversed() const { return {f3, f2, f1, f0}; }
    std::string str() const;
};

struct FVector3 {
    long long f0 = 0, f1 = 0, f2 = 0;
};

struct FilterReport {
    bool passed = false;
    std::vector<std::string> violated;  // named condition identifiers
};

// Steinitz set membership: f0-f1+f2=2, f2<=2f0-4, f0<=2f2-4.
bool steinitz3_member(const FVector3& v);

// All closed-form necessary conditions on f-vectors of the target class.
// Condition names: euler, f1-lower, f2-lower, f3-upper, f0-upper, f0-min,
// f3-min, f1-upper, f2-upper.
FilterReport screen(const FVector& v);

long long size_functional(const FVector& v);

struct SimplexDenominatorError : std::runtime_error {
    SimplexDenominatorError() : std::runtime_error("fatness undefined: f0+f3 = 10") {}
};

// Exact rational (f1+f2-20)/(f0+f3-10); throws at the simplex denominator.
Rational fatness(const FVector& v);

// All screen-passing f-vectors with size <= max_size, lexicographic order.
std::vector<FVector> candidate_stream(long long max_size);

std::string rational_str(const Rational& r);

}  // namespace eulat
