#pragma once

#include "mpsolve/methods.hpp"
#include "mpsolve/problems.hpp"

#include <string>
#include <vector>

namespace testing {

using namespace mpsolve;

inline BigReal big(const std::string& s, int digits = 64) { return BigReal::from_decimal(s, digits); }

inline Vector vec(const std::vector<std::string>& coords, int digits = 64) {
    return Vector::from_decimal(coords, digits);
}

// |a - b| <= 10^exp
inline bool close(const BigReal& a, const BigReal& b, long exp) {
    return abs(a - b) <= pow10(exp, std::max(a.digits(), b.digits()));
}

// p/q at `digits`, straight from integer arithmetic.
inline BigReal ratio(long p, long q, int digits) { return BigReal(p, digits) / BigReal(q, digits); }

// Scalar x^2 - 2 as a one-dimensional system.
inline Problem sqrt2_problem() {
    auto f = [](const Vector& x) { return Vector({x[0] * x[0] - 2}); };
    auto j = [](const Vector& x) {
        Matrix a(1, x.digits());
        a(0, 0) = 2 * x[0];
        return a;
    };
    Problem p("SQRT2", 0, 1, f, j, {{"x0_1", {"1.5"}, 0.0858, 0.25}}, {});
    p.with_closed_form_root([](int d) { return Vector({sqrt(BigReal(2L, d))}); });
    return p;
}

inline double log10_of(const BigReal& x) { return log10_abs(x).to_double(); }

} // namespace testing
