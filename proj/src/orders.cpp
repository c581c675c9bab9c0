#include "mpsolve/orders.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace mpsolve {

namespace {

void require_count(std::size_t have, std::size_t need, const char* what) {
    if (have < need) {
        throw InsufficientIterates(std::string(what) + " needs " + std::to_string(need) +
                                   " iterates, got " + std::to_string(have));
    }
}

BigReal quotient_of_last_three(const std::vector<BigReal>& eps) {
    const std::size_t n = eps.size();
    return order_quotient(eps[n - 3], eps[n - 2], eps[n - 1]);
}

} // namespace

BigReal order_quotient(const BigReal& oldest, const BigReal& mid, const BigReal& newest) {
    const BigReal denom = log(mid / oldest);
    if (denom.is_zero()) {
        throw InsufficientConvergence("consecutive error ratios equal one; order undefined");
    }
    return log(newest / mid) / denom;
}

Vector aitken(const Vector& x0, const Vector& x1, const Vector& x2) {
    if (x0.size() != x1.size() || x1.size() != x2.size()) {
        throw DimensionMismatch("aitken: iterates differ in dimension");
    }
    const int d = std::max({x0.digits(), x1.digits(), x2.digits(), kMinDigits});
    const BigReal tiny = pow10(4 - d, d);
    std::vector<BigReal> out;
    out.reserve(x2.size());
    for (std::size_t i = 0; i < x2.size(); ++i) {
        BigReal first = x2[i] - x1[i];
        BigReal second = first - (x1[i] - x0[i]);
        if (second.is_zero() || abs(second) < tiny * abs(x2[i])) {
            throw DegenerateComponent("aitken: vanishing second difference in component " +
                                      std::to_string(i));
        }
        out.push_back(x2[i] - first * first / second);
    }
    return Vector(std::move(out));
}

BigReal coc(std::span<const Vector> xs, const Vector& alpha) {
    require_count(xs.size(), 3, "COC");
    std::vector<BigReal> e;
    for (std::size_t i = xs.size() - 3; i < xs.size(); ++i) {
        e.push_back(norm_inf(xs[i] - alpha));
        if (e.back().is_zero()) throw ZeroError("COC: iterate equals the root");
    }
    return quotient_of_last_three(e);
}

BigReal acoc(std::span<const Vector> xs) {
    require_count(xs.size(), 4, "ACOC");
    std::vector<BigReal> e;
    for (std::size_t i = xs.size() - 3; i < xs.size(); ++i) {
        e.push_back(norm_inf(xs[i] - xs[i - 1]));
        if (e.back().is_zero()) throw ZeroDifference("ACOC: consecutive iterates coincide");
    }
    return quotient_of_last_three(e);
}

BigReal ecoc(std::span<const Vector> xs) {
    require_count(xs.size(), 5, "ECOC");
    std::vector<BigReal> e;
    for (std::size_t i = xs.size() - 3; i < xs.size(); ++i) {
        e.push_back(norm_inf(xs[i] - aitken(xs[i - 2], xs[i - 1], xs[i])));
        if (e.back().is_zero()) throw ZeroDifference("ECOC: iterate equals its extrapolant");
    }
    return quotient_of_last_three(e);
}

BigReal coc(const Trace& t, const Vector& alpha) {
    const auto xs = t.iterates();
    return coc(xs, alpha);
}

BigReal acoc(const Trace& t) {
    const auto xs = t.iterates();
    return acoc(xs);
}

BigReal ecoc(const Trace& t) {
    const auto xs = t.iterates();
    return ecoc(xs);
}

OrderReport order_report(const Trace& t, const std::optional<Vector>& alpha, int rho) {
    OrderReport r;
    r.rho_theoretical = rho;
    const auto xs = t.iterates();
    const std::span<const Vector> all(xs);
    auto deviation = [rho](const BigReal& v) { return abs(v - rho); };

    if (alpha && xs.size() >= 4) {
        try {
            r.coc = coc(all.first(all.size() - 1), *alpha);
            r.delta_coc = deviation(*r.coc);
        } catch (const OrderError&) {
        }
    }
    try {
        r.acoc = acoc(all);
        r.delta_acoc = deviation(*r.acoc);
    } catch (const OrderError&) {
    }
    try {
        r.ecoc = ecoc(all);
        r.delta_ecoc = deviation(*r.ecoc);
    } catch (const OrderError&) {
    }
    return r;
}

} // namespace mpsolve
