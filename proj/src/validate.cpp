#include "mpsolve/validate.hpp"

#include "mpsolve/methods.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mpsolve {

namespace {

Vector pair(BigReal a, BigReal b) {
    std::vector<BigReal> v;
    v.push_back(std::move(a));
    v.push_back(std::move(b));
    return Vector(std::move(v));
}

RawDerivatives f1_derivatives() {
    RawDerivatives d;
    // s = 2y − x is linear, so each direction enters through ds(h) = 2h_y − h_x
    d.second = [](const Vector& x, const Vector& h, const Vector& k) {
        BigReal ex = exp(x[0]);
        BigReal s = 2 * x[1] - x[0];
        return pair(ex * h[0] * k[0], -sin(s) * (2 * h[1] - h[0]) * (2 * k[1] - k[0]));
    };
    d.third = [](const Vector& x, const Vector& h, const Vector& k, const Vector& l) {
        BigReal ex = exp(x[0]);
        BigReal s = 2 * x[1] - x[0];
        return pair(ex * h[0] * k[0] * l[0],
                    -cos(s) * (2 * h[1] - h[0]) * (2 * k[1] - k[0]) * (2 * l[1] - l[0]));
    };
    return d;
}

RawDerivatives f2_derivatives() {
    RawDerivatives d;
    d.second = [](const Vector&, const Vector& h, const Vector& k) {
        return pair(2 * h[0] * k[0] + 2 * h[1] * k[1], 2 * h[1] * k[1]);
    };
    d.third = [](const Vector& x, const Vector&, const Vector&, const Vector&) {
        return Vector(2, std::max(x.digits(), kMinDigits));
    };
    d.third_vanishes = true;
    return d;
}

RawDerivatives f3_derivatives() {
    RawDerivatives d;
    d.second = [](const Vector& v, const Vector& h, const Vector& k) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        BigReal hxkx = h[0] * k[0];
        BigReal hyky = h[1] * k[1];
        BigReal mixed = h[0] * k[1] + h[1] * k[0];
        return pair(6 * x * hxkx - 6 * y * mixed - 6 * x * hyky,
                    6 * y * hxkx + 6 * x * mixed - 6 * y * hyky);
    };
    d.third = [](const Vector&, const Vector& h, const Vector& k, const Vector& l) {
        BigReal xxx = h[0] * k[0] * l[0];
        BigReal yyy = h[1] * k[1] * l[1];
        BigReal xyy = h[0] * k[1] * l[1] + h[1] * k[0] * l[1] + h[1] * k[1] * l[0];
        BigReal xxy = h[0] * k[0] * l[1] + h[0] * k[1] * l[0] + h[1] * k[0] * l[0];
        return pair(6 * xxx - 6 * xyy, 6 * xxy - 6 * yyy);
    };
    return d;
}

double log10_norm(const Vector& v) {
    const BigReal n = norm_inf(v);
    if (n.is_zero()) return -INFINITY;
    return log10_abs(n).to_double();
}

} // namespace

RawDerivatives raw_derivatives(const Problem& p) {
    if (p.id() == "F1") return f1_derivatives();
    if (p.id() == "F2") return f2_derivatives();
    if (p.id() == "F3") return f3_derivatives();
    throw UnsupportedProblem("no derivative tensors for " + p.id());
}

Vector DerivativeTensors::A2(const Vector& h, const Vector& k) const {
    return lu_solve(gamma, raw.second(alpha, h, k)) / 2;
}

Vector DerivativeTensors::A3(const Vector& h, const Vector& k, const Vector& l) const {
    return lu_solve(gamma, raw.third(alpha, h, k, l)) / 6;
}

DerivativeTensors tensors_for(const Problem& p, int digits) {
    RawDerivatives raw = raw_derivatives(p);
    Vector alpha = p.known_root(digits);
    LuFactors gamma = lu_factor(p.eval_J(alpha));
    return DerivativeTensors{std::move(alpha), std::move(gamma), std::move(raw)};
}

ErrorModel error_model(MethodKind m) {
    switch (m) {
        case MethodKind::NM:
            return {m, 2, [](const DerivativeTensors& t, const Vector& e) { return t.A2(e, e); }};
        case MethodKind::AMN:
            return {m, 3, [](const DerivativeTensors& t, const Vector& e) {
                        return t.A3(e, e, e) / 2 + t.A2(e, t.A2(e, e));
                    }};
        case MethodKind::HMN:
            return {m, 3, [](const DerivativeTensors& t, const Vector& e) {
                        return t.A3(e, e, e) / 2;
                    }};
        case MethodKind::FDN:
            return {m, 3, [](const DerivativeTensors& t, const Vector& e) {
                        return 2 * t.A2(e, t.A2(e, e));
                    }};
    }
    throw Error("unknown method");
}

bool is_quadratic(const Problem& p) { return p.id() == "F2" || p.id() == "F6"; }

int local_order(const Problem& p, MethodKind m) {
    if (m == MethodKind::HMN && is_quadratic(p)) return 4;
    return theoretical_rho(m);
}

std::vector<double> default_scales() { return {1e-3, 1e-4, 1e-5, 1e-6}; }

double fitted_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("slope fit needs two or more matched points");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

LeadingTermReport verify_leading_term(const Problem& p, MethodKind m,
                                      std::span<const double> scales, int digits,
                                      std::uint64_t seed) {
    if (digits < 128) throw PrecisionError("leading-term checks need at least 128 digits");
    if (scales.size() < 2) throw std::invalid_argument("need at least two scales");
    for (std::size_t i = 1; i < scales.size(); ++i) {
        if (!(scales[i] < scales[i - 1]) || scales[i] <= 0) {
            throw std::invalid_argument("scales must be positive and decreasing");
        }
    }

    LeadingTermReport report;
    report.problem = p.id();
    report.method = m;
    report.expected_order = local_order(p, m);

    const Vector alpha = p.known_root(digits + 10);
    std::optional<DerivativeTensors> tensors;
    try {
        tensors = tensors_for(p, digits + 10);
    } catch (const UnsupportedProblem&) {
    }
    const ErrorModel model = error_model(m);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    auto draw = [&] {
        std::vector<BigReal> u;
        for (std::size_t i = 0; i < p.dimension(); ++i) {
            std::ostringstream s;
            s.precision(17);
            s << coord(rng);
            u.push_back(BigReal::from_decimal(s.str(), digits));
        }
        return Vector(std::move(u));
    };

    // A direction the model maps to (nearly) zero says nothing about the
    // ratio; draw again a few times before giving up on it.
    Vector u = draw();
    bool use_ratio = tensors.has_value() && model.order == report.expected_order;
    if (use_ratio) {
        int attempts = 0;
        while (true) {
            const Vector lead = model.leading_term(*tensors, u);
            if (log10_norm(lead) > -digits / 4.0) break;
            if (++attempts == 8) {
                throw LeadingTermVanishes(p.id() + ": leading term vanishes on every direction tried");
            }
            u = draw();
        }
    }
    report.ratio_checked = use_ratio;

    std::vector<double> xs, ys;
    for (double t : scales) {
        std::ostringstream s;
        s.precision(17);
        s << t;
        const BigReal tb = BigReal::from_decimal(s.str(), digits);
        const Vector e = tb * u;
        const Vector x = with_precision(alpha + e, digits);
        const Vector err = step(m, p, x) - alpha;

        ScaleSample sample;
        sample.t = t;
        sample.log10_error = log10_norm(err);
        if (use_ratio) {
            const Vector lead = model.leading_term(*tensors, e);
            const BigReal ln = norm_inf(lead);
            sample.ratio = (norm_inf(err) / ln).to_double();
            sample.residual = (norm_inf(err - lead) / ln).to_double();
            if (*sample.residual > kRatioSlack * t) report.ratio_ok = false;
        }
        xs.push_back(std::log10(t));
        ys.push_back(sample.log10_error);
        report.samples.push_back(sample);
    }
    report.slope = fitted_slope(xs, ys);
    report.slope_ok = std::abs(report.slope - report.expected_order) <= kSlopeTolerance;
    return report;
}

} // namespace mpsolve
