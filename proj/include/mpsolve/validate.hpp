#pragma once

// Numerical check of the local error laws E = step(α + e) − α of the four
// methods. With A2 = ½ΓF''(α), A3 = ⅙ΓF'''(α) and Γ = F'(α)⁻¹:
//
//   NM    A2(e,e)
//   AMN   ½A3(e,e,e) + A2(e,A2(e,e))
//   HMN   ½A3(e,e,e)
//   FDN   2·A2(e,A2(e,e))
//
// Hand-coded second and third derivatives exist for F1, F2 and F3 only; the
// other systems get slope checks.

#include "mpsolve/error.hpp"
#include "mpsolve/linalg.hpp"
#include "mpsolve/problems.hpp"
#include "mpsolve/trace.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpsolve {

class UnsupportedProblem : public Error {
public:
    using Error::Error;
};

class LeadingTermVanishes : public Error {
public:
    using Error::Error;
};

/// F''(x)(h,k) and F'''(x)(h,k,l) as plain multilinear maps.
struct RawDerivatives {
    std::function<Vector(const Vector& x, const Vector& h, const Vector& k)> second;
    std::function<Vector(const Vector& x, const Vector& h, const Vector& k, const Vector& l)> third;
    bool third_vanishes = false;
};

/// For F1, F2, F3. Throws UnsupportedProblem otherwise.
RawDerivatives raw_derivatives(const Problem& p);

struct DerivativeTensors {
    Vector alpha;
    LuFactors gamma;  // factors of J(α)
    RawDerivatives raw;

    Vector A2(const Vector& h, const Vector& k) const;
    Vector A3(const Vector& h, const Vector& k, const Vector& l) const;
};

DerivativeTensors tensors_for(const Problem& p, int digits);

struct ErrorModel {
    MethodKind method;
    int order;
    std::function<Vector(const DerivativeTensors&, const Vector&)> leading_term;
};

ErrorModel error_model(MethodKind m);

/// True for systems whose components are polynomials of degree two.
bool is_quadratic(const Problem& p);

/// The order one step of m attains on p: the method's order, except HMN on
/// a quadratic system, where the cubic term drops out.
int local_order(const Problem& p, MethodKind m);

struct ScaleSample {
    double t = 0;
    double log10_error = 0;           // log10 ‖step(α+tu) − α‖∞
    std::optional<double> ratio;      // ‖E‖ / ‖leading term‖
    std::optional<double> residual;   // ‖E − leading term‖ / ‖leading term‖
};

struct LeadingTermReport {
    std::string problem;
    MethodKind method = MethodKind::NM;
    int expected_order = 0;
    double slope = 0;
    bool ratio_checked = false;
    std::vector<ScaleSample> samples;
    bool slope_ok = false;
    bool ratio_ok = true;

    bool passed() const { return slope_ok && ratio_ok; }
};

inline constexpr double kSlopeTolerance = 0.05;
/// residual(t) ≤ kRatioSlack · t at every scale.
inline constexpr double kRatioSlack = 100.0;

std::vector<double> default_scales();

/// Steps from α + t·u for each t (decreasing) and compares against the model.
/// Ratio checks run where tensors exist and the leading term is nonzero.
LeadingTermReport verify_leading_term(const Problem& p, MethodKind m,
                                      std::span<const double> scales, int digits = 160,
                                      std::uint64_t seed = 20240611);

/// Least-squares slope of ys against xs.
double fitted_slope(std::span<const double> xs, std::span<const double> ys);

} // namespace mpsolve
