#pragma once

// The benchmark systems F1..F7 with hand-coded Jacobians, their roots and the
// curated starting points.

#include "mpsolve/linalg.hpp"
#include "mpsolve/trace.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpsolve {

struct InitialPoint {
    std::string label;                // x0_1, x0_2, x0_3
    std::vector<std::string> coords;  // decimal literals
    double distance = 0;              // stored ‖x0 − α‖∞
    double residual = 0;              // stored ‖F(x0)‖∞

    Vector at(int digits) const { return Vector::from_decimal(coords, digits); }
};

/// A configuration change attested by a table footnote. An empty `point`
/// applies to every starting point of that method.
struct ConfigOverride {
    MethodKind method;
    std::optional<std::string> point;
    std::optional<int> j;
    std::optional<int> rho;
};

using SystemFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;
using RootFn = std::function<Vector(int digits)>;

class RootCache;

class Problem {
public:
    Problem(std::string id, int table, std::size_t dimension, SystemFn f, JacobianFn jac,
            std::vector<InitialPoint> points, std::vector<ConfigOverride> overrides);

    /// Root given in closed form, evaluated at whatever precision is asked for.
    Problem& with_closed_form_root(RootFn root);
    /// Root refined by Newton's method from a stored approximation.
    Problem& with_bootstrapped_root(std::vector<std::string> approximation);
    /// Another exact root an iteration may be drawn to (F2 is symmetric in y).
    Problem& with_alternate_root(RootFn root);

    const std::string& id() const noexcept { return id_; }
    int table() const noexcept { return table_; }
    std::size_t dimension() const noexcept { return m_; }
    const std::vector<InitialPoint>& initial_points() const noexcept { return points_; }
    const std::vector<ConfigOverride>& overrides() const noexcept { return overrides_; }

    Vector eval_F(const Vector& x) const;
    Matrix eval_J(const Vector& x) const;

    /// The root α at `digits` digits. Bootstrapped roots are cached, so
    /// repeated requests at or below a previous precision are cheap.
    Vector known_root(int digits) const;

    /// Whichever of the known root and the alternates lies nearest to x, at
    /// `digits` digits. Errors are measured against this one.
    Vector attracting_root(const Vector& x, int digits) const;

    /// Accepts "x0_2" or "2".
    const InitialPoint& point(std::string_view label) const;

    int effective_rho(MethodKind m, std::string_view point_label) const;
    int effective_j(MethodKind m, std::string_view point_label) const;

private:
    std::string id_;
    int table_;
    std::size_t m_;
    SystemFn f_;
    JacobianFn jac_;
    std::vector<InitialPoint> points_;
    std::vector<ConfigOverride> overrides_;
    std::shared_ptr<RootCache> root_;
    std::vector<RootFn> alternates_;
};

/// The seven systems, in table order.
const std::vector<Problem>& registry();
/// Lookup by id ("F3", case-insensitive) or table number ("3").
const Problem& find_problem(std::string_view id);

/// y'' + y³ = 0, y(0) = 0, y(1) = 1 on n equal steps: an (n−1)-dimensional
/// system. Throws std::invalid_argument for n < 3.
Problem build_bvp(int n);

} // namespace mpsolve
