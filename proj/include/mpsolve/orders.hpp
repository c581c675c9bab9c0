#pragma once

// Computational order of convergence from a sequence of iterates.
//
// With ε_n one of
//   e_n = ‖x_n − α‖∞           (COC, needs the root)
//   ê_n = ‖x_n − x_{n−1}‖∞     (ACOC)
//   ẽ_n = ‖x_n − α̃_n‖∞         (ECOC, α̃_n the componentwise Aitken extrapolant)
// each estimator is ln(ε_{n+1}/ε_n) / ln(ε_n/ε_{n−1}) evaluated at the newest
// three values of ε the sequence supports.

#include "mpsolve/error.hpp"
#include "mpsolve/linalg.hpp"
#include "mpsolve/trace.hpp"

#include <optional>
#include <span>

namespace mpsolve {

class OrderError : public Error {
public:
    using Error::Error;
};
class InsufficientIterates : public OrderError {
public:
    using OrderError::OrderError;
};
class ZeroError : public OrderError {
public:
    using OrderError::OrderError;
};
class ZeroDifference : public OrderError {
public:
    using OrderError::OrderError;
};
class InsufficientConvergence : public OrderError {
public:
    using OrderError::OrderError;
};
class DegenerateComponent : public OrderError {
public:
    using OrderError::OrderError;
};

/// ln(newest/mid) / ln(mid/oldest). InsufficientConvergence when the
/// denominator vanishes.
BigReal order_quotient(const BigReal& oldest, const BigReal& mid, const BigReal& newest);

/// x2 − (x2 − x1)² / (x2 − 2x1 + x0), per component. DegenerateComponent when
/// some |Δ²x| < 10^(4−d)·|x2| at precision d.
Vector aitken(const Vector& x0, const Vector& x1, const Vector& x2);

BigReal coc(std::span<const Vector> xs, const Vector& alpha);
BigReal acoc(std::span<const Vector> xs);
BigReal ecoc(std::span<const Vector> xs);

BigReal coc(const Trace& t, const Vector& alpha);
BigReal acoc(const Trace& t);
BigReal ecoc(const Trace& t);

struct OrderReport {
    int rho_theoretical = 0;
    std::optional<BigReal> coc, acoc, ecoc;
    std::optional<BigReal> delta_coc, delta_acoc, delta_ecoc;
};

/// Fills whichever estimators the trace supports. COC is taken one index
/// back from the final iterate (x_{k−3}..x_{k−1}), which is how the
/// benchmark tables report it; ACOC and ECOC end at x_k.
OrderReport order_report(const Trace& t, const std::optional<Vector>& alpha, int rho);

} // namespace mpsolve
