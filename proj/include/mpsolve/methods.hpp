#pragma once

// Newton's method, its arithmetic- and harmonic-mean variants, the
// frozen-derivative two-step method, and the adaptive-precision driver.

#include "mpsolve/precision.hpp"
#include "mpsolve/problems.hpp"
#include "mpsolve/trace.hpp"

namespace mpsolve {

/// Counts LU factorizations. Pass one to a stepper to audit its cost.
struct FactorizationCounter {
    int count = 0;
};

/// x − J(x)⁻¹F(x)
Vector step_nm(const Problem& p, const Vector& x, FactorizationCounter* counter = nullptr);
/// x − 2[J(x) + J(z)]⁻¹F(x), z the Newton point
Vector step_amn(const Problem& p, const Vector& x, FactorizationCounter* counter = nullptr);
/// x − ½[J(x)⁻¹ + J(z)⁻¹]F(x), applied as two solves
Vector step_hmn(const Problem& p, const Vector& x, FactorizationCounter* counter = nullptr);
/// z − J(x)⁻¹F(z), reusing the factorization of J(x)
Vector step_fdn(const Problem& p, const Vector& x, FactorizationCounter* counter = nullptr);

Vector step(MethodKind m, const Problem& p, const Vector& x,
            FactorizationCounter* counter = nullptr);

/// Iterates from x0 until the stopping rule of cfg.mode fires. Numerical
/// failures end the run and are reported through Trace::termination.
Trace run(const Problem& p, const InitialPoint& x0, MethodKind m, const SolverConfig& cfg);
Trace run(const Problem& p, const Vector& x0, std::string label, MethodKind m,
          const SolverConfig& cfg);

/// SolverConfig with the per-table ρ and j of (p, m, point) applied.
SolverConfig configure(const Problem& p, MethodKind m, std::string_view point, StopMode mode,
                       int eta = 2800);

} // namespace mpsolve
