#pragma once

#include "mpsolve/linalg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpsolve {

enum class MethodKind { NM, AMN, HMN, FDN };

inline constexpr MethodKind kAllMethods[] = {MethodKind::NM, MethodKind::AMN, MethodKind::HMN,
                                             MethodKind::FDN};

std::string_view to_string(MethodKind m);
/// Accepts NM/AMN/HMN/FDN (case-insensitive); throws ParseError otherwise.
MethodKind parse_method(std::string_view name);

/// Order the method is known to have on generic problems.
int theoretical_rho(MethodKind m);

/// LU factorizations one outer iteration of `m` performs.
int factorizations_per_step(MethodKind m);

enum class Termination { ToleranceMet, SingularJacobian, MaxIterations, PrecisionCeiling };

std::string_view to_string(Termination t);
Termination parse_termination(std::string_view name);

struct IterationRecord {
    int n = 0;
    int digits = 0;  // nominal precision this iterate was computed at (guard digits excluded)
    Vector x;
    BigReal residual_inf;                 // ‖F(x_n)‖∞
    std::optional<BigReal> e_hat;         // ‖x_n − x_{n−1}‖∞, n ≥ 1
    std::optional<BigReal> delta;         // ‖ê_n‖∞ / ‖ê_{n−1}‖∞, n ≥ 2
    std::optional<BigReal> e_tilde;       // ‖x_n − α̃_n‖∞, n ≥ 2 unless Aitken degenerates
    std::optional<BigReal> e_known;       // ‖x_n − α‖∞ when the root drives the run
    int factorizations = 0;               // LU factorizations spent producing x_n

    friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct Trace {
    MethodKind method = MethodKind::NM;
    int rho = 2;
    std::string problem;
    std::string point;
    std::vector<IterationRecord> records;
    Termination termination = Termination::MaxIterations;
    std::optional<BigReal> final_residual;  // ‖F(x_k)‖∞ at the last step's precision

    /// Index of the last iterate, k.
    int k() const { return records.empty() ? -1 : records.back().n; }
    std::vector<Vector> iterates() const;

    friend bool operator==(const Trace&, const Trace&) = default;
};

} // namespace mpsolve
