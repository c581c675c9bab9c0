#pragma once

// Adaptive mantissa-length policies and the stopping rules that go with them.
//
// Three ways to pick the precision of the next iterate, one per error
// surrogate:
//
//   known root   Digits = ⌊ρ (−log10‖e_n‖ + j)⌋
//   ACOC-driven  Digits = ⌊ρ³/(ρ−1) (−log10 δ_n + j)⌋,   δ_n = ‖ê_n‖/‖ê_{n−1}‖
//   ECOC-driven  Digits = ⌊ρ³/(2ρ−1) (−log10‖ẽ_n‖ + j)⌋
//
// All results are clamped to [kMinDigits, max_digits()] and never fall below
// the previous step's value.

#include "mpsolve/bigreal.hpp"
#include "mpsolve/trace.hpp"

#include <optional>
#include <string_view>

namespace mpsolve {

enum class StopMode { KnownRoot, AcocDriven, EcocDriven };

std::string_view to_string(StopMode m);
/// known-root | acoc | ecoc
StopMode parse_mode(std::string_view name);

struct SolverConfig {
    int eta = 2800;
    int j = 2;
    StopMode mode = StopMode::KnownRoot;
    int rho = 2;
    int max_iterations = 100;
    int initial_digits = 64;
    int guard_digits = 4;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

int digits_known_root(int rho, const BigReal& e_norm, int j, int previous = kMinDigits);
/// std::nullopt when δ_n ≥ 1: the surrogate is meaningless outside
/// the convergent regime.
std::optional<int> digits_acoc(int rho, const BigReal& delta, int j, int previous = kMinDigits);
int digits_ecoc(int rho, const BigReal& e_tilde_norm, int j, int previous = kMinDigits);

/// Threshold exponent t such that stopping requires surrogate < 0.5·10^t.
double stop_exponent(const SolverConfig& cfg);

/// Applies the stopping rule of cfg.mode to the surrogate stored in `rec`.
/// Throws std::logic_error when that surrogate is absent.
bool should_stop(const SolverConfig& cfg, const IterationRecord& rec);

/// Unclamped formula value for the iterate after `rec`, or std::nullopt when
/// the configured surrogate is not available (or, for ACOC, not below one).
std::optional<double> required_digits(const SolverConfig& cfg, const IterationRecord& rec);

/// Clamps a raw formula value to the precision range and keeps it monotone.
int clamp_digits(double raw, int previous);

} // namespace mpsolve
