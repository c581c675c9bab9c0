#include "mpsolve/precision.hpp"

#include "mpsolve/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mpsolve {

namespace {

// scale_num/scale_den · (−log10 x + j), before taking the integer part.
double raw_digits(const BigReal& x, int j, long scale_num, long scale_den) {
    if (x.sign() <= 0) throw DomainError("error surrogate must be positive");
    const double minus_log = -log10_abs(x).to_double();
    return static_cast<double>(scale_num) * (minus_log + j) / static_cast<double>(scale_den);
}

long cube(int rho) { return static_cast<long>(rho) * rho * rho; }

bool below_threshold(const BigReal& value, double exponent) {
    if (value.is_zero()) return true;
    return log10_abs(value).to_double() < std::log10(0.5) + exponent;
}

} // namespace

std::string_view to_string(StopMode m) {
    switch (m) {
        case StopMode::KnownRoot: return "known-root";
        case StopMode::AcocDriven: return "acoc";
        case StopMode::EcocDriven: return "ecoc";
    }
    return "?";
}

StopMode parse_mode(std::string_view name) {
    for (StopMode m : {StopMode::KnownRoot, StopMode::AcocDriven, StopMode::EcocDriven}) {
        if (name == to_string(m)) return m;
    }
    throw ParseError("unknown mode '" + std::string(name) + "' (known-root | acoc | ecoc)");
}

void SolverConfig::validate() const {
    if (eta < 1) throw std::invalid_argument("eta must be >= 1");
    if (j < 1) throw std::invalid_argument("j must be >= 1");
    if (rho < 2) throw std::invalid_argument("rho must be >= 2");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (initial_digits < kMinDigits) throw std::invalid_argument("initial_digits below minimum");
    if (guard_digits < 0) throw std::invalid_argument("guard_digits must be >= 0");
}

int clamp_digits(double raw, int previous) {
    const double ceiling = static_cast<double>(max_digits());
    const int clamped =
        static_cast<int>(std::clamp(std::floor(raw), static_cast<double>(kMinDigits), ceiling));
    return std::max(clamped, std::min(previous, max_digits()));
}

int digits_known_root(int rho, const BigReal& e_norm, int j, int previous) {
    return clamp_digits(raw_digits(e_norm, j, rho, 1), previous);
}

std::optional<int> digits_acoc(int rho, const BigReal& delta, int j, int previous) {
    if (!(delta < BigReal(1L, delta.digits()))) return std::nullopt;
    return clamp_digits(raw_digits(delta, j, cube(rho), rho - 1), previous);
}

int digits_ecoc(int rho, const BigReal& e_tilde_norm, int j, int previous) {
    return clamp_digits(raw_digits(e_tilde_norm, j, cube(rho), 2L * rho - 1), previous);
}

double stop_exponent(const SolverConfig& cfg) {
    const double eta = cfg.eta;
    const double rho = cfg.rho;
    switch (cfg.mode) {
        case StopMode::KnownRoot: return -eta;
        case StopMode::AcocDriven: return -eta * (rho - 1) / (rho * rho);
        case StopMode::EcocDriven: return -eta * (2 * rho - 1) / (rho * rho);
    }
    return -eta;
}

bool should_stop(const SolverConfig& cfg, const IterationRecord& rec) {
    const std::optional<BigReal>* surrogate = nullptr;
    switch (cfg.mode) {
        case StopMode::KnownRoot: surrogate = &rec.e_known; break;
        case StopMode::AcocDriven: surrogate = &rec.delta; break;
        case StopMode::EcocDriven: surrogate = &rec.e_tilde; break;
    }
    if (!surrogate->has_value()) {
        throw std::logic_error("iteration record lacks the surrogate required by mode " +
                               std::string(to_string(cfg.mode)));
    }
    return below_threshold(**surrogate, stop_exponent(cfg));
}

std::optional<double> required_digits(const SolverConfig& cfg, const IterationRecord& rec) {
    switch (cfg.mode) {
        case StopMode::KnownRoot:
            if (!rec.e_known || rec.e_known->is_zero()) return std::nullopt;
            return raw_digits(*rec.e_known, cfg.j, cfg.rho, 1);
        case StopMode::AcocDriven:
            if (!rec.delta || rec.delta->is_zero()) return std::nullopt;
            if (!(*rec.delta < BigReal(1L, rec.delta->digits()))) return std::nullopt;
            return raw_digits(*rec.delta, cfg.j, cube(cfg.rho), cfg.rho - 1);
        case StopMode::EcocDriven:
            if (!rec.e_tilde || rec.e_tilde->is_zero()) return std::nullopt;
            return raw_digits(*rec.e_tilde, cfg.j, cube(cfg.rho), 2L * cfg.rho - 1);
    }
    return std::nullopt;
}

} // namespace mpsolve
