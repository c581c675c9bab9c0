#include "mpsolve/methods.hpp"

#include "mpsolve/error.hpp"
#include "mpsolve/orders.hpp"

#include <algorithm>

namespace mpsolve {

namespace {

LuFactors factor(const Matrix& a, FactorizationCounter* counter) {
    LuFactors f = lu_factor(a);
    if (counter != nullptr) ++counter->count;
    return f;
}

} // namespace

Vector step_nm(const Problem& p, const Vector& x, FactorizationCounter* counter) {
    const LuFactors jx = factor(p.eval_J(x), counter);
    return x - lu_solve(jx, p.eval_F(x));
}

Vector step_amn(const Problem& p, const Vector& x, FactorizationCounter* counter) {
    const Vector fx = p.eval_F(x);
    const Matrix jx = p.eval_J(x);
    const Vector z = x - lu_solve(factor(jx, counter), fx);
    const LuFactors mean = factor(jx + p.eval_J(z), counter);
    return x - 2 * lu_solve(mean, fx);
}

Vector step_hmn(const Problem& p, const Vector& x, FactorizationCounter* counter) {
    const Vector fx = p.eval_F(x);
    const Vector dx = lu_solve(factor(p.eval_J(x), counter), fx);
    const Vector z = x - dx;
    const Vector dz = lu_solve(factor(p.eval_J(z), counter), fx);
    return x - (dx + dz) / 2;
}

Vector step_fdn(const Problem& p, const Vector& x, FactorizationCounter* counter) {
    const LuFactors jx = factor(p.eval_J(x), counter);
    const Vector z = x - lu_solve(jx, p.eval_F(x));
    return z - lu_solve(jx, p.eval_F(z));
}

Vector step(MethodKind m, const Problem& p, const Vector& x, FactorizationCounter* counter) {
    switch (m) {
        case MethodKind::NM: return step_nm(p, x, counter);
        case MethodKind::AMN: return step_amn(p, x, counter);
        case MethodKind::HMN: return step_hmn(p, x, counter);
        case MethodKind::FDN: return step_fdn(p, x, counter);
    }
    throw Error("unknown method");
}

SolverConfig configure(const Problem& p, MethodKind m, std::string_view point, StopMode mode,
                       int eta) {
    SolverConfig cfg;
    cfg.eta = eta;
    cfg.mode = mode;
    cfg.rho = p.effective_rho(m, point);
    cfg.j = p.effective_j(m, point);
    return cfg;
}

Trace run(const Problem& p, const InitialPoint& x0, MethodKind m, const SolverConfig& cfg) {
    return run(p, x0.at(cfg.initial_digits + cfg.guard_digits), x0.label, m, cfg);
}

Trace run(const Problem& p, const Vector& x0, std::string label, MethodKind m,
          const SolverConfig& cfg) {
    cfg.validate();
    Trace trace;
    trace.method = m;
    trace.rho = cfg.rho;
    trace.problem = p.id();
    trace.point = std::move(label);

    const bool root_driven = cfg.mode == StopMode::KnownRoot;
    auto error_vs_root = [&](const Vector& x) {
        return norm_inf(x - p.attracting_root(x, x.digits() + 10));
    };

    int digits = cfg.initial_digits;
    {
        IterationRecord r;
        r.n = 0;
        r.digits = digits;
        r.x = with_precision(x0, std::max(x0.digits(), digits + cfg.guard_digits));
        r.residual_inf = norm_inf(p.eval_F(r.x));
        if (root_driven) r.e_known = error_vs_root(r.x);
        trace.records.push_back(std::move(r));
    }

    auto stops = [&](const IterationRecord& r) {
        switch (cfg.mode) {
            case StopMode::KnownRoot: if (!r.e_known) return false; break;
            case StopMode::AcocDriven: if (!r.delta) return false; break;
            case StopMode::EcocDriven: if (!r.e_tilde) return false; break;
        }
        return should_stop(cfg, r);
    };

    if (stops(trace.records.back())) {
        trace.termination = Termination::ToleranceMet;
        trace.final_residual = trace.records.back().residual_inf;
        return trace;
    }

    trace.termination = Termination::MaxIterations;
    for (int n = 0; n < cfg.max_iterations; ++n) {
        const IterationRecord& last = trace.records.back();
        if (auto raw = required_digits(cfg, last)) {
            if (*raw + cfg.guard_digits > max_digits()) {
                trace.termination = Termination::PrecisionCeiling;
                break;
            }
            digits = clamp_digits(*raw, digits);
        }
        const int work = digits + cfg.guard_digits;
        if (work > max_digits()) {
            trace.termination = Termination::PrecisionCeiling;
            break;
        }

        IterationRecord r;
        r.n = n + 1;
        r.digits = digits;
        FactorizationCounter counter;
        const Vector xw = with_precision(last.x, std::max(work, last.x.digits()));
        try {
            r.x = step(m, p, xw, &counter);
        } catch (const SingularMatrix&) {
            trace.termination = Termination::SingularJacobian;
            break;
        }
        r.factorizations = counter.count;
        r.residual_inf = norm_inf(p.eval_F(r.x));
        r.e_hat = norm_inf(r.x - last.x);
        if (last.e_hat && !last.e_hat->is_zero()) r.delta = *r.e_hat / *last.e_hat;
        if (trace.records.size() >= 2) {
            const Vector& older = trace.records[trace.records.size() - 2].x;
            try {
                r.e_tilde = norm_inf(r.x - aitken(older, last.x, r.x));
            } catch (const DegenerateComponent&) {
            }
        }
        if (root_driven) r.e_known = error_vs_root(r.x);
        trace.records.push_back(std::move(r));

        if (stops(trace.records.back())) {
            trace.termination = Termination::ToleranceMet;
            break;
        }
    }
    trace.final_residual = trace.records.back().residual_inf;
    return trace;
}

} // namespace mpsolve
