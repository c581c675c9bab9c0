#include "mpsolve/trace.hpp"

#include "mpsolve/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace mpsolve {

namespace {

std::string upper(std::string_view s) {
    std::string r(s);
    std::transform(r.begin(), r.end(), r.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return r;
}

} // namespace

std::string_view to_string(MethodKind m) {
    switch (m) {
        case MethodKind::NM: return "NM";
        case MethodKind::AMN: return "AMN";
        case MethodKind::HMN: return "HMN";
        case MethodKind::FDN: return "FDN";
    }
    return "?";
}

MethodKind parse_method(std::string_view name) {
    const std::string u = upper(name);
    for (MethodKind m : kAllMethods) {
        if (u == to_string(m)) return m;
    }
    throw ParseError("unknown method '" + std::string(name) + "'");
}

int theoretical_rho(MethodKind m) { return m == MethodKind::NM ? 2 : 3; }

int factorizations_per_step(MethodKind m) {
    return (m == MethodKind::AMN || m == MethodKind::HMN) ? 2 : 1;
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::ToleranceMet: return "ToleranceMet";
        case Termination::SingularJacobian: return "SingularJacobian";
        case Termination::MaxIterations: return "MaxIterations";
        case Termination::PrecisionCeiling: return "PrecisionCeiling";
    }
    return "?";
}

Termination parse_termination(std::string_view name) {
    for (Termination t : {Termination::ToleranceMet, Termination::SingularJacobian,
                          Termination::MaxIterations, Termination::PrecisionCeiling}) {
        if (name == to_string(t)) return t;
    }
    throw ParseError("unknown termination '" + std::string(name) + "'");
}

std::vector<Vector> Trace::iterates() const {
    std::vector<Vector> xs;
    xs.reserve(records.size());
    for (const auto& r : records) xs.push_back(r.x);
    return xs;
}

} // namespace mpsolve
