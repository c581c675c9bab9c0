// mpsolve: run the adaptive-precision solvers on the benchmark systems.
//
//   mpsolve run --problem F1 --method AMN --x0 2
//   mpsolve reproduce 5
//   mpsolve verify --scales 1e-3,1e-4

#include "mpsolve/error.hpp"
#include "mpsolve/report.hpp"
#include "mpsolve/validate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

using namespace mpsolve;

namespace {

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct RunArgs {
    std::string problem;
    std::string methods = "all";
    std::string points = "all";
    std::string mode = "known-root";
    int eta = 2800;
    std::optional<int> j;
    std::optional<int> rho;
    std::string format = "markdown";
    std::string out;
    int jobs = default_jobs();
};

int cmd_run(const RunArgs& a) {
    const Problem& p = find_problem(a.problem);
    std::vector<MethodKind> methods;
    if (a.methods == "all") {
        methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
    } else {
        for (const auto& m : split(a.methods)) methods.push_back(parse_method(m));
    }
    std::vector<std::string> points;
    if (a.points == "all") {
        for (const auto& pt : p.initial_points()) points.push_back(pt.label);
    } else {
        for (const auto& pt : split(a.points)) points.push_back(p.point(pt).label);
    }

    std::vector<Cell> cells;
    for (MethodKind m : methods) {
        for (const auto& pt : points) cells.push_back({&p, m, pt, a.j, a.rho});
    }
    const auto results = run_grid(cells, parse_mode(a.mode), a.eta, a.jobs);

    std::vector<TableRow> rows;
    bool all_met = true;
    for (const auto& r : results) {
        rows.push_back(r.row);
        all_met = all_met && r.trace.termination == Termination::ToleranceMet;
    }
    write_rows(std::cout, rows, parse_format(a.format));

    if (!a.out.empty()) {
        nlohmann::json traces = nlohmann::json::array();
        for (const auto& r : results) traces.push_back(to_json(r.trace));
        std::ofstream f(a.out);
        if (!f) throw Error("cannot write " + a.out);
        f << traces.dump() << '\n';
    }
    return all_met ? 0 : 1;
}

int cmd_reproduce(const std::string& which, const std::string& golden_path,
                  const std::string& format, int jobs) {
    std::vector<int> tables;
    if (which == "all") {
        for (int t = 1; t <= 7; ++t) tables.push_back(t);
    } else {
        const int t = std::stoi(which);
        if (t < 1 || t > 7) throw ParseError("table must be 1..7 or 'all'");
        tables.push_back(t);
    }
    const auto golden = load_golden(golden_path);

    int exact = 0, close = 0, total = 0;
    for (int t : tables) {
        const auto results = run_grid(table_cells(t), StopMode::KnownRoot, 2800, jobs);
        std::vector<TableRow> rows;
        for (const auto& r : results) rows.push_back(r.row);
        std::cout << "Table " << t << " (" << find_problem(std::to_string(t)).id() << ")\n";
        write_rows(std::cout, rows, parse_format(format));

        for (const auto& row : rows) {
            auto g = std::find_if(golden.begin(), golden.end(), [&](const GoldenEntry& e) {
                return e.table == t && e.method == row.method && e.point == row.point;
            });
            if (g == golden.end()) {
                std::cout << "  no stored k for " << to_string(row.method) << ' ' << row.point << '\n';
                continue;
            }
            ++total;
            const int diff = row.k - g->k;
            if (diff == 0) {
                ++exact;
                ++close;
            } else {
                if (std::abs(diff) <= kGoldenTolerance) ++close;
                std::cout << "  " << to_string(row.method) << ' ' << row.point << ": k=" << row.k
                          << ", stored " << g->k
                          << (std::abs(diff) <= kGoldenTolerance ? " (within tolerance)" : " MISMATCH")
                          << '\n';
            }
        }
        std::cout << '\n';
    }
    std::cout << "k exact " << exact << '/' << total << ", within ±" << kGoldenTolerance << ' '
              << close << '/' << total << '\n';
    return close == total ? 0 : 1;
}

int cmd_verify(const std::string& scales_arg, const std::vector<std::string>& problems,
               int digits, const std::string& format) {
    std::vector<double> scales = default_scales();
    if (!scales_arg.empty()) {
        scales.clear();
        for (const auto& s : split(scales_arg)) scales.push_back(std::stod(s));
    }
    const std::vector<std::string> ids = problems.empty()
                                             ? std::vector<std::string>{"F1", "F2", "F3"}
                                             : problems;
    bool ok = true;
    nlohmann::json out = nlohmann::json::array();
    for (const auto& id : ids) {
        const Problem& p = find_problem(id);
        for (MethodKind m : kAllMethods) {
            const auto r = verify_leading_term(p, m, scales, digits);
            ok = ok && r.passed();
            nlohmann::json samples = nlohmann::json::array();
            for (const auto& s : r.samples) {
                nlohmann::json js = {{"t", s.t}, {"log10_error", s.log10_error}};
                if (s.ratio) js["ratio"] = *s.ratio;
                if (s.residual) js["residual"] = *s.residual;
                samples.push_back(js);
            }
            out.push_back({{"problem", r.problem},
                           {"method", to_string(m)},
                           {"order", r.expected_order},
                           {"slope", r.slope},
                           {"ratio_checked", r.ratio_checked},
                           {"passed", r.passed()},
                           {"samples", samples}});
            if (format != "json") {
                std::printf("%-3s %-3s order %d  slope %.4f", r.problem.c_str(),
                            std::string(to_string(m)).c_str(), r.expected_order, r.slope);
                if (r.ratio_checked) {
                    std::printf("  ratio");
                    for (const auto& s : r.samples) std::printf(" %.6f", *s.ratio);
                }
                std::printf("  %s\n", r.passed() ? "ok" : "FAIL");
            }
        }
    }
    if (format == "json") std::cout << out.dump(2) << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive multi-precision Newton-type solvers"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "solve one benchmark system");
    run->add_option("--problem", ra.problem, "F1..F7 or table number")->required();
    run->add_option("--method", ra.methods, "NM, AMN, HMN, FDN, comma list or all");
    run->add_option("--x0", ra.points, "starting point label(s): 1, x0_2, ... or all");
    run->add_option("--mode", ra.mode, "known-root | acoc | ecoc");
    run->add_option("--eta", ra.eta, "target correct decimals");
    run->add_option("--j", ra.j, "slack digits in the precision formula");
    run->add_option("--rho", ra.rho, "order used by the precision formula");
    run->add_option("--format", ra.format, "markdown | csv | json");
    run->add_option("--out", ra.out, "write full-precision JSON traces here");
    run->add_option("--jobs", ra.jobs, "worker threads");

    std::string table;
    std::string golden = default_golden_path();
    std::string rformat = "markdown";
    int rjobs = default_jobs();
    auto* rep = app.add_subcommand("reproduce", "rerun a benchmark table and diff k");
    rep->add_option("table", table, "1..7 or all")->required();
    rep->add_option("--golden", golden, "CSV of table,method,point,k");
    rep->add_option("--format", rformat, "markdown | csv | json");
    rep->add_option("--jobs", rjobs, "worker threads");

    std::string scales;
    std::vector<std::string> vproblems;
    int vdigits = 160;
    std::string vformat = "text";
    auto* ver = app.add_subcommand("verify", "check the local error laws numerically");
    ver->add_option("--scales", scales, "comma-separated decreasing perturbation sizes");
    ver->add_option("--problem", vproblems, "problems to check (default F1 F2 F3)");
    ver->add_option("--digits", vdigits, "working precision, at least 128");
    ver->add_option("--format", vformat, "text | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(ra);
        if (*rep) return cmd_reproduce(table, golden, rformat, rjobs);
        if (*ver) return cmd_verify(scales, vproblems, vdigits, vformat);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
