#include "mpsolve/report.hpp"

#include "mpsolve/error.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#ifndef MPSOLVE_DATA_DIR
#define MPSOLVE_DATA_DIR "data"
#endif

namespace mpsolve {

using nlohmann::json;

Magnitude Magnitude::of(const BigReal& x) {
    Magnitude m;
    if (x.is_zero()) return m;
    // to_decimal(3) gives "±d.dde±k"
    const std::string s = x.to_decimal(3);
    const auto e = s.find('e');
    m.mantissa = std::abs(std::stod(s.substr(0, e)));
    m.exponent = std::stol(s.substr(e + 1));
    return m;
}

std::string Magnitude::str() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2fe%ld", mantissa, exponent);
    return buf;
}

TableRow make_row(const Problem& p, const Trace& t, int j) {
    TableRow row;
    row.problem = t.problem;
    row.method = t.method;
    row.point = t.point;
    row.rho = t.rho;
    row.j = j;
    row.k = t.k();
    row.termination = t.termination;
    if (t.records.empty()) return row;

    const IterationRecord& last = t.records.back();
    if (t.final_residual) row.residual = Magnitude::of(*t.final_residual);
    if (last.e_tilde) row.e_tilde = Magnitude::of(*last.e_tilde);
    if (last.delta) row.delta = Magnitude::of(*last.delta);

    const Vector alpha = p.attracting_root(last.x, last.x.digits() + 10);
    if (t.records.size() >= 2) {
        const IterationRecord& prev = t.records[t.records.size() - 2];
        const BigReal e = prev.e_known ? *prev.e_known : norm_inf(prev.x - alpha);
        if (!e.is_zero()) row.e_prev = Magnitude::of(e);
    }

    const OrderReport r = order_report(t, alpha, t.rho);
    if (r.delta_coc) row.delta_coc = Magnitude::of(*r.delta_coc);
    if (r.delta_ecoc) row.delta_ecoc = Magnitude::of(*r.delta_ecoc);
    if (r.delta_acoc) row.delta_acoc = Magnitude::of(*r.delta_acoc);
    return row;
}

Format parse_format(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "markdown" || s == "md") return Format::Markdown;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ParseError("unknown format '" + std::string(name) + "'");
}

namespace {

std::string cell(const std::optional<Magnitude>& m) { return m ? m->str() : "-"; }

std::vector<std::string> row_cells(const TableRow& r) {
    return {r.problem,
            std::string(to_string(r.method)),
            r.point,
            std::to_string(r.rho),
            std::to_string(r.j),
            std::to_string(r.k),
            cell(r.residual),
            cell(r.e_prev),
            cell(r.delta_coc),
            cell(r.e_tilde),
            cell(r.delta_ecoc),
            cell(r.delta),
            cell(r.delta_acoc),
            std::string(to_string(r.termination))};
}

const std::vector<std::string>& header() {
    static const std::vector<std::string> h = {
        "problem", "method", "x0", "rho", "j", "k", "|F(x_k)|", "|e_{k-1}|", "d_coc",
        "|e~_k|", "d_ecoc", "delta_k", "d_acoc", "termination"};
    return h;
}

json magnitude_json(const std::optional<Magnitude>& m) {
    if (!m) return nullptr;
    return m->str();
}

json big(const BigReal& x) { return {{"value", x.to_exact_decimal()}, {"digits", x.digits()}}; }

BigReal unbig(const json& j) {
    return BigReal::from_decimal(j.at("value").get<std::string>(), j.at("digits").get<int>());
}

json opt_big(const std::optional<BigReal>& x) { return x ? big(*x) : json(nullptr); }

std::optional<BigReal> un_opt_big(const json& j) {
    if (j.is_null()) return std::nullopt;
    return unbig(j);
}

} // namespace

json to_json(const TableRow& r) {
    return {{"problem", r.problem},
            {"method", to_string(r.method)},
            {"point", r.point},
            {"rho", r.rho},
            {"j", r.j},
            {"k", r.k},
            {"termination", to_string(r.termination)},
            {"residual", magnitude_json(r.residual)},
            {"e_prev", magnitude_json(r.e_prev)},
            {"delta_coc", magnitude_json(r.delta_coc)},
            {"e_tilde", magnitude_json(r.e_tilde)},
            {"delta_ecoc", magnitude_json(r.delta_ecoc)},
            {"delta", magnitude_json(r.delta)},
            {"delta_acoc", magnitude_json(r.delta_acoc)}};
}

void write_rows(std::ostream& out, const std::vector<TableRow>& rows, Format f) {
    switch (f) {
        case Format::Json: {
            json a = json::array();
            for (const auto& r : rows) a.push_back(to_json(r));
            out << a.dump(2) << '\n';
            return;
        }
        case Format::Csv: {
            const auto& h = header();
            for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
            out << '\n';
            for (const auto& r : rows) {
                const auto c = row_cells(r);
                for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
                out << '\n';
            }
            return;
        }
        case Format::Markdown: {
            std::vector<std::vector<std::string>> lines{header()};
            for (const auto& r : rows) lines.push_back(row_cells(r));
            std::vector<std::size_t> width(header().size(), 0);
            for (const auto& l : lines) {
                for (std::size_t i = 0; i < l.size(); ++i) width[i] = std::max(width[i], l[i].size());
            }
            auto emit = [&](const std::vector<std::string>& l) {
                out << '|';
                for (std::size_t i = 0; i < l.size(); ++i) {
                    out << ' ' << l[i] << std::string(width[i] - l[i].size(), ' ') << " |";
                }
                out << '\n';
            };
            emit(lines[0]);
            out << '|';
            for (auto w : width) out << std::string(w + 2, '-') << '|';
            out << '\n';
            for (std::size_t i = 1; i < lines.size(); ++i) emit(lines[i]);
            return;
        }
    }
}

json to_json(const Trace& t) {
    json records = json::array();
    for (const auto& r : t.records) {
        json x = json::array();
        for (const auto& c : r.x) x.push_back(big(c));
        records.push_back({{"n", r.n},
                           {"digits", r.digits},
                           {"x", x},
                           {"residual_inf", big(r.residual_inf)},
                           {"e_hat", opt_big(r.e_hat)},
                           {"delta", opt_big(r.delta)},
                           {"e_tilde", opt_big(r.e_tilde)},
                           {"e_known", opt_big(r.e_known)},
                           {"factorizations", r.factorizations}});
    }
    return {{"method", to_string(t.method)},
            {"rho", t.rho},
            {"problem", t.problem},
            {"point", t.point},
            {"termination", to_string(t.termination)},
            {"final_residual", opt_big(t.final_residual)},
            {"records", records}};
}

Trace trace_from_json(const json& j) {
    try {
        Trace t;
        t.method = parse_method(j.at("method").get<std::string>());
        t.rho = j.at("rho").get<int>();
        t.problem = j.at("problem").get<std::string>();
        t.point = j.at("point").get<std::string>();
        t.termination = parse_termination(j.at("termination").get<std::string>());
        t.final_residual = un_opt_big(j.at("final_residual"));
        for (const auto& rj : j.at("records")) {
            IterationRecord r;
            r.n = rj.at("n").get<int>();
            r.digits = rj.at("digits").get<int>();
            std::vector<BigReal> x;
            for (const auto& c : rj.at("x")) x.push_back(unbig(c));
            r.x = Vector(std::move(x));
            r.residual_inf = unbig(rj.at("residual_inf"));
            r.e_hat = un_opt_big(rj.at("e_hat"));
            r.delta = un_opt_big(rj.at("delta"));
            r.e_tilde = un_opt_big(rj.at("e_tilde"));
            r.e_known = un_opt_big(rj.at("e_known"));
            r.factorizations = rj.at("factorizations").get<int>();
            t.records.push_back(std::move(r));
        }
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed trace: ") + e.what());
    }
}

std::string default_golden_path() { return std::string(MPSOLVE_DATA_DIR) + "/golden_k.csv"; }

std::vector<GoldenEntry> load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open golden file " + path);
    std::vector<GoldenEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.rfind("table", 0) == 0) continue;
        std::stringstream ss(line);
        std::string table, method, point, k;
        if (!std::getline(ss, table, ',') || !std::getline(ss, method, ',') ||
            !std::getline(ss, point, ',') || !std::getline(ss, k, ',')) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 4 fields");
        }
        try {
            out.push_back({std::stoi(table), parse_method(method), point, std::stoi(k)});
        } catch (const std::logic_error&) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    return out;
}

std::vector<Cell> table_cells(int table) {
    const Problem& p = find_problem(std::to_string(table));
    std::vector<Cell> cells;
    for (MethodKind m : kAllMethods) {
        for (const auto& pt : p.initial_points()) cells.push_back({&p, m, pt.label, {}, {}});
    }
    return cells;
}

std::vector<CellResult> run_grid(const std::vector<Cell>& cells, StopMode mode, int eta,
                                 int jobs) {
    std::vector<std::optional<CellResult>> slots(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                const Cell& c = cells[i];
                SolverConfig cfg = configure(*c.problem, c.method, c.point, mode, eta);
                if (c.j) cfg.j = *c.j;
                if (c.rho) cfg.rho = *c.rho;
                Trace t = run(*c.problem, c.problem->point(c.point), c.method, cfg);
                TableRow row = make_row(*c.problem, t, cfg.j);
                slots[i] = CellResult{std::move(t), std::move(row)};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const int n = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(cells.size(), 1)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<CellResult> out;
    out.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

} // namespace mpsolve
