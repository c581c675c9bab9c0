#pragma once

// Table rows in the benchmark layout, trace serialization, the golden-k file
// and the parallel grid runner behind the command-line tool.

#include "mpsolve/methods.hpp"
#include "mpsolve/orders.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mpsolve {

/// mantissa·10^exponent with a three-digit mantissa.
struct Magnitude {
    double mantissa = 0;
    long exponent = 0;

    static Magnitude of(const BigReal& x);
    std::string str() const;  // "1.02e-3429"
};

struct TableRow {
    std::string problem;
    MethodKind method = MethodKind::NM;
    std::string point;
    int rho = 2;
    int j = 2;
    int k = 0;
    Termination termination = Termination::MaxIterations;
    std::optional<Magnitude> residual;    // ‖F(x_k)‖∞
    std::optional<Magnitude> e_prev;      // ‖e_{k−1}‖∞
    std::optional<Magnitude> delta_coc;   // |COC − ρ| over x_{k−3}..x_{k−1}
    std::optional<Magnitude> e_tilde;     // ‖ẽ_k‖∞
    std::optional<Magnitude> delta_ecoc;
    std::optional<Magnitude> delta;       // δ_k
    std::optional<Magnitude> delta_acoc;
};

/// Builds a row from a finished run. Errors against the root are measured
/// post hoc when the run did not record them.
TableRow make_row(const Problem& p, const Trace& t, int j);

enum class Format { Markdown, Csv, Json };
Format parse_format(std::string_view name);

void write_rows(std::ostream& out, const std::vector<TableRow>& rows, Format f);
nlohmann::json to_json(const TableRow& row);

/// Full-precision serialization: every BigReal is stored as an exact decimal
/// string together with its precision.
nlohmann::json to_json(const Trace& t);
Trace trace_from_json(const nlohmann::json& j);

struct GoldenEntry {
    int table = 0;
    MethodKind method = MethodKind::NM;
    std::string point;
    int k = 0;
};

inline constexpr int kGoldenTolerance = 1;

/// CSV with header table,method,point,k.
std::vector<GoldenEntry> load_golden(const std::string& path);
std::string default_golden_path();

struct Cell {
    const Problem* problem = nullptr;
    MethodKind method = MethodKind::NM;
    std::string point;
    std::optional<int> j;
    std::optional<int> rho;
};

struct CellResult {
    Trace trace;
    TableRow row;
};

/// Runs every cell with up to `jobs` worker threads. Results come back in
/// the order of `cells`.
std::vector<CellResult> run_grid(const std::vector<Cell>& cells, StopMode mode, int eta,
                                 int jobs);

/// All 12 cells of one benchmark table (method-major, as printed).
std::vector<Cell> table_cells(int table);

} // namespace mpsolve
