#include "support.hpp"

#include "mpsolve/report.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace testing;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
    const std::string path = std::string(MPSOLVE_TEST_TMP) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

Trace short_run() {
    const Problem& f1 = find_problem("F1");
    return run(f1, f1.point("2"), MethodKind::AMN,
               configure(f1, MethodKind::AMN, "2", StopMode::KnownRoot, 600));
}

} // namespace

TEST_CASE("Magnitude") {
    const Magnitude m = Magnitude::of(big("1.0249e-3429", 3440));
    CHECK(m.mantissa == doctest::Approx(1.02));
    CHECK(m.exponent == -3429);
    CHECK(m.str() == "1.02e-3429");
    CHECK(Magnitude::of(big("9.996e-5")).str() == "1.00e-4");
    CHECK(Magnitude::of(big("3.5")).str() == "3.50e0");
}

TEST_CASE("traces survive a JSON round trip bit for bit") {
    const Trace t = short_run();
    const nlohmann::json j = to_json(t);
    const Trace back = trace_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back == t);
    CHECK(back.records.back().x.digits() == t.records.back().x.digits());
}

TEST_CASE("malformed trace JSON") {
    const nlohmann::json good = to_json(short_run());
    CHECK_THROWS_AS(trace_from_json(nlohmann::json::array()), ParseError);

    nlohmann::json bad_method = good;
    bad_method["method"] = "XYZ";
    CHECK_THROWS_AS(trace_from_json(bad_method), ParseError);

    nlohmann::json bad_number = good;
    bad_number["records"][0]["residual_inf"]["value"] = "one";
    CHECK_THROWS_AS(trace_from_json(bad_number), ParseError);

    nlohmann::json missing = good;
    missing.erase("records");
    CHECK_THROWS_AS(trace_from_json(missing), ParseError);
}

TEST_CASE("golden file") {
    const auto golden = load_golden(default_golden_path());
    REQUIRE(golden.size() == 84);
    std::vector<int> t5;
    for (const auto& g : golden) {
        if (g.table == 5) t5.push_back(g.k);
    }
    CHECK(t5 == std::vector<int>{14, 12, 11, 9, 8, 7, 8, 7, 7, 16, 8, 7});
    CHECK(golden.front().method == MethodKind::NM);
    CHECK(golden.front().point == "x0_1");
    CHECK(golden.front().k == 12);

    CHECK_THROWS_AS(load_golden(temp_file("g1.csv", "table,method,point,k\n1,NM,x0_1\n")), ParseError);
    CHECK_THROWS_AS(load_golden(temp_file("g2.csv", "table,method,point,k\n1,QQ,x0_1,3\n")), ParseError);
    CHECK_THROWS_AS(load_golden(temp_file("g3.csv", "table,method,point,k\n1,NM,x0_1,many\n")), ParseError);
    CHECK_THROWS_AS(load_golden(std::string(MPSOLVE_TEST_TMP) + "/absent.csv"), Error);
}

TEST_CASE("table cells") {
    const auto cells = table_cells(7);
    REQUIRE(cells.size() == 12);
    CHECK(cells[0].problem->id() == "F7");
    CHECK(cells[0].method == MethodKind::NM);
    CHECK(cells[0].point == "x0_1");
    CHECK(cells[3].method == MethodKind::AMN);
    CHECK(cells[11].method == MethodKind::FDN);
    CHECK(cells[11].point == "x0_3");
    CHECK_THROWS(table_cells(8));
}

TEST_CASE("parallel grid matches the serial one") {
    std::vector<Cell> cells = table_cells(2);
    const auto serial = run_grid(cells, StopMode::KnownRoot, 800, 1);
    const auto parallel = run_grid(cells, StopMode::KnownRoot, 800, 3);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].trace == parallel[i].trace);
        CHECK(to_json(serial[i].row) == to_json(parallel[i].row));
    }
}

TEST_CASE("row output formats") {
    const Problem& f1 = find_problem("F1");
    const TableRow row = make_row(f1, short_run(), 2);
    CHECK(row.problem == "F1");
    CHECK(row.point == "x0_2");
    CHECK(row.rho == 3);
    CHECK(row.termination == Termination::ToleranceMet);
    REQUIRE(row.e_prev.has_value());
    REQUIRE(row.residual.has_value());

    std::ostringstream md, csv, js;
    write_rows(md, {row}, Format::Markdown);
    write_rows(csv, {row}, Format::Csv);
    write_rows(js, {row}, Format::Json);
    CHECK(md.str().find("| AMN ") != std::string::npos);
    CHECK(csv.str().find("F1,AMN,x0_2,") != std::string::npos);
    const auto parsed = nlohmann::json::parse(js.str());
    REQUIRE(parsed.is_array());
    CHECK(parsed[0]["k"] == row.k);
    CHECK(parsed[0]["residual"] == row.residual->str());

    CHECK(parse_format("csv") == Format::Csv);
    CHECK(parse_format("markdown") == Format::Markdown);
    CHECK(parse_format("json") == Format::Json);
    CHECK_THROWS_AS(parse_format("xml"), ParseError);
}
