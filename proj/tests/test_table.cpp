#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cesaro/table.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cesaro;

TEST_CASE("empty and one-row tables") {
    ExperimentTable empty({"n", "value"});
    CHECK(to_csv(empty) == "n,value\n");
    ExperimentTable one({"n", "value"});
    one.add_row({std::int64_t{4}, 0.5});
    CHECK(to_csv(one) == "n,value\n4,0.5\n");
}

TEST_CASE("number formatting") {
    ExperimentTable t({"a", "b", "c"});
    t.add_row({1.0, 0.1, -3e-300});
    CHECK(to_csv(t) == "a,b,c\n1.0,0.10000000000000001,-3.0000000000000002e-300\n");
}

TEST_CASE("quoting") {
    ExperimentTable t({"label", "with,comma"});
    t.add_row({std::string("say \"hi\""), std::string("12")});
    const auto csv = to_csv(t);
    CHECK(csv == "label,\"with,comma\"\n\"say \"\"hi\"\"\",\"12\"\n");
    CHECK(parse_csv(csv) == t);
}

TEST_CASE("round trip keeps values and metadata") {
    ExperimentTable t({"identity", "n", "value", "note"});
    t.add_metadata("cesaro-lab 1.0.0");
    t.add_metadata("thresholds: slope <= 0.02");
    t.add_row({std::string("binomial"), std::int64_t{-7}, 1.0 / 3.0, std::string("multi\nline")});
    t.add_row({std::string(""), std::int64_t{0}, 6.02214076e23, std::string("#hash")});
    t.add_row({std::string("x"), std::int64_t{9007199254740993}, 5e-324, std::string(" padded ")});
    const auto back = parse_csv(to_csv(t));
    CHECK(back == t);
    CHECK(back.metadata().size() == 2);
    CHECK(to_csv(back) == to_csv(t));
}

TEST_CASE("row validation") {
    ExperimentTable t({"a", "b"});
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(t.add_row({1.0, NAN}), std::domain_error);
    CHECK_THROWS_AS(t.add_row({INFINITY, 1.0}), std::domain_error);
    t.add_row({std::int64_t{2}, 3.5});
    CHECK(t.number(0, "a") == 2.0);
    CHECK(t.number(0, "b") == 3.5);
    CHECK_THROWS_AS(t.column_index("missing"), std::out_of_range);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("a,b\n\"open,1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), std::invalid_argument);
}

TEST_CASE("file output carries the path in errors") {
    ExperimentTable t({"n"});
    try {
        emit_csv(t, "/nonexistent-dir/out.csv");
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
    }
    const auto path = std::filesystem::temp_directory_path() / "cesaro_table_test.csv";
    t.add_row({std::int64_t{3}});
    emit_csv(t, path);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "n\n3\n");
    std::filesystem::remove(path);
}

TEST_CASE("svg is self-contained") {
    ExperimentTable t({"n", "m", "norm"});
    for (std::int64_t m = 1; m <= 2; ++m) {
        for (std::int64_t n = 1; n <= 1024; n *= 2) {
            t.add_row({n, m, 1.0 + 0.1 * static_cast<double>(m) * std::log(static_cast<double>(n))});
        }
    }
    const auto svg = to_svg(t, PlotSpec{"n", {"norm"}, {"m"}, "norm <vs> n & m", false});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
    CHECK(svg.find("&lt;vs&gt;") != std::string::npos);
    std::size_t polylines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == 2);
    CHECK(svg.find("norm m=1") != std::string::npos);
    CHECK(svg.find("norm m=2") != std::string::npos);
    // Log y drops nonpositive values without failing.
    ExperimentTable z({"n", "v"});
    z.add_row({std::int64_t{1}, 0.0});
    z.add_row({std::int64_t{2}, 1e-3});
    CHECK_NOTHROW(to_svg(z, PlotSpec{"n", {"v"}, {}, "", true}));
}
