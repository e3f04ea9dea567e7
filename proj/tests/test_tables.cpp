#include <doctest.h>

#include <sstream>

#include "srtsel/tables.hpp"

using namespace srtsel;

TEST_CASE("thresholds follow the ceiling formula") {
    SelectionTable table = build_table(make_config(4, 2), 4, 4);
    CHECK(table.threshold(8, 1) == 3);    // ceil((1/3) * 9)
    CHECK(table.threshold(8, 2) == 12);   // ceil((4/3) * 9)
    CHECK(table.threshold(15, 1) == 6);   // ceil((1/3) * 16)
}

TEST_CASE("table construction is gated by the decision procedure") {
    CHECK_THROWS_AS(build_table(make_config(16, 15), 9, 2), std::domain_error);
    CHECK_THROWS_AS(build_table(make_config(16, 8), 9, 6), std::domain_error);
    SelectionTable unsafe = build_table(make_config(16, 15), 9, 2, /*allow_unverified=*/true);
    CHECK(unsafe.rows.size() == 256);
}

TEST_CASE("dimensions match u and a") {
    SelectionTable table = build_table(make_config(16, 8), 9, 7);
    CHECK(table.rows.size() == 256);
    for (const auto& row : table.rows) CHECK(row.size() == 8);
}

TEST_CASE("thresholds increase in d and are nondecreasing in k") {
    struct Case { int beta, a, u, t; };
    for (Case c : {Case{16, 8, 9, 7}, Case{16, 15, 5, 4}, Case{16, 15, 6, 3}, Case{4, 2, 4, 4},
                   Case{8, 7, 4, 3}}) {
        auto [beta, a, u, t] = c;
        SelectionTable table = build_table(make_config(beta, a), u, t);
        for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
            CHECK(table.threshold(k, 1) >= 0);
            for (std::int64_t d = 1; d < a; ++d) CHECK(table.threshold(k, d) < table.threshold(k, d + 1));
            if (k > table.k_begin())
                for (std::int64_t d = 1; d <= a; ++d) CHECK(table.threshold(k - 1, d) <= table.threshold(k, d));
        }
    }
}

TEST_CASE("representability bracket") {
    // ceil(2^{t-u}(d-rho)(k+1)) <= s_{d,k} <= floor(2^{t-u}(d+rho-1)k) - 1
    // whenever the margin is at least 1; the two collapse when it is 0.
    RadixConfig cfg = make_config(16, 8);
    SelectionTable table = build_table(cfg, 9, 7);
    Rational rho = cfg.rho();
    for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
        for (std::int64_t d = 1; d <= cfg.a; ++d) {
            Rational lo = Rational::pow2(7 - 9) * (Rational(d) - rho) * Rational(k + 1);
            Rational hi = Rational::pow2(7 - 9) * (Rational(d) + rho - Rational(1)) * Rational(k);
            std::int64_t s = table.threshold(k, d);
            std::int64_t margin = delta_margin(cfg, 7, 9, d, k);
            REQUIRE(margin >= 0);
            CHECK(s == static_cast<std::int64_t>(lo.ceil()));
            if (margin >= 1) CHECK(s <= static_cast<std::int64_t>(hi.floor()) - 1);
            else CHECK(s == static_cast<std::int64_t>(hi.floor()) - 1);
        }
    }
}

TEST_CASE("digit selection walks the thresholds") {
    SelectionTable table = build_table(make_config(4, 2), 4, 4);
    CHECK(select_digit(table, {8, 0}) == 0);
    CHECK(select_digit(table, {8, 2}) == 0);
    CHECK(select_digit(table, {8, 3}) == 1);
    CHECK(select_digit(table, {8, 11}) == 1);
    CHECK(select_digit(table, {8, 12}) == 2);
    CHECK(select_digit(table, {8, -3}) == -1);

    CHECK_THROWS_AS(select_digit(table, {7, 0}), std::out_of_range);
    CHECK_THROWS_AS(select_digit(table, {16, 0}), std::out_of_range);
    CHECK_THROWS_AS(select_digit(table, {8, table.s_max(8) + 1}), std::out_of_range);
}

TEST_CASE("selection is odd in the remainder") {
    SelectionTable table = build_table(make_config(16, 8), 9, 7);
    for (std::int64_t k : {std::int64_t{256}, std::int64_t{300}, std::int64_t{511}}) {
        for (std::int64_t s = 0; s <= table.s_max(k); ++s) {
            CHECK(select_digit(table, {k, -s}) == -select_digit(table, {k, s}));
        }
    }
}

TEST_CASE("every reachable cell selects a digit") {
    struct Case { int beta, a, u, t; };
    for (Case c : {Case{16, 8, 9, 7}, Case{16, 15, 6, 3}, Case{4, 2, 4, 4}}) {
        auto [beta, a, u, t] = c;
        SelectionTable table = build_table(make_config(beta, a), u, t);
        for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
            for (std::int64_t s = -table.s_max(k); s <= table.s_max(k); ++s) {
                std::int64_t d = select_digit(table, {k, s});
                CHECK(d >= -a);
                CHECK(d <= a);
            }
        }
    }
}

TEST_CASE("csv layout") {
    SelectionTable table = build_table(make_config(4, 2), 4, 4);
    std::string csv = emit_table(table, TableFormat::csv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,s_1,s_2");
    int rows = 0;
    while (std::getline(in, line) && !line.empty()) ++rows;
    CHECK(rows == 8);
    CHECK(csv.find("8,3,12") != std::string::npos);
}

TEST_CASE("json round trip is the identity") {
    struct Case { int beta, a, u, t; };
    for (Case c : {Case{16, 8, 9, 7}, Case{16, 15, 5, 4}, Case{4, 2, 4, 4}}) {
        auto [beta, a, u, t] = c;
        SelectionTable table = build_table(make_config(beta, a), u, t);
        CHECK(parse_table_json(emit_table(table, TableFormat::json)) == table);
    }
}

TEST_CASE("malformed table files are rejected") {
    CHECK_THROWS_AS(parse_table_json("{\"beta\": 16"), std::runtime_error);
    CHECK_THROWS_AS(parse_table_json("{\"beta\": 16, \"a\": 8}"), std::runtime_error);
    CHECK_THROWS_AS(parse_table_json("{\"beta\": 3, \"a\": 2, \"u\": 4, \"t\": 4, \"rows\": []}"),
                    std::runtime_error);
    // wrong row count
    CHECK_THROWS_AS(parse_table_json("{\"beta\": 4, \"a\": 2, \"u\": 4, \"t\": 4, \"rows\": []}"),
                    std::runtime_error);

    SelectionTable table = build_table(make_config(4, 2), 4, 4);
    std::string good = emit_table(table, TableFormat::json);
    std::string shuffled = good;
    auto pos = shuffled.find("\"k\": 8");
    shuffled.replace(pos, 6, "\"k\": 9");
    CHECK_THROWS_AS(parse_table_json(shuffled), std::runtime_error);
}

TEST_CASE("text format carries the header") {
    SelectionTable table = build_table(make_config(4, 2), 4, 4);
    std::string text = emit_table(table, TableFormat::text);
    CHECK(text.find("beta=4 a=2 u=4 t=4") != std::string::npos);
    CHECK(parse_table_format("json") == TableFormat::json);
    CHECK_THROWS_AS(parse_table_format("yaml"), std::invalid_argument);
}
