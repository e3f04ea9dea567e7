#include <doctest.h>

#include <algorithm>

#include "srtsel/engine.hpp"

using namespace srtsel;

namespace {

bool has_witness(const std::vector<DeltaInputs>& ws, std::int64_t d, std::int64_t k) {
    return std::find(ws.begin(), ws.end(), DeltaInputs{d, k}) != ws.end();
}

}  // namespace

TEST_CASE("simple check") {
    // k = 2^{u_max-1} + 2 = 34 breaks (u=6, t=2) for beta=16, a=15.
    CheckResult r = check_simple(make_config(16, 15), 6, 2);
    CHECK(r.failed);
    CHECK(has_witness(r.witnesses, 15, 34));

    CHECK_FALSE(check_simple(make_config(8, 7), 4, 3).failed);

    DecisionRecord rec = decide_t(make_config(16, 8), 9);
    CHECK(rec.t_final == 7);
    CHECK((rec.simple_failed || rec.rest_failed));
}

TEST_CASE("rest check") {
    CheckResult r = check_rest(make_config(16, 15), 9, 2);
    CHECK(r.failed);
    bool witness_at_14 = false;
    for (const auto& w : r.witnesses) witness_at_14 |= (w.d == 14);
    CHECK(witness_at_14);

    CHECK_FALSE(check_rest(make_config(4, 2), 4, 4).failed);
    CHECK_FALSE(check_rest(make_config(16, 10), 6, 6).failed);
}

TEST_CASE("decide_t keeps or bumps t_hat") {
    CHECK(decide_t(make_config(16, 8), 8).t_final == 9);
    CHECK(decide_t(make_config(16, 8), 12).t_final == 6);

    DecisionRecord rec = decide_t(make_config(16, 15), 5);
    CHECK(rec.t_final == 4);
    CHECK_FALSE(rec.simple_failed);
    CHECK_FALSE(rec.rest_failed);
    CHECK(rec.witnesses.empty());

    // Once simple fails, rest is skipped and t is bumped.
    DecisionRecord bumped = decide_t(make_config(16, 15), 6);
    CHECK(bumped.simple_failed);
    CHECK_FALSE(bumped.rest_failed);
    CHECK(bumped.t_final == 3);
    CHECK_FALSE(bumped.witnesses.empty());

    CHECK_THROWS_AS(decide_t(make_config(16, 8), 7), std::domain_error);
    CHECK_THROWS_AS(decide_t(make_config(16, 8), 13), std::domain_error);
}

TEST_CASE("witnesses are exactly the cells with negative margin") {
    RadixConfig cfg = make_config(16, 15);
    DecisionRecord rec = decide_t(cfg, 6);
    for (const auto& w : rec.witnesses) CHECK(delta_margin(cfg, rec.t_hat, 6, w.d, w.k) < 0);
    std::int64_t count = 0;
    for (std::int64_t k = 32; k < 64; ++k)
        if (delta_margin(cfg, rec.t_hat, 6, 15, k) < 0) ++count;
    CHECK(count == static_cast<std::int64_t>(rec.witnesses.size()));
}

TEST_CASE("menu for the minimally redundant radix-16 divider") {
    ParamMenu menu = enumerate_params(make_config(16, 8));
    REQUIRE(menu.entries.size() == 5);
    const int expect[5][2] = {{8, 9}, {9, 7}, {10, 7}, {11, 7}, {12, 6}};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(menu.entries[i].u == expect[i][0]);
        CHECK(menu.entries[i].t_final == expect[i][1]);
    }
    CHECK(menu.best == 1);  // (9, 7) minimizes u + t
}

TEST_CASE("menus for maximally redundant digit sets") {
    ParamMenu menu = enumerate_params(make_config(16, 15));
    REQUIRE(menu.entries.size() == 2);
    CHECK(menu.entries[0].u == 5);
    CHECK(menu.entries[0].t_final == 4);
    CHECK(menu.entries[1].u == 6);
    CHECK(menu.entries[1].t_final == 3);
    CHECK(menu.best == 0);  // equal u + t, smaller u wins

    ParamMenu tiny = enumerate_params(make_config(4, 3));
    REQUIRE(tiny.entries.size() == 1);
    CHECK(tiny.entries[0].u == 3);
    CHECK(tiny.entries[0].t_final == 2);
}

TEST_CASE("closed form for maximally redundant digit sets") {
    CHECK(max_redundant_params(2) == std::vector<TruncationPair>{{3, 2}});
    CHECK(max_redundant_params(4) == std::vector<TruncationPair>{{5, 4}, {6, 3}});
    CHECK(max_redundant_params(5) == std::vector<TruncationPair>{{6, 5}, {7, 3}});
    CHECK_THROWS_AS(max_redundant_params(1), std::domain_error);
    CHECK_THROWS_AS(max_redundant_params(8), std::domain_error);

    for (int p = 2; p <= 7; ++p) {
        std::int64_t beta = std::int64_t{1} << p;
        ParamMenu menu = enumerate_params(make_config(beta, beta - 1));
        std::vector<TruncationPair> closed = max_redundant_params(p);
        REQUIRE(menu.entries.size() == closed.size());
        for (std::size_t i = 0; i < closed.size(); ++i) {
            CHECK(menu.entries[i].u == closed[i].u);
            CHECK(menu.entries[i].t_final == closed[i].t);
        }
    }
}

TEST_CASE("decision closure: accepted pairs have no negative margins") {
    for (int p = 2; p <= 4; ++p) {
        std::int64_t beta = std::int64_t{1} << p;
        for (std::int64_t a = beta / 2; a <= beta - 1; ++a) {
            RadixConfig cfg = make_config(beta, a);
            for (int u = u_min(cfg); u <= u_max(cfg); ++u) {
                DecisionRecord rec = decide_t(cfg, u);
                for (std::int64_t d = 1; d <= a; ++d)
                    for (std::int64_t k = std::int64_t{1} << (u - 1); k < std::int64_t{1} << u; ++k)
                        CHECK(delta_margin(cfg, rec.t_final, u, d, k) >= 0);
            }
        }
    }
}

TEST_CASE("sweep at minimal u over small radices") {
    std::vector<AcceptEntry> s2 = sweep_accept_list(2, 2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].beta == 4);
    CHECK(s2[0].a == 2);
    CHECK(s2[0].u == 4);
    CHECK(s2[0].t == 4);

    std::vector<AcceptEntry> s3 = sweep_accept_list(3, 3);
    CHECK(s3.empty());

    std::vector<AcceptEntry> s5 = sweep_accept_list(5, 5);
    REQUIRE(s5.size() == 1);
    CHECK(s5[0].beta == 32);
    CHECK(s5[0].a == 25);

    CHECK_THROWS_AS(sweep_accept_list(1, 3), std::domain_error);
}

TEST_CASE("pair gate accepts decisions and their paddings") {
    RadixConfig cfg = make_config(16, 15);
    CHECK(pair_accepted(cfg, 5, 4));
    CHECK(pair_accepted(cfg, 6, 3));
    CHECK(pair_accepted(cfg, 9, 3));   // u past u_max inherits the u_max decision
    CHECK(pair_accepted(cfg, 5, 9));
    CHECK_FALSE(pair_accepted(cfg, 9, 2));
    CHECK_FALSE(pair_accepted(cfg, 4, 9));  // below u_min nothing works
    CHECK_FALSE(pair_accepted(cfg, 6, 2));
}
