#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "ccsim/analysis.hpp"

using namespace ccsim;

TEST_CASE("params_from_epsilon recipe") {
    SUBCASE("epsilon=1 gives c=2") {
        AsymptoticParams p = params_from_epsilon(1.0, 100);
        CHECK(p.c == 2);
        CHECK(p.a == 22);  // ceil((ln 100)^2)
        CHECK(p.b == 76);
        CHECK(p.feasible());
    }
    SUBCASE("small n can be infeasible") {
        AsymptoticParams p = params_from_epsilon(1.0, 8);
        CHECK(p.a == 5);
        CHECK(p.b == 1);
        AsymptoticParams q = params_from_epsilon(1.0, 2);  // b = -1
        CHECK(!q.feasible());
    }
    SUBCASE("epsilon=0.5 gives c=3") {
        CHECK(params_from_epsilon(0.5, 1000).c == 3);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(params_from_epsilon(0.0, 100), std::domain_error);
        CHECK_THROWS_AS(params_from_epsilon(-1.0, 100), std::domain_error);
        CHECK_THROWS_AS(params_from_epsilon(1.0, 1), std::domain_error);
    }
}

TEST_CASE("evaluate_row agrees with exact rationals at small n") {
    for (long n : {20L, 30L, 40L}) {
        AsymptoticParams p = params_from_epsilon(1.0, n);
        if (!p.feasible()) continue;
        AnalysisRow row = evaluate_row(p);
        REQUIRE(row.ratio_exact.has_value());
        double exact = row.ratio_exact->get_d();
        CHECK(std::abs(row.ratio - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("evaluate_row flags the small-n degenerate regime") {
    AsymptoticParams p = params_from_epsilon(1.0, 8);  // a=5 b=1: F < K
    AnalysisRow row = evaluate_row(p);
    CHECK(row.degenerate);
}

TEST_CASE("claim 2 bound holds at n = 10^4") {
    AsymptoticParams p = params_from_epsilon(1.0, 10000);
    CHECK(p.a == 85);
    CHECK(p.b == 9913);
    AnalysisRow row = evaluate_row(p);
    CHECK(!row.degenerate);
    CHECK(row.claim2_exponent <= 2.0);
    CHECK(row.log_F < (static_cast<double>(p.n - p.b) / static_cast<double>(p.a)) *
                          row.log_K);
}

TEST_CASE("trend_table epsilon=1 over n = 1e3..1e6") {
    TrendTable table = trend_table(1.0, {1000, 10000, 100000, 1000000});
    REQUIRE(table.rows.size() == 4);
    CHECK(table.verdicts.all_pass());
    // ratio decreases toward 1 from above
    CHECK(table.rows[0].ratio > table.rows[3].ratio);
    CHECK(table.rows[3].ratio >= 1.0);
    CHECK(table.rows[3].ratio <= 1.25);

    std::string csv = table.to_csv();
    CHECK(csv.rfind("n,a,b,c,log_K,log_F,log_Fstar,ratio,claim2_exp,claim3_stat,degenerate",
                    0) == 0);
    CHECK(csv.find("# verdict ratio_non_increasing=pass") != std::string::npos);
    CHECK(csv.find("# verdict claim3_increasing=pass") != std::string::npos);
}

TEST_CASE("trend_table input validation") {
    CHECK_THROWS_AS(trend_table(1.0, {1000}), std::invalid_argument);
    CHECK_THROWS_AS(trend_table(1.0, {1000, 1000, 10000, 100000}),
                    std::invalid_argument);  // not strictly increasing
    // all rows degenerate or infeasible: nothing to judge
    CHECK_THROWS_AS(trend_table(1.0, {8, 9, 10}), std::invalid_argument);
}

TEST_CASE("approx_bin product stays inside the sandwich") {
    auto f = [](long n) { return static_cast<long>(std::ceil(std::log(n))); };
    auto g = [](long n) { return n; };
    auto rows = approx_bin_check(f, g, {100, 1000, 10000, 100000, 1000000});
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) {
        CHECK(row.in_bounds);
        CHECK(row.product <= 1.0);
        CHECK(row.product >= row.sandwich_lower - 1e-9);
    }
    // the product tends to 1 as n grows with f ~ ln n
    CHECK(rows.back().product > 0.999);
    CHECK(rows.back().product <= 1.0);
}

TEST_CASE("approx_bin f=0 edge: empty product is exactly 1") {
    auto rows = approx_bin_check([](long) { return 0L; }, [](long n) { return n; }, {50});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].product == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[0].in_bounds);
}
