#include "oracles.hpp"

#include <cvxdiff/constructions.hpp>
#include <cvxdiff/verify.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cvxdiff;

namespace {

std::vector<Rat> vals(const ConvexSequence& s)
{
    return {s.values().begin(), s.values().end()};
}

} // namespace

TEST_CASE("claim checks")
{
    auto t = check_claim(d3_extremal_set(10), Claim::thm1);
    CHECK(t.computed == 12);
    CHECK(t.bound == 12);
    CHECK(t.pass);

    auto d = check_claim(fibonacci_set(8), Claim::d2_lower);
    CHECK(d.computed == 8);
    CHECK(d.bound == 8);
    CHECK(d.pass);

    auto r = check_claim(random_convex(20, 100, 4), Claim::thm2);
    CHECK(r.bound == 24);
    CHECK(r.computed >= 24);
    CHECK(r.pass);

    CHECK_THROWS_AS(check_claim(fibonacci_set(4), Claim::thm1), ApplicabilityError);
    CHECK_THROWS_AS(check_claim(fibonacci_set(5), Claim::rem_1235), ApplicabilityError);
    CHECK_THROWS_AS(check_claim(random_convex(10, 100, 3), Claim::thm3_2convex), ApplicabilityError);
    CHECK(check_claim(fibonacci_set(10), Claim::thm3_2convex).pass);

    CHECK(parse_claim("rem_124") == Claim::rem_124);
    CHECK(claim_name(Claim::thm3_2convex) == "thm3_2convex");
    CHECK_THROWS_AS(parse_claim("thm9"), FormatError);
    CHECK(is_finding_claim(Claim::rem_1235));
    CHECK_FALSE(is_finding_claim(Claim::thm2));
}

TEST_CASE("bounds use exact ceilings")
{
    // 5n/4 - 1 at n = 6 is 13/2, so 7 is required.
    auto s = d3_extremal_set(6);
    auto c = check_claim(s, Claim::thm2);
    CHECK(c.bound == Rat(13, 2));
    CHECK(c.pass == (c.computed >= 7));
}

TEST_CASE("the 1,2,3,5 bound at the three-window sets")
{
    // Frozen: the d3 extremal sets reach n + 3, one short of n + 4.
    for (int n = 6; n <= 20; ++n) {
        auto c = check_claim(d3_extremal_set(n), Claim::rem_1235);
        CHECK(c.computed == n + 3);
        CHECK_FALSE(c.pass);
        CHECK(oracle::diffs(vals(d3_extremal_set(n)), {1, 2, 3, 5}).size() == static_cast<std::size_t>(n + 3));
    }
}

TEST_CASE("growth scan")
{
    auto s = d3_extremal_set(12);
    auto rows = growth_scan(s, {1, 11});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].observed == 11);
    CHECK(rows[1].observed == static_cast<int>(oracle::diffs(vals(s), {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}).size()));
    CHECK(rows[1].reference == doctest::Approx(std::pow(11.0, 1.5)));

    auto big = growth_scan(d3_extremal_set(64), {4, 9, 16, 25, 36});
    for (std::size_t r = 1; r < big.size(); ++r)
        CHECK(big[r].observed >= big[r - 1].observed);

    auto floored = growth_scan(s, {2}, 100.0);
    CHECK_FALSE(floored[0].above_floor);
    CHECK_THROWS_AS(growth_scan(s, {0}), RangeError);
    CHECK_THROWS_AS(growth_scan(s, {12}), RangeError);
}

TEST_CASE("block sumsets")
{
    CHECK(sum_blocks_check(fibonacci_set(9).values(), 3));
    CHECK(sum_blocks_check(d3_extremal_set(12).values(), 4));
    CHECK_THROWS_AS(sum_blocks_check(fibonacci_set(7).values(), 4), ApplicabilityError);
    CHECK_THROWS_AS(sum_blocks_check(fibonacci_set(7).values(), 1), ApplicabilityError);
    // Non-convex input is only probed, never asserted.
    (void)sum_blocks_check(oracle::rats({0, 1, 2, 3, 4, 5}), 3);
    CHECK(sum_blocks_check(oracle::rats({0, 1, 2, 3, 4, 5}), 3) == oracle::blocks_disjoint(oracle::rats({0, 1, 2, 3, 4, 5}), 3));
}

TEST_CASE("block sumsets agree with the oracle")
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 150; ++t) {
        int n = 4 + static_cast<int>(rng() % 20);
        auto s = random_convex(n, 1 + static_cast<std::int64_t>(rng() % 30), rng());
        for (int i = 2; 2 * i <= n; ++i) {
            bool mine = sum_blocks_check(s.values(), i);
            CHECK(mine == oracle::blocks_disjoint(vals(s), i));
            CHECK(mine);
        }
    }
}

TEST_CASE("incidence counting")
{
    auto f = incidence_check(fibonacci_set(10), 2);
    CHECK(f.bound == 100);
    CHECK(f.incidences >= 100);
    CHECK(f.pass);
    CHECK(incidence_check(d3_extremal_set(12), 3).pass);
    CHECK_THROWS_AS(incidence_check(fibonacci_set(10), 1), ApplicabilityError);
    CHECK_THROWS_AS(incidence_check(fibonacci_set(10), 6), ApplicabilityError);
    CHECK(incidence_floor(10, 2) == 100);
    CHECK(incidence_floor(7, 3) == 7 * (3 + 3 + 3));
}

TEST_CASE("incidence counts agree with the point-set oracle")
{
    std::mt19937_64 rng(8);
    std::vector<ConvexSequence> corpus{fibonacci_set(9), d3_extremal_set(11), random_convex(12, 3, 1)};
    for (int t = 0; t < 20; ++t)
        corpus.push_back(random_convex(4 + static_cast<int>(rng() % 10), 1 + static_cast<std::int64_t>(rng() % 4), rng()));
    for (const auto& s : corpus) {
        int n = static_cast<int>(s.size());
        for (int i = 2; i <= n / 2; ++i) {
            auto serial = incidence_check_serial(s, i);
            auto parallel = incidence_check(s, i, 3);
            CHECK(serial.incidences == oracle::incidences(vals(s), i));
            CHECK(parallel.incidences == serial.incidences);
            CHECK(serial.pass);
        }
    }
}

TEST_CASE("report runs")
{
    SUBCASE("default configuration passes")
    {
        auto r = run_report(default_report_config());
        CHECK(r.ok());
        CHECK(r.failed == 0);
        CHECK(r.errors == 0);
        CHECK(r.passed > 1000);
        CHECK(r.findings == 45);
        for (const auto& sc : r.scans)
            CHECK(sc.monotone);
    }
    SUBCASE("non-convex input yields an error row and the run continues")
    {
        auto cfg = nlohmann::json::parse(R"({"rows": [
            {"check": "claim", "claims": ["thm1"], "family": "values", "values": [0, 1, 2, 3, 4, 5], "n": 6, "allow_nonconvex": true},
            {"check": "sum_blocks", "family": "values", "values": [0, 1, 2, 3, 4, 5], "n": 6, "i": [3], "allow_nonconvex": true},
            {"check": "claim", "claims": ["thm1"], "family": "fibonacci", "n": 6}
        ]})");
        auto r = run_report(cfg);
        REQUIRE(r.rows.size() == 3);
        CHECK(r.rows[0].error.has_value());
        CHECK(r.errors >= 1);
        CHECK(r.rows[2].pass);
    }
    SUBCASE("zero samples")
    {
        auto cfg = nlohmann::json::parse(R"({"rows": [
            {"check": "claim", "claims": ["thm2"], "family": "random", "n": [5, 30], "samples": 0}
        ]})");
        auto r = run_report(cfg);
        CHECK(r.rows.empty());
        CHECK(r.ok());
    }
    SUBCASE("malformed configuration")
    {
        CHECK_THROWS_AS(run_report(nlohmann::json::parse(R"({"rows": 3})")), FormatError);
        CHECK_THROWS_AS(run_report(nlohmann::json::parse(R"({"rows": [{"check": "nope", "family": "fibonacci", "n": 5}]})")), FormatError);
        CHECK_THROWS_AS(run_report(nlohmann::json::parse(R"({"rows": [{"check": "claim", "claims": ["thm1"], "family": "fibonacci", "n": "x"}]})")), FormatError);
    }
    SUBCASE("deterministic across worker counts")
    {
        auto cfg = nlohmann::json::parse(R"({"rows": [
            {"check": "claim", "claims": ["thm1", "thm2"], "family": "random", "n": [5, 20], "samples": 50, "seed": 9},
            {"check": "incidence", "family": "fibonacci", "n": [4, 16], "i": "all"},
            {"check": "scan", "family": "theorem1", "n": [10, 12], "i": [1, 2, 3, 4]}
        ]})");
        auto a = run_report(cfg, 1);
        auto b = run_report(cfg, 3);
        CHECK(report_json(a) == report_json(b));
        CHECK(report_csv(a) == report_csv(b));
        CHECK(report_text(a) == report_text(b));
    }
}
