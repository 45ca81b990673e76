#include "oracles.hpp"

#include <cvxdiff/constructions.hpp>
#include <cvxdiff/sequence.hpp>
#include <cvxdiff/sequence_io.hpp>

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace cvxdiff;

namespace {

ConvexSequence seq(std::vector<std::int64_t> v)
{
    return ConvexSequence::from_integers(std::span<const std::int64_t>(v));
}

std::vector<Rat> vals(const DiffSet& d)
{
    return {d.values().begin(), d.values().end()};
}

std::vector<Rat> vals(const std::set<Rat>& d)
{
    return {d.begin(), d.end()};
}

} // namespace

TEST_CASE("rationals parse and format exactly")
{
    CHECK(parse_rat("3") == Rat(3));
    CHECK(parse_rat("-7/2") == Rat(-7, 2));
    CHECK(format_rat(Rat(10, 4)) == "5/2");
    CHECK(format_rat(Rat(-6)) == "-6");
    CHECK_THROWS_AS(parse_rat("4/6"), FormatError);
    CHECK_THROWS_AS(parse_rat("1/0"), FormatError);
    CHECK_THROWS_AS(parse_rat("1/-2"), FormatError);
    CHECK_THROWS_AS(parse_rat("x"), FormatError);
    CHECK_THROWS_AS(parse_rat(""), FormatError);
    CHECK(ceil_rat(Rat(21, 4)) == 6);
    CHECK(ceil_rat(Rat(-3, 2)) == -1);
    CHECK(floor_rat(Rat(-3, 2)) == -2);
    CHECK(ceil_rat(Rat(5)) == 5);
}

TEST_CASE("convex sequences reject bad input")
{
    CHECK_NOTHROW(seq({0, 1, 3}));
    CHECK_NOTHROW(seq({4, 9}));
    CHECK_THROWS_AS(seq({5}), RangeError);
    try {
        seq({0, 1, 2, 4});
        FAIL("accepted equal gaps");
    } catch (const ConvexityError& e) {
        CHECK(e.index() == 2);
    }
    try {
        seq({0, 3, 2});
        FAIL("accepted a decrease");
    } catch (const ConvexityError& e) {
        CHECK(e.index() == 2);
    }
    CHECK(first_convexity_violation(oracle::rats({0, 2, 3})) == std::optional<std::size_t>(2));
    auto s = seq({0, 1, 3, 6});
    CHECK(s.prefix(3) == seq({0, 1, 3}));
    CHECK_THROWS(s.prefix(1));
    CHECK_THROWS(s.prefix(5));
}

TEST_CASE("gaps")
{
    CHECK(gaps(seq({0, 10, 23, 40})) == oracle::rats({10, 13, 17}));
    CHECK(gaps(seq({0, 1, 3})) == oracle::rats({1, 2}));
    CHECK(gaps(seq({3, 5, 8, 13, 21})) == oracle::rats({2, 3, 5, 8}));
}

TEST_CASE("k-convexity and convexity order")
{
    auto fib = seq({3, 5, 8, 13, 21});
    CHECK(is_k_convex(fib, 2));
    CHECK_FALSE(is_k_convex(fib, 3));
    CHECK(is_k_convex(seq({0, 1, 3}), 1));
    CHECK(convexity_order(fib) == ConvexityOrder{false, 2});
    CHECK(convexity_order(seq({0, 10, 23, 40, 63, 93, 133, 186, 256, 349})) == ConvexityOrder{false, 2});
    CHECK(convexity_order(seq({0, 1, 3})).saturated);
    CHECK_FALSE(is_k_convex(oracle::rats({0, 2, 1}), 1));
}

TEST_CASE("local differences")
{
    auto fib = seq({3, 5, 8, 13, 21});
    CHECK(vals(local_diffs(fib, OffsetSet::upto(2))) == oracle::rats({2, 3, 5, 8, 13}));
    CHECK(vals(local_diffs(seq({0, 1, 3}), OffsetSet::upto(1))) == oracle::rats({1, 2}));
    CHECK(local_diffs(seq({0, 10, 23, 40, 63}), OffsetSet::upto(3)).size() == 7);
    CHECK_THROWS_AS(local_diffs(fib, OffsetSet::upto(5)), RangeError);
}

TEST_CASE("restricted differences")
{
    auto fib = seq({3, 5, 8, 13, 21});
    CHECK(restricted_diffs(fib, PairGraph{}).empty());
    CHECK(restricted_diffs(fib, PairGraph::offset_pairs(5, 1)) == local_diffs(fib, OffsetSet::upto(1)));
    auto all = restricted_diffs(fib, PairGraph::all_pairs(5));
    CHECK(vals(all) == oracle::rats({2, 3, 5, 8, 10, 13, 16, 18}));
    PairGraph g;
    g.add(6, 1);
    CHECK_THROWS_AS(restricted_diffs(fib, g), RangeError);
    PairGraph bad;
    CHECK_THROWS_AS(bad.add(2, 2), RangeError);
    CHECK_THROWS_AS(bad.add(1, 3), RangeError);
    CHECK_THROWS_AS(bad.add(2, 0), RangeError);
    bad.add(3, 1);
    bad.add(3, 1);
    CHECK(bad.size() == 1);
}

TEST_CASE("local sums")
{
    auto fib = seq({3, 5, 8, 13, 21});
    CHECK(vals(local_sums(fib, 1)) == oracle::rats({8, 13, 21, 34}));
    CHECK(vals(local_sums(seq({0, 1, 3}), 1)) == oracle::rats({1, 4}));
    CHECK(vals(local_sums(fib, 4)) == vals(oracle::sums(oracle::rats({3, 5, 8, 13, 21}), 4)));
    CHECK(local_sums(fib, 4).size() == 10);
    CHECK_THROWS_AS(local_sums(fib, 0), RangeError);
    CHECK_THROWS_AS(local_sums(fib, 5), RangeError);
}

TEST_CASE("offset sets")
{
    CHECK(OffsetSet::parse("1,2,4").offsets() == std::vector<int>{1, 2, 4});
    CHECK(OffsetSet::parse("1..4") == OffsetSet::upto(4));
    CHECK(OffsetSet::parse("4,1,1") == OffsetSet::from({1, 4}));
    CHECK_THROWS_AS(OffsetSet::parse("0..3"), RangeError);
    CHECK_THROWS_AS(OffsetSet::parse("1,,2"), FormatError);
    CHECK_THROWS_AS(OffsetSet::parse("3..1"), FormatError);
    CHECK_THROWS_AS(OffsetSet::parse("a"), FormatError);
    CHECK_THROWS_AS(OffsetSet::from({}), RangeError);
    CHECK(OffsetSet::upto(2).is_subset_of(OffsetSet::upto(3)));
    CHECK_FALSE(OffsetSet::from({1, 5}).is_subset_of(OffsetSet::upto(3)));
    CHECK(OffsetSet::parse(OffsetSet::from({1, 2, 3, 5}).to_string()) == OffsetSet::from({1, 2, 3, 5}));
}

TEST_CASE("diff set algebra")
{
    auto a = DiffSet::from_unsorted(oracle::rats({5, 1, 3, 3}));
    auto b = DiffSet::from_unsorted(oracle::rats({3, 4}));
    CHECK(a.size() == 3);
    CHECK(vals(a.set_union(b)) == oracle::rats({1, 3, 4, 5}));
    CHECK(vals(a.set_difference(b)) == oracle::rats({1, 5}));
    CHECK(vals(a.set_intersection(b)) == oracle::rats({3}));
    CHECK(a.contains(Rat(5)));
    CHECK_FALSE(a.contains(Rat(2)));
    CHECK(DiffSet::from_unsorted(oracle::rats({1, 3})).is_subset_of(a));
}

TEST_CASE("sequence json round trip")
{
    std::vector<Rat> v{Rat(0), Rat(1, 2), Rat(2), Rat(BigInt("123456789012345678901234567890"))};
    auto doc = sequence_to_json(v);
    CHECK(doc["values"][1] == "1/2");
    CHECK(doc["values"][3].is_string());
    CHECK(doc["values"][2] == 2);
    CHECK(sequence_values_from_json(doc) == v);
    CHECK_THROWS_AS(sequence_values_from_json(nlohmann::json::parse(R"({"values":[0,2,3]})")), ConvexityError);
    CHECK(sequence_values_from_json(nlohmann::json::parse(R"({"values":[0,2,3]})"), true).size() == 3);
    CHECK_THROWS_AS(sequence_values_from_json(nlohmann::json::parse(R"({"values":[0,1.5,3]})")), FormatError);
    CHECK_THROWS_AS(sequence_values_from_json(nlohmann::json::parse(R"({"vals":[0,1,3]})")), FormatError);

    auto path = std::filesystem::temp_directory_path() / "cvxdiff_seq_roundtrip.json";
    write_sequence_file(path, v);
    CHECK(read_sequence_file(path) == v);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_sequence_file("/nonexistent/dir/x.json"), IoError);
}

// Property tests over random sequences, checked against the oracles.

TEST_CASE("local_diffs agrees with the pair-loop oracle")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        int n = 3 + static_cast<int>(rng() % 18);
        auto s = random_convex(n, 1 + static_cast<std::int64_t>(rng() % 20), rng());
        std::vector<Rat> v(s.values().begin(), s.values().end());
        std::vector<int> offs;
        for (int j = 1; j < n; ++j)
            if (rng() % 2)
                offs.push_back(j);
        if (offs.empty())
            offs.push_back(1);
        CHECK(vals(local_diffs(s, OffsetSet::from(offs))) == vals(oracle::diffs(v, offs)));
    }
}

TEST_CASE("affine images keep every count")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        int n = 5 + static_cast<int>(rng() % 10);
        auto s = random_convex(n, 30, rng());
        Rat scale(1 + static_cast<int>(rng() % 7), 1 + static_cast<int>(rng() % 5));
        Rat shift(static_cast<int>(rng() % 41) - 20, 3);
        auto image = affine_image(s, scale, shift);
        for (int i = 1; i < n; ++i)
            CHECK(local_diffs(image, OffsetSet::upto(i)).size() == local_diffs(s, OffsetSet::upto(i)).size());
        CHECK(convexity_order(image) == convexity_order(s));
    }
    CHECK_THROWS(affine_image(seq({0, 1, 3}), Rat(0), Rat(1)));
}

TEST_CASE("counts grow with the offset set and the full range is S-S")
{
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        int n = 3 + static_cast<int>(rng() % 15);
        auto s = random_convex(n, 25, rng());
        std::size_t prev = 0;
        for (int i = 1; i < n; ++i) {
            auto d = local_diffs(s, OffsetSet::upto(i));
            CHECK(d.size() >= prev);
            prev = d.size();
        }
        CHECK(local_diffs(s, OffsetSet::upto(n - 1)) == restricted_diffs(s, PairGraph::all_pairs(s.size())));
        CHECK(local_diffs(s, OffsetSet::upto(1)).size() == static_cast<std::size_t>(n - 1));
    }
}

TEST_CASE("is_k_convex agrees with the binomial difference oracle")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 400; ++t) {
        int n = 2 + static_cast<int>(rng() % 10);
        std::vector<Rat> v;
        std::int64_t x = 0;
        for (int i = 0; i < n; ++i) {
            x += static_cast<std::int64_t>(rng() % 30);
            v.emplace_back(x);
        }
        for (int k = 1; k <= 4; ++k)
            CHECK(is_k_convex(v, k) == oracle::k_convex(v, k));
    }
    for (int t = 0; t < 100; ++t) {
        int k = 1 + static_cast<int>(rng() % 3);
        auto s = random_k_convex(4 + static_cast<int>(rng() % 10), 9, k, rng());
        std::vector<Rat> v(s.values().begin(), s.values().end());
        CHECK(oracle::k_convex(v, k));
    }
}
