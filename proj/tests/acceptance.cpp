// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <cvxdiff/certificate_io.hpp>
#include <cvxdiff/constructions.hpp>
#include <cvxdiff/solver.hpp>
#include <cvxdiff/verify.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef CVXDIFF_DATA_DIR
#error "CVXDIFF_DATA_DIR must point at the data/ directory"
#endif

using namespace cvxdiff;

namespace {

struct Outcome
{
    bool pass = true;
    std::ostringstream notes;
    int failures = 0;

    void fail(const std::string& what)
    {
        pass = false;
        if (failures++ < 5)
            notes << (failures > 1 ? "; " : "") << what;
    }
};

std::optional<MinResult> solve(std::size_t n, const OffsetSet& I, int k, Outcome& o, std::optional<double> seconds = {})
{
    SolverOptions opt;
    opt.convexity_k = k;
    opt.budget.seconds = seconds;
    auto out = minimize_distinct(n, I, opt);
    if (out.status != MinOutcome::Status::solved) {
        o.fail("budget exhausted at n=" + std::to_string(n) + " I={" + I.to_string() + "}");
        return std::nullopt;
    }
    return out.result;
}

std::string cell(std::size_t n, const OffsetSet& I, int k)
{
    return "n=" + std::to_string(n) + " I={" + I.to_string() + "} k=" + std::to_string(k);
}

// Sequences the property criteria run over.
std::vector<std::pair<std::string, ConvexSequence>> corpus()
{
    std::vector<std::pair<std::string, ConvexSequence>> out;
    for (int n = 4; n <= 40; ++n)
        out.emplace_back("fibonacci/" + std::to_string(n), fibonacci_set(n));
    for (int n = 5; n <= 50; ++n)
        out.emplace_back("theorem1/" + std::to_string(n), d3_extremal_set(n));
    auto s32 = recurrence_set(lag236_seed_search(40, 200));
    for (int n = 12; n <= 40; ++n)
        out.emplace_back("section32/" + std::to_string(n), s32.prefix(static_cast<std::size_t>(n)));
    for (std::uint64_t t = 0; t < 100; ++t)
        out.emplace_back("random/" + std::to_string(t), random_convex(8 + static_cast<int>(t % 33), 100, 500 + t));
    for (std::uint64_t t = 0; t < 50; ++t)
        out.emplace_back("random2/" + std::to_string(t), random_k_convex(8 + static_cast<int>(t % 33), 20, 2, 900 + t));
    return out;
}

void criterion1(Outcome& o)
{
    for (std::size_t n = 3; n <= 8; ++n) {
        for (int i : {1, 2}) {
            auto I = OffsetSet::upto(i);
            auto r = solve(n, I, 1, o);
            if (!r)
                continue;
            int expected = i == 1 ? static_cast<int>(n) - 1 : static_cast<int>(n);
            if (r->value != expected)
                o.fail(cell(n, I, 1) + " gave " + std::to_string(r->value));
            if (!verify_certificate(*r, n, I, 1))
                o.fail(cell(n, I, 1) + " certificate rejected");
        }
    }
    o.notes << (o.pass ? "D_1(n)=n-1, D_2(n)=n for n=3..8" : "");
}

void criterion2(Outcome& o)
{
    const auto I = OffsetSet::upto(3);
    for (std::size_t n = 5; n <= 7; ++n) {
        auto r = solve(n, I, 1, o);
        if (!r)
            continue;
        const int v = static_cast<int>(n) + 2;
        if (r->value != v)
            o.fail(cell(n, I, 1) + " gave " + std::to_string(r->value));
        if (!verify_certificate(*r, n, I, 1))
            o.fail(cell(n, I, 1) + " certificate rejected");
        // Round trip through JSON so that the stored form is what verifies.
        auto again = certificate_from_json(certificate_to_json(r->certificate));
        if (!verify_certificate(again))
            o.fail(cell(n, I, 1) + " serialized certificate rejected");
        for (int count : {v - 2, v - 1}) {
            bool found = false;
            for (const auto& log : r->certificate.exhaustion)
                found = found || log.class_count == count;
            if (!found)
                o.fail(cell(n, I, 1) + " has no exhaustion log for " + std::to_string(count) + " classes");
        }
    }
    o.notes << (o.pass ? "D_3(n)=n+2 for n=5,6,7 with exhaustion of n and n+1 classes" : "");
}

void criterion3(Outcome& o)
{
    const auto I = OffsetSet::upto(3);
    for (std::size_t n = 5; n <= 6; ++n) {
        auto r = solve(n, I, 2, o);
        if (!r)
            continue;
        if (r->value != static_cast<int>(n) + 2)
            o.fail(cell(n, I, 2) + " gave " + std::to_string(r->value));
        if (!verify_certificate(*r, n, I, 2))
            o.fail(cell(n, I, 2) + " certificate rejected");
    }
    o.notes << (o.pass ? "D_3^2(n)=n+2 for n=5,6" : "");
}

void criterion4(Outcome& o)
{
    const auto I = OffsetSet::upto(4);
    std::ostringstream values;
    for (std::size_t n = 5; n <= 6; ++n) {
        const Rat lo_exact = Rat(5, 4) * static_cast<long>(n) - 1;
        const int lo = static_cast<int>(ceil_rat(lo_exact));
        const int hi = 2 * static_cast<int>(n) - 2;

        SolverOptions opt;
        opt.budget.seconds = 30 * 60;
        auto out = minimize_distinct(n, I, opt);
        if (out.status == MinOutcome::Status::budget_exhausted) {
            if (out.lower > hi || out.upper < lo || out.upper > hi)
                o.fail(cell(n, I, 1) + " bracket [" + std::to_string(out.lower) + "," + std::to_string(out.upper) +
                       "] outside the range");
            values << " n=" << n << ":[" << out.lower << "," << out.upper << "]";
            continue;
        }
        const auto& r = *out.result;
        if (r.value < lo || r.value > hi)
            o.fail(cell(n, I, 1) + " value " + std::to_string(r.value) + " outside [" + std::to_string(lo) + "," +
                   std::to_string(hi) + "]");
        if (!verify_certificate(r, n, I, 1))
            o.fail(cell(n, I, 1) + " certificate rejected");

        auto datum = std::filesystem::path(CVXDIFF_DATA_DIR) / ("d4_n" + std::to_string(n) + ".json");
        try {
            auto stored = read_certificate_file(datum);
            if (!verify_certificate(stored))
                o.fail(datum.filename().string() + " does not verify");
            if (stored.value != r.value || stored.n != n || !(stored.offsets == I) || stored.convexity_k != 1)
                o.fail(datum.filename().string() + " disagrees with the solver");
        }
        catch (const std::exception& e) {
            o.fail(datum.filename().string() + ": " + e.what());
        }
        values << " D_4(" << n << ")=" << r.value;
    }
    o.notes << (o.pass ? "in [ceil(5n/4-1), 2n-2];" + values.str() + " (stored data verify)" : "");
}

void criterion5(Outcome& o)
{
    const auto I3 = OffsetSet::upto(3), I4 = OffsetSet::upto(4);
    for (int n = 5; n <= 50; ++n) {
        auto s = d3_extremal_set(n);
        if (local_diffs(s, I3).size() != static_cast<std::size_t>(n + 2))
            o.fail("theorem1_set(" + std::to_string(n) + ") |D_3| != n+2");
        if (!is_k_convex(s, 2))
            o.fail("theorem1_set(" + std::to_string(n) + ") not 2-convex");
        if (local_diffs(s, I4).size() > static_cast<std::size_t>(2 * n - 2))
            o.fail("theorem1_set(" + std::to_string(n) + ") |D_4| > 2n-2");
    }
    // D_2 counts every difference s_x - s_y with 1 <= x - y <= 2 that the
    // sequence has; at n = 2 only x - y = 1 exists.
    for (int n = 2; n <= 40; ++n) {
        auto s = fibonacci_set(n);
        PairGraph g;
        for (int x = 2; x <= n; ++x)
            for (int y = std::max(1, x - 2); y < x; ++y)
                g.add(x, y);
        auto count = restricted_diffs(s, g).size();
        if (count != static_cast<std::size_t>(n))
            o.fail("fibonacci_set(" + std::to_string(n) + ") |D_2| = " + std::to_string(count) + ", expected " +
                   std::to_string(n));
    }
    if (o.pass)
        o.notes << "theorem1_set n=5..50 and fibonacci_set n=2..40";
}

void criterion6(Outcome& o)
{
    const auto I = OffsetSet::from({2, 3, 4});
    std::optional<long> constant;
    for (int n = 12; n <= 40; ++n) {
        auto s = recurrence_set(lag236_seed_search(n, 200));
        long c = static_cast<long>(local_diffs(s, I).size()) - n;
        if (!constant)
            constant = c;
        else if (c != *constant)
            o.fail("n=" + std::to_string(n) + " gives C=" + std::to_string(c) + ", n=12 gave " +
                   std::to_string(*constant));
    }
    if (o.pass)
        o.notes << "|D_{2,3,4}(S_n)| - n = " << *constant << " for n=12..40";
}

void criterion7(Outcome& o)
{
    int checks = 0;
    for (std::uint64_t t = 0; t < 10000; ++t) {
        int n = 5 + static_cast<int>(t % 26);
        auto s = random_convex(n, 100, 10'000'000 + t);
        for (Claim c : {Claim::thm1, Claim::thm2, Claim::rem_124}) {
            ++checks;
            auto b = check_claim(s, c);
            if (!b.pass)
                o.fail(claim_name(c) + " on random_convex(" + std::to_string(n) + ",100," + std::to_string(t) + ")");
        }
    }
    for (std::uint64_t t = 0; t < 1000; ++t) {
        int n = 5 + static_cast<int>(t % 26);
        auto s = random_k_convex(n, 20, 2, 20'000'000 + t);
        ++checks;
        if (!check_claim(s, Claim::thm3_2convex).pass)
            o.fail("thm3_2convex on a 2-convex sample, t=" + std::to_string(t));
    }
    if (o.pass)
        o.notes << checks << " bound checks, 0 violations";
}

void criterion8(Outcome& o)
{
    int cells = 0;
    for (std::size_t n = 2; n <= 6; ++n)
        for (int top = 1; top <= 3; ++top) {
            if (static_cast<std::size_t>(top) > n - 1)
                continue;
            auto I = OffsetSet::upto(top);
            auto exact = solve(n, I, 1, o);
            if (!exact)
                continue;
            auto brute = brute_force_min(n, I, 200);
            ++cells;
            if (brute.value != exact->value)
                o.fail(cell(n, I, 1) + ": brute " + std::to_string(brute.value) + " vs solver " +
                       std::to_string(exact->value));
        }
    if (o.pass)
        o.notes << cells << " cells agree (max_last=200)";
}

void criterion9(Outcome& o)
{
    int checks = 0;
    auto run = [&](const std::string& name, const ConvexSequence& s) {
        int n = static_cast<int>(s.size());
        for (int i = 2; i <= n / 2; ++i) {
            ++checks;
            auto r = incidence_check(s, i);
            if (!r.pass)
                o.fail(name + " i=" + std::to_string(i) + ": " + std::to_string(r.incidences) + " < " +
                       std::to_string(r.bound));
        }
    };
    for (int n = 5; n <= 40; ++n)
        run("theorem1_set(" + std::to_string(n) + ")", d3_extremal_set(n));
    for (int n = 4; n <= 40; ++n)
        run("fibonacci_set(" + std::to_string(n) + ")", fibonacci_set(n));
    if (o.pass)
        o.notes << checks << " incidence floors met";
}

void criterion10(Outcome& o)
{
    int scans = 0, floors = 0;
    for (const auto& [name, s] : corpus()) {
        int n = static_cast<int>(s.size());
        std::vector<int> is;
        for (int i = 1; i < n; ++i)
            is.push_back(i);
        auto rows = growth_scan(s, is);
        ++scans;
        for (std::size_t r = 1; r < rows.size(); ++r)
            if (rows[r].observed < rows[r - 1].observed)
                o.fail(name + " column drops at i=" + std::to_string(rows[r].i));
        for (int i = 2; i <= n / 2; ++i) {
            ++floors;
            if (!incidence_check(s, i).pass)
                o.fail(name + " incidence floor at i=" + std::to_string(i));
        }
    }
    if (o.pass)
        o.notes << scans << " monotone scans, " << floors << " incidence floors";
}

void criterion11(Outcome& o)
{
    int checks = 0;
    for (const auto& [name, s] : corpus())
        for (int i : {2, 3, 4}) {
            if (s.size() < static_cast<std::size_t>(2 * i))
                continue;
            ++checks;
            if (!sum_blocks_check(s.values(), i))
                o.fail(name + " i=" + std::to_string(i));
        }
    if (o.pass)
        o.notes << checks << " block decompositions disjoint";
}

} // namespace

int main()
{
    const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                              criterion5, criterion6, criterion7, criterion8,
                                                              criterion9, criterion10, criterion11};
    int failed = 0;
    for (std::size_t c = 0; c < criteria.size(); ++c) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[c](o);
        }
        catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass)
            ++failed;
        std::cout << "criterion " << (c + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  (" << o.notes.str() << ") ["
                  << std::fixed;
        std::cout.precision(2);
        std::cout << secs << "s]" << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criterion(s) failed" : std::string("all criteria pass")) << '\n';
    return failed ? 1 : 0;
}
