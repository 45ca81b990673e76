#include <cvxdiff/constructions.hpp>
#include <cvxdiff/solver.hpp>

#include <omp.h>

#include <algorithm>
#include <exception>
#include <stdexcept>

namespace cvxdiff {

namespace {

struct SliceBest
{
    int value = -1;
    std::vector<std::int64_t> gaps;
};

int count_distinct(std::span<const std::int64_t> gaps, const std::vector<int>& offsets, std::vector<std::int64_t>& prefix,
                   std::vector<std::int64_t>& diffs)
{
    prefix.assign(1, 0);
    for (auto g : gaps)
        prefix.push_back(prefix.back() + g);
    diffs.clear();
    const auto n = prefix.size();
    for (int j : offsets)
        for (std::size_t y = 0; y + static_cast<std::size_t>(j) < n; ++y)
            diffs.push_back(prefix[y + static_cast<std::size_t>(j)] - prefix[y]);
    std::sort(diffs.begin(), diffs.end());
    return static_cast<int>(std::unique(diffs.begin(), diffs.end()) - diffs.begin());
}

SliceBest scan(int n, std::int64_t max_last, std::optional<std::int64_t> first_gap, const std::vector<int>& offsets)
{
    IntegerConvexEnumerator it(n, max_last, first_gap);
    SliceBest best;
    std::vector<std::int64_t> prefix, diffs;
    for (auto g = it.next_gaps(); !g.empty(); g = it.next_gaps()) {
        int c = count_distinct(g, offsets, prefix, diffs);
        if (best.value < 0 || c < best.value) {
            best.value = c;
            best.gaps.assign(g.begin(), g.end());
        }
    }
    return best;
}

BruteForceResult to_result(const SliceBest& best)
{
    if (best.value < 0)
        throw std::domain_error("no integer convex sequence fits under max_last");
    std::vector<std::int64_t> values{0};
    for (auto g : best.gaps)
        values.push_back(values.back() + g);
    return {best.value, ConvexSequence::from_integers<std::int64_t>(values)};
}

void check_args(std::size_t n, const OffsetSet& offsets, std::int64_t max_last)
{
    if (n < 2)
        throw RangeError("n must be at least 2");
    if (max_last < 1)
        throw RangeError("max_last must be positive");
    offsets.require_fits(n);
}

} // namespace

BruteForceResult brute_force_min_serial(std::size_t n, const OffsetSet& offsets, std::int64_t max_last)
{
    check_args(n, offsets, max_last);
    return to_result(scan(static_cast<int>(n), max_last, std::nullopt, offsets.offsets()));
}

BruteForceResult brute_force_min(std::size_t n, const OffsetSet& offsets, std::int64_t max_last, int workers)
{
    check_args(n, offsets, max_last);
    if (workers <= 1 || n < 3)
        return brute_force_min_serial(n, offsets, max_last);

    // Slice by first gap g: the smallest sequence in a slice ends at
    // g (n-1) + (n-1)(n-2)/2.
    const auto m = static_cast<std::int64_t>(n) - 1;
    std::int64_t top = 0;
    while ((top + 1) * m + m * (m - 1) / 2 <= max_last)
        ++top;
    std::vector<SliceBest> slices(static_cast<std::size_t>(top));
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t g = 1; g <= top; ++g) {
        try {
            slices[static_cast<std::size_t>(g - 1)] = scan(static_cast<int>(n), max_last, g, offsets.offsets());
        }
        catch (...) {
#pragma omp critical(cvxdiff_brute_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    SliceBest best;
    for (const auto& s : slices)
        if (s.value >= 0 && (best.value < 0 || s.value < best.value))
            best = s;
    return to_result(best);
}

} // namespace cvxdiff
