#include <cvxdiff/verify.hpp>

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace cvxdiff {

std::vector<ScanRow> growth_scan(const ConvexSequence& s, const std::vector<int>& i_values, double floor)
{
    std::vector<ScanRow> rows;
    for (int i : i_values) {
        if (i < 1 || static_cast<std::size_t>(i) > s.size() - 1)
            throw RangeError("scan offset " + std::to_string(i) + " outside [1, " + std::to_string(s.size() - 1) + "]");
        ScanRow r;
        r.i = i;
        r.observed = static_cast<int>(local_diffs(s, OffsetSet::upto(i)).size());
        r.reference = std::pow(static_cast<double>(i), 1.5);
        r.ratio = r.observed / r.reference;
        r.above_floor = r.ratio >= floor;
        rows.push_back(r);
    }
    return rows;
}

bool sum_blocks_check(std::span<const Rat> values, int i)
{
    if (i < 2)
        throw ApplicabilityError("block size must be at least 2");
    if (values.size() < 2 * static_cast<std::size_t>(i))
        throw ApplicabilityError("need n >= 2i for the block check (n = " + std::to_string(values.size()) +
                                 ", i = " + std::to_string(i) + ")");
    const std::size_t bs = static_cast<std::size_t>(i);
    const std::size_t t = values.size() / bs;

    // (value, block) for every distinct sum within each block
    std::vector<std::pair<Rat, std::size_t>> tagged;
    for (std::size_t b = 0; b < t; ++b) {
        std::vector<Rat> sums;
        for (std::size_t x = b * bs; x < (b + 1) * bs; ++x)
            for (std::size_t y = x; y < (b + 1) * bs; ++y)
                sums.push_back(values[x] + values[y]);
        std::sort(sums.begin(), sums.end());
        sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
        for (auto& v : sums)
            tagged.emplace_back(std::move(v), b);
    }
    std::sort(tagged.begin(), tagged.end());
    for (std::size_t k = 1; k < tagged.size(); ++k)
        if (tagged[k].first == tagged[k - 1].first)
            return false; // equal sums can only come from different blocks
    return true;
}

std::int64_t incidence_floor(std::size_t n, int i)
{
    const auto nn = static_cast<std::int64_t>(n);
    std::int64_t acc = 0;
    for (std::int64_t h = 1; h <= nn / 2; ++h)
        acc += std::min<std::int64_t>(i, nn - h);
    return nn * acc;
}

namespace {

void check_incidence_args(const ConvexSequence& s, int i)
{
    if (i < 2 || static_cast<std::size_t>(i) > s.size() / 2)
        throw ApplicabilityError("incidence check needs 2 <= i <= n/2 (n = " + std::to_string(s.size()) +
                                 ", i = " + std::to_string(i) + ")");
}

// Incidences on the curves with first parameter j.
std::int64_t incidences_on(const ConvexSequence& s, const DiffSet& d, int j)
{
    const auto n = static_cast<int>(s.size());
    std::int64_t count = 0;
    for (int h = 1; h <= n / 2; ++h)
        for (int x = -n; x <= n; ++x) {
            const int k = x + j;
            if (k < 1 || k > n)
                continue;
            if (d.contains(s[static_cast<std::size_t>(k - 1)] - s[static_cast<std::size_t>(h - 1)]))
                ++count;
        }
    return count;
}

} // namespace

IncidenceCount incidence_check_serial(const ConvexSequence& s, int i)
{
    check_incidence_args(s, i);
    const auto d = local_diffs(s, OffsetSet::upto(i));
    IncidenceCount out;
    for (int j = 1; j <= static_cast<int>(s.size()); ++j)
        out.incidences += incidences_on(s, d, j);
    out.bound = incidence_floor(s.size(), i);
    out.pass = out.incidences >= out.bound;
    return out;
}

IncidenceCount incidence_check(const ConvexSequence& s, int i, int workers)
{
    if (workers <= 1)
        return incidence_check_serial(s, i);
    check_incidence_args(s, i);
    const auto d = local_diffs(s, OffsetSet::upto(i));
    const int n = static_cast<int>(s.size());
    std::int64_t total = 0;

#pragma omp parallel for schedule(static) reduction(+ : total) num_threads(workers)
    for (int j = 1; j <= n; ++j)
        total += incidences_on(s, d, j);

    IncidenceCount out;
    out.incidences = total;
    out.bound = incidence_floor(s.size(), i);
    out.pass = out.incidences >= out.bound;
    return out;
}

} // namespace cvxdiff
