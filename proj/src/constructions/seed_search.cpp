#include <cvxdiff/constructions.hpp>

#include <array>

namespace cvxdiff {

namespace {

constexpr std::size_t kSeedCount = 6;

enum class Verdict { convex, broken, overflow };

// Continuation of s_j = s_{j-2} + s_{j-3} - s_{j-6} in 64-bit arithmetic.
// On overflow the caller falls back to the exact recurrence.
Verdict stays_convex(const std::array<std::int64_t, kSeedCount>& seeds, int n, std::vector<std::int64_t>& buf)
{
    buf.assign(seeds.begin(), seeds.end());
    for (int j = static_cast<int>(kSeedCount); j < n; ++j) {
        auto i = static_cast<std::size_t>(j);
        std::int64_t v = 0;
        if (__builtin_add_overflow(buf[i - 2], buf[i - 3], &v) || __builtin_sub_overflow(v, buf[i - 6], &v))
            return Verdict::overflow;
        std::int64_t gap = v - buf[i - 1];
        std::int64_t prev_gap = buf[i - 1] - buf[i - 2];
        if (gap <= prev_gap)
            return Verdict::broken;
        buf.push_back(v);
    }
    return Verdict::convex;
}

RecurrenceSpec make_spec(const std::array<std::int64_t, kSeedCount>& seeds, int n)
{
    RecurrenceSpec spec;
    for (auto v : seeds)
        spec.seeds.emplace_back(v);
    spec.terms = lag236_terms();
    spec.length = n;
    return spec;
}

} // namespace

RecurrenceSpec lag236_seed_search(int n, std::int64_t seed_bound)
{
    if (n < 10)
        throw RangeError("the lag-(2,3,6) seed search needs n >= 10");
    if (seed_bound < 0)
        throw RangeError("seed bound must be nonnegative");

    std::array<std::int64_t, kSeedCount> s{};
    std::vector<std::int64_t> buf;
    buf.reserve(static_cast<std::size_t>(n));

    // Lexicographic over s_1 < ... < s_6 with increasing gaps; each loop
    // starts at the smallest value that keeps the prefix convex. Tuples with
    // s_1 > 0 translate ones with s_1 = 0 already tried, so s_1 stays 0.
    s[0] = 0;
    {
        for (s[1] = s[0] + 1; s[1] <= seed_bound; ++s[1])
            for (s[2] = 2 * s[1] - s[0] + 1; s[2] <= seed_bound; ++s[2])
                for (s[3] = 2 * s[2] - s[1] + 1; s[3] <= seed_bound; ++s[3])
                    for (s[4] = 2 * s[3] - s[2] + 1; s[4] <= seed_bound; ++s[4])
                        for (s[5] = 2 * s[4] - s[3] + 1; s[5] <= seed_bound; ++s[5]) {
                            auto verdict = stays_convex(s, n, buf);
                            if (verdict == Verdict::broken)
                                continue;
                            auto spec = make_spec(s, n);
                            try {
                                (void)recurrence_set(spec);
                            }
                            catch (const ConstructionError&) {
                                continue;
                            }
                            return spec;
                        }
    }
    throw SearchExhausted("no lag-(2,3,6) seeds in [0, " + std::to_string(seed_bound) +
                          "] stay convex up to length " + std::to_string(n));
}

} // namespace cvxdiff
