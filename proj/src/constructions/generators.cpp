#include <cvxdiff/constructions.hpp>

#include <algorithm>
#include <random>

namespace cvxdiff {

void RecurrenceSpec::validate() const
{
    if (terms.empty())
        throw RangeError("recurrence needs at least one term");
    int max_lag = 0;
    for (const auto& t : terms) {
        if (t.lag < 1)
            throw RangeError("recurrence lag must be positive");
        max_lag = std::max(max_lag, t.lag);
    }
    if (static_cast<int>(seeds.size()) < max_lag)
        throw RangeError("recurrence needs " + std::to_string(max_lag) + " seeds, got " +
                         std::to_string(seeds.size()));
    if (length < static_cast<int>(seeds.size()))
        throw RangeError("recurrence length " + std::to_string(length) + " is shorter than its seeds");
}

ConvexSequence fibonacci_set(int n)
{
    if (n < 2)
        throw RangeError("fibonacci_set needs n >= 2");
    // f_1 = f_2 = 1; keep f_{i+3} for i = 1..n.
    std::vector<Rat> fib{Rat(1), Rat(1)};
    while (static_cast<int>(fib.size()) < n + 3)
        fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    return ConvexSequence::from_values(std::vector<Rat>(fib.begin() + 3, fib.end()));
}

RecurrenceSpec d3_extremal_spec(int n)
{
    if (n < 5)
        throw RangeError("the three-window extremal set needs n >= 5");
    return RecurrenceSpec{
        {Rat(0), Rat(10), Rat(23), Rat(40)},
        {{1, Rat(1)}, {2, Rat(1)}, {4, Rat(-1)}},
        n,
    };
}

ConvexSequence d3_extremal_set(int n)
{
    return recurrence_set(d3_extremal_spec(n));
}

ConvexSequence recurrence_set(const RecurrenceSpec& spec)
{
    spec.validate();
    std::vector<Rat> s(spec.seeds.begin(), spec.seeds.end());
    s.reserve(static_cast<std::size_t>(spec.length));
    while (static_cast<int>(s.size()) < spec.length) {
        Rat next = 0;
        for (const auto& t : spec.terms)
            next += t.coefficient * s[s.size() - static_cast<std::size_t>(t.lag)];
        s.push_back(std::move(next));
    }
    if (auto bad = first_convexity_violation(s))
        throw ConstructionError("recurrence output is not convex at index " + std::to_string(*bad), *bad);
    if (s.size() < 2)
        throw RangeError("recurrence produced fewer than two values");
    return ConvexSequence::from_values(std::move(s));
}

std::vector<RecurrenceTerm> lag236_terms()
{
    return {{2, Rat(1)}, {3, Rat(1)}, {6, Rat(-1)}};
}

ConvexSequence random_k_convex(int n, std::int64_t magnitude, int k, std::uint64_t seed)
{
    if (n < 2)
        throw RangeError("random sequences need n >= 2");
    if (magnitude < 1)
        throw RangeError("magnitude must be at least 1");
    if (k < 1)
        throw RangeError("convexity order must be at least 1");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> draw(1, magnitude);

    // Build the difference table top-down: row j holds the order-j
    // differences. Rows 1..k start at a drawn value; row k+1 is drawn whole.
    const int top = std::min(k + 1, n - 1);
    std::vector<BigInt> starts(static_cast<std::size_t>(top) + 1);
    for (int j = 1; j <= std::min(k, top); ++j)
        starts[static_cast<std::size_t>(j)] = draw(rng);

    std::vector<BigInt> row;
    if (top == k + 1) {
        row.resize(static_cast<std::size_t>(n - top));
        for (auto& v : row)
            v = draw(rng);
    }
    else {
        row = {starts[static_cast<std::size_t>(top)]};
    }
    for (int j = top - 1; j >= 0; --j) {
        std::vector<BigInt> lower;
        lower.reserve(row.size() + 1);
        lower.push_back(j == 0 ? BigInt(0) : starts[static_cast<std::size_t>(j)]);
        for (const auto& d : row)
            lower.push_back(lower.back() + d);
        row = std::move(lower);
    }

    std::vector<Rat> values;
    values.reserve(row.size());
    for (auto& v : row)
        values.emplace_back(v);
    return ConvexSequence::from_values(std::move(values));
}

ConvexSequence random_convex(int n, std::int64_t magnitude, std::uint64_t seed)
{
    return random_k_convex(n, magnitude, 1, seed);
}

} // namespace cvxdiff
