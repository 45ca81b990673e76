#include <cvxdiff/constructions.hpp>

namespace cvxdiff {

IntegerConvexEnumerator::IntegerConvexEnumerator(int n, std::int64_t max_last, std::optional<std::int64_t> first_gap) :
    n_(n), max_last_(max_last), first_gap_(first_gap)
{
    if (n < 2)
        throw RangeError("enumeration needs n >= 2");
    if (first_gap && *first_gap < 1)
        throw RangeError("first gap must be positive");
    gaps_.resize(static_cast<std::size_t>(n - 1));
}

namespace {

// Smallest possible sum of the gaps after position pos, given gaps[pos].
std::int64_t min_tail(std::int64_t last, std::size_t remaining)
{
    auto r = static_cast<std::int64_t>(remaining);
    return r * last + r * (r + 1) / 2;
}

} // namespace

bool IntegerConvexEnumerator::advance()
{
    const std::size_t m = gaps_.size();
    auto fill_from = [&](std::size_t pos, std::int64_t value, std::int64_t prefix_sum) {
        if (prefix_sum + value + min_tail(value, m - pos - 1) > max_last_)
            return false;
        gaps_[pos] = value;
        for (std::size_t t = pos + 1; t < m; ++t)
            gaps_[t] = gaps_[t - 1] + 1;
        return true;
    };

    if (!started_) {
        started_ = true;
        return fill_from(0, first_gap_.value_or(1), 0);
    }

    std::int64_t prefix = 0;
    for (std::size_t t = 0; t + 1 < m; ++t)
        prefix += gaps_[t];
    for (std::size_t pos = m; pos-- > 0;) {
        if (pos == 0 && first_gap_)
            return false;
        if (fill_from(pos, gaps_[pos] + 1, prefix))
            return true;
        if (pos > 0)
            prefix -= gaps_[pos - 1];
    }
    return false;
}

std::span<const std::int64_t> IntegerConvexEnumerator::next_gaps()
{
    if (done_ || !advance()) {
        done_ = true;
        return {};
    }
    return gaps_;
}

std::optional<ConvexSequence> IntegerConvexEnumerator::next()
{
    auto g = next_gaps();
    if (g.empty())
        return std::nullopt;
    std::vector<Rat> values;
    values.reserve(g.size() + 1);
    values.emplace_back(0);
    std::int64_t acc = 0;
    for (auto x : g) {
        acc += x;
        values.emplace_back(acc);
    }
    return ConvexSequence::from_values(std::move(values));
}

} // namespace cvxdiff
