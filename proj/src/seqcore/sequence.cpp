#include <cvxdiff/sequence.hpp>

#include <algorithm>
#include <charconv>
#include <iterator>

namespace cvxdiff {

std::optional<std::size_t> first_convexity_violation(std::span<const Rat> values)
{
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] <= values[i - 1])
            return i;
        if (i >= 2 && values[i] - values[i - 1] <= values[i - 1] - values[i - 2])
            return i;
    }
    return std::nullopt;
}

ConvexSequence ConvexSequence::from_values(std::vector<Rat> values)
{
    if (values.size() < 2)
        throw RangeError("a convex sequence needs at least two values, got " +
                         std::to_string(values.size()));
    if (auto bad = first_convexity_violation(values))
        throw ConvexityError("values are not convex at index " + std::to_string(*bad), *bad);
    return ConvexSequence(std::move(values));
}

ConvexSequence ConvexSequence::prefix(std::size_t m) const
{
    if (m < 2 || m > values_.size())
        throw RangeError("prefix length " + std::to_string(m) + " outside [2, " +
                         std::to_string(values_.size()) + "]");
    return ConvexSequence(std::vector<Rat>(values_.begin(), values_.begin() + static_cast<long>(m)));
}

ConvexSequence affine_image(const ConvexSequence& s, const Rat& scale, const Rat& shift)
{
    if (scale <= 0)
        throw RangeError("affine scale must be positive");
    std::vector<Rat> out;
    out.reserve(s.size());
    for (const auto& v : s.values())
        out.push_back(scale * v + shift);
    return ConvexSequence::from_values(std::move(out));
}

// ---------------------------------------------------------------------------
// OffsetSet

OffsetSet OffsetSet::from(std::vector<int> offsets)
{
    if (offsets.empty())
        throw RangeError("offset set must be nonempty");
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    if (offsets.front() < 1)
        throw RangeError("offset " + std::to_string(offsets.front()) + " is below 1");
    return OffsetSet(std::move(offsets));
}

OffsetSet OffsetSet::range(int lo, int hi)
{
    if (lo > hi)
        throw RangeError("empty offset range " + std::to_string(lo) + ".." + std::to_string(hi));
    std::vector<int> v;
    for (int j = lo; j <= hi; ++j)
        v.push_back(j);
    return from(std::move(v));
}

namespace {

int parse_offset(std::string_view tok, std::string_view whole)
{
    int value = 0;
    auto first = tok.data();
    auto last = tok.data() + tok.size();
    if (!tok.empty() && tok[0] == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (tok.empty() || ec != std::errc() || ptr != last)
        throw FormatError("malformed offsets '" + std::string(whole) + "'");
    return value;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

} // namespace

OffsetSet OffsetSet::parse(std::string_view text)
{
    auto body = trim(text);
    if (body.empty())
        throw FormatError("empty offsets");
    if (auto dots = body.find(".."); dots != std::string_view::npos) {
        int lo = parse_offset(trim(body.substr(0, dots)), text);
        int hi = parse_offset(trim(body.substr(dots + 2)), text);
        if (lo < 1)
            throw RangeError("offset " + std::to_string(lo) + " is below 1");
        if (lo > hi)
            throw FormatError("empty offset range '" + std::string(text) + "'");
        return range(lo, hi);
    }
    std::vector<int> v;
    while (true) {
        auto comma = body.find(',');
        v.push_back(parse_offset(trim(body.substr(0, comma)), text));
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
    }
    return from(std::move(v));
}

bool OffsetSet::contains(int j) const
{
    return std::binary_search(offsets_.begin(), offsets_.end(), j);
}

bool OffsetSet::is_subset_of(const OffsetSet& other) const
{
    return std::includes(other.offsets_.begin(), other.offsets_.end(), offsets_.begin(), offsets_.end());
}

void OffsetSet::require_fits(std::size_t n) const
{
    if (static_cast<std::size_t>(max()) + 1 > n)
        throw RangeError("offset " + std::to_string(max()) + " exceeds n - 1 = " + std::to_string(n - 1));
}

std::string OffsetSet::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(offsets_[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PairGraph

void PairGraph::add(int x, int y)
{
    if (y < 1 || x <= y)
        throw RangeError("pair (" + std::to_string(x) + ", " + std::to_string(y) + ") needs 1 <= y < x");
    std::pair<int, int> p{x, y};
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it == pairs_.end() || *it != p)
        pairs_.insert(it, p);
}

PairGraph PairGraph::offset_pairs(std::size_t n, int offset)
{
    PairGraph g;
    for (int y = 1; y + offset <= static_cast<int>(n); ++y)
        g.add(y + offset, y);
    return g;
}

PairGraph PairGraph::all_pairs(std::size_t n)
{
    PairGraph g;
    for (int x = 2; x <= static_cast<int>(n); ++x)
        for (int y = 1; y < x; ++y)
            g.add(x, y);
    return g;
}

// ---------------------------------------------------------------------------
// DiffSet

DiffSet DiffSet::from_unsorted(std::vector<Rat> values)
{
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return DiffSet(std::move(values));
}

bool DiffSet::contains(const Rat& v) const
{
    return std::binary_search(values_.begin(), values_.end(), v);
}

bool DiffSet::is_subset_of(const DiffSet& other) const
{
    return std::includes(other.values_.begin(), other.values_.end(), values_.begin(), values_.end());
}

DiffSet DiffSet::set_union(const DiffSet& other) const
{
    std::vector<Rat> out;
    std::set_union(values_.begin(), values_.end(), other.values_.begin(), other.values_.end(),
                   std::back_inserter(out));
    return DiffSet(std::move(out));
}

DiffSet DiffSet::set_difference(const DiffSet& other) const
{
    std::vector<Rat> out;
    std::set_difference(values_.begin(), values_.end(), other.values_.begin(), other.values_.end(),
                        std::back_inserter(out));
    return DiffSet(std::move(out));
}

DiffSet DiffSet::set_intersection(const DiffSet& other) const
{
    std::vector<Rat> out;
    std::set_intersection(values_.begin(), values_.end(), other.values_.begin(), other.values_.end(),
                          std::back_inserter(out));
    return DiffSet(std::move(out));
}

// ---------------------------------------------------------------------------
// operations

std::vector<Rat> forward_differences(std::span<const Rat> values)
{
    std::vector<Rat> out;
    if (values.size() < 2)
        return out;
    out.reserve(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        out.push_back(values[i + 1] - values[i]);
    return out;
}

std::vector<Rat> gaps(const ConvexSequence& s)
{
    return forward_differences(s.values());
}

namespace {

// Convexity of one derived stage. Stage 0 must be increasing even when it
// is short; later stages inherit increase from the stage before.
bool stage_convex(std::span<const Rat> stage)
{
    if (stage.size() < 3)
        return true;
    return is_convex(stage);
}

} // namespace

bool is_k_convex(std::span<const Rat> values, int k)
{
    if (k < 1)
        throw RangeError("convexity order must be at least 1");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            return false;
    std::vector<Rat> stage(values.begin(), values.end());
    for (int t = 0; t < k; ++t) {
        if (stage.size() < 3)
            return true;
        if (!stage_convex(stage))
            return false;
        stage = forward_differences(stage);
    }
    return true;
}

bool is_k_convex(const ConvexSequence& s, int k)
{
    return is_k_convex(s.values(), k);
}

ConvexityOrder convexity_order(const ConvexSequence& s)
{
    std::vector<Rat> stage(s.values().begin(), s.values().end());
    int order = 0;
    while (true) {
        if (stage.size() < 3)
            return {true, order};
        if (!stage_convex(stage))
            return {false, order};
        ++order;
        stage = forward_differences(stage);
    }
}

DiffSet local_diffs(const ConvexSequence& s, const OffsetSet& offsets)
{
    offsets.require_fits(s.size());
    std::vector<Rat> out;
    for (int j : offsets.offsets())
        for (std::size_t y = 0; y + static_cast<std::size_t>(j) < s.size(); ++y)
            out.push_back(s[y + static_cast<std::size_t>(j)] - s[y]);
    return DiffSet::from_unsorted(std::move(out));
}

DiffSet restricted_diffs(const ConvexSequence& s, const PairGraph& graph)
{
    std::vector<Rat> out;
    out.reserve(graph.size());
    for (auto [x, y] : graph.pairs()) {
        if (static_cast<std::size_t>(x) > s.size())
            throw RangeError("pair index " + std::to_string(x) + " exceeds n = " + std::to_string(s.size()));
        out.push_back(s[static_cast<std::size_t>(x - 1)] - s[static_cast<std::size_t>(y - 1)]);
    }
    return DiffSet::from_unsorted(std::move(out));
}

DiffSet local_sums(const ConvexSequence& s, int i)
{
    if (i < 1 || static_cast<std::size_t>(i) + 1 > s.size())
        throw RangeError("sum range " + std::to_string(i) + " outside [1, n-1]");
    std::vector<Rat> out;
    for (std::size_t x = 1; x < s.size(); ++x)
        for (std::size_t y = (x > static_cast<std::size_t>(i) ? x - static_cast<std::size_t>(i) : 0); y < x; ++y)
            out.push_back(s[x] + s[y]);
    return DiffSet::from_unsorted(std::move(out));
}

} // namespace cvxdiff
