#pragma once

#include <cvxdiff/rational.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvxdiff {

/// An offset, index or parameter lies outside the range allowed for the
/// sequence it is applied to.
class RangeError : public std::out_of_range
{
  public:
    explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

/// Input values do not form a convex sequence.
class ConvexityError : public std::invalid_argument
{
  public:
    ConvexityError(const std::string& what, std::size_t index) :
        std::invalid_argument(what), index_(index)
    {
    }

    /// 0-based index of the first value at which the invariant breaks.
    std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

/// First index (0-based) at which `values` stops being convex: either
/// values[i] <= values[i-1], or the gap ending at values[i] is not larger
/// than the gap before it. nullopt when the whole sequence is convex.
std::optional<std::size_t> first_convexity_violation(std::span<const Rat> values);

inline bool is_convex(std::span<const Rat> values)
{
    return !first_convexity_violation(values);
}

/// s_1 < s_2 < ... < s_n with strictly increasing gaps. Sequences of length
/// two are accepted (vacuously convex).
class ConvexSequence
{
  public:
    /// Throws ConvexityError when the values are not convex and RangeError
    /// when fewer than two values are given.
    static ConvexSequence from_values(std::vector<Rat> values);

    template <typename Int>
    static ConvexSequence from_integers(std::span<const Int> values)
    {
        std::vector<Rat> rats;
        rats.reserve(values.size());
        for (auto v : values)
            rats.emplace_back(v);
        return from_values(std::move(rats));
    }

    std::size_t size() const noexcept { return values_.size(); }
    const Rat& operator[](std::size_t i) const { return values_[i]; }
    std::span<const Rat> values() const noexcept { return values_; }

    /// Prefix of the first m values (m >= 2).
    ConvexSequence prefix(std::size_t m) const;

    friend bool operator==(const ConvexSequence&, const ConvexSequence&) = default;

  private:
    explicit ConvexSequence(std::vector<Rat> values) : values_(std::move(values)) {}

    std::vector<Rat> values_;
};

/// Image a*S + b for a > 0; stays convex.
ConvexSequence affine_image(const ConvexSequence& s, const Rat& scale, const Rat& shift);

/// A nonempty sorted set of positive offsets (the index set I).
class OffsetSet
{
  public:
    /// Sorts and deduplicates; throws RangeError on empty input or an
    /// offset below one.
    static OffsetSet from(std::vector<int> offsets);
    /// {lo, lo+1, ..., hi}.
    static OffsetSet range(int lo, int hi);
    /// {1, ..., i}.
    static OffsetSet upto(int i) { return range(1, i); }
    /// Accepts "1,2,4" and "1..4". Throws FormatError on malformed text and
    /// RangeError on offsets below one.
    static OffsetSet parse(std::string_view text);

    const std::vector<int>& offsets() const noexcept { return offsets_; }
    int min() const noexcept { return offsets_.front(); }
    int max() const noexcept { return offsets_.back(); }
    std::size_t size() const noexcept { return offsets_.size(); }
    bool contains(int j) const;
    bool is_subset_of(const OffsetSet& other) const;

    /// Throws RangeError when max() > n - 1.
    void require_fits(std::size_t n) const;

    std::string to_string() const;

    friend bool operator==(const OffsetSet&, const OffsetSet&) = default;

  private:
    explicit OffsetSet(std::vector<int> offsets) : offsets_(std::move(offsets)) {}

    std::vector<int> offsets_;
};

/// Ordered index pairs (x, y) with 1 <= y < x, 1-based as in s_x - s_y.
class PairGraph
{
  public:
    PairGraph() = default;

    /// Throws RangeError unless 1 <= y < x. Duplicates are ignored.
    void add(int x, int y);

    /// All pairs with x - y == offset, for a sequence of length n.
    static PairGraph offset_pairs(std::size_t n, int offset);
    static PairGraph all_pairs(std::size_t n);

    const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }

  private:
    std::vector<std::pair<int, int>> pairs_; // kept sorted
};

/// Sorted, duplicate-free exact values.
class DiffSet
{
  public:
    DiffSet() = default;
    static DiffSet from_unsorted(std::vector<Rat> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    std::span<const Rat> values() const noexcept { return values_; }
    bool contains(const Rat& v) const;
    bool is_subset_of(const DiffSet& other) const;

    DiffSet set_union(const DiffSet& other) const;
    DiffSet set_difference(const DiffSet& other) const;
    DiffSet set_intersection(const DiffSet& other) const;

    friend bool operator==(const DiffSet&, const DiffSet&) = default;

  private:
    explicit DiffSet(std::vector<Rat> sorted) : values_(std::move(sorted)) {}

    std::vector<Rat> values_;
};

/// Consecutive differences of arbitrary values.
std::vector<Rat> forward_differences(std::span<const Rat> values);

/// [s_2 - s_1, ..., s_n - s_{n-1}].
std::vector<Rat> gaps(const ConvexSequence& s);

/// k-convexity on raw values: every derived stage (values, gaps, gaps of
/// gaps, ... k stages in total) with at least three elements must be
/// convex. Stage 0 must also be strictly increasing.
bool is_k_convex(std::span<const Rat> values, int k);
bool is_k_convex(const ConvexSequence& s, int k);

/// Largest k for which is_k_convex holds, or saturated when it holds for
/// every k because the derived stages run out before one fails.
struct ConvexityOrder
{
    bool saturated = false;
    int order = 0;

    friend bool operator==(const ConvexityOrder&, const ConvexityOrder&) = default;
};
ConvexityOrder convexity_order(const ConvexSequence& s);

/// D_I(S) = { s_x - s_y : x - y in I }.
DiffSet local_diffs(const ConvexSequence& s, const OffsetSet& offsets);

/// { s_x - s_y : (x, y) in G }.
DiffSet restricted_diffs(const ConvexSequence& s, const PairGraph& graph);

/// E_i(S) = { s_x + s_y : 1 <= x - y <= i }.
DiffSet local_sums(const ConvexSequence& s, int i);

} // namespace cvxdiff
