#pragma once

#include <cvxdiff/sequence.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cvxdiff {

/// A generated sequence broke convexity.
class ConstructionError : public std::runtime_error
{
  public:
    ConstructionError(const std::string& what, std::size_t index) : std::runtime_error(what), index_(index) {}

    /// 0-based index of the first violating value.
    std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

/// A search ran out of candidates inside its bound.
class SearchExhausted : public std::runtime_error
{
  public:
    explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct RecurrenceTerm
{
    int lag = 1;
    Rat coefficient;
};

/// s_i = sum over terms of coefficient * s_{i - lag}, started from seeds.
struct RecurrenceSpec
{
    std::vector<Rat> seeds;
    std::vector<RecurrenceTerm> terms;
    int length = 0;

    /// Throws RangeError unless seeds cover the largest lag and
    /// length >= seeds.size().
    void validate() const;
};

/// f_4, f_5, ..., f_{n+3} with f_1 = f_2 = 1. Two-convex, |D_2| = n for n >= 3.
ConvexSequence fibonacci_set(int n);

/// Seeds 0, 10, 23, 40 continued by s_i = s_{i-1} + s_{i-2} - s_{i-4}.
/// Two-convex with |D_{1,2,3}| = n + 2 for n >= 5.
ConvexSequence d3_extremal_set(int n);
RecurrenceSpec d3_extremal_spec(int n);

/// Iterates the recurrence; throws ConstructionError naming the first index
/// at which the values stop being convex.
ConvexSequence recurrence_set(const RecurrenceSpec& spec);

/// Terms of s_j = s_{j-2} + s_{j-3} - s_{j-6}.
std::vector<RecurrenceTerm> lag236_terms();

/// Lexicographically least integer seed 6-tuple in [0, seed_bound] (strictly
/// increasing, strictly increasing gaps) whose lag-(2,3,6) continuation stays
/// convex up to length n. Throws SearchExhausted when none exists.
RecurrenceSpec lag236_seed_search(int n, std::int64_t seed_bound);

/// s_1 = 0, first gap and every second difference uniform in [1, magnitude].
ConvexSequence random_convex(int n, std::int64_t magnitude, std::uint64_t seed);

/// Generalises random_convex: the order-(k+1) differences are uniform in
/// [1, magnitude] and every lower-order difference starts at a uniform value
/// in [1, magnitude]; the result is k-convex. random_k_convex(n, m, 1, seed)
/// equals random_convex(n, m, seed).
ConvexSequence random_k_convex(int n, std::int64_t magnitude, int k, std::uint64_t seed);

/// Streams every integer convex sequence with s_1 = 0 and s_n <= max_last,
/// one per translation class, in lexicographic order of the gap vector.
/// Not thread-safe; use one enumerator per consumer.
class IntegerConvexEnumerator
{
  public:
    /// first_gap pins g_1 to a single value, which splits the family into
    /// independent slices.
    IntegerConvexEnumerator(int n, std::int64_t max_last, std::optional<std::int64_t> first_gap = std::nullopt);

    /// Next gap vector, or an empty span once the stream is exhausted. The
    /// span is valid until the next call.
    std::span<const std::int64_t> next_gaps();

    std::optional<ConvexSequence> next();

  private:
    bool advance();

    int n_;
    std::int64_t max_last_;
    std::optional<std::int64_t> first_gap_;
    std::vector<std::int64_t> gaps_;
    bool started_ = false;
    bool done_ = false;
};

} // namespace cvxdiff
