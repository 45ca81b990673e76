#pragma once

#include <cvxdiff/gap_system.hpp>
#include <cvxdiff/sequence.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cvxdiff {

/// s_{start+length} - s_start, i.e. g_start + ... + g_{start+length-1}
/// with g_j = s_{j+1} - s_j. Both fields are 1-based like the sequence.
struct Window
{
    int start = 1;
    int length = 1;

    friend bool operator==(const Window&, const Window&) = default;
};

/// Every window for (n, I), ordered by (length, start).
std::vector<Window> windows_for(std::size_t n, const OffsetSet& offsets);

/// Gap coefficients of a window over n - 1 variables.
LinearForm window_form(const Window& w, std::size_t n);

/// True when every convex sequence has value(a) < value(b). Holds exactly
/// when b is at least as long and its last a.length gaps sit at or after
/// a's, and the windows differ.
bool forced_less(const Window& a, const Window& b);

inline bool comparable(const Window& a, const Window& b)
{
    return forced_less(a, b) || forced_less(b, a);
}

/// Class id per window in windows_for order. Ids are canonical: a window
/// either reuses an earlier id or takes the next unused one.
using ClassPath = std::vector<std::uint8_t>;

/// A grouping of the windows into equality classes.
class CoincidencePartition
{
  public:
    /// Throws std::invalid_argument on a non-canonical or overlong path.
    static CoincidencePartition from_path(std::size_t n, const OffsetSet& offsets, const ClassPath& path);

    /// Groups windows by their value in the sequence with these gaps.
    static CoincidencePartition induced(std::size_t n, const OffsetSet& offsets, std::span<const Rat> gaps);

    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
    std::size_t class_count() const noexcept { return blocks_.size(); }
    const ClassPath& path() const noexcept { return path_; }
    bool complete() const noexcept { return path_.size() == windows_.size(); }
    const std::vector<Window>& windows() const noexcept { return windows_; }

    /// Base constraints of order convexity_k plus, for each window placed
    /// in an already open class, value(window) - value(first member) = 0,
    /// in path order.
    GapSystem system(int convexity_k) const;

  private:
    std::size_t n_ = 0;
    std::vector<Window> windows_;
    ClassPath path_;
    std::vector<std::vector<int>> blocks_;
};

/// Why a branch of the search was closed.
struct Closure
{
    enum class Kind { order_cycle, farkas };

    ClassPath path;
    Kind kind = Kind::farkas;
    /// order_cycle: window index pairs (u, v) with u forced below v, where
    /// v and the next u share a class and the last v shares one with the
    /// first u.
    std::vector<std::pair<int, int>> cycle;
    /// farkas: refutation of the path's system.
    FarkasCertificate farkas;
};

/// Proof that no partition with at most class_count classes is realisable.
struct ExhaustionLog
{
    int class_count = 0;
    std::uint64_t nodes = 0;
    std::vector<Closure> closures; // sorted by path
};

struct Certificate
{
    enum class Kind { witness, exhaustion };

    Kind kind = Kind::witness;
    std::size_t n = 0;
    OffsetSet offsets = OffsetSet::upto(1);
    int convexity_k = 1;
    int value = 0;
    std::vector<Rat> witness_gaps;
    int initial_lower_bound = 0;
    /// "chain" (n - min I) or "paper" (published bounds, opt-in).
    std::string lower_bound_source = "chain";
    /// One log per class count in [initial_lower_bound, value - 1].
    std::vector<ExhaustionLog> exhaustion;
};

struct MinResult
{
    int value = 0;
    ConvexSequence witness;
    Certificate certificate;
};

struct Budget
{
    std::optional<double> seconds;
    std::optional<std::uint64_t> nodes;
};

struct SolverOptions
{
    int convexity_k = 1;
    Budget budget;
    int workers = 1;
    bool use_paper_bounds = false;
};

struct MinOutcome
{
    enum class Status { solved, budget_exhausted };

    Status status = Status::solved;
    std::optional<MinResult> result;
    /// Every class count below `lower` is refuted; `upper` is realised.
    int lower = 0;
    int upper = 0;
    /// Resumable snapshot when the budget ran out.
    std::vector<std::uint8_t> frontier;
    std::uint64_t nodes = 0;
};

/// n - min(I): the windows of the shortest length are pairwise distinct.
int chain_lower_bound(std::size_t n, const OffsetSet& offsets);

/// Largest published lower bound implied for (n, I, k), or the chain bound
/// when none applies.
int paper_lower_bound(std::size_t n, const OffsetSet& offsets, int convexity_k);

/// Exact min |D_I(S)| over convexity_k-convex sequences of length n.
MinOutcome minimize_distinct(std::size_t n, const OffsetSet& offsets, const SolverOptions& options);

/// Continues from a frontier snapshot; n, I and k come from the snapshot.
/// Throws FormatError on a corrupt or foreign blob.
MinOutcome resume_minimize(const std::vector<std::uint8_t>& frontier, const SolverOptions& options);

/// Replays a certificate without running any linear program. Returns false
/// on any mathematical mismatch; throws FormatError on structural damage.
bool verify_certificate(const Certificate& cert);
bool verify_certificate(const MinResult& result, std::size_t n, const OffsetSet& offsets, int convexity_k);

struct BruteForceResult
{
    int value = 0;
    ConvexSequence witness;
};

/// Minimum of |D_I| over the integer family of IntegerConvexEnumerator.
/// Ties go to the first sequence in enumeration order. Throws
/// std::domain_error when the family is empty.
BruteForceResult brute_force_min(std::size_t n, const OffsetSet& offsets, std::int64_t max_last, int workers = 1);
BruteForceResult brute_force_min_serial(std::size_t n, const OffsetSet& offsets, std::int64_t max_last);

} // namespace cvxdiff
