#pragma once

#include <cvxdiff/solver.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <vector>

namespace cvxdiff::detail {

struct Problem
{
    std::size_t n = 0;
    OffsetSet offsets = OffsetSet::upto(1);
    int convexity_k = 1;
    std::vector<Window> windows;
    std::vector<LinearForm> forms;
    std::vector<std::vector<char>> less; // less[u][v]: value(u) < value(v) always
    std::vector<std::vector<char>> comparable;
    GapSystem base;

    Problem(std::size_t n, const OffsetSet& offsets, int convexity_k);

    std::size_t window_count() const { return windows.size(); }
    GapSystem system_for(const ClassPath& path) const;
};

struct Node
{
    ClassPath path;
    std::vector<Rat> witness;
};

int class_count(const ClassPath& path);

/// Shared node and wall-clock budget. Once tripped it stays tripped.
class BudgetClock
{
  public:
    explicit BudgetClock(const Budget& budget);

    /// Charges one node; false once either limit is hit.
    bool charge();
    bool tripped() const { return tripped_.load(std::memory_order_relaxed); }
    std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }

  private:
    Budget budget_;
    std::chrono::steady_clock::time_point start_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> tripped_{false};
};

struct CountResult
{
    std::vector<Closure> closures;      // sorted by path
    std::vector<ClassPath> solutions;   // sorted
    std::vector<Node> leftover;         // unexplored when the budget ran out
    std::uint64_t nodes = 0;
    bool stopped = false;
};

/// Exhausts every partition with at most `count` classes below `starts`.
CountResult search_count_serial(const Problem& p, int count, std::vector<Node> starts, BudgetClock& clock);
CountResult search_count_parallel(const Problem& p, int count, std::vector<Node> starts, BudgetClock& clock,
                                  int workers);

/// Witness of a node recomputed from scratch; nullopt if infeasible.
std::optional<std::vector<Rat>> node_witness(const Problem& p, const ClassPath& path);

/// Everything needed to continue an interrupted minimisation.
struct SearchState
{
    std::size_t n = 0;
    OffsetSet offsets = OffsetSet::upto(1);
    int convexity_k = 1;
    int initial_lower_bound = 0;
    std::string lower_bound_source = "chain";
    int count = 0; // class count being searched
    int upper = 0;
    std::vector<Rat> upper_gaps;
    std::vector<ExhaustionLog> completed;
    std::vector<Closure> closures; // so far at `count`
    std::vector<ClassPath> solutions;
    std::vector<ClassPath> frontier;
    std::uint64_t count_nodes = 0;
    std::uint64_t nodes = 0;
};

std::vector<std::uint8_t> encode_snapshot(const SearchState& state);
SearchState decode_snapshot(const std::vector<std::uint8_t>& blob);

} // namespace cvxdiff::detail
