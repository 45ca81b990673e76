#include "search.hpp"

#include <cvxdiff/constructions.hpp>

#include <algorithm>
#include <stdexcept>

namespace cvxdiff {

int chain_lower_bound(std::size_t n, const OffsetSet& offsets)
{
    offsets.require_fits(n);
    return static_cast<int>(n) - offsets.min();
}

int paper_lower_bound(std::size_t n, const OffsetSet& offsets, int convexity_k)
{
    int best = chain_lower_bound(n, offsets);
    const auto nn = static_cast<std::int64_t>(n);
    auto raise = [&](const Rat& bound) {
        best = std::max(best, static_cast<int>(ceil_rat(bound)));
    };
    auto has = [&](std::initializer_list<int> need) {
        return std::all_of(need.begin(), need.end(), [&](int j) { return offsets.contains(j); });
    };
    if (has({1, 2}) && n >= 3)
        raise(Rat(nn));
    if (has({1, 2, 3}) && n >= 5)
        raise(Rat(nn + 2));
    if (has({1, 2, 4}))
        raise(Rat(5 * nn, 4) - 2);
    if (has({1, 2, 3, 4})) {
        raise(Rat(5 * nn, 4) - 1);
        if (convexity_k >= 2)
            raise(Rat(4 * nn, 3) - Rat(4, 3));
    }
    return best;
}

namespace {

using detail::Node;
using detail::Problem;
using detail::SearchState;

std::vector<Rat> gaps_of(std::span<const Rat> values)
{
    return forward_differences(values);
}

// Cheapest known k-convex sequences; their counts bound the answer above.
std::pair<int, std::vector<Rat>> candidate_upper_bound(std::size_t n, const OffsetSet& offsets, int k)
{
    std::vector<std::vector<Rat>> pool;
    const int ni = static_cast<int>(n);
    {
        std::vector<Rat> v;
        BigInt p = 1;
        for (int i = 0; i < ni; ++i, p *= 2)
            v.emplace_back(p);
        pool.push_back(std::move(v));
    }
    {
        std::vector<Rat> v;
        for (int i = 0; i < ni; ++i) {
            BigInt p = 1;
            for (int e = 0; e <= k; ++e)
                p *= i;
            v.emplace_back(p);
        }
        pool.push_back(std::move(v));
    }
    {
        std::vector<Rat> v;
        for (int i = 0; i < ni; ++i)
            v.emplace_back(i * (i + 1) / 2);
        pool.push_back(std::move(v));
    }
    {
        auto f = fibonacci_set(ni);
        pool.emplace_back(f.values().begin(), f.values().end());
    }
    if (n >= 5) {
        auto d = d3_extremal_set(ni);
        pool.emplace_back(d.values().begin(), d.values().end());
    }

    int best = -1;
    std::vector<Rat> best_gaps;
    for (const auto& v : pool) {
        if (!is_convex(v) || !is_k_convex(v, k))
            continue;
        auto s = ConvexSequence::from_values(v);
        int c = static_cast<int>(local_diffs(s, offsets).size());
        if (best < 0 || c < best) {
            best = c;
            best_gaps = gaps_of(v);
        }
    }
    if (best < 0)
        throw std::logic_error("no candidate sequence is k-convex");
    return {best, best_gaps};
}

ConvexSequence sequence_from_gaps(std::span<const Rat> g)
{
    std::vector<Rat> v{Rat(0)};
    for (const auto& x : g)
        v.push_back(v.back() + x);
    return ConvexSequence::from_values(std::move(v));
}

MinResult finish(const Problem& p, const SearchState& st)
{
    std::optional<std::vector<Rat>> best;
    for (const auto& path : st.solutions) {
        auto g = lexmin_witness(p.system_for(path));
        if (!best || g < *best)
            best = std::move(g);
    }
    auto witness = sequence_from_gaps(*best);
    const int value = static_cast<int>(local_diffs(witness, p.offsets).size());
    if (value != st.count)
        throw std::logic_error("witness realises " + std::to_string(value) + " values, expected " +
                               std::to_string(st.count));

    Certificate cert;
    cert.kind = st.completed.empty() ? Certificate::Kind::witness : Certificate::Kind::exhaustion;
    cert.n = p.n;
    cert.offsets = p.offsets;
    cert.convexity_k = p.convexity_k;
    cert.value = value;
    cert.witness_gaps = *best;
    cert.initial_lower_bound = st.initial_lower_bound;
    cert.lower_bound_source = st.lower_bound_source;
    cert.exhaustion = st.completed;
    return MinResult{value, std::move(witness), std::move(cert)};
}

MinOutcome run(SearchState st, std::vector<Node> starts, const SolverOptions& options)
{
    Problem p(st.n, st.offsets, st.convexity_k);
    detail::BudgetClock clock(options.budget);
    MinOutcome out;

    while (true) {
        if (st.count > st.upper)
            throw std::logic_error("search passed a realised class count without finding it");
        if (starts.empty() && st.frontier.empty() && st.closures.empty() && st.solutions.empty()) {
            Node root;
            root.witness = feasible(p.base).witness;
            starts.push_back(std::move(root));
        }
        auto r = detail::search_count_parallel(p, st.count, std::move(starts), clock, options.workers);
        starts.clear();
        st.nodes += r.nodes;
        st.count_nodes += r.nodes;
        std::move(r.closures.begin(), r.closures.end(), std::back_inserter(st.closures));
        std::move(r.solutions.begin(), r.solutions.end(), std::back_inserter(st.solutions));
        std::sort(st.closures.begin(), st.closures.end(),
                  [](const Closure& a, const Closure& b) { return a.path < b.path; });
        std::sort(st.solutions.begin(), st.solutions.end());

        if (r.stopped) {
            st.frontier.clear();
            for (const auto& node : r.leftover)
                st.frontier.push_back(node.path);
            out.status = MinOutcome::Status::budget_exhausted;
            out.lower = st.count;
            out.upper = st.upper;
            out.nodes = st.nodes;
            out.frontier = detail::encode_snapshot(st);
            return out;
        }
        st.frontier.clear();

        if (!st.solutions.empty()) {
            out.result = finish(p, st);
            out.lower = out.upper = out.result->value;
            out.nodes = st.nodes;
            return out;
        }
        st.completed.push_back({st.count, st.count_nodes, std::move(st.closures)});
        st.closures.clear();
        st.count_nodes = 0;
        ++st.count;
    }
}

} // namespace

MinOutcome minimize_distinct(std::size_t n, const OffsetSet& offsets, const SolverOptions& options)
{
    if (n < 2)
        throw RangeError("n must be at least 2");
    offsets.require_fits(n);
    if (options.convexity_k < 1)
        throw RangeError("convexity order must be at least 1");

    SearchState st;
    st.n = n;
    st.offsets = offsets;
    st.convexity_k = options.convexity_k;
    st.lower_bound_source = options.use_paper_bounds ? "paper" : "chain";
    st.initial_lower_bound = options.use_paper_bounds ? paper_lower_bound(n, offsets, options.convexity_k)
                                                      : chain_lower_bound(n, offsets);
    st.count = st.initial_lower_bound;
    std::tie(st.upper, st.upper_gaps) = candidate_upper_bound(n, offsets, options.convexity_k);
    return run(std::move(st), {}, options);
}

MinOutcome resume_minimize(const std::vector<std::uint8_t>& frontier, const SolverOptions& options)
{
    SearchState st = detail::decode_snapshot(frontier);
    Problem p(st.n, st.offsets, st.convexity_k);
    std::vector<Node> starts;
    for (const auto& path : st.frontier) {
        auto w = detail::node_witness(p, path);
        if (!w)
            throw FormatError("frontier node is not realisable");
        starts.push_back({path, std::move(*w)});
    }
    st.frontier.clear();
    return run(std::move(st), std::move(starts), options);
}

} // namespace cvxdiff
