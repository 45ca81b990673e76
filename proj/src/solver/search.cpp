#include "search.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <exception>
#include <stdexcept>

namespace cvxdiff::detail {

Problem::Problem(std::size_t n_, const OffsetSet& offsets_, int convexity_k_) :
    n(n_), offsets(offsets_), convexity_k(convexity_k_)
{
    if (n < 2)
        throw RangeError("n must be at least 2");
    if (convexity_k < 1)
        throw RangeError("convexity order must be at least 1");
    windows = windows_for(n, offsets);
    if (windows.size() > 255)
        throw RangeError("too many windows for the partition search");
    for (const auto& w : windows)
        forms.push_back(window_form(w, n));
    const std::size_t nw = windows.size();
    less.assign(nw, std::vector<char>(nw, 0));
    comparable.assign(nw, std::vector<char>(nw, 0));
    for (std::size_t u = 0; u < nw; ++u)
        for (std::size_t v = 0; v < nw; ++v)
            less[u][v] = forced_less(windows[u], windows[v]) ? 1 : 0;
    for (std::size_t u = 0; u < nw; ++u)
        for (std::size_t v = 0; v < nw; ++v)
            comparable[u][v] = (less[u][v] || less[v][u]) ? 1 : 0;
    base = GapSystem::base(static_cast<int>(n - 1), convexity_k);
}

GapSystem Problem::system_for(const ClassPath& path) const
{
    GapSystem sys = base;
    std::vector<int> first;
    for (std::size_t i = 0; i < path.size(); ++i) {
        std::size_t c = path[i];
        if (c == first.size()) {
            first.push_back(static_cast<int>(i));
            continue;
        }
        LinearForm f = forms[i];
        const auto& r = forms[static_cast<std::size_t>(first[c])];
        for (std::size_t j = 0; j < f.size(); ++j)
            f[j] -= r[j];
        sys.equalities.push_back(std::move(f));
    }
    return sys;
}

int class_count(const ClassPath& path)
{
    int top = -1;
    for (auto c : path)
        top = std::max(top, static_cast<int>(c));
    return top + 1;
}

BudgetClock::BudgetClock(const Budget& budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

bool BudgetClock::charge()
{
    if (tripped())
        return false;
    const auto spent = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    bool over = budget_.nodes && spent > *budget_.nodes;
    if (!over && budget_.seconds) {
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        over = elapsed.count() > *budget_.seconds;
    }
    if (over) {
        tripped_.store(true, std::memory_order_relaxed);
        return false;
    }
    return true;
}

std::optional<std::vector<Rat>> node_witness(const Problem& p, const ClassPath& path)
{
    auto f = feasible(p.system_for(path));
    if (!f.feasible)
        return std::nullopt;
    return std::move(f.witness);
}

namespace {

// A cycle in the "forced below" relation between classes once window w
// joins class `target`. The parent had none, so any cycle runs through it.
std::vector<std::pair<int, int>> find_order_cycle(const Problem& p, const ClassPath& path, int target)
{
    const int nc = class_count(path);
    // edge[x][y] = some (u, v) with u in x, v in y, u forced below v
    std::vector<std::vector<std::pair<int, int>>> edge(static_cast<std::size_t>(nc),
                                                       std::vector<std::pair<int, int>>(static_cast<std::size_t>(nc), {-1, -1}));
    for (std::size_t u = 0; u < path.size(); ++u)
        for (std::size_t v = 0; v < path.size(); ++v) {
            if (!p.less[u][v] || path[u] == path[v])
                continue;
            auto& e = edge[path[u]][path[v]];
            if (e.first < 0)
                e = {static_cast<int>(u), static_cast<int>(v)};
        }
    // BFS from target back to target.
    std::vector<int> parent(static_cast<std::size_t>(nc), -1);
    std::deque<int> queue{target};
    std::vector<char> seen(static_cast<std::size_t>(nc), 0);
    seen[static_cast<std::size_t>(target)] = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y = 0; y < nc; ++y) {
            if (edge[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)].first < 0)
                continue;
            if (y == target) {
                std::vector<std::pair<int, int>> cycle{edge[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]};
                for (int c = x; c != target; c = parent[static_cast<std::size_t>(c)])
                    cycle.push_back(edge[static_cast<std::size_t>(parent[static_cast<std::size_t>(c)])][static_cast<std::size_t>(c)]);
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                parent[static_cast<std::size_t>(y)] = x;
                queue.push_back(y);
            }
        }
    }
    return {};
}

void expand(const Problem& p, int count, const Node& node, std::vector<Node>& children, std::vector<Closure>& closures)
{
    const std::size_t w = node.path.size();
    std::vector<std::vector<int>> members;
    for (std::size_t i = 0; i < w; ++i) {
        if (node.path[i] == members.size())
            members.emplace_back();
        members[node.path[i]].push_back(static_cast<int>(i));
    }
    const int nc = static_cast<int>(members.size());

    for (int c = 0; c < nc; ++c) {
        const auto& block = members[static_cast<std::size_t>(c)];
        bool clash = std::any_of(block.begin(), block.end(), [&](int u) { return p.comparable[static_cast<std::size_t>(u)][w]; });
        if (clash)
            continue;
        ClassPath path = node.path;
        path.push_back(static_cast<std::uint8_t>(c));

        LinearForm eq = p.forms[w];
        const auto& r = p.forms[static_cast<std::size_t>(block.front())];
        for (std::size_t j = 0; j < eq.size(); ++j)
            eq[j] -= r[j];
        if (evaluate(eq, node.witness) == 0) {
            children.push_back({std::move(path), node.witness});
            continue;
        }
        auto cycle = find_order_cycle(p, path, c);
        if (!cycle.empty()) {
            closures.push_back({std::move(path), Closure::Kind::order_cycle, std::move(cycle), {}});
            continue;
        }
        auto f = feasible(p.system_for(path));
        if (f.feasible)
            children.push_back({std::move(path), std::move(f.witness)});
        else
            closures.push_back({std::move(path), Closure::Kind::farkas, {}, std::move(f.farkas)});
    }
    if (nc < count) {
        ClassPath path = node.path;
        path.push_back(static_cast<std::uint8_t>(nc));
        children.push_back({std::move(path), node.witness});
    }
}

void sort_result(CountResult& r)
{
    std::sort(r.closures.begin(), r.closures.end(), [](const Closure& a, const Closure& b) { return a.path < b.path; });
    std::sort(r.solutions.begin(), r.solutions.end());
    std::sort(r.leftover.begin(), r.leftover.end(), [](const Node& a, const Node& b) { return a.path < b.path; });
}

} // namespace

CountResult search_count_serial(const Problem& p, int count, std::vector<Node> starts, BudgetClock& clock)
{
    CountResult r;
    std::vector<Node> stack(std::make_move_iterator(starts.rbegin()), std::make_move_iterator(starts.rend()));
    std::vector<Node> children;
    while (!stack.empty()) {
        if (!clock.charge()) {
            r.stopped = true;
            r.leftover.assign(std::make_move_iterator(stack.begin()), std::make_move_iterator(stack.end()));
            break;
        }
        Node node = std::move(stack.back());
        stack.pop_back();
        ++r.nodes;
        if (node.path.size() == p.window_count()) {
            r.solutions.push_back(std::move(node.path));
            continue;
        }
        children.clear();
        expand(p, count, node, children, r.closures);
        for (auto it = children.rbegin(); it != children.rend(); ++it)
            stack.push_back(std::move(*it));
    }
    sort_result(r);
    return r;
}

CountResult search_count_parallel(const Problem& p, int count, std::vector<Node> starts, BudgetClock& clock,
                                  int workers)
{
    if (workers <= 1)
        return search_count_serial(p, count, std::move(starts), clock);

    // Breadth-first until there is enough independent work to share out.
    CountResult r;
    std::deque<Node> queue(std::make_move_iterator(starts.begin()), std::make_move_iterator(starts.end()));
    const std::size_t target = 4 * static_cast<std::size_t>(workers);
    std::vector<Node> children;
    while (!queue.empty() && queue.size() < target) {
        if (!clock.charge()) {
            r.stopped = true;
            break;
        }
        Node node = std::move(queue.front());
        queue.pop_front();
        ++r.nodes;
        if (node.path.size() == p.window_count()) {
            r.solutions.push_back(std::move(node.path));
            continue;
        }
        children.clear();
        expand(p, count, node, children, r.closures);
        for (auto& c : children)
            queue.push_back(std::move(c));
    }
    if (r.stopped) {
        r.leftover.assign(std::make_move_iterator(queue.begin()), std::make_move_iterator(queue.end()));
        sort_result(r);
        return r;
    }

    std::vector<Node> items(std::make_move_iterator(queue.begin()), std::make_move_iterator(queue.end()));
    std::vector<CountResult> parts(items.size());
    std::exception_ptr failure;
    const auto total = static_cast<std::int64_t>(items.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t i = 0; i < total; ++i) {
        try {
            std::vector<Node> one;
            one.push_back(std::move(items[static_cast<std::size_t>(i)]));
            parts[static_cast<std::size_t>(i)] = search_count_serial(p, count, std::move(one), clock);
        }
        catch (...) {
#pragma omp critical(cvxdiff_search_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    for (auto& part : parts) {
        r.nodes += part.nodes;
        r.stopped = r.stopped || part.stopped;
        std::move(part.closures.begin(), part.closures.end(), std::back_inserter(r.closures));
        std::move(part.solutions.begin(), part.solutions.end(), std::back_inserter(r.solutions));
        std::move(part.leftover.begin(), part.leftover.end(), std::back_inserter(r.leftover));
    }
    sort_result(r);
    return r;
}

} // namespace cvxdiff::detail
