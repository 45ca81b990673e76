#include <cvxdiff/solver.hpp>

#include <map>
#include <set>

namespace cvxdiff {

namespace {

bool cycle_holds(const CoincidencePartition& part, const std::vector<std::pair<int, int>>& cycle)
{
    if (cycle.empty())
        return false;
    const auto& windows = part.windows();
    const auto& path = part.path();
    const auto len = static_cast<int>(path.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        auto [u, v] = cycle[i];
        if (u < 0 || v < 0 || u >= len || v >= len)
            return false;
        if (!forced_less(windows[static_cast<std::size_t>(u)], windows[static_cast<std::size_t>(v)]))
            return false;
        int next_u = cycle[(i + 1) % cycle.size()].first;
        if (next_u < 0 || next_u >= len)
            return false;
        if (path[static_cast<std::size_t>(v)] != path[static_cast<std::size_t>(next_u)])
            return false;
    }
    return true;
}

bool closure_holds(std::size_t n, const OffsetSet& offsets, int k, const Closure& c)
{
    CoincidencePartition part = CoincidencePartition::from_path(n, offsets, c.path);
    if (c.kind == Closure::Kind::order_cycle)
        return cycle_holds(part, c.cycle);
    return refutes(part.system(k), c.farkas);
}

// Replays the branching rule with no linear programming: every node is
// either closed by a checked closure or split into all its children, and a
// complete node must never be reached.
bool exhaustion_holds(std::size_t n, const OffsetSet& offsets, int k, const ExhaustionLog& log)
{
    std::map<ClassPath, const Closure*> closed;
    for (const auto& c : log.closures)
        if (!closed.emplace(c.path, &c).second)
            return false;
    const auto windows = windows_for(n, offsets);
    std::set<ClassPath> used;

    std::vector<ClassPath> stack{ClassPath{}};
    while (!stack.empty()) {
        ClassPath path = std::move(stack.back());
        stack.pop_back();
        if (auto it = closed.find(path); it != closed.end()) {
            if (!closure_holds(n, offsets, k, *it->second))
                return false;
            used.insert(path);
            continue;
        }
        const std::size_t w = path.size();
        if (w == windows.size())
            return false;
        std::vector<std::vector<int>> members;
        for (std::size_t i = 0; i < w; ++i) {
            if (path[i] == members.size())
                members.emplace_back();
            members[path[i]].push_back(static_cast<int>(i));
        }
        for (std::size_t c = 0; c < members.size(); ++c) {
            bool clash = false;
            for (int u : members[c])
                clash = clash || comparable(windows[static_cast<std::size_t>(u)], windows[w]);
            if (clash)
                continue;
            ClassPath child = path;
            child.push_back(static_cast<std::uint8_t>(c));
            stack.push_back(std::move(child));
        }
        if (static_cast<int>(members.size()) < log.class_count) {
            ClassPath child = path;
            child.push_back(static_cast<std::uint8_t>(members.size()));
            stack.push_back(std::move(child));
        }
    }
    return used.size() == closed.size();
}

} // namespace

bool verify_certificate(const Certificate& cert)
{
    const std::size_t n = cert.n;
    if (n < 2 || cert.convexity_k < 1)
        throw FormatError("certificate has an invalid n or convexity order");
    if (static_cast<std::size_t>(cert.offsets.max()) > n - 1)
        throw FormatError("certificate offsets do not fit n");
    if (cert.witness_gaps.size() != n - 1)
        throw FormatError("witness gap vector has the wrong length");

    // Witness side: the gaps give a k-convex sequence with `value` distinct
    // window sums, and they satisfy the system of their own partition.
    std::vector<Rat> values{Rat(0)};
    for (const auto& g : cert.witness_gaps)
        values.push_back(values.back() + g);
    if (!is_convex(values) || !is_k_convex(values, cert.convexity_k))
        return false;
    auto seq = ConvexSequence::from_values(values);
    if (static_cast<int>(local_diffs(seq, cert.offsets).size()) != cert.value)
        return false;
    auto part = CoincidencePartition::induced(n, cert.offsets, cert.witness_gaps);
    if (static_cast<int>(part.class_count()) != cert.value)
        return false;
    if (!satisfies(part.system(cert.convexity_k), cert.witness_gaps))
        return false;

    // Optimality side.
    int expected_lb = 0;
    if (cert.lower_bound_source == "chain")
        expected_lb = chain_lower_bound(n, cert.offsets);
    else if (cert.lower_bound_source == "paper")
        expected_lb = paper_lower_bound(n, cert.offsets, cert.convexity_k);
    else
        throw FormatError("unknown lower bound source '" + cert.lower_bound_source + "'");
    if (cert.initial_lower_bound != expected_lb || cert.value < expected_lb)
        return false;

    const auto expected_kind = cert.value == expected_lb ? Certificate::Kind::witness : Certificate::Kind::exhaustion;
    if (cert.kind != expected_kind)
        return false;
    if (cert.exhaustion.size() != static_cast<std::size_t>(cert.value - expected_lb))
        return false;
    for (std::size_t i = 0; i < cert.exhaustion.size(); ++i) {
        const auto& log = cert.exhaustion[i];
        if (log.class_count != expected_lb + static_cast<int>(i))
            return false;
        try {
            if (!exhaustion_holds(n, cert.offsets, cert.convexity_k, log))
                return false;
        }
        catch (const std::invalid_argument&) {
            return false; // closure path that is not a canonical class path
        }
    }
    return true;
}

bool verify_certificate(const MinResult& result, std::size_t n, const OffsetSet& offsets, int convexity_k)
{
    const auto& cert = result.certificate;
    if (cert.n != n || !(cert.offsets == offsets) || cert.convexity_k != convexity_k)
        return false;
    if (result.value != cert.value)
        return false;
    if (static_cast<int>(local_diffs(result.witness, offsets).size()) != result.value)
        return false;
    if (gaps(result.witness) != cert.witness_gaps)
        return false;
    return verify_certificate(cert);
}

} // namespace cvxdiff
