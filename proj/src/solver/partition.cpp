#include <cvxdiff/solver.hpp>

#include <map>
#include <stdexcept>

namespace cvxdiff {

std::vector<Window> windows_for(std::size_t n, const OffsetSet& offsets)
{
    offsets.require_fits(n);
    std::vector<Window> out;
    for (int k : offsets.offsets())
        for (int a = 1; a + k <= static_cast<int>(n); ++a)
            out.push_back({a, k});
    return out;
}

LinearForm window_form(const Window& w, std::size_t n)
{
    LinearForm f(n - 1, 0);
    for (int j = w.start; j < w.start + w.length; ++j)
        f[static_cast<std::size_t>(j - 1)] = 1;
    return f;
}

bool forced_less(const Window& a, const Window& b)
{
    if (a == b)
        return false;
    return b.length >= a.length && b.start + b.length - a.length >= a.start;
}

CoincidencePartition CoincidencePartition::from_path(std::size_t n, const OffsetSet& offsets, const ClassPath& path)
{
    CoincidencePartition p;
    p.n_ = n;
    p.windows_ = windows_for(n, offsets);
    if (path.size() > p.windows_.size())
        throw std::invalid_argument("class path longer than the window list");
    p.path_ = path;
    for (std::size_t i = 0; i < path.size(); ++i) {
        std::size_t c = path[i];
        if (c > p.blocks_.size())
            throw std::invalid_argument("class path skips class id " + std::to_string(p.blocks_.size()));
        if (c == p.blocks_.size())
            p.blocks_.emplace_back();
        p.blocks_[c].push_back(static_cast<int>(i));
    }
    return p;
}

CoincidencePartition CoincidencePartition::induced(std::size_t n, const OffsetSet& offsets, std::span<const Rat> gaps)
{
    if (gaps.size() + 1 != n)
        throw std::invalid_argument("gap vector length must be n - 1");
    auto windows = windows_for(n, offsets);
    std::map<Rat, std::uint8_t> ids;
    ClassPath path;
    for (const auto& w : windows) {
        Rat v = 0;
        for (int j = w.start; j < w.start + w.length; ++j)
            v += gaps[static_cast<std::size_t>(j - 1)];
        if (ids.size() > 255 && !ids.contains(v))
            throw std::invalid_argument("too many classes for a class path");
        auto it = ids.try_emplace(v, static_cast<std::uint8_t>(ids.size())).first;
        path.push_back(it->second);
    }
    return from_path(n, offsets, path);
}

GapSystem CoincidencePartition::system(int convexity_k) const
{
    auto sys = GapSystem::base(static_cast<int>(n_ - 1), convexity_k);
    for (std::size_t i = 0; i < path_.size(); ++i) {
        int first = blocks_[path_[i]].front();
        if (first == static_cast<int>(i))
            continue;
        auto f = window_form(windows_[i], n_);
        auto r = window_form(windows_[static_cast<std::size_t>(first)], n_);
        for (std::size_t j = 0; j < f.size(); ++j)
            f[j] -= r[j];
        sys.equalities.push_back(std::move(f));
    }
    return sys;
}

} // namespace cvxdiff
