#pragma once

// Dense exact simplex over Rat for the small systems the partition search
// produces. Standard form throughout: A x = b, x >= 0.

#include <cvxdiff/rational.hpp>

#include <optional>
#include <vector>

namespace cvxdiff::detail {

using Matrix = std::vector<std::vector<Rat>>;

struct PhaseOneResult
{
    bool feasible = false;
    /// A feasible x when feasible.
    std::vector<Rat> x;
    /// Otherwise u with u^T A <= 0 componentwise and u^T b > 0.
    std::vector<Rat> farkas;
};

PhaseOneResult phase_one(const Matrix& a, const std::vector<Rat>& b);

/// min c^T x over A x = b, x >= 0. nullopt when infeasible; throws
/// std::domain_error when unbounded.
std::optional<std::vector<Rat>> minimize(const Matrix& a, const std::vector<Rat>& b, const std::vector<Rat>& c);

} // namespace cvxdiff::detail
