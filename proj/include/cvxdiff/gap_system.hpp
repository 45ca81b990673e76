#pragma once

#include <cvxdiff/rational.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace cvxdiff {

/// Integer coefficients of a homogeneous linear form in g_1..g_m.
using LinearForm = std::vector<std::int64_t>;

Rat evaluate(const LinearForm& form, std::span<const Rat> gaps);

/// Homogeneous constraints on the gap vector: every equality form must
/// vanish and every strict form must be positive.
struct GapSystem
{
    int num_vars = 0;
    std::vector<LinearForm> equalities;
    std::vector<LinearForm> stricts;

    /// The constraints every convexity_k-convex gap vector satisfies:
    /// g_1 > 0, then every entry of the forward differences of g of orders
    /// 1..convexity_k. The first num_vars rows are always
    /// g_1, g_2 - g_1, ..., g_m - g_{m-1}.
    static GapSystem base(int num_vars, int convexity_k);

    /// Throws std::invalid_argument on forms of the wrong width.
    void validate() const;
};

/// Multipliers proving infeasibility: strict_multipliers >= 0 with a
/// positive sum and sum(strict_multipliers * stricts) +
/// sum(equality_multipliers * equalities) identically zero. Scaling every
/// strict form to be at least one would force that zero form to be at
/// least the positive sum, which is absurd.
struct FarkasCertificate
{
    std::vector<Rat> strict_multipliers;
    std::vector<Rat> equality_multipliers;
};

struct Feasibility
{
    bool feasible = false;
    /// Exact witness with every strict form >= 1 (when feasible).
    std::vector<Rat> witness;
    /// Integer-scaled refutation (when infeasible).
    FarkasCertificate farkas;
};

/// Exact decision of strict feasibility. Homogeneity makes "> 0" and
/// ">= 1" equivalent, so the relaxed system is solved by exact phase-one
/// simplex.
Feasibility feasible(const GapSystem& system);

/// Equalities hold and every strict form is positive.
bool satisfies(const GapSystem& system, std::span<const Rat> gaps);

/// Checks a refutation against the system; never trusts the solver.
bool refutes(const GapSystem& system, const FarkasCertificate& farkas);

/// Lexicographically least g with equalities and every strict form >= 1.
/// Requires the first num_vars stricts to be the convexity chain of
/// GapSystem::base (so the minimum exists); throws std::invalid_argument
/// otherwise and std::domain_error when the system is infeasible.
std::vector<Rat> lexmin_witness(const GapSystem& system);

} // namespace cvxdiff
