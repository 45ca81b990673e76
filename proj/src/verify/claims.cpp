#include <cvxdiff/verify.hpp>

namespace cvxdiff {

namespace {

struct ClaimShape
{
    const char* name;
    std::vector<int> offsets;
    std::size_t min_n;
};

ClaimShape shape(Claim c)
{
    switch (c) {
    case Claim::thm1: return {"thm1", {1, 2, 3}, 5};
    case Claim::thm2: return {"thm2", {1, 2, 3, 4}, 5};
    case Claim::thm3_2convex: return {"thm3_2convex", {1, 2, 3, 4}, 5};
    case Claim::rem_124: return {"rem_124", {1, 2, 4}, 5};
    case Claim::rem_1235: return {"rem_1235", {1, 2, 3, 5}, 6};
    case Claim::d2_lower: return {"d2_lower", {1, 2}, 3};
    }
    throw std::logic_error("unhandled claim");
}

Rat claim_bound(Claim c, std::size_t n)
{
    const Rat nn(static_cast<std::int64_t>(n));
    switch (c) {
    case Claim::thm1: return nn + 2;
    case Claim::thm2: return Rat(5, 4) * nn - 1;
    case Claim::thm3_2convex: return Rat(4, 3) * nn - Rat(4, 3);
    case Claim::rem_124: return Rat(5, 4) * nn - 2;
    case Claim::rem_1235: return nn + 4;
    case Claim::d2_lower: return nn;
    }
    throw std::logic_error("unhandled claim");
}

} // namespace

Claim parse_claim(const std::string& name)
{
    for (Claim c : {Claim::thm1, Claim::thm2, Claim::thm3_2convex, Claim::rem_124, Claim::rem_1235, Claim::d2_lower})
        if (name == shape(c).name)
            return c;
    throw FormatError("unknown claim '" + name + "'");
}

std::string claim_name(Claim c)
{
    return shape(c).name;
}

bool is_finding_claim(Claim c)
{
    return c == Claim::rem_1235;
}

BoundCheck check_claim(const ConvexSequence& s, Claim claim, const std::string& input)
{
    const auto sh = shape(claim);
    const std::size_t n = s.size();
    if (n < sh.min_n)
        throw ApplicabilityError(claim_name(claim) + " needs n >= " + std::to_string(sh.min_n) + ", got " +
                                 std::to_string(n));
    if (claim == Claim::thm3_2convex && !is_k_convex(s, 2))
        throw ApplicabilityError("thm3_2convex needs a two-convex sequence");

    BoundCheck out;
    out.claim = claim;
    out.input = input;
    out.n = n;
    out.offsets = OffsetSet::from(sh.offsets);
    out.computed = static_cast<int>(local_diffs(s, out.offsets).size());
    out.bound = claim_bound(claim, n);
    out.pass = BigInt(out.computed) >= ceil_rat(out.bound);
    return out;
}

} // namespace cvxdiff
