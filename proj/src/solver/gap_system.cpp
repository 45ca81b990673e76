#include <cvxdiff/gap_system.hpp>

#include "simplex.hpp"

#include <stdexcept>
#include <string>

namespace cvxdiff {

Rat evaluate(const LinearForm& form, std::span<const Rat> gaps)
{
    Rat acc = 0;
    for (std::size_t j = 0; j < form.size(); ++j)
        if (form[j] != 0)
            acc += form[j] * gaps[j];
    return acc;
}

GapSystem GapSystem::base(int num_vars, int convexity_k)
{
    if (num_vars < 1)
        throw std::invalid_argument("gap system needs at least one variable");
    if (convexity_k < 1)
        throw std::invalid_argument("convexity order must be at least 1");

    GapSystem sys;
    sys.num_vars = num_vars;
    const auto m = static_cast<std::size_t>(num_vars);
    for (std::size_t j = 0; j < m; ++j) {
        LinearForm f(m, 0);
        f[j] = 1;
        if (j > 0)
            f[j - 1] = -1;
        sys.stricts.push_back(std::move(f));
    }
    // Orders 2..k: binomial stencils (-1)^(order-t) C(order, t).
    for (int order = 2; order <= convexity_k; ++order) {
        std::vector<std::int64_t> stencil{1};
        for (int r = 0; r < order; ++r) {
            std::vector<std::int64_t> next(stencil.size() + 1, 0);
            for (std::size_t t = 0; t < stencil.size(); ++t) {
                next[t] -= stencil[t];
                next[t + 1] += stencil[t];
            }
            stencil = std::move(next);
        }
        for (std::size_t i = 0; i + static_cast<std::size_t>(order) < m; ++i) {
            LinearForm f(m, 0);
            for (std::size_t t = 0; t < stencil.size(); ++t)
                f[i + t] = stencil[t];
            sys.stricts.push_back(std::move(f));
        }
    }
    return sys;
}

void GapSystem::validate() const
{
    if (num_vars < 1)
        throw std::invalid_argument("gap system needs at least one variable");
    const auto m = static_cast<std::size_t>(num_vars);
    for (const auto& f : equalities)
        if (f.size() != m)
            throw std::invalid_argument("equality form has width " + std::to_string(f.size()) + ", expected " +
                                        std::to_string(m));
    for (const auto& f : stricts)
        if (f.size() != m)
            throw std::invalid_argument("strict form has width " + std::to_string(f.size()) + ", expected " +
                                        std::to_string(m));
}

bool satisfies(const GapSystem& system, std::span<const Rat> gaps)
{
    if (gaps.size() != static_cast<std::size_t>(system.num_vars))
        return false;
    for (const auto& e : system.equalities)
        if (evaluate(e, gaps) != 0)
            return false;
    for (const auto& f : system.stricts)
        if (evaluate(f, gaps) <= 0)
            return false;
    return true;
}

bool refutes(const GapSystem& system, const FarkasCertificate& farkas)
{
    if (farkas.strict_multipliers.size() != system.stricts.size() ||
        farkas.equality_multipliers.size() != system.equalities.size())
        return false;
    const auto m = static_cast<std::size_t>(system.num_vars);
    std::vector<Rat> combo(m);
    Rat total = 0;
    for (std::size_t r = 0; r < system.stricts.size(); ++r) {
        const Rat& lam = farkas.strict_multipliers[r];
        if (lam < 0)
            return false;
        if (lam == 0)
            continue;
        total += lam;
        for (std::size_t j = 0; j < m; ++j)
            combo[j] += lam * system.stricts[r][j];
    }
    for (std::size_t r = 0; r < system.equalities.size(); ++r) {
        const Rat& mu = farkas.equality_multipliers[r];
        if (mu == 0)
            continue;
        for (std::size_t j = 0; j < m; ++j)
            combo[j] += mu * system.equalities[r][j];
    }
    if (total <= 0)
        return false;
    for (const auto& v : combo)
        if (v != 0)
            return false;
    return true;
}

namespace {

bool has_chain_prefix(const GapSystem& sys)
{
    const auto m = static_cast<std::size_t>(sys.num_vars);
    if (sys.stricts.size() < m)
        return false;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            std::int64_t want = (i == j) ? 1 : (j > 0 && i + 1 == j ? -1 : 0);
            if (sys.stricts[j][i] != want)
                return false;
        }
    return true;
}

// Coordinates h = T g with T the chain rows, shifted to y = h - 1 >= 0.
// A form f(g) becomes (f L) y + (f L) . 1 where L = T^{-1} sums prefixes,
// so (f L)_i is the suffix sum of f from i.
std::vector<Rat> suffix_sums(const LinearForm& f)
{
    std::vector<Rat> out(f.size());
    Rat acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
        acc += f[i];
        out[i] = acc;
    }
    return out;
}

Rat sum_of(const std::vector<Rat>& v)
{
    Rat acc = 0;
    for (const auto& x : v)
        acc += x;
    return acc;
}

struct ChainProgram
{
    detail::Matrix a;
    std::vector<Rat> b;
    std::size_t m = 0;
    std::size_t extras = 0;
};

ChainProgram chain_program(const GapSystem& sys)
{
    ChainProgram lp;
    lp.m = static_cast<std::size_t>(sys.num_vars);
    lp.extras = sys.stricts.size() - lp.m;
    const std::size_t cols = lp.m + lp.extras;
    for (const auto& e : sys.equalities) {
        auto row = suffix_sums(e);
        Rat shift = sum_of(row);
        row.resize(cols);
        lp.a.push_back(std::move(row));
        lp.b.push_back(-shift);
    }
    for (std::size_t r = 0; r < lp.extras; ++r) {
        auto row = suffix_sums(sys.stricts[lp.m + r]);
        Rat shift = sum_of(row);
        row.resize(cols);
        row[lp.m + r] = -1;
        lp.a.push_back(std::move(row));
        lp.b.push_back(Rat(1) - shift);
    }
    return lp;
}

std::vector<Rat> gaps_from_chain(const std::vector<Rat>& x, std::size_t m)
{
    std::vector<Rat> g(m);
    Rat acc = 0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += x[i] + 1;
        g[i] = acc;
    }
    return g;
}

// Scale multipliers to coprime integers; positive scaling keeps a refutation.
void normalise(FarkasCertificate& f)
{
    BigInt lcm = 1;
    auto absorb_den = [&](const Rat& v) {
        if (v != 0)
            lcm = boost::multiprecision::lcm(lcm, BigInt(boost::multiprecision::denominator(v)));
    };
    for (const auto& v : f.strict_multipliers)
        absorb_den(v);
    for (const auto& v : f.equality_multipliers)
        absorb_den(v);
    BigInt g = 0;
    auto absorb_num = [&](Rat& v) {
        v *= lcm;
        if (v != 0)
            g = boost::multiprecision::gcd(g, BigInt(abs(boost::multiprecision::numerator(v))));
    };
    for (auto& v : f.strict_multipliers)
        absorb_num(v);
    for (auto& v : f.equality_multipliers)
        absorb_num(v);
    if (g > 1) {
        for (auto& v : f.strict_multipliers)
            v /= g;
        for (auto& v : f.equality_multipliers)
            v /= g;
    }
}

Feasibility solve_chain(const GapSystem& sys)
{
    auto lp = chain_program(sys);
    Feasibility out;
    if (lp.a.empty()) {
        out.feasible = true;
        out.witness = gaps_from_chain(std::vector<Rat>(lp.m), lp.m);
        return out;
    }
    auto r = detail::phase_one(lp.a, lp.b);
    if (r.feasible) {
        out.feasible = true;
        out.witness = gaps_from_chain(r.x, lp.m);
        return out;
    }
    const std::size_t ne = sys.equalities.size();
    std::vector<Rat> chain_lambda(lp.m);
    for (std::size_t i = 0; i < lp.m; ++i) {
        Rat col = 0;
        for (std::size_t row = 0; row < lp.a.size(); ++row)
            if (lp.a[row][i] != 0)
                col += r.farkas[row] * lp.a[row][i];
        chain_lambda[i] = -col;
    }
    out.farkas.strict_multipliers = std::move(chain_lambda);
    for (std::size_t r2 = 0; r2 < lp.extras; ++r2)
        out.farkas.strict_multipliers.push_back(r.farkas[ne + r2]);
    out.farkas.equality_multipliers.assign(r.farkas.begin(), r.farkas.begin() + static_cast<long>(ne));
    return out;
}

// Free variables split as g = p - q.
Feasibility solve_split(const GapSystem& sys)
{
    const auto m = static_cast<std::size_t>(sys.num_vars);
    const std::size_t ns = sys.stricts.size();
    const std::size_t cols = 2 * m + ns;
    detail::Matrix a;
    std::vector<Rat> b;
    for (std::size_t r = 0; r < ns; ++r) {
        std::vector<Rat> row(cols);
        for (std::size_t j = 0; j < m; ++j) {
            row[j] = sys.stricts[r][j];
            row[m + j] = -sys.stricts[r][j];
        }
        row[2 * m + r] = -1;
        a.push_back(std::move(row));
        b.emplace_back(1);
    }
    for (const auto& e : sys.equalities) {
        std::vector<Rat> row(cols);
        for (std::size_t j = 0; j < m; ++j) {
            row[j] = e[j];
            row[m + j] = -e[j];
        }
        a.push_back(std::move(row));
        b.emplace_back(0);
    }
    Feasibility out;
    if (a.empty()) {
        out.feasible = true;
        out.witness.assign(m, Rat(0));
        return out;
    }
    auto r = detail::phase_one(a, b);
    if (r.feasible) {
        out.feasible = true;
        out.witness.resize(m);
        for (std::size_t j = 0; j < m; ++j)
            out.witness[j] = r.x[j] - r.x[m + j];
        return out;
    }
    out.farkas.strict_multipliers.assign(r.farkas.begin(), r.farkas.begin() + static_cast<long>(ns));
    out.farkas.equality_multipliers.assign(r.farkas.begin() + static_cast<long>(ns), r.farkas.end());
    return out;
}

} // namespace

Feasibility feasible(const GapSystem& system)
{
    system.validate();
    Feasibility out = has_chain_prefix(system) ? solve_chain(system) : solve_split(system);
    if (out.feasible) {
        if (!satisfies(system, out.witness))
            throw std::logic_error("simplex returned a point that violates the gap system");
    }
    else {
        normalise(out.farkas);
        if (!refutes(system, out.farkas))
            throw std::logic_error("simplex returned an invalid infeasibility certificate");
    }
    return out;
}

std::vector<Rat> lexmin_witness(const GapSystem& system)
{
    system.validate();
    if (!has_chain_prefix(system))
        throw std::invalid_argument("lexmin_witness needs the convexity chain as its leading strict forms");
    auto lp = chain_program(system);
    const std::size_t cols = lp.m + lp.extras;

    std::vector<Rat> x(cols);
    for (std::size_t j = 0; j < lp.m; ++j) {
        // g_j = sum_{i <= j} (y_i + 1): minimise the y part, then pin it.
        std::vector<Rat> c(cols);
        for (std::size_t i = 0; i <= j; ++i)
            c[i] = 1;
        if (lp.a.empty()) {
            x.assign(cols, Rat(0));
        }
        else {
            auto sol = detail::minimize(lp.a, lp.b, c);
            if (!sol)
                throw std::domain_error("lexmin_witness called on an infeasible system");
            x = std::move(*sol);
        }
        Rat best = 0;
        for (std::size_t i = 0; i <= j; ++i)
            best += x[i];
        lp.a.push_back(c);
        lp.b.push_back(best);
    }
    auto g = gaps_from_chain(x, lp.m);
    if (!satisfies(system, g))
        throw std::logic_error("lexicographic minimisation left the gap system");
    return g;
}

} // namespace cvxdiff
