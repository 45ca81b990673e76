#include "simplex.hpp"

#include <stdexcept>

namespace cvxdiff::detail {

namespace {

// Tableau with artificial columns [cols, cols + rows) and the right-hand
// side in the last column. Row `obj` holds reduced costs; its last entry is
// minus the current objective value.
struct Tableau
{
    std::size_t rows = 0;
    std::size_t cols = 0; // structural columns
    Matrix t;
    std::vector<Rat> obj;
    std::vector<std::size_t> basis;
    std::vector<bool> flipped;
    std::vector<bool> dead; // redundant rows dropped before phase two

    std::size_t rhs() const { return cols + rows; }

    void pivot(std::size_t r, std::size_t e)
    {
        const Rat p = t[r][e];
        for (auto& v : t[r])
            v /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || dead[i] || t[i][e] == 0)
                continue;
            const Rat f = t[i][e];
            for (std::size_t j = 0; j <= rhs(); ++j)
                if (t[r][j] != 0)
                    t[i][j] -= f * t[r][j];
        }
        if (obj[e] != 0) {
            const Rat f = obj[e];
            for (std::size_t j = 0; j <= rhs(); ++j)
                if (t[r][j] != 0)
                    obj[j] -= f * t[r][j];
        }
        basis[r] = e;
    }

    // Bland's rule over columns [0, limit). Returns false when unbounded.
    bool run(std::size_t limit)
    {
        while (true) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j)
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == limit)
                return true;

            std::size_t leave = rows;
            Rat best;
            for (std::size_t i = 0; i < rows; ++i) {
                if (dead[i] || t[i][enter] <= 0)
                    continue;
                Rat ratio = t[i][rhs()] / t[i][enter];
                if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == rows)
                return false;
            pivot(leave, enter);
        }
    }

    std::vector<Rat> primal() const
    {
        std::vector<Rat> x(cols);
        for (std::size_t i = 0; i < rows; ++i)
            if (!dead[i] && basis[i] < cols)
                x[basis[i]] = t[i][rhs()];
        return x;
    }
};

Tableau build(const Matrix& a, const std::vector<Rat>& b)
{
    Tableau tab;
    tab.rows = a.size();
    tab.cols = a.empty() ? 0 : a.front().size();
    tab.t.assign(tab.rows, std::vector<Rat>(tab.cols + tab.rows + 1));
    tab.obj.assign(tab.cols + tab.rows + 1, Rat(0));
    tab.basis.resize(tab.rows);
    tab.flipped.assign(tab.rows, false);
    tab.dead.assign(tab.rows, false);
    for (std::size_t i = 0; i < tab.rows; ++i) {
        const bool flip = b[i] < 0;
        tab.flipped[i] = flip;
        for (std::size_t j = 0; j < tab.cols; ++j)
            tab.t[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
        tab.t[i][tab.cols + i] = 1;
        tab.t[i][tab.rhs()] = flip ? Rat(-b[i]) : b[i];
        tab.basis[i] = tab.cols + i;
        for (std::size_t j = 0; j < tab.cols; ++j)
            tab.obj[j] -= tab.t[i][j];
        tab.obj[tab.rhs()] -= tab.t[i][tab.rhs()];
    }
    return tab;
}

} // namespace

PhaseOneResult phase_one(const Matrix& a, const std::vector<Rat>& b)
{
    Tableau tab = build(a, b);
    tab.run(tab.cols + tab.rows); // phase one is bounded below by zero

    PhaseOneResult out;
    if (tab.obj[tab.rhs()] == 0) {
        out.feasible = true;
        out.x = tab.primal();
        return out;
    }
    // Reduced cost of artificial i is 1 - y_i.
    out.farkas.resize(tab.rows);
    for (std::size_t i = 0; i < tab.rows; ++i) {
        Rat y = Rat(1) - tab.obj[tab.cols + i];
        out.farkas[i] = tab.flipped[i] ? Rat(-y) : y;
    }
    return out;
}

std::optional<std::vector<Rat>> minimize(const Matrix& a, const std::vector<Rat>& b, const std::vector<Rat>& c)
{
    Tableau tab = build(a, b);
    tab.run(tab.cols + tab.rows);
    if (tab.obj[tab.rhs()] != 0)
        return std::nullopt;

    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linearly dependent and get dropped.
    for (std::size_t i = 0; i < tab.rows; ++i) {
        if (tab.basis[i] < tab.cols)
            continue;
        std::size_t e = tab.cols;
        for (std::size_t j = 0; j < tab.cols; ++j)
            if (tab.t[i][j] != 0) {
                e = j;
                break;
            }
        if (e == tab.cols)
            tab.dead[i] = true;
        else
            tab.pivot(i, e);
    }

    // Phase two reduced costs.
    std::fill(tab.obj.begin(), tab.obj.end(), Rat(0));
    for (std::size_t j = 0; j < tab.cols; ++j)
        tab.obj[j] = c[j];
    for (std::size_t i = 0; i < tab.rows; ++i) {
        if (tab.dead[i])
            continue;
        const Rat cb = c[tab.basis[i]];
        if (cb == 0)
            continue;
        for (std::size_t j = 0; j <= tab.rhs(); ++j)
            if (tab.t[i][j] != 0)
                tab.obj[j] -= cb * tab.t[i][j];
    }
    if (!tab.run(tab.cols))
        throw std::domain_error("linear program is unbounded");
    return tab.primal();
}

} // namespace cvxdiff::detail
