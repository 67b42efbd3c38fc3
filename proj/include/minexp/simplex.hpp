#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace minexp::lp {

/// minimize c.x subject to A x = b, x >= 0.
template <class T>
struct StandardForm {
    std::vector<std::vector<T>> A;
    std::vector<T> b;
    std::vector<T> c;
};

enum class Status { Optimal, Infeasible, Unbounded };

template <class T>
struct Solution {
    Status status = Status::Infeasible;
    std::vector<T> x;
    /// Equality-constraint multipliers y with A^T y <= c and b.y = c.x at
    /// optimum.
    std::vector<T> dual;
    T objective{};
    std::size_t pivots = 0;
};

/// Two-phase dense tableau simplex with Bland's rule. Intended for exact
/// field types; no tolerances are used anywhere.
template <class T>
class Tableau {
public:
    explicit Tableau(const StandardForm<T>& lp) : rows_(lp.b.size()), vars_(lp.c.size())
    {
        if (lp.A.size() != rows_)
            throw std::invalid_argument("constraint matrix and right-hand side disagree");
        for (const auto& row : lp.A)
            if (row.size() != vars_)
                throw std::invalid_argument("ragged constraint matrix");

        cols_ = vars_ + rows_;
        t_.assign(rows_ + 1, std::vector<T>(cols_ + 1, T(0)));
        sign_.assign(rows_, T(1));
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (lp.b[i] < T(0))
                sign_[i] = T(-1);
            for (std::size_t j = 0; j < vars_; ++j)
                t_[i][j] = sign_[i] * lp.A[i][j];
            t_[i][vars_ + i] = T(1);
            t_[i][cols_] = sign_[i] * lp.b[i];
            basis_[i] = vars_ + i;
        }
        cost_ = lp.c;
    }

    Solution<T> solve()
    {
        Solution<T> out;

        // Phase I: minimize the sum of artificials.
        auto& z = t_[rows_];
        std::fill(z.begin(), z.end(), T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j <= cols_; ++j)
                if (j < vars_ || j == cols_)
                    z[j] -= t_[i][j];
        if (!iterate(cols_, out.pivots))
            throw std::logic_error("phase I cannot be unbounded");
        if (z[cols_] != T(0)) {
            out.status = Status::Infeasible;
            return out;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < vars_)
                continue;
            for (std::size_t j = 0; j < vars_; ++j)
                if (t_[i][j] != T(0)) {
                    pivot(i, j);
                    ++out.pivots;
                    break;
                }
        }

        // Phase II over the original columns only.
        std::fill(z.begin(), z.end(), T(0));
        for (std::size_t j = 0; j < vars_; ++j)
            z[j] = cost_[j];
        for (std::size_t i = 0; i < rows_; ++i) {
            T cb = basis_cost(i);
            if (cb == T(0))
                continue;
            for (std::size_t j = 0; j <= cols_; ++j)
                z[j] -= cb * t_[i][j];
        }
        if (!iterate(vars_, out.pivots)) {
            out.status = Status::Unbounded;
            return out;
        }

        out.status = Status::Optimal;
        out.x.assign(vars_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < vars_)
                out.x[basis_[i]] = t_[i][cols_];
        out.objective = T(0);
        for (std::size_t j = 0; j < vars_; ++j)
            out.objective += cost_[j] * out.x[j];
        out.dual.assign(rows_, T(0));
        for (std::size_t k = 0; k < rows_; ++k) {
            T y = T(0);
            for (std::size_t i = 0; i < rows_; ++i)
                y += basis_cost(i) * t_[i][vars_ + k];
            out.dual[k] = sign_[k] * y;
        }
        return out;
    }

private:
    T basis_cost(std::size_t row) const { return basis_[row] < vars_ ? cost_[basis_[row]] : T(0); }

    // Returns false when the objective is unbounded below.
    bool iterate(std::size_t entering_limit, std::size_t& pivots)
    {
        const auto& z = t_[rows_];
        while (true) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < entering_limit; ++j)
                if (z[j] < T(0)) {
                    entering = j;
                    break;
                }
            if (!entering)
                return true;
            std::optional<std::size_t> leaving;
            T best{};
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!(t_[i][*entering] > T(0)))
                    continue;
                T ratio = t_[i][cols_] / t_[i][*entering];
                if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best = ratio;
                }
            }
            if (!leaving)
                return false;
            pivot(*leaving, *entering);
            ++pivots;
        }
    }

    void pivot(std::size_t row, std::size_t col)
    {
        T p = t_[row][col];
        for (auto& v : t_[row])
            v /= p;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == row || t_[i][col] == T(0))
                continue;
            T factor = t_[i][col];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (t_[row][j] != T(0))
                    t_[i][j] -= factor * t_[row][j];
        }
        basis_[row] = col;
    }

    std::size_t rows_, vars_, cols_ = 0;
    std::vector<std::vector<T>> t_;
    std::vector<T> sign_;
    std::vector<T> cost_;
    std::vector<std::size_t> basis_;
};

template <class T>
Solution<T> solve(const StandardForm<T>& lp)
{
    return Tableau<T>(lp).solve();
}

} // namespace minexp::lp
