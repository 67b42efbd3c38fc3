#pragma once

// Newton polyhedron P = conv(support) + R_{>=0}^n and its diagonal value
// c = min { t : (t, ..., t) in P }.

#include "minexp/exponent.hpp"
#include "minexp/poly.hpp"
#include "minexp/rational.hpp"
#include "minexp/simplex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace minexp {

class MonomialSupport {
public:
    MonomialSupport(std::size_t n, std::vector<ExponentVector> points) : n_(n), points_(std::move(points))
    {
        if (n_ == 0)
            throw std::invalid_argument("support dimension must be positive");
        if (points_.empty())
            throw std::invalid_argument("support must be nonempty");
        for (const auto& u : points_)
            if (u.size() != n_)
                throw std::invalid_argument("support point has length " + std::to_string(u.size()) +
                                            ", expected " + std::to_string(n_));
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    }

    static MonomialSupport of(const Poly& f)
    {
        if (f.is_zero())
            throw std::invalid_argument("the zero polynomial has no Newton polyhedron");
        return MonomialSupport(f.variable_count(), f.support());
    }

    std::size_t dimension() const { return n_; }
    const std::vector<ExponentVector>& points() const { return points_; }

    bool contains_origin() const
    {
        return std::any_of(points_.begin(), points_.end(), [](const ExponentVector& u) {
            return std::all_of(u.begin(), u.end(), [](auto e) { return e == 0; });
        });
    }

private:
    std::size_t n_;
    std::vector<ExponentVector> points_;
};

/// The diagonal value with two certificates: convex weights `lambda` (one per
/// support point, in `points()` order) placing a point of conv(support) below
/// (c, ..., c), and a supporting functional `hyperplane` with
/// hyperplane.u >= c * sum(hyperplane) for every support point.
struct DiagonalResult {
    Rational c;
    std::vector<Rational> lambda;
    std::vector<Rational> hyperplane;
};

/// Solves min t s.t. sum(lambda) = 1, sum_u lambda_u u_i <= t, lambda >= 0.
inline DiagonalResult diagonal_entry(const MonomialSupport& support)
{
    const auto& pts = support.points();
    const std::size_t m = pts.size(), n = support.dimension();
    // columns: lambda_0..lambda_{m-1}, t, s_1..s_n
    const std::size_t vars = m + 1 + n;
    lp::StandardForm<Rational> lp;
    lp.c.assign(vars, Rational(0));
    lp.c[m] = 1;
    std::vector<Rational> convexity(vars, Rational(0));
    for (std::size_t k = 0; k < m; ++k)
        convexity[k] = 1;
    lp.A.push_back(convexity);
    lp.b.push_back(1);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> row(vars, Rational(0));
        for (std::size_t k = 0; k < m; ++k)
            row[k] = pts[k][i];
        row[m] = -1;
        row[m + 1 + i] = 1;
        lp.A.push_back(std::move(row));
        lp.b.push_back(0);
    }

    auto sol = lp::solve(lp);
    if (sol.status != lp::Status::Optimal)
        throw std::logic_error("diagonal program must have an optimum");

    DiagonalResult out;
    out.c = sol.objective;
    out.lambda.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m));
    if (out.c == 0) {
        // origin in the support: t is degenerate and the solver dual may be
        // zero, but any positive functional attains 0 there
        out.hyperplane.assign(n, Rational(1));
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out.hyperplane.push_back(-sol.dual[i + 1]);
    return out;
}

/// Exact re-verification of both certificates, without the solver.
inline bool certificate_holds(const MonomialSupport& support, const DiagonalResult& result)
{
    const auto& pts = support.points();
    const std::size_t n = support.dimension();
    if (result.lambda.size() != pts.size() || result.hyperplane.size() != n)
        return false;

    Rational total = 0;
    std::vector<Rational> combo(n, Rational(0));
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (result.lambda[k] < 0)
            return false;
        total += result.lambda[k];
        for (std::size_t i = 0; i < n; ++i)
            combo[i] += result.lambda[k] * pts[k][i];
    }
    if (total != 1)
        return false;
    bool tight = false;
    for (const auto& x : combo) {
        if (x > result.c)
            return false;
        tight = tight || x == result.c;
    }
    if (!tight)
        return false;

    Rational mass = 0;
    for (const auto& h : result.hyperplane) {
        if (h < 0)
            return false;
        mass += h;
    }
    if (mass == 0)
        return false;
    std::optional<Rational> floor;
    for (const auto& u : pts) {
        Rational v = 0;
        for (std::size_t i = 0; i < n; ++i)
            v += result.hyperplane[i] * u[i];
        if (!floor || v < *floor)
            floor = v;
    }
    return *floor == result.c * mass;
}

/// 1/c: the minimal exponent of an isolated singularity that is nondegenerate
/// with respect to this Newton polyhedron. The caller attests both hypotheses.
inline Rational newton_exponent(const MonomialSupport& support)
{
    if (support.contains_origin())
        throw std::domain_error("support contains the origin: the function is a unit, not in the maximal ideal");
    return 1 / diagonal_entry(support).c;
}

/// (w_1 + ... + w_n) / wt(f) for f singular at the origin.
inline UpperBound weighted_order_bound(const Poly& f, const WeightVector& w)
{
    if (f.is_zero())
        throw std::invalid_argument("the zero polynomial has no weighted order");
    for (const auto& [u, c] : f.terms())
        if (total_degree(u) <= 1)
            throw std::domain_error("polynomial has a term of degree <= 1, so the origin is not a singular point");
    return {w.sum() / weighted_order(f, w)};
}

} // namespace minexp
