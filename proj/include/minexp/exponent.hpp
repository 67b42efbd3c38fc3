#pragma once

// Closed-form minimal exponents of cones over transversal complete
// intersections, the associated log canonical threshold and predicates, and
// the weighted-homogeneous upper bound.

#include "minexp/poly.hpp"
#include "minexp/rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minexp {

/// Ambient dimension n and the sorted degrees 2 <= d_1 <= ... <= d_r, r <= n.
class DegreeProfile {
public:
    DegreeProfile(int n, std::vector<int> degrees) : n_(n), degrees_(std::move(degrees))
    {
        if (n_ < 1)
            throw std::invalid_argument("ambient dimension must be positive");
        if (degrees_.empty())
            throw std::invalid_argument("degree list must be nonempty");
        if (static_cast<int>(degrees_.size()) > n_)
            throw std::invalid_argument("codimension r = " + std::to_string(degrees_.size()) +
                                        " exceeds ambient dimension n = " + std::to_string(n_));
        if (!std::is_sorted(degrees_.begin(), degrees_.end()))
            throw std::invalid_argument("degrees must be sorted ascending");
        if (degrees_.front() < 2)
            throw std::invalid_argument("degrees must be at least 2; reduce linear equations first");
    }

    int n() const { return n_; }
    int r() const { return static_cast<int>(degrees_.size()); }
    const std::vector<int>& degrees() const { return degrees_; }
    int degree_sum() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }

    std::vector<Rational> degrees_rational() const { return {degrees_.begin(), degrees_.end()}; }

    friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;

    std::string str() const
    {
        std::string s = "n=" + std::to_string(n_) + " d=[";
        for (std::size_t i = 0; i < degrees_.size(); ++i)
            s += (i ? "," : "") + std::to_string(degrees_[i]);
        return s + "]";
    }

private:
    int n_;
    std::vector<int> degrees_;
};

/// alpha_i = i + (w - d_1 - ... - d_i) / d_i, with the pivot index p
/// (1-based) and the minimum alpha_p.
struct AlphaTable {
    std::vector<Rational> alphas;
    std::size_t pivot = 0;
    Rational minimum;

    const Rational& alpha(std::size_t i) const { return alphas.at(i - 1); }
};

/// Weights w_1..w_n and the sorted weighted orders of the defining equations.
class WeightedProfile {
public:
    WeightedProfile(WeightVector weights, std::vector<Rational> orders)
        : weights_(std::move(weights)), orders_(std::move(orders))
    {
        if (orders_.empty())
            throw std::invalid_argument("order list must be nonempty");
        if (!std::is_sorted(orders_.begin(), orders_.end()))
            throw std::invalid_argument("weighted orders must be sorted ascending");
        if (orders_.front() <= 0)
            throw std::invalid_argument("weighted orders must be positive");
    }

    const WeightVector& weights() const { return weights_; }
    const std::vector<Rational>& orders() const { return orders_; }

private:
    WeightVector weights_;
    std::vector<Rational> orders_;
};

/// A value known only to bound the minimal exponent from above.
struct UpperBound {
    Rational value;
};

inline AlphaTable alpha_sequence(const Rational& w, std::span<const Rational> degrees)
{
    if (degrees.empty())
        throw std::invalid_argument("degree list must be nonempty");
    if (!std::is_sorted(degrees.begin(), degrees.end()))
        throw std::invalid_argument("degrees must be sorted ascending");
    if (degrees.front() <= 0)
        throw std::invalid_argument("degrees must be positive");

    AlphaTable table;
    Rational partial = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        partial += degrees[i];
        table.alphas.push_back(Rational(static_cast<long>(i + 1)) + (w - partial) / degrees[i]);
        if (table.pivot == 0 && partial > w)
            table.pivot = i + 1;
    }
    if (table.pivot == 0)
        table.pivot = degrees.size();
    table.minimum = *std::min_element(table.alphas.begin(), table.alphas.end());
    if (table.alpha(table.pivot) != table.minimum)
        throw std::logic_error("pivot rule disagrees with the direct minimum");
    return table;
}

inline Rational minimal_exponent_cone(const DegreeProfile& profile)
{
    auto degrees = profile.degrees_rational();
    return alpha_sequence(Rational(profile.n()), degrees).minimum;
}

inline Rational lct_cone(const DegreeProfile& profile)
{
    return std::min(minimal_exponent_cone(profile), Rational(profile.r()));
}

struct SingularityPredicates {
    bool rational_singularities = false;
    bool log_canonical = false;
    bool exceeds_lct = false;
};

/// Derived from the exponent: rational iff alpha > r, (X, rZ) log canonical
/// iff lct(X, Z) = r, i.e. alpha >= r. Cross-checked against the degree-sum
/// criteria.
inline SingularityPredicates predicates(const DegreeProfile& profile)
{
    auto alpha = minimal_exponent_cone(profile);
    Rational r = profile.r();
    SingularityPredicates out;
    out.exceeds_lct = alpha > r;
    out.rational_singularities = alpha > r;
    out.log_canonical = lct_cone(profile) >= r;

    int sum = profile.degree_sum();
    if (out.rational_singularities != (sum < profile.n()) || out.log_canonical != (sum <= profile.n()))
        throw std::logic_error("exponent-derived predicates disagree with degree criteria for " + profile.str());
    return out;
}

inline UpperBound weighted_upper_bound(const WeightedProfile& profile)
{
    return {alpha_sequence(profile.weights().sum(), profile.orders()).minimum};
}

/// Outcome of stripping degree-one equations: either a smooth subscheme, or
/// a reduced profile whose exponent must be shifted by `shift`.
struct NormalizedProfile {
    std::optional<DegreeProfile> profile;
    int shift = 0;

    bool smooth() const { return !profile.has_value(); }
};

/// Linear equations cut a linear subspace; each removes one ambient
/// dimension and adds one to the exponent.
inline NormalizedProfile normalize_degree_one(int n, std::vector<int> degrees)
{
    std::sort(degrees.begin(), degrees.end());
    if (degrees.empty() || degrees.front() < 1)
        throw std::invalid_argument("degrees must be positive integers");
    if (static_cast<int>(degrees.size()) > n)
        throw std::invalid_argument("codimension r = " + std::to_string(degrees.size()) +
                                    " exceeds ambient dimension n = " + std::to_string(n));
    int q = static_cast<int>(std::count(degrees.begin(), degrees.end(), 1));
    NormalizedProfile out;
    out.shift = q;
    if (q == static_cast<int>(degrees.size()))
        return out;
    if (q >= n)
        throw std::invalid_argument("inconsistent codimension: " + std::to_string(q) +
                                    " linear equations in dimension " + std::to_string(n));
    out.profile.emplace(n - q, std::vector<int>(degrees.begin() + q, degrees.end()));
    return out;
}

/// Exponent for arbitrary positive degrees, infinite for a linear subspace.
inline ExtendedRational minimal_exponent(int n, std::vector<int> degrees)
{
    auto normalized = normalize_degree_one(n, std::move(degrees));
    if (normalized.smooth())
        return ExtendedRational::infinity();
    return ExtendedRational(minimal_exponent_cone(*normalized.profile) + normalized.shift);
}

} // namespace minexp
