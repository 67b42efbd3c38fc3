#pragma once

// Brute-force checks of the divisorial-valuation inequalities behind the
// lower bound for cones. A divisor G over the first blow-up is described by
// b_0 = ord_G(x_i) >= 1 and b_j = ord_G(g_j) >= 0; its log discrepancy is at
// least n b_0 + sum b_j and ord_G(I_Z) = min_j (b_0 d_j + b_j).

#include "minexp/exponent.hpp"
#include "minexp/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace minexp {

enum class ValuationBranch {
    Auto,
    /// sum d_j > n: n b_0 + sum b_j >= alpha_p * min_j (b_0 d_j + b_j).
    Threshold,
    /// sum d_j <= n with b_r = 0 imposed: the same ratio is >= alpha_r.
    LastVanishing,
};

inline const char* to_string(ValuationBranch b)
{
    switch (b) {
    case ValuationBranch::Auto: return "auto";
    case ValuationBranch::Threshold: return "threshold";
    case ValuationBranch::LastVanishing: return "last-vanishing";
    }
    return "?";
}

struct TupleCheck {
    Rational lhs; ///< n b_0 + sum b_j
    Rational rhs; ///< target * min_j (b_0 d_j + b_j)
    bool holds = false;
};

struct ValuationReport {
    ValuationBranch branch = ValuationBranch::Auto;
    Rational target;
    int bound = 0;
    std::uint64_t tuples_checked = 0;
    std::optional<std::vector<int>> violation; ///< (b_0, b_1, ..., b_r)

    bool pass() const { return !violation.has_value(); }
};

inline ValuationBranch resolve_branch(const DegreeProfile& profile, ValuationBranch requested)
{
    auto natural = profile.degree_sum() > profile.n() ? ValuationBranch::Threshold : ValuationBranch::LastVanishing;
    if (requested != ValuationBranch::Auto && requested != natural)
        throw std::invalid_argument(std::string("branch '") + to_string(requested) + "' does not apply to " +
                                    profile.str() + " (degree sum vs n selects '" + to_string(natural) + "')");
    return natural;
}

/// alpha_p in the threshold branch, alpha_r in the other; these coincide
/// with the minimum of the alpha table in both cases.
inline Rational valuation_target(const DegreeProfile& profile, ValuationBranch branch)
{
    auto table = alpha_sequence(Rational(profile.n()), profile.degrees_rational());
    return branch == ValuationBranch::Threshold ? table.alpha(table.pivot)
                                                : table.alpha(static_cast<std::size_t>(profile.r()));
}

inline TupleCheck check_valuation_tuple(const DegreeProfile& profile, const std::vector<int>& b,
                                        ValuationBranch branch = ValuationBranch::Auto)
{
    branch = resolve_branch(profile, branch);
    if (b.size() != static_cast<std::size_t>(profile.r()) + 1)
        throw std::invalid_argument("tuple must have r + 1 entries (b_0, ..., b_r)");
    if (b[0] < 1 || std::any_of(b.begin(), b.end(), [](int x) { return x < 0; }))
        throw std::invalid_argument("need b_0 >= 1 and b_j >= 0");
    if (branch == ValuationBranch::LastVanishing && b.back() != 0)
        throw std::invalid_argument("the last-vanishing branch requires b_r = 0");
    TupleCheck out;
    out.lhs = Rational(profile.n()) * b[0];
    std::optional<int> order;
    for (std::size_t j = 1; j < b.size(); ++j) {
        out.lhs += b[j];
        int v = b[0] * profile.degrees()[j - 1] + b[j];
        order = order ? std::min(*order, v) : v;
    }
    out.rhs = valuation_target(profile, branch) * *order;
    out.holds = out.lhs >= out.rhs;
    return out;
}

/// Exhaustive scan over 1 <= b_0 <= B, 0 <= b_j <= B (b_r = 0 in the
/// last-vanishing branch). Slices over b_0 run concurrently; the reported
/// violation is the first in lexicographic order.
inline ValuationReport verify_valuation_inequality(const DegreeProfile& profile, int bound,
                                                   ValuationBranch branch = ValuationBranch::Auto)
{
    if (bound < 1)
        throw std::invalid_argument("grid bound must be positive");
    ValuationReport report;
    report.branch = resolve_branch(profile, branch);
    report.bound = bound;
    report.target = valuation_target(profile, report.branch);
    const auto num = to_int64(numerator(report.target));
    const auto den = to_int64(denominator(report.target));
    const int r = profile.r();
    const int n = profile.n();
    const auto& d = profile.degrees();
    const int free_count = report.branch == ValuationBranch::LastVanishing ? r - 1 : r;

    struct Slice {
        std::uint64_t checked = 0;
        std::optional<std::vector<int>> violation;
    };
    auto scan = [&](int b0) {
        Slice s;
        std::vector<int> b(static_cast<std::size_t>(r) + 1, 0);
        b[0] = b0;
        while (true) {
            std::int64_t lhs = static_cast<std::int64_t>(n) * b0;
            std::int64_t order = INT64_MAX;
            for (int j = 1; j <= r; ++j) {
                lhs += b[static_cast<std::size_t>(j)];
                order = std::min<std::int64_t>(order, static_cast<std::int64_t>(b0) * d[static_cast<std::size_t>(j - 1)] +
                                                          b[static_cast<std::size_t>(j)]);
            }
            ++s.checked;
            if (den * lhs < num * order) {
                s.violation = b;
                return s;
            }
            int j = 1;
            while (j <= free_count && b[static_cast<std::size_t>(j)] == bound)
                b[static_cast<std::size_t>(j++)] = 0;
            if (j > free_count)
                return s;
            ++b[static_cast<std::size_t>(j)];
        }
    };

    std::vector<std::future<Slice>> slices;
    for (int b0 = 1; b0 <= bound; ++b0)
        slices.push_back(std::async(std::launch::async, scan, b0));
    for (auto& f : slices) {
        auto s = f.get();
        report.tuples_checked += s.checked;
        if (!report.violation && s.violation)
            report.violation = s.violation;
    }
    return report;
}

struct BetaChainReport {
    std::vector<int> chain;          ///< 1-based indices k_1 < ... < k_s = r
    std::vector<Rational> betas;     ///< beta_{k_q}, aligned with `chain`
    std::vector<bool> links;         ///< beta_{k_q} >= min(alpha_{k_q}, beta_{k_{q+1}}) for q < s
    bool terminal = false;           ///< beta_{k_s} >= min(alpha_r, r)
    bool head = false;               ///< beta_{k_1} >= min(alpha_p, r)

    bool pass() const
    {
        return terminal && head && std::all_of(links.begin(), links.end(), [](bool b) { return b; });
    }
};

/// Builds the index chain by the max-argmin rule on d_j + u_j and evaluates
/// beta_k = (n + k u_k + sum_{j<=k} (d_k - d_j) + sum_{j>k} u_j) / (d_k + u_k).
inline BetaChainReport beta_chain(const DegreeProfile& profile, const std::vector<Rational>& u)
{
    const int r = profile.r();
    if (u.size() != static_cast<std::size_t>(r))
        throw std::invalid_argument("u must have one entry per equation");
    for (const auto& x : u)
        if (x < 0)
            throw std::invalid_argument("u entries must be nonnegative");
    const auto& d = profile.degrees();
    auto at = [](const auto& v, int i) -> const auto& { return v[static_cast<std::size_t>(i - 1)]; };
    auto table = alpha_sequence(Rational(profile.n()), profile.degrees_rational());

    BetaChainReport out;
    int previous = 0;
    while (previous < r) {
        std::optional<Rational> best;
        int arg = 0;
        for (int j = previous + 1; j <= r; ++j) {
            Rational v = at(d, j) + at(u, j);
            if (!best || v <= *best) {
                if (!best || v < *best)
                    best = v;
                arg = j;
            }
        }
        out.chain.push_back(arg);
        previous = arg;
    }

    for (int kq : out.chain) {
        Rational numer = Rational(profile.n()) + Rational(kq) * at(u, kq);
        for (int j = 1; j <= kq; ++j)
            numer += at(d, kq) - at(d, j);
        for (int j = kq + 1; j <= r; ++j)
            numer += at(u, j);
        out.betas.push_back(numer / (at(d, kq) + at(u, kq)));
    }

    for (std::size_t q = 0; q + 1 < out.chain.size(); ++q)
        out.links.push_back(out.betas[q] >= std::min(table.alpha(static_cast<std::size_t>(out.chain[q])), out.betas[q + 1]));
    out.terminal = out.betas.back() >= std::min(table.alpha(static_cast<std::size_t>(r)), Rational(r));
    out.head = out.betas.front() >= std::min(table.minimum, Rational(r));
    return out;
}

struct BetaGridReport {
    std::uint64_t points_checked = 0;
    std::optional<std::vector<Rational>> violation;

    bool pass() const { return !violation.has_value(); }
};

/// Runs beta_chain on every u in {0, 1/steps, 2/steps, ..., max}^r.
inline BetaGridReport scan_beta_grid(const DegreeProfile& profile, int max, int steps = 2)
{
    if (max < 0 || steps < 1)
        throw std::invalid_argument("beta grid needs max >= 0 and steps >= 1");
    const int r = profile.r();
    const int top = max * steps;
    BetaGridReport out;
    std::vector<int> idx(static_cast<std::size_t>(r), 0);
    std::vector<Rational> u(static_cast<std::size_t>(r));
    while (true) {
        for (std::size_t j = 0; j < idx.size(); ++j)
            u[j] = Rational(idx[j], steps);
        ++out.points_checked;
        if (!beta_chain(profile, u).pass()) {
            out.violation = u;
            return out;
        }
        std::size_t j = 0;
        while (j < idx.size() && idx[j] == top)
            idx[j++] = 0;
        if (j == idx.size())
            return out;
        ++idx[j];
    }
}

} // namespace minexp
