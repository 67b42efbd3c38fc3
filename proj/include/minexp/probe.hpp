#pragma once

// Finite-field screen for the smooth + simple-normal-crossings hypothesis on
// a family of homogeneous polynomials. Evidence only: a PASS proves nothing
// in characteristic zero.

#include "minexp/poly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minexp {

enum class ProbeVerdict { Pass, Fail, Inconclusive };

inline const char* to_string(ProbeVerdict v)
{
    switch (v) {
    case ProbeVerdict::Pass: return "PASS";
    case ProbeVerdict::Fail: return "FAIL";
    case ProbeVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

struct ProbeReport {
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
    std::uint64_t points_checked = 0;
    std::uint64_t points_total = 0;
    /// Coordinates in F_q of the first failing point, and the 0-based indices
    /// of the polynomials vanishing there.
    std::vector<std::uint32_t> witness;
    std::vector<std::size_t> vanishing;
    /// True when the witness, read as an integer point, is a counterexample
    /// over the rationals as well.
    bool witness_lifts = false;
    std::string reason;
};

namespace detail {

inline bool is_prime(unsigned q)
{
    if (q < 2)
        return false;
    for (unsigned d = 2; d * d <= q; ++d)
        if (q % d == 0)
            return false;
    return true;
}

inline unsigned inverse_mod(unsigned a, unsigned q)
{
    unsigned result = 1, base = a % q, e = q - 2;
    while (e) {
        if (e & 1)
            result = result * base % q;
        base = base * base % q;
        e >>= 1;
    }
    return result;
}

inline std::optional<unsigned> reduce_mod(const Rational& c, unsigned q)
{
    Integer num = numerator(c) % q, den = denominator(c) % q;
    if (num < 0)
        num += q;
    if (den == 0)
        return std::nullopt;
    return num.convert_to<unsigned>() * inverse_mod(den.convert_to<unsigned>(), q) % q;
}

inline unsigned eval_mod(const std::vector<std::pair<ExponentVector, unsigned>>& terms,
                         const std::vector<unsigned>& point, unsigned q)
{
    unsigned total = 0;
    for (const auto& [u, c] : terms) {
        unsigned t = c;
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::uint32_t k = 0; k < u[i]; ++k)
                t = t * point[i] % q;
        total = (total + t) % q;
    }
    return total;
}

inline std::size_t rank_mod(std::vector<std::vector<unsigned>> rows, unsigned q)
{
    std::size_t rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[pivot], rows[rank]);
        unsigned inv = inverse_mod(rows[rank][col], q);
        for (auto& x : rows[rank])
            x = x * inv % q;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0)
                continue;
            unsigned factor = rows[r][col];
            for (std::size_t k = 0; k < cols; ++k)
                rows[r][k] = (rows[r][k] + q * q - factor * rows[rank][k]) % q;
        }
        ++rank;
    }
    return rank;
}

inline std::size_t rank_rational(std::vector<std::vector<Rational>> rows)
{
    std::size_t rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0)
                continue;
            Rational factor = rows[r][col] / rows[rank][col];
            for (std::size_t k = col; k < cols; ++k)
                rows[r][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

/// Scans F_q^n minus the origin. At every point on at least one of the
/// hypersurfaces, the gradients of the polynomials vanishing there must be
/// linearly independent. Desk scale only: n <= 5, q <= 13.
inline ProbeReport probe_transversality(std::span<const Poly> fs, unsigned q, std::uint64_t limit)
{
    detail::require_common_variables(fs);
    if (!detail::is_prime(q))
        throw std::invalid_argument("field size " + std::to_string(q) + " is not prime");
    if (q > 13)
        throw std::invalid_argument("field size must be at most 13");
    const std::size_t n = fs.front().variable_count();
    if (n == 0 || n > 5)
        throw std::invalid_argument("probe supports 1 to 5 variables");
    for (const auto& f : fs) {
        if (f.is_zero() || !is_homogeneous(f, WeightVector::ones(n)))
            throw std::invalid_argument("probe requires nonzero homogeneous polynomials: " + f.str());
    }

    ProbeReport report;
    report.points_total = 1;
    for (std::size_t i = 0; i < n; ++i)
        report.points_total *= q;
    report.points_total -= 1;

    using ModTerms = std::vector<std::pair<ExponentVector, unsigned>>;
    auto reduce = [&](const Poly& p) -> std::optional<ModTerms> {
        ModTerms out;
        for (const auto& [u, c] : p.terms()) {
            auto m = detail::reduce_mod(c, q);
            if (!m)
                return std::nullopt;
            if (*m != 0)
                out.emplace_back(u, *m);
        }
        return out;
    };

    std::vector<ModTerms> values;
    std::vector<std::vector<ModTerms>> gradients;
    for (const auto& f : fs) {
        auto v = reduce(f);
        if (!v) {
            report.reason = "a coefficient denominator is divisible by " + std::to_string(q);
            return report;
        }
        values.push_back(std::move(*v));
        gradients.emplace_back();
        for (std::size_t i = 0; i < n; ++i)
            gradients.back().push_back(*reduce(f.derivative(i)));
    }

    std::vector<unsigned> point(n, 0);
    auto advance = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            if (++point[i] < q)
                return true;
            point[i] = 0;
        }
        return false;
    };

    while (advance()) {
        if (report.points_checked >= limit) {
            report.reason = "point budget of " + std::to_string(limit) + " exhausted";
            return report;
        }
        ++report.points_checked;
        std::vector<std::size_t> vanishing;
        for (std::size_t j = 0; j < values.size(); ++j)
            if (detail::eval_mod(values[j], point, q) == 0)
                vanishing.push_back(j);
        if (vanishing.empty())
            continue;
        std::vector<std::vector<unsigned>> rows;
        for (auto j : vanishing) {
            rows.emplace_back();
            for (std::size_t i = 0; i < n; ++i)
                rows.back().push_back(detail::eval_mod(gradients[j][i], point, q));
        }
        if (detail::rank_mod(rows, q) == vanishing.size())
            continue;

        report.verdict = ProbeVerdict::Fail;
        report.witness.assign(point.begin(), point.end());
        report.vanishing = vanishing;
        report.reason = "gradients of the vanishing polynomials are dependent mod " + std::to_string(q);

        std::vector<Rational> lifted(point.begin(), point.end());
        std::vector<std::vector<Rational>> rows_q;
        for (std::size_t j = 0; j < fs.size(); ++j) {
            if (fs[j].evaluate(lifted) != 0)
                continue;
            rows_q.emplace_back();
            for (std::size_t i = 0; i < n; ++i)
                rows_q.back().push_back(fs[j].derivative(i).evaluate(lifted));
        }
        report.witness_lifts = !rows_q.empty() && detail::rank_rational(rows_q) < rows_q.size();
        return report;
    }
    report.verdict = ProbeVerdict::Pass;
    report.reason = "no dependent gradients found over F_" + std::to_string(q);
    return report;
}

} // namespace minexp
