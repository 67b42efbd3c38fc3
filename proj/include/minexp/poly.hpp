#pragma once

#include "minexp/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace minexp {

/// Exponents of a monomial, one entry per variable of the owning context.
using ExponentVector = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const ExponentVector& u)
{
    return std::accumulate(u.begin(), u.end(), std::uint64_t{0});
}

/// Graded lexicographic order: total degree first, then lexicographic.
struct GradedLexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const
    {
        auto da = total_degree(a), db = total_degree(b);
        if (da != db)
            return da < db;
        return a < b;
    }
};

/// Syntax error in polynomial text, carrying the 0-based character offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Positive rational grading deg(x_i) = w_i.
class WeightVector {
public:
    explicit WeightVector(std::vector<Rational> weights) : weights_(std::move(weights))
    {
        if (weights_.empty())
            throw std::invalid_argument("weight vector must be nonempty");
        for (const auto& w : weights_)
            if (w <= 0)
                throw std::invalid_argument("weights must be positive, got " + w.str());
    }

    static WeightVector ones(std::size_t n) { return WeightVector(std::vector<Rational>(n, Rational(1))); }

    std::size_t size() const { return weights_.size(); }
    const Rational& operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<Rational>& values() const { return weights_; }

    Rational sum() const { return std::accumulate(weights_.begin(), weights_.end(), Rational(0)); }

    Rational degree(const ExponentVector& u) const
    {
        Rational d = 0;
        for (std::size_t i = 0; i < u.size(); ++i)
            d += weights_[i] * u[i];
        return d;
    }

    /// Appends weights for extra variables (used for the cone coordinates).
    WeightVector extended(std::span<const Rational> extra) const
    {
        auto w = weights_;
        w.insert(w.end(), extra.begin(), extra.end());
        return WeightVector(std::move(w));
    }

private:
    std::vector<Rational> weights_;
};

/// Sparse polynomial with exact rational coefficients over a fixed, ordered
/// list of named variables. Zero coefficients are never stored.
class Poly {
public:
    using TermMap = std::map<ExponentVector, Rational, GradedLexLess>;

    explicit Poly(std::vector<std::string> variables) : variables_(std::move(variables))
    {
        for (std::size_t i = 0; i < variables_.size(); ++i)
            for (std::size_t j = i + 1; j < variables_.size(); ++j)
                if (variables_[i] == variables_[j])
                    throw std::invalid_argument("duplicate variable name '" + variables_[i] + "'");
    }

    static Poly monomial(std::vector<std::string> variables, ExponentVector u, Rational coefficient = 1)
    {
        Poly p(std::move(variables));
        p.add_term(std::move(u), coefficient);
        return p;
    }

    const std::vector<std::string>& variables() const { return variables_; }
    std::size_t variable_count() const { return variables_.size(); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::vector<ExponentVector> support() const
    {
        std::vector<ExponentVector> out;
        out.reserve(terms_.size());
        for (const auto& [u, c] : terms_)
            out.push_back(u);
        return out;
    }

    void add_term(ExponentVector u, const Rational& coefficient)
    {
        if (u.size() != variables_.size())
            throw std::invalid_argument("exponent vector length does not match variable count");
        if (coefficient == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(std::move(u), coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        a.require_same_variables(b);
        Poly out = a;
        for (const auto& [u, c] : b.terms_)
            out.add_term(u, c);
        return out;
    }

    friend Poly operator-(const Poly& a, const Poly& b)
    {
        a.require_same_variables(b);
        Poly out = a;
        for (const auto& [u, c] : b.terms_)
            out.add_term(u, -c);
        return out;
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        a.require_same_variables(b);
        Poly out(a.variables_);
        for (const auto& [u, c] : a.terms_)
            for (const auto& [v, d] : b.terms_) {
                ExponentVector w(u.size());
                for (std::size_t i = 0; i < u.size(); ++i)
                    w[i] = u[i] + v[i];
                out.add_term(std::move(w), c * d);
            }
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        return a.variables_ == b.variables_ && a.terms_ == b.terms_;
    }

    /// Re-expresses this polynomial over a larger variable list; every current
    /// variable must appear (by name) in `variables`.
    Poly embedded(const std::vector<std::string>& variables) const
    {
        std::vector<std::size_t> slot(variables_.size());
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            auto it = std::find(variables.begin(), variables.end(), variables_[i]);
            if (it == variables.end())
                throw std::invalid_argument("variable '" + variables_[i] + "' missing from target list");
            slot[i] = static_cast<std::size_t>(it - variables.begin());
        }
        Poly out(variables);
        for (const auto& [u, c] : terms_) {
            ExponentVector v(variables.size(), 0);
            for (std::size_t i = 0; i < u.size(); ++i)
                v[slot[i]] = u[i];
            out.add_term(std::move(v), c);
        }
        return out;
    }

    Poly derivative(std::size_t var) const
    {
        Poly out(variables_);
        for (const auto& [u, c] : terms_) {
            if (u[var] == 0)
                continue;
            auto v = u;
            --v[var];
            out.add_term(std::move(v), c * u[var]);
        }
        return out;
    }

    Rational evaluate(std::span<const Rational> point) const
    {
        if (point.size() != variables_.size())
            throw std::invalid_argument("evaluation point has wrong dimension");
        Rational total = 0;
        for (const auto& [u, c] : terms_) {
            Rational term = c;
            for (std::size_t i = 0; i < u.size(); ++i)
                for (std::uint32_t k = 0; k < u[i]; ++k)
                    term *= point[i];
            total += term;
        }
        return total;
    }

    /// Renders in ascending graded-lex order; the output re-parses to the same
    /// term map.
    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [u, c] : terms_) {
            Rational mag = c < 0 ? Rational(-c) : c;
            if (first)
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < u.size(); ++i) {
                if (u[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += '*';
                mono += variables_[i];
                if (u[i] > 1)
                    mono += '^' + std::to_string(u[i]);
            }
            if (mono.empty())
                out += mag.str();
            else if (mag == 1)
                out += mono;
            else
                out += mag.str() + '*' + mono;
        }
        return out;
    }

private:
    void require_same_variables(const Poly& other) const
    {
        if (variables_ != other.variables_)
            throw std::invalid_argument("polynomials are over different variable lists");
    }

    std::vector<std::string> variables_;
    TermMap terms_;
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, const std::vector<std::string>& variables)
        : text_(text), variables_(variables)
    {
    }

    Poly parse()
    {
        Poly out(variables_);
        skip_ws();
        if (at_end())
            throw ParseError("empty polynomial", pos_);
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            auto [u, c] = parse_term();
            out.add_term(std::move(u), c * sign);
            skip_ws();
            if (at_end())
                break;
        }
        return out;
    }

private:
    std::pair<ExponentVector, Rational> parse_term()
    {
        ExponentVector u(variables_.size(), 0);
        Rational coefficient = 1;
        bool need_factor = true;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coefficient = parse_coefficient();
            skip_ws();
            if (peek() != '*')
                return {u, coefficient};
            ++pos_;
            skip_ws();
        }
        while (need_factor) {
            parse_factor(u);
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            } else {
                need_factor = false;
            }
        }
        return {u, coefficient};
    }

    Rational parse_coefficient()
    {
        Integer num = parse_unsigned();
        skip_ws();
        if (peek() != '/')
            return Rational(num);
        ++pos_;
        skip_ws();
        auto den_pos = pos_;
        Integer den = parse_unsigned();
        if (den == 0)
            throw ParseError("zero denominator in coefficient", den_pos);
        return Rational(num, den);
    }

    Integer parse_unsigned()
    {
        auto start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected integer", pos_);
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    void parse_factor(ExponentVector& u)
    {
        auto start = pos_;
        auto is_head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
        auto is_tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
        if (!is_head(peek()))
            throw ParseError("expected variable name", pos_);
        while (is_tail(peek()))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        auto it = std::find(variables_.begin(), variables_.end(), name);
        if (it == variables_.end())
            throw ParseError("unknown variable '" + name + "'", start);
        std::uint32_t power = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            auto exp_pos = pos_;
            Integer k = parse_unsigned();
            if (k == 0 || k > Integer(1u << 20))
                throw ParseError("exponent must be a positive integer", exp_pos);
            power = k.convert_to<std::uint32_t>();
        }
        u[static_cast<std::size_t>(it - variables_.begin())] += power;
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    std::string_view text_;
    const std::vector<std::string>& variables_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses `text` over the declared variables. Terms are joined by `+`/`-`; a
/// term is an optional coefficient `a` or `a/b`, then `*`-joined factors
/// `var` or `var^k`.
inline Poly parse_poly(std::string_view text, const std::vector<std::string>& variables)
{
    return detail::PolyParser(text, variables).parse();
}

/// Names `prefix1`, ..., `prefixN`.
inline std::vector<std::string> numbered_names(std::string_view prefix, std::size_t count, std::size_t skip = 0)
{
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= count; ++i)
        if (i != skip)
            out.push_back(std::string(prefix) + std::to_string(i));
    return out;
}

/// Smallest weighted degree of a monomial in the support.
inline Rational weighted_order(const Poly& f, const WeightVector& w)
{
    if (f.is_zero())
        throw std::invalid_argument("weighted order of the zero polynomial is undefined");
    if (w.size() != f.variable_count())
        throw std::invalid_argument("weight vector length does not match variable count");
    std::optional<Rational> best;
    for (const auto& [u, c] : f.terms()) {
        auto d = w.degree(u);
        if (!best || d < *best)
            best = d;
    }
    return *best;
}

/// The common weighted degree when every monomial has the same one.
inline std::optional<Rational> homogeneous_degree(const Poly& f, const WeightVector& w)
{
    if (f.is_zero())
        throw std::invalid_argument("homogeneity of the zero polynomial is undefined");
    if (w.size() != f.variable_count())
        throw std::invalid_argument("weight vector length does not match variable count");
    std::optional<Rational> degree;
    for (const auto& [u, c] : f.terms()) {
        auto d = w.degree(u);
        if (degree && d != *degree)
            return std::nullopt;
        degree = d;
    }
    return degree;
}

inline bool is_homogeneous(const Poly& f, const WeightVector& w) { return homogeneous_degree(f, w).has_value(); }

namespace detail {
inline void require_common_variables(std::span<const Poly> fs)
{
    if (fs.empty())
        throw std::invalid_argument("need at least one polynomial");
    for (const auto& f : fs)
        if (f.variables() != fs.front().variables())
            throw std::invalid_argument("polynomials are over different variable lists");
}
} // namespace detail

/// g = f_1*y_1 + ... + f_r*y_r over (x..., y1..yr).
inline Poly cone_hypersurface(std::span<const Poly> fs)
{
    detail::require_common_variables(fs);
    auto vars = fs.front().variables();
    auto ys = numbered_names("y", fs.size());
    vars.insert(vars.end(), ys.begin(), ys.end());
    Poly g(vars);
    for (std::size_t j = 0; j < fs.size(); ++j) {
        ExponentVector yj(vars.size(), 0);
        yj[fs.front().variable_count() + j] = 1;
        g = g + fs[j].embedded(vars) * Poly::monomial(vars, yj);
    }
    return g;
}

/// h = g / y_p after z_j = y_j / y_p: f_p + sum over j != p of f_j*z_j.
/// `p` is 1-based.
inline Poly dehomogenized_hypersurface(std::span<const Poly> fs, std::size_t p)
{
    detail::require_common_variables(fs);
    if (p < 1 || p > fs.size())
        throw std::out_of_range("dehomogenization index " + std::to_string(p) + " outside 1.." +
                                std::to_string(fs.size()));
    auto vars = fs.front().variables();
    auto zs = numbered_names("z", fs.size(), p);
    vars.insert(vars.end(), zs.begin(), zs.end());
    Poly h = fs[p - 1].embedded(vars);
    std::size_t slot = fs.front().variable_count();
    for (std::size_t j = 1; j <= fs.size(); ++j) {
        if (j == p)
            continue;
        ExponentVector zj(vars.size(), 0);
        zj[slot++] = 1;
        h = h + fs[j - 1].embedded(vars) * Poly::monomial(vars, zj);
    }
    return h;
}

} // namespace minexp
