#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace minexp {

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator. Expression templates are off so `auto` always
/// holds a value.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Decimal rendering for display only. Never compare these.
inline std::string approx_string(const Rational& q, int digits = 6)
{
    std::ostringstream os;
    os << std::setprecision(digits) << q.convert_to<double>();
    return os.str();
}

/// Parses `a` or `a/b` (optional leading sign). Throws std::invalid_argument on
/// malformed text or a zero denominator.
inline Rational parse_rational(std::string_view text)
{
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    auto trimmed = text;
    while (!trimmed.empty() && trimmed.front() == ' ')
        trimmed.remove_prefix(1);
    while (!trimmed.empty() && trimmed.back() == ' ')
        trimmed.remove_suffix(1);
    auto slash = trimmed.find('/');
    auto num_text = trimmed.substr(0, slash);
    if (!is_int(num_text))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (num_text.front() == '+')
        num_text.remove_prefix(1);
    Integer num{std::string(num_text)};
    if (slash == std::string_view::npos)
        return Rational(num);
    auto den_text = trimmed.substr(slash + 1);
    if (!is_int(den_text) || den_text.front() == '-' || den_text.front() == '+')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer den{std::string(den_text)};
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

/// Narrowing for the integer-only inner loops of the grid verifiers.
inline std::int64_t to_int64(const Integer& z)
{
    if (z > Integer(std::numeric_limits<std::int64_t>::max()) ||
        z < Integer(std::numeric_limits<std::int64_t>::min()))
        throw std::overflow_error("integer does not fit in 64 bits: " + z.str());
    return z.convert_to<std::int64_t>();
}

/// A rational extended by a single top element. Only comparison is defined;
/// the top element stands for the exponent of a smooth subscheme.
class ExtendedRational {
public:
    ExtendedRational(Rational value) : value_(std::move(value)) {}

    static ExtendedRational infinity() { return ExtendedRational(); }

    bool is_infinite() const { return !value_.has_value(); }

    const Rational& value() const
    {
        if (!value_)
            throw std::domain_error("infinite exponent has no rational value");
        return *value_;
    }

    std::string str() const { return value_ ? value_->str() : std::string("inf"); }

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b)
    {
        return a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() <=> b.is_infinite();
        if (*a.value_ < *b.value_)
            return std::strong_ordering::less;
        if (*b.value_ < *a.value_)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    ExtendedRational() = default;
    std::optional<Rational> value_;
};

} // namespace minexp
