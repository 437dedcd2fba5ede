#ifndef BFOCK_RATIONAL_HPP
#define BFOCK_RATIONAL_HPP

#include <cctype>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include <bfock/errors.hpp>

namespace bfock
{

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail
{

inline bool is_integer_literal(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

inline Integer parse_integer(std::string_view s)
{
    if (!s.empty() && s[0] == '+') {
        s.remove_prefix(1);
    }
    return Integer(std::string(s));
}

} // namespace detail

// Parses "p", "-p" or "p/q". Decimal points are rejected so that exact
// inputs never silently pass through floating point.
inline Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        require_domain(detail::is_integer_literal(text), "not an exact rational: '" + std::string(text) + "'");
        return Rational(detail::parse_integer(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    require_domain(detail::is_integer_literal(num) && detail::is_integer_literal(den),
                   "not an exact rational: '" + std::string(text) + "'");
    const Integer d = detail::parse_integer(den);
    require_domain(d != 0, "zero denominator in '" + std::string(text) + "'");
    return Rational(detail::parse_integer(num), d);
}

inline std::string to_string(const Rational &r)
{
    return r.str();
}

inline double to_double(const Rational &r)
{
    return r.convert_to<double>();
}

} // namespace bfock

#endif
