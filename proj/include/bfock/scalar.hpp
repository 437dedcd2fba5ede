#ifndef BFOCK_SCALAR_HPP
#define BFOCK_SCALAR_HPP

#include <cmath>
#include <concepts>
#include <string>

#include <bfock/bipoly.hpp>
#include <bfock/errors.hpp>
#include <bfock/rational.hpp>

namespace bfock
{

// Coefficient rings the Fock-space machinery is instantiated over:
//   BiPoly   - symbolic mode, alpha and q formal
//   Rational - exact specialization at a rational parameter point
//   double   - numeric mode
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<BiPoly> {
    static BiPoly from_rational(const Rational &r)
    {
        return BiPoly(r);
    }
    static bool is_zero(const BiPoly &s)
    {
        return s.is_zero();
    }
};

template <>
struct scalar_traits<Rational> {
    static Rational from_rational(const Rational &r)
    {
        return r;
    }
    static bool is_zero(const Rational &s)
    {
        return s == 0;
    }
};

template <>
struct scalar_traits<double> {
    static double from_rational(const Rational &r)
    {
        return to_double(r);
    }
    static bool is_zero(double s)
    {
        return s == 0.0;
    }
};

template <typename S>
concept Scalar = requires(const S &a, const S &b, const Rational &r) {
    { a + b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { scalar_traits<S>::from_rational(r) } -> std::convertible_to<S>;
    { scalar_traits<S>::is_zero(a) } -> std::convertible_to<bool>;
};

template <Scalar S>
S from_rational(const Rational &r)
{
    return scalar_traits<S>::from_rational(r);
}

template <Scalar S>
bool is_zero(const S &s)
{
    return scalar_traits<S>::is_zero(s);
}

// x^k with 0^0 = 1.
template <Scalar S>
S power(const S &x, unsigned k)
{
    S r = from_rational<S>(1);
    for (unsigned i = 0; i < k; ++i) {
        r = r * x;
    }
    return r;
}

// The pair (alpha, q) as elements of the coefficient ring.
template <Scalar S>
struct Deformation {
    S alpha;
    S q;
};

inline Deformation<BiPoly> symbolic()
{
    return {BiPoly::alpha(), BiPoly::q()};
}

inline Deformation<Rational> at_point(const Rational &alpha, const Rational &q)
{
    return {alpha, q};
}

inline Deformation<double> numeric(double alpha, double q)
{
    require_domain(std::abs(alpha) <= 1.0 && std::abs(q) <= 1.0,
                   "numeric mode requires alpha, q in [-1, 1]");
    return {alpha, q};
}

} // namespace bfock

#endif
