#ifndef BFOCK_POLYNOMIALS_MEASURES_HPP
#define BFOCK_POLYNOMIALS_MEASURES_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <bfock/bipoly.hpp>
#include <bfock/errors.hpp>
#include <bfock/scalar.hpp>

namespace bfock
{

inline constexpr int max_moment_order = 16;

// [n]_q = 1 + q + ... + q^{n-1}
template <Scalar S>
S q_number(int n, const S &q)
{
    require_domain(n >= 0, "q-number needs n >= 0");
    S s = from_rational<S>(0);
    S p = from_rational<S>(1);
    for (int k = 0; k < n; ++k) {
        s = s + p;
        p = p * q;
    }
    return s;
}

template <Scalar S>
S q_factorial(int n, const S &q)
{
    require_domain(n >= 0, "q-factorial needs n >= 0");
    S r = from_rational<S>(1);
    for (int k = 1; k <= n; ++k) {
        r = r * q_number(k, q);
    }
    return r;
}

// (s;q)_n = prod_{k=1}^{n} (1 - s q^{k-1})
template <Scalar S>
S q_pochhammer(const S &s, const S &q, int n)
{
    require_domain(n >= 0, "q-Pochhammer needs n >= 0");
    S r = from_rational<S>(1);
    S p = from_rational<S>(1);
    const S minus_one = from_rational<S>(-1);
    for (int k = 1; k <= n; ++k) {
        r = r * (from_rational<S>(1) + minus_one * s * p);
        p = p * q;
    }
    return r;
}

struct ProductControl {
    double tolerance = 1e-17;
    int max_terms = 500;
};

// prod_{k >= 0} factor(k), stopped once two consecutive factors are within
// the tolerance of 1.
inline double truncated_product(const std::function<double(int)> &factor, const ProductControl &ctl)
{
    double r = 1.0;
    int settled = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        const double f = factor(k);
        r *= f;
        settled = std::abs(f - 1.0) < ctl.tolerance ? settled + 1 : 0;
        if (settled == 2) {
            return r;
        }
    }
    throw NumericError("infinite product did not converge within " + std::to_string(ctl.max_terms) + " factors");
}

// (s;q)_infinity for |q| < 1.
inline double q_pochhammer_inf(double s, double q, const ProductControl &ctl = {})
{
    require_domain(std::abs(q) < 1.0, "infinite q-Pochhammer needs |q| < 1");
    double p = 1.0;
    return truncated_product(
        [&](int) {
            const double f = 1.0 - s * p;
            p *= q;
            return f;
        },
        ctl);
}

// Off-diagonal products gamma_k = [k+1]_q (1 + alpha q^k), k = 0..count-1.
template <Scalar S>
std::vector<S> jacobi_gammas(int count, const Deformation<S> &def)
{
    std::vector<S> g;
    for (int k = 0; k < count; ++k) {
        g.push_back(q_number(k + 1, def.q) * (from_rational<S>(1) + def.alpha * power(def.q, static_cast<unsigned>(k))));
    }
    return g;
}

// Monic Q_0..Q_n from t Q_k = Q_{k+1} + [k]_q (1 + alpha q^{k-1}) Q_{k-1};
// each polynomial is a coefficient list in ascending powers of t.
template <Scalar S>
std::vector<std::vector<S>> mp_polynomials(int n, const Deformation<S> &def)
{
    require_domain(n >= 0, "polynomial degree must be nonnegative");
    const auto g = jacobi_gammas(std::max(n, 1), def);
    std::vector<std::vector<S>> Q{{from_rational<S>(1)}};
    for (int k = 0; k < n; ++k) {
        std::vector<S> next(static_cast<std::size_t>(k) + 2, from_rational<S>(0));
        for (std::size_t i = 0; i < Q[static_cast<std::size_t>(k)].size(); ++i) {
            next[i + 1] = Q[static_cast<std::size_t>(k)][i];
        }
        if (k >= 1) {
            const S minus_g = from_rational<S>(-1) * g[static_cast<std::size_t>(k - 1)];
            for (std::size_t i = 0; i < Q[static_cast<std::size_t>(k - 1)].size(); ++i) {
                next[i] = next[i] + minus_g * Q[static_cast<std::size_t>(k - 1)][i];
            }
        }
        Q.push_back(std::move(next));
    }
    return Q;
}

template <Scalar S>
std::vector<S> mp_polynomial(int n, const Deformation<S> &def)
{
    return mp_polynomials(n, def).back();
}

inline double eval_polynomial(const std::vector<double> &c, double t)
{
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * t + *it;
    }
    return r;
}

// m_0..m_{up_to} of the measure with Jacobi parameters beta = 0 and gamma_k,
// as weighted Dyck paths: a down step from height h + 1 to h weighs gamma_h.
template <Scalar S>
std::vector<S> mp_moments(const Deformation<S> &def, int up_to)
{
    require_domain(up_to >= 0, "moment order must be nonnegative");
    require_bound(up_to <= max_moment_order, "moments limited to order 16");
    const int hmax = up_to / 2 + 1;
    const auto g = jacobi_gammas(hmax, def);
    const S zero = from_rational<S>(0);
    // paths[h]: weighted count of paths from 0 that are at height h now
    std::vector<S> paths(static_cast<std::size_t>(hmax) + 1, zero);
    paths[0] = from_rational<S>(1);
    std::vector<S> m{paths[0]};
    for (int step = 1; step <= up_to; ++step) {
        std::vector<S> next(paths.size(), zero);
        for (int h = 0; h <= hmax; ++h) {
            const S &p = paths[static_cast<std::size_t>(h)];
            if (is_zero(p)) {
                continue;
            }
            if (h + 1 <= hmax) {
                next[static_cast<std::size_t>(h + 1)] = next[static_cast<std::size_t>(h + 1)] + p;
            }
            if (h >= 1) {
                next[static_cast<std::size_t>(h - 1)] =
                    next[static_cast<std::size_t>(h - 1)] + g[static_cast<std::size_t>(h - 1)] * p;
            }
        }
        paths = std::move(next);
        m.push_back(paths[0]);
    }
    return m;
}

inline std::vector<BiPoly> mp_moments(int up_to)
{
    return mp_moments<BiPoly>(symbolic(), up_to);
}

struct DensityParams {
    double alpha = 0;
    double q = 0;
    ProductControl product{};
};

inline void check_density_params(const DensityParams &p)
{
    require_domain(std::abs(p.q) < 1.0, "density formula needs |q| < 1; use special_law at q = +-1");
    require_domain(std::abs(p.alpha) <= 1.0, "density formula needs |alpha| <= 1");
}

// Half-width 2/sqrt(1-q) of the support.
inline double support_radius(double q)
{
    return 2.0 / std::sqrt(1.0 - q);
}

// (q;q)_inf (-alpha;q)_inf / (2 pi); alpha -> -1 drives it to zero.
inline double density_normalization(const DensityParams &p)
{
    check_density_params(p);
    return q_pochhammer_inf(p.q, p.q, p.product) * q_pochhammer_inf(-p.alpha, p.q, p.product) /
           (2.0 * std::numbers::pi);
}

// Density times sqrt(4/(1-q) - t^2): the part of the density that stays
// smooth up to the support edges.
//   prod_k [(1+q^{2k})^2 - t^2(1-q)q^{2k}] [(1+q^{2k+1})^2 - t^2(1-q)q^{2k+1}]
//        / [(1+alpha q^{2k})^2 - alpha t^2(1-q) q^{2k}]
inline double density_regular_part(double t, const DensityParams &p)
{
    check_density_params(p);
    const double q = p.q;
    const double a = p.alpha;
    const double s = t * t * (1.0 - q);
    double q2k = 1.0;
    const double prod = truncated_product(
        [&](int) {
            const double q2k1 = q2k * q;
            const double num = ((1 + q2k) * (1 + q2k) - s * q2k) * ((1 + q2k1) * (1 + q2k1) - s * q2k1);
            const double den = (1 + a * q2k) * (1 + a * q2k) - a * s * q2k;
            q2k *= q * q;
            return num / den;
        },
        p.product);
    return density_normalization(p) * prod;
}

inline double mp_density(double t, const DensityParams &p)
{
    check_density_params(p);
    const double r = support_radius(p.q);
    if (!(std::abs(t) < r)) {
        return 0.0;
    }
    return density_regular_part(t, p) / std::sqrt(r * r - t * t);
}

// int f(t) dMP over the support, with t = r cos(theta) removing the edge
// singularity.
inline double density_integral(const std::function<double(double)> &f, const DensityParams &p)
{
    check_density_params(p);
    const double r = support_radius(p.q);
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto g = [&](double theta) {
        const double t = r * std::cos(theta);
        return f(t) * density_regular_part(t, p);
    };
    return integrator.integrate(g, 0.0, std::numbers::pi);
}

inline double density_mass(const DensityParams &p)
{
    return density_integral([](double) { return 1.0; }, p);
}

inline double density_moment(int k, const DensityParams &p)
{
    return density_integral([k](double t) { return std::pow(t, k); }, p);
}

enum class SpecialLaw { gaussian, semicircle, bernoulli, free_meixner };

inline SpecialLaw parse_special_law(const std::string &s)
{
    if (s == "gaussian") {
        return SpecialLaw::gaussian;
    }
    if (s == "semicircle") {
        return SpecialLaw::semicircle;
    }
    if (s == "bernoulli") {
        return SpecialLaw::bernoulli;
    }
    if (s == "free_meixner") {
        return SpecialLaw::free_meixner;
    }
    throw DomainError("unknown special law '" + s + "'");
}

// Closed-form moments m_0..m_{up_to} as polynomials in alpha:
//   gaussian      q = 1:   m_{2k} = (2k-1)!! (1+alpha)^k
//   semicircle    alpha = q = 0: Catalan numbers
//   bernoulli     q = -1:  (1/2)(delta_{sqrt(1+alpha)} + delta_{-sqrt(1+alpha)})
//   free_meixner  q = 0:   sum_j j/(2k-j) C(2k-j,k) (1+alpha)^j
inline std::vector<BiPoly> special_law(SpecialLaw kind, int up_to)
{
    require_domain(up_to >= 0, "moment order must be nonnegative");
    require_bound(up_to <= max_moment_order, "moments limited to order 16");
    const BiPoly v = 1 + BiPoly::alpha();
    auto binom = [](int n, int k) {
        Integer r = 1;
        for (int i = 1; i <= k; ++i) {
            r = r * (n - k + i) / i;
        }
        return Rational(r);
    };
    std::vector<BiPoly> m;
    for (int n = 0; n <= up_to; ++n) {
        if (n % 2 != 0) {
            m.emplace_back();
            continue;
        }
        const int k = n / 2;
        switch (kind) {
        case SpecialLaw::gaussian: {
            Integer df = 1;
            for (int i = 2 * k - 1; i > 1; i -= 2) {
                df *= i;
            }
            m.push_back(BiPoly(Rational(df)) * power(v, static_cast<unsigned>(k)));
            break;
        }
        case SpecialLaw::semicircle:
            m.emplace_back(binom(2 * k, k) / (k + 1));
            break;
        case SpecialLaw::bernoulli:
            m.push_back(power(v, static_cast<unsigned>(k)));
            break;
        case SpecialLaw::free_meixner: {
            if (k == 0) {
                m.emplace_back(1);
                break;
            }
            BiPoly s;
            for (int j = 1; j <= k; ++j) {
                s += BiPoly(Rational(j, 2 * k - j) * binom(2 * k - j, k)) * power(v, static_cast<unsigned>(j));
            }
            m.push_back(s);
            break;
        }
        }
    }
    return m;
}

} // namespace bfock

#endif
