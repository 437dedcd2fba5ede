#ifndef BFOCK_BIPOLY_HPP
#define BFOCK_BIPOLY_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <bfock/rational.hpp>

namespace bfock
{

// Exact polynomial in the two deformation parameters (alpha, q) with rational
// coefficients. Terms are kept in a sorted map without zero entries, so two
// equal polynomials are always structurally equal.
class BiPoly
{
public:
    // (degree in alpha, degree in q)
    using Monomial = std::pair<unsigned, unsigned>;
    using Terms = std::map<Monomial, Rational>;

    BiPoly() = default;
    BiPoly(int c) : BiPoly(Rational(c)) {}
    BiPoly(const Rational &c)
    {
        if (c != 0) {
            m_terms.emplace(Monomial{0, 0}, c);
        }
    }

    static BiPoly monomial(const Rational &c, unsigned deg_alpha, unsigned deg_q)
    {
        BiPoly p;
        if (c != 0) {
            p.m_terms.emplace(Monomial{deg_alpha, deg_q}, c);
        }
        return p;
    }
    static BiPoly alpha()
    {
        return monomial(1, 1, 0);
    }
    static BiPoly q()
    {
        return monomial(1, 0, 1);
    }

    const Terms &terms() const noexcept
    {
        return m_terms;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }

    Rational coeff(unsigned deg_alpha, unsigned deg_q) const
    {
        const auto it = m_terms.find({deg_alpha, deg_q});
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    BiPoly &operator+=(const BiPoly &o)
    {
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, c);
        }
        return *this;
    }
    BiPoly &operator-=(const BiPoly &o)
    {
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, -c);
        }
        return *this;
    }
    BiPoly &operator*=(const BiPoly &o)
    {
        *this = *this * o;
        return *this;
    }

    friend BiPoly operator+(BiPoly a, const BiPoly &b)
    {
        return a += b;
    }
    friend BiPoly operator-(BiPoly a, const BiPoly &b)
    {
        return a -= b;
    }
    friend BiPoly operator-(BiPoly a)
    {
        for (auto &kv : a.m_terms) {
            kv.second = -kv.second;
        }
        return a;
    }
    friend BiPoly operator*(const BiPoly &a, const BiPoly &b)
    {
        BiPoly r;
        for (const auto &[ma, ca] : a.m_terms) {
            for (const auto &[mb, cb] : b.m_terms) {
                r.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const BiPoly &a, const BiPoly &b)
    {
        return a.m_terms == b.m_terms;
    }
    friend bool operator!=(const BiPoly &a, const BiPoly &b)
    {
        return !(a == b);
    }

    Rational eval(const Rational &alpha, const Rational &q) const
    {
        Rational s = 0;
        for (const auto &[m, c] : m_terms) {
            s += c * pow_r(alpha, m.first) * pow_r(q, m.second);
        }
        return s;
    }
    double eval(double alpha, double q) const
    {
        double s = 0;
        for (const auto &[m, c] : m_terms) {
            s += to_double(c) * pow_d(alpha, m.first) * pow_d(q, m.second);
        }
        return s;
    }

    // Partial specializations; the result still lives in the bivariate ring.
    BiPoly substitute_alpha(const Rational &alpha) const
    {
        BiPoly r;
        for (const auto &[m, c] : m_terms) {
            r.add_term({0, m.second}, c * pow_r(alpha, m.first));
        }
        return r;
    }
    BiPoly substitute_q(const Rational &q) const
    {
        BiPoly r;
        for (const auto &[m, c] : m_terms) {
            r.add_term({m.first, 0}, c * pow_r(q, m.second));
        }
        return r;
    }

    unsigned degree_alpha() const
    {
        unsigned d = 0;
        for (const auto &kv : m_terms) {
            d = std::max(d, kv.first.first);
        }
        return d;
    }
    unsigned degree_q() const
    {
        unsigned d = 0;
        for (const auto &kv : m_terms) {
            d = std::max(d, kv.first.second);
        }
        return d;
    }

    // Human-readable form, e.g. "2 + q + 3*alpha + alpha^2*q^2".
    std::string str() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto &[m, c] : m_terms) {
            Rational mag = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) {
                    os << "-";
                }
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            const bool has_var = m.first > 0 || m.second > 0;
            if (!has_var || mag != 1) {
                os << mag.str();
                if (has_var) {
                    os << "*";
                }
            }
            if (m.first > 0) {
                os << "alpha";
                if (m.first > 1) {
                    os << "^" << m.first;
                }
                if (m.second > 0) {
                    os << "*";
                }
            }
            if (m.second > 0) {
                os << "q";
                if (m.second > 1) {
                    os << "^" << m.second;
                }
            }
        }
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const BiPoly &p)
    {
        return os << p.str();
    }

private:
    void add_term(const Monomial &m, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    static Rational pow_r(const Rational &x, unsigned k)
    {
        Rational r = 1;
        for (unsigned i = 0; i < k; ++i) {
            r *= x;
        }
        return r;
    }
    static double pow_d(double x, unsigned k)
    {
        double r = 1;
        for (unsigned i = 0; i < k; ++i) {
            r *= x;
        }
        return r;
    }

    Terms m_terms;
};

} // namespace bfock

#endif
