#ifndef BFOCK_NORM_HPP
#define BFOCK_NORM_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <bfock/errors.hpp>
#include <bfock/fock_core.hpp>

namespace bfock
{

inline constexpr std::size_t max_norm_dimension = std::size_t{1} << 20;

// Numeric double Fock space on dense level arrays, unit Gram matrix. P^(n)
// is applied without materializing it, through P^(n) = (I (x) P^(n-1) (x) I) R^(n).
class NumericFock
{
public:
    NumericFock(int d, double alpha, double q, int max_level) : m_d(d), m_alpha(alpha), m_q(q), m_max(max_level)
    {
        require_domain(d >= 1 && max_level >= 0, "dimension and level must be positive");
        require_domain(std::abs(alpha) <= 1.0 && std::abs(q) <= 1.0, "numeric mode requires alpha, q in [-1, 1]");
        require_bound(level_dimension(max_level, d) <= max_norm_dimension, "numeric level dimension above 2^20");
        const Deformation<double> def{alpha, q};
        m_r.resize(static_cast<std::size_t>(max_level) + 1);
        for (int n = 1; n <= max_level; ++n) {
            const std::size_t dim = level_dimension(n, d);
            const auto r = r_element(n, def);
            for (const auto &[s, c] : r.terms()) {
                const auto src = source_slots(s);
                Term t;
                t.coeff = c;
                t.target.resize(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    const Word w = index_word(i, n, d);
                    Word out(w.size());
                    for (std::size_t k = 0; k < w.size(); ++k) {
                        out[k] = w[src[k]];
                    }
                    t.target[i] = static_cast<std::uint32_t>(word_index(out, d));
                }
                m_r[static_cast<std::size_t>(n)].push_back(std::move(t));
            }
        }
    }

    int dim() const noexcept
    {
        return m_d;
    }
    int max_level() const noexcept
    {
        return m_max;
    }

    std::vector<double> apply_r(int n, const std::vector<double> &v) const
    {
        check_level(n, v);
        if (n == 0) {
            return v;
        }
        std::vector<double> out(v.size(), 0.0);
        for (const auto &t : m_r[static_cast<std::size_t>(n)]) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                out[t.target[i]] += t.coeff * v[i];
            }
        }
        return out;
    }

    std::vector<double> apply_p(int n, const std::vector<double> &v) const
    {
        check_level(n, v);
        if (n == 0) {
            return v;
        }
        std::vector<double> t = apply_r(n, v);
        if (n == 1) {
            return t;
        }
        const std::size_t d = static_cast<std::size_t>(m_d);
        const std::size_t inner = level_dimension(n - 1, m_d);
        const std::size_t outer_stride = inner * d;
        std::vector<double> slice(inner);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const std::size_t base = i * outer_stride + j;
                for (std::size_t m = 0; m < inner; ++m) {
                    slice[m] = t[base + m * d];
                }
                const auto ps = apply_p(n - 1, slice);
                for (std::size_t m = 0; m < inner; ++m) {
                    t[base + m * d] = ps[m];
                }
            }
        }
        return t;
    }

    // b*(x (x) y): level n -> n+1
    std::vector<double> creation(const std::vector<double> &x, const std::vector<double> &y, int n,
                                 const std::vector<double> &v) const
    {
        check_level(n, v);
        const std::size_t d = static_cast<std::size_t>(m_d);
        std::vector<double> out(level_dimension(n + 1, m_d), 0.0);
        const std::size_t hi = v.size() * d;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t w = 0; w < v.size(); ++w) {
                for (std::size_t j = 0; j < d; ++j) {
                    out[i * hi + w * d + j] = x[i] * y[j] * v[w];
                }
            }
        }
        return out;
    }

    // b_{alpha,q}(x (x) y) = b(x (x) y) R^(n): level n -> n-1
    std::vector<double> annihilation(const std::vector<double> &x, const std::vector<double> &y, int n,
                                     const std::vector<double> &v) const
    {
        check_level(n, v);
        require_domain(n >= 1, "annihilation needs level >= 1");
        const auto t = apply_r(n, v);
        const std::size_t d = static_cast<std::size_t>(m_d);
        const std::size_t inner = level_dimension(n - 1, m_d);
        std::vector<double> out(inner, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const double f = x[i] * y[j];
                if (f == 0.0) {
                    continue;
                }
                const std::size_t base = i * inner * d + j;
                for (std::size_t m = 0; m < inner; ++m) {
                    out[m] += f * t[base + m * d];
                }
            }
        }
        return out;
    }

private:
    struct Term {
        double coeff = 0;
        std::vector<std::uint32_t> target;
    };

    void check_level(int n, const std::vector<double> &v) const
    {
        require_domain(n >= 0 && n <= m_max, "level outside the prepared range");
        require_domain(v.size() == level_dimension(n, m_d), "vector size does not match the level");
    }

    int m_d;
    double m_alpha;
    double m_q;
    int m_max;
    std::vector<std::vector<Term>> m_r;
};

enum class NormRegion { A, B, C, D };

inline std::string region_name(NormRegion r)
{
    switch (r) {
    case NormRegion::A:
        return "A";
    case NormRegion::B:
        return "B";
    case NormRegion::C:
        return "C";
    case NormRegion::D:
        return "D";
    }
    return "?";
}

struct NormBounds {
    NormRegion region = NormRegion::D;
    double lower = 0;
    double upper = 0;
    bool exact = false; // closed form: lower == upper
};

inline double dot(const std::vector<double> &a, const std::vector<double> &b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

// Closed forms and bounds for ||b*(x (x) y)|| by parameter region:
//   A  0 <= alpha <= 1, -1 < q <= 0:   sqrt(|x|^2|y|^2 + alpha <x,y>^2)
//   B  -1 <= alpha < 0, -1 < q <= 0:   |x||y|/sqrt(1-q) <= . <= |x||y|
//   C  |alpha| <= q < 1:               |x||y|/sqrt(1-q)
//   D  otherwise:                      |x||y|/sqrt(1-q) <= . <= |x||y| sqrt((1+|alpha|)/(1-q))
inline NormBounds norm_regime(double alpha, double q, const std::vector<double> &x, const std::vector<double> &y)
{
    require_domain(std::abs(q) < 1.0 && std::abs(alpha) <= 1.0, "norm regions need |q| < 1, |alpha| <= 1");
    const double xx = dot(x, x), yy = dot(y, y), xy = dot(x, y);
    const double base = std::sqrt(xx * yy);
    NormBounds b;
    if (alpha >= 0 && q <= 0) {
        b = {NormRegion::A, std::sqrt(xx * yy + alpha * xy * xy), std::sqrt(xx * yy + alpha * xy * xy), true};
    } else if (alpha < 0 && q <= 0) {
        b = {NormRegion::B, base / std::sqrt(1 - q), base, false};
    } else if (std::abs(alpha) <= q) {
        b = {NormRegion::C, base / std::sqrt(1 - q), base / std::sqrt(1 - q), true};
    } else {
        b = {NormRegion::D, base / std::sqrt(1 - q), base * std::sqrt((1 + std::abs(alpha)) / (1 - q)), false};
    }
    return b;
}

struct NormEstimate {
    double estimate = 0;              // sqrt of the largest level value
    std::vector<double> level_values; // lambda_max of b b* on each level 0..N_max-1
    NormBounds theory;
};

struct LanczosControl {
    int max_steps = 120;
    double tolerance = 1e-12;
    std::uint64_t seed = 0x5eed;
};

// Largest eigenvalue of b_{alpha,q} b* on level n, self-adjoint for the
// deformed inner product <u, P^(n) v>.
inline double level_norm_squared(const NumericFock &F, const std::vector<double> &x, const std::vector<double> &y,
                                 int n, const LanczosControl &ctl = {})
{
    const std::size_t dim = level_dimension(n, F.dim());
    auto A = [&](const std::vector<double> &v) { return F.annihilation(x, y, n + 1, F.creation(x, y, n, v)); };
    auto Pnorm2 = [&](const std::vector<double> &v, std::vector<double> &pv) {
        pv = F.apply_p(n, v);
        return dot(v, pv);
    };

    std::mt19937_64 rng(ctl.seed + static_cast<std::uint64_t>(n));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> q0(dim);
    for (auto &c : q0) {
        c = u(rng);
    }
    std::vector<double> pq0;
    const double n0 = Pnorm2(q0, pq0);
    if (!(n0 > 0)) {
        throw NumericError("deformed inner product is not positive on level " + std::to_string(n));
    }
    const double s0 = 1.0 / std::sqrt(n0);
    for (std::size_t i = 0; i < dim; ++i) {
        q0[i] *= s0;
        pq0[i] *= s0;
    }

    std::vector<std::vector<double>> Q{q0}, PQ{pq0};
    std::vector<double> alphas, betas;
    double ritz = 0, prev_ritz = -1;
    const int steps = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(ctl.max_steps), dim));
    for (int j = 0; j < steps; ++j) {
        std::vector<double> w = A(Q.back());
        const double a = dot(PQ.back(), w);
        alphas.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < Q.size(); ++k) {
                const double c = dot(PQ[k], w);
                for (std::size_t i = 0; i < dim; ++i) {
                    w[i] -= c * Q[k][i];
                }
            }
        }
        const int m = static_cast<int>(alphas.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alphas[static_cast<std::size_t>(i)];
            if (i + 1 < m) {
                T(i, i + 1) = T(i + 1, i) = betas[static_cast<std::size_t>(i)];
            }
        }
        ritz = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
        if (std::abs(ritz - prev_ritz) <= ctl.tolerance * std::abs(ritz) && j >= 3) {
            break;
        }
        prev_ritz = ritz;
        std::vector<double> pw;
        const double b2 = Pnorm2(w, pw);
        if (b2 < -1e-10 * std::abs(ritz)) {
            throw NumericError("deformed inner product is not positive on level " + std::to_string(n));
        }
        if (b2 <= 1e-26 * std::max(1.0, ritz * ritz)) {
            break; // invariant subspace reached
        }
        const double b = std::sqrt(b2);
        betas.push_back(b);
        for (std::size_t i = 0; i < dim; ++i) {
            w[i] /= b;
            pw[i] /= b;
        }
        Q.push_back(std::move(w));
        PQ.push_back(std::move(pw));
    }
    return ritz;
}

// Truncated operator norm of b*(x (x) y) for the deformed inner product on
// levels 0..N_max, compared with the region formula.
inline NormEstimate norm_estimate(const std::vector<double> &x, const std::vector<double> &y, double alpha,
                                  double q, int n_max, const LanczosControl &ctl = {})
{
    require_domain(x.size() == y.size() && !x.empty(), "vector dimension mismatch");
    require_domain(n_max >= 1, "N_max must be at least 1");
    require_domain(std::abs(q) < 1.0, "norm estimate needs |q| < 1");
    const NumericFock F(static_cast<int>(x.size()), alpha, q, n_max);
    NormEstimate r;
    r.theory = norm_regime(alpha, q, x, y);
    double best = 0;
    for (int n = 0; n < n_max; ++n) {
        const double l = level_norm_squared(F, x, y, n, ctl);
        r.level_values.push_back(l);
        best = std::max(best, l);
    }
    r.estimate = std::sqrt(best);
    return r;
}

namespace detail
{

inline Eigen::MatrixXd to_dense(const SparseMatrix<double> &m)
{
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (const auto &[j, c] : m.row(i)) {
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
        }
    }
    return d;
}

} // namespace detail

// Independent route: generalized eigenproblem C^T P_{n+1} C v = lambda P_n v
// with dense matrices, C the creation matrix from level n. Needs P_n
// positive definite, so it rejects |alpha| = 1.
inline double norm_estimate_dense(const std::vector<double> &x, const std::vector<double> &y, double alpha, double q,
                                  int n_max)
{
    const int d = static_cast<int>(x.size());
    require_bound(n_max <= 3 && d <= 2, "dense norm check limited to N_max <= 3, d <= 2");
    const Deformation<double> def = numeric(alpha, q);
    double best = 0;
    for (int n = 0; n < n_max; ++n) {
        const auto Pn = detail::to_dense(symmetrization<double>(n, d, def));
        const auto Pn1 = detail::to_dense(symmetrization<double>(n + 1, d, def));
        Eigen::MatrixXd C =
            Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(level_dimension(n + 1, d)), static_cast<Eigen::Index>(level_dimension(n, d)));
        for (std::size_t col = 0; col < level_dimension(n, d); ++col) {
            const Word w = index_word(col, n, d);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    Word u{static_cast<std::uint8_t>(i)};
                    u.insert(u.end(), w.begin(), w.end());
                    u.push_back(static_cast<std::uint8_t>(j));
                    C(static_cast<Eigen::Index>(word_index(u, d)), static_cast<Eigen::Index>(col)) +=
                        x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
                }
            }
        }
        if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Pn, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() <= 1e-12) {
            throw NumericError("deformed inner product is not positive definite on level " + std::to_string(n));
        }
        const Eigen::MatrixXd M = C.transpose() * Pn1 * C;
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Pn, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            throw NumericError("deformed inner product is not positive on level " + std::to_string(n));
        }
        best = std::max(best, es.eigenvalues().maxCoeff());
    }
    return std::sqrt(best);
}

// Smallest eigenvalue of the numeric symmetrization matrix.
inline double symmetrization_min_eigenvalue(int n, int d, double alpha, double q)
{
    const auto P = detail::to_dense(symmetrization<double>(n, d, numeric(alpha, q)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace bfock

#endif
