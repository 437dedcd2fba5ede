#ifndef BFOCK_FOCK_CORE_HPP
#define BFOCK_FOCK_CORE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <bfock/errors.hpp>
#include <bfock/rational.hpp>
#include <bfock/scalar.hpp>
#include <bfock/signed_permutations.hpp>

namespace bfock
{

inline constexpr int max_matrix_level = 4;
inline constexpr int max_matrix_dim = 3;

// Word of length 2n over the letters 0..d-1. Slot s < n holds position
// s - n (i.e. -n..-1), slot s >= n holds position s - n + 1 (1..n).
using Word = std::vector<std::uint8_t>;
using Coords = std::vector<Rational>;
using GramMatrix = std::vector<std::vector<Rational>>;

inline int level_of(const Word &w)
{
    return static_cast<int>(w.size() / 2);
}

inline std::size_t slot_of(int n, int position)
{
    require_domain(position != 0 && std::abs(position) <= n, "position outside [+-n]");
    return static_cast<std::size_t>(position < 0 ? n + position : n + position - 1);
}

inline int position_of(int n, std::size_t slot)
{
    const int s = static_cast<int>(slot);
    return s < n ? s - n : s - n + 1;
}

inline GramMatrix identity_gram(int d)
{
    GramMatrix g(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d), Rational(0)));
    for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    }
    return g;
}

inline void validate_gram(const GramMatrix &g, int d)
{
    require_domain(static_cast<int>(g.size()) == d, "Gram matrix has wrong size");
    for (std::size_t i = 0; i < g.size(); ++i) {
        require_domain(g[i].size() == g.size(), "Gram matrix is not square");
        for (std::size_t j = 0; j < i; ++j) {
            require_domain(g[i][j] == g[j][i], "Gram matrix is not symmetric");
        }
    }
}

inline Coords unit_vector(int d, int j)
{
    require_domain(j >= 0 && j < d, "unit vector index out of range");
    Coords c(static_cast<std::size_t>(d), Rational(0));
    c[static_cast<std::size_t>(j)] = 1;
    return c;
}

inline Rational gram_inner(const GramMatrix &g, const Coords &x, const Coords &y)
{
    require_domain(x.size() == g.size() && y.size() == g.size(), "vector dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < y.size(); ++j) {
            s += x[i] * g[i][j] * y[j];
        }
    }
    return s;
}

// For each output slot, the input slot whose letter lands there: output
// position p carries the input at sigma^{-1}(p).
inline std::vector<std::size_t> source_slots(const SignedPermutation &sigma)
{
    const int n = sigma.degree();
    const auto inv = sigma.inverse();
    std::vector<std::size_t> src(static_cast<std::size_t>(2 * n));
    for (std::size_t s = 0; s < src.size(); ++s) {
        src[s] = slot_of(n, inv(position_of(n, s)));
    }
    return src;
}

inline Word group_action(const SignedPermutation &sigma, const Word &w)
{
    require_domain(static_cast<int>(w.size()) == 2 * sigma.degree(), "word length does not match the degree");
    const auto src = source_slots(sigma);
    Word out(w.size());
    for (std::size_t s = 0; s < w.size(); ++s) {
        out[s] = w[src[s]];
    }
    return out;
}

inline std::size_t level_dimension(int n, int d)
{
    std::size_t r = 1;
    for (int i = 0; i < 2 * n; ++i) {
        r *= static_cast<std::size_t>(d);
    }
    return r;
}

// Lexicographic rank of a word; the matrix basis order.
inline std::size_t word_index(const Word &w, int d)
{
    std::size_t r = 0;
    for (auto c : w) {
        r = r * static_cast<std::size_t>(d) + c;
    }
    return r;
}

inline Word index_word(std::size_t index, int n, int d)
{
    Word w(static_cast<std::size_t>(2 * n));
    for (std::size_t s = w.size(); s-- > 0;) {
        w[s] = static_cast<std::uint8_t>(index % static_cast<std::size_t>(d));
        index /= static_cast<std::size_t>(d);
    }
    return w;
}

// Element of the graded space sum_n H^{(x)2n}, stored sparsely by word.
template <Scalar S>
class FockVector
{
public:
    using Terms = std::map<Word, S>;

    FockVector() = default;
    explicit FockVector(int dim) : m_dim(dim)
    {
        require_domain(dim >= 1 && dim <= 255, "alphabet size out of range");
    }

    static FockVector vacuum(int dim)
    {
        FockVector v(dim);
        v.add(Word{}, from_rational<S>(1));
        return v;
    }
    static FockVector basis(int dim, Word w)
    {
        FockVector v(dim);
        v.add(std::move(w), from_rational<S>(1));
        return v;
    }

    int dim() const noexcept
    {
        return m_dim;
    }
    const Terms &terms() const noexcept
    {
        return m_terms;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }

    void add(const Word &w, const S &c)
    {
        if (bfock::is_zero(c)) {
            return;
        }
        for (auto letter : w) {
            require_domain(letter < m_dim, "letter outside the alphabet");
        }
        auto [it, inserted] = m_terms.emplace(w, c);
        if (!inserted) {
            it->second = it->second + c;
            if (bfock::is_zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }

    S coefficient(const Word &w) const
    {
        const auto it = m_terms.find(w);
        return it == m_terms.end() ? from_rational<S>(0) : it->second;
    }

    FockVector level(int n) const
    {
        FockVector r(m_dim);
        for (const auto &[w, c] : m_terms) {
            if (level_of(w) == n) {
                r.m_terms.emplace(w, c);
            }
        }
        return r;
    }

    int max_level() const
    {
        int m = -1;
        for (const auto &kv : m_terms) {
            m = std::max(m, level_of(kv.first));
        }
        return m;
    }

    FockVector &operator+=(const FockVector &o)
    {
        check_dim(o);
        for (const auto &[w, c] : o.m_terms) {
            add(w, c);
        }
        return *this;
    }
    FockVector &operator-=(const FockVector &o)
    {
        check_dim(o);
        const S minus_one = from_rational<S>(-1);
        for (const auto &[w, c] : o.m_terms) {
            add(w, minus_one * c);
        }
        return *this;
    }
    friend FockVector operator+(FockVector a, const FockVector &b)
    {
        return a += b;
    }
    friend FockVector operator-(FockVector a, const FockVector &b)
    {
        return a -= b;
    }
    friend FockVector operator*(const S &s, const FockVector &v)
    {
        FockVector r(v.m_dim);
        for (const auto &[w, c] : v.m_terms) {
            r.add(w, s * c);
        }
        return r;
    }
    friend bool operator==(const FockVector &a, const FockVector &b)
    {
        return a.m_dim == b.m_dim && a.m_terms == b.m_terms;
    }

private:
    void check_dim(const FockVector &o) const
    {
        require_domain(o.m_dim == m_dim, "Fock vectors over different alphabets");
    }

    int m_dim = 1;
    Terms m_terms;
};

// Row-sparse matrix; rows are kept free of explicit zeros so equality is
// structural.
template <Scalar S>
class SparseMatrix
{
public:
    using Row = std::map<std::size_t, S>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : m_cols(cols), m_rows(rows) {}

    static SparseMatrix identity(std::size_t n)
    {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.add(i, i, from_rational<S>(1));
        }
        return m;
    }

    std::size_t rows() const noexcept
    {
        return m_rows.size();
    }
    std::size_t cols() const noexcept
    {
        return m_cols;
    }
    const Row &row(std::size_t i) const
    {
        return m_rows.at(i);
    }

    void add(std::size_t i, std::size_t j, const S &c)
    {
        require_domain(i < rows() && j < m_cols, "matrix index out of range");
        if (bfock::is_zero(c)) {
            return;
        }
        auto &r = m_rows[i];
        auto [it, inserted] = r.emplace(j, c);
        if (!inserted) {
            it->second = it->second + c;
            if (bfock::is_zero(it->second)) {
                r.erase(it);
            }
        }
    }

    S at(std::size_t i, std::size_t j) const
    {
        const auto &r = m_rows.at(i);
        const auto it = r.find(j);
        return it == r.end() ? from_rational<S>(0) : it->second;
    }

    bool is_zero() const
    {
        return std::all_of(m_rows.begin(), m_rows.end(), [](const Row &r) { return r.empty(); });
    }

    std::size_t nonzeros() const
    {
        std::size_t k = 0;
        for (const auto &r : m_rows) {
            k += r.size();
        }
        return k;
    }

    SparseMatrix transpose() const
    {
        SparseMatrix t(m_cols, rows());
        for (std::size_t i = 0; i < rows(); ++i) {
            for (const auto &[j, c] : m_rows[i]) {
                t.add(j, i, c);
            }
        }
        return t;
    }

    template <Scalar T = S, typename F>
    SparseMatrix<T> map(F f) const
    {
        SparseMatrix<T> r(rows(), m_cols);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (const auto &[j, c] : m_rows[i]) {
                r.add(i, j, T(f(c)));
            }
        }
        return r;
    }

    friend SparseMatrix operator*(const SparseMatrix &a, const SparseMatrix &b)
    {
        require_domain(a.m_cols == b.rows(), "matrix shape mismatch in product");
        SparseMatrix r(a.rows(), b.m_cols);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (const auto &[k, c] : a.m_rows[i]) {
                for (const auto &[j, d] : b.m_rows[k]) {
                    r.add(i, j, c * d);
                }
            }
        }
        return r;
    }
    friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix &b)
    {
        a.check_shape(b);
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (const auto &[j, c] : b.m_rows[i]) {
                a.add(i, j, c);
            }
        }
        return a;
    }
    friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix &b)
    {
        a.check_shape(b);
        const S minus_one = from_rational<S>(-1);
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (const auto &[j, c] : b.m_rows[i]) {
                a.add(i, j, minus_one * c);
            }
        }
        return a;
    }
    friend SparseMatrix operator*(const S &s, const SparseMatrix &a)
    {
        return a.map([&](const S &c) { return s * c; });
    }
    friend bool operator==(const SparseMatrix &a, const SparseMatrix &b)
    {
        return a.m_cols == b.m_cols && a.m_rows == b.m_rows;
    }

private:
    void check_shape(const SparseMatrix &b) const
    {
        require_domain(rows() == b.rows() && m_cols == b.m_cols, "matrix shape mismatch");
    }

    std::size_t m_cols = 0;
    std::vector<Row> m_rows;
};

// Formal linear combination of elements of B(n).
template <Scalar S>
class GroupAlgebraElement
{
public:
    using Terms = std::map<SignedPermutation, S>;

    GroupAlgebraElement() = default;
    explicit GroupAlgebraElement(int n) : m_n(n) {}

    static GroupAlgebraElement unit(int n)
    {
        GroupAlgebraElement e(n);
        e.add(SignedPermutation::identity(n), from_rational<S>(1));
        return e;
    }

    int degree() const noexcept
    {
        return m_n;
    }
    const Terms &terms() const noexcept
    {
        return m_terms;
    }

    void add(const SignedPermutation &s, const S &c)
    {
        require_domain(s.degree() == m_n, "degree mismatch in group algebra");
        if (bfock::is_zero(c)) {
            return;
        }
        auto [it, inserted] = m_terms.emplace(s, c);
        if (!inserted) {
            it->second = it->second + c;
            if (bfock::is_zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }

    // Image under B(n) -> B(m) fixing +-(n+1)..+-m.
    GroupAlgebraElement extended(int m) const
    {
        GroupAlgebraElement r(m);
        for (const auto &[s, c] : m_terms) {
            r.add(s.extended(m), c);
        }
        return r;
    }

    friend GroupAlgebraElement operator*(const GroupAlgebraElement &a, const GroupAlgebraElement &b)
    {
        require_domain(a.m_n == b.m_n, "degree mismatch in group algebra");
        GroupAlgebraElement r(a.m_n);
        for (const auto &[s, c] : a.m_terms) {
            for (const auto &[t, d] : b.m_terms) {
                r.add(s * t, c * d);
            }
        }
        return r;
    }
    friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement &b)
    {
        require_domain(a.m_n == b.m_n, "degree mismatch in group algebra");
        for (const auto &[t, d] : b.m_terms) {
            a.add(t, d);
        }
        return a;
    }
    friend bool operator==(const GroupAlgebraElement &a, const GroupAlgebraElement &b)
    {
        return a.m_n == b.m_n && a.m_terms == b.m_terms;
    }

private:
    int m_n = 0;
    Terms m_terms;
};

template <Scalar S>
S character_weight(const SignedPermutation &s, const Deformation<S> &def)
{
    return power(def.alpha, static_cast<unsigned>(ninv(s))) * power(def.q, static_cast<unsigned>(pinv(s)));
}

// sum_{sigma in B(n)} alpha^{ninv} q^{pinv} sigma; the unit for n = 0.
template <Scalar S>
GroupAlgebraElement<S> symmetrization_element(int n, const Deformation<S> &def)
{
    require_domain(n >= 0, "level must be nonnegative");
    if (n == 0) {
        return GroupAlgebraElement<S>::unit(0);
    }
    GroupAlgebraElement<S> p(n);
    for (const auto &s : enumerate_group(n)) {
        p.add(s, character_weight(s, def));
    }
    return p;
}

// R^(n) = I + sum_{k=1}^{n-1} q^k pi_{n-1}..pi_{n-k}
//       + alpha q^{n-1} pi_{n-1}..pi_1 pi_0 (1 + sum_{k=1}^{n-1} q^k pi_1..pi_k)
template <Scalar S>
GroupAlgebraElement<S> r_element(int n, const Deformation<S> &def)
{
    require_domain(n >= 1, "R^(n) needs n >= 1");
    auto r = GroupAlgebraElement<S>::unit(n);
    std::vector<int> down;
    for (int k = 1; k <= n - 1; ++k) {
        down.push_back(n - k);
        r.add(word_product(n, down), power(def.q, static_cast<unsigned>(k)));
    }
    std::vector<int> head;
    for (int i = n - 1; i >= 0; --i) {
        head.push_back(i);
    }
    const S coeff = def.alpha * power(def.q, static_cast<unsigned>(n - 1));
    r.add(word_product(n, head), coeff);
    std::vector<int> tail = head;
    for (int k = 1; k <= n - 1; ++k) {
        tail.push_back(k);
        r.add(word_product(n, tail), coeff * power(def.q, static_cast<unsigned>(k)));
    }
    return r;
}

template <Scalar S>
SparseMatrix<S> representation_matrix(const GroupAlgebraElement<S> &e, int d)
{
    const int n = e.degree();
    const std::size_t dim = level_dimension(n, d);
    SparseMatrix<S> m(dim, dim);
    for (const auto &[s, c] : e.terms()) {
        const auto src = source_slots(s);
        for (std::size_t col = 0; col < dim; ++col) {
            const Word w = index_word(col, n, d);
            Word out(w.size());
            for (std::size_t k = 0; k < w.size(); ++k) {
                out[k] = w[src[k]];
            }
            m.add(word_index(out, d), col, c);
        }
    }
    return m;
}

inline void check_matrix_bounds(int n, int d)
{
    require_domain(n >= 0 && d >= 1, "level and dimension must be positive");
    require_bound(n <= max_matrix_level && d <= max_matrix_dim,
                  "matrix materialization limited to n <= 4, d <= 3");
}

// The d^{2n} x d^{2n} matrix of P^(n) in lexicographic word order.
template <Scalar S = BiPoly>
SparseMatrix<S> symmetrization(int n, int d, const Deformation<S> &def)
{
    check_matrix_bounds(n, d);
    return representation_matrix(symmetrization_element(n, def), d);
}

inline SparseMatrix<BiPoly> symmetrization(int n, int d)
{
    return symmetrization<BiPoly>(n, d, symbolic());
}

template <Scalar S = BiPoly>
SparseMatrix<S> r_operator(int n, int d, const Deformation<S> &def)
{
    check_matrix_bounds(n, d);
    return representation_matrix(r_element(n, def), d);
}

inline SparseMatrix<BiPoly> r_operator(int n, int d)
{
    return r_operator<BiPoly>(n, d, symbolic());
}

template <Scalar S>
FockVector<S> apply_element(const GroupAlgebraElement<S> &e, const FockVector<S> &v)
{
    FockVector<S> out(v.dim());
    std::vector<std::pair<std::vector<std::size_t>, S>> actions;
    for (const auto &[s, c] : e.terms()) {
        actions.emplace_back(source_slots(s), c);
    }
    for (const auto &[w, c] : v.terms()) {
        require_domain(level_of(w) == e.degree(), "vector level does not match the element degree");
        for (const auto &[src, a] : actions) {
            Word moved(w.size());
            for (std::size_t k = 0; k < w.size(); ++k) {
                moved[k] = w[src[k]];
            }
            out.add(moved, a * c);
        }
    }
    return out;
}

// Convert a map word -> coefficient to a FockVector at a single level.
template <Scalar S>
FockVector<S> from_dense_level(const std::vector<S> &coeffs, int n, int d)
{
    FockVector<S> v(d);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        v.add(index_word(i, n, d), coeffs[i]);
    }
    return v;
}

enum class AnnihilationRoute { via_r, via_sums };
enum class VacuumConvention { graded, printed };

// Level-homogeneous operator materialized on a range of levels.
template <Scalar S>
struct FockOperator {
    int shift = 0;
    std::map<int, SparseMatrix<S>> levels;
};

template <Scalar S>
struct CommutationResult {
    bool holds = false;
    std::vector<SparseMatrix<S>> residual; // one per level 0..N_max-1
};

// The double Fock space over R^d with an exact Gram matrix and deformation
// parameters in the ring S.
template <Scalar S>
class DoubleFock
{
public:
    DoubleFock(int d, Deformation<S> def) : DoubleFock(d, std::move(def), identity_gram(d)) {}
    DoubleFock(int d, Deformation<S> def, GramMatrix gram)
        : m_d(d), m_def(std::move(def)), m_gram(std::move(gram))
    {
        require_domain(d >= 1 && d <= 255, "dimension out of range");
        validate_gram(m_gram, d);
        m_unit_gram = m_gram == identity_gram(d);
    }

    int dim() const noexcept
    {
        return m_d;
    }
    const Deformation<S> &deformation() const noexcept
    {
        return m_def;
    }
    const GramMatrix &gram() const noexcept
    {
        return m_gram;
    }

    FockVector<S> vacuum() const
    {
        return FockVector<S>::vacuum(m_d);
    }

    // <x, e_j> for all j
    std::vector<S> pairing(const Coords &x) const
    {
        require_domain(static_cast<int>(x.size()) == m_d, "vector dimension mismatch");
        std::vector<S> r(static_cast<std::size_t>(m_d));
        for (int j = 0; j < m_d; ++j) {
            r[static_cast<std::size_t>(j)] = from_rational<S>(gram_inner(m_gram, x, unit_vector(m_d, j)));
        }
        return r;
    }

    S scalar(const Coords &x, const Coords &y) const
    {
        return from_rational<S>(gram_inner(m_gram, x, y));
    }

    // b*(x(x)y): x goes in front (position -(n+1)), y at the end (n+1).
    FockVector<S> creation(const Coords &x, const Coords &y, const FockVector<S> &v) const
    {
        require_domain(static_cast<int>(x.size()) == m_d && static_cast<int>(y.size()) == m_d,
                       "vector dimension mismatch");
        check(v);
        FockVector<S> out(m_d);
        for (const auto &[w, c] : v.terms()) {
            for (int i = 0; i < m_d; ++i) {
                if (x[static_cast<std::size_t>(i)] == 0) {
                    continue;
                }
                for (int j = 0; j < m_d; ++j) {
                    if (y[static_cast<std::size_t>(j)] == 0) {
                        continue;
                    }
                    Word u;
                    u.reserve(w.size() + 2);
                    u.push_back(static_cast<std::uint8_t>(i));
                    u.insert(u.end(), w.begin(), w.end());
                    u.push_back(static_cast<std::uint8_t>(j));
                    out.add(u, from_rational<S>(x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)]) * c);
                }
            }
        }
        return out;
    }

    // Undeformed b(x(x)y): contracts the two outermost letters.
    FockVector<S> free_annihilation(const Coords &x, const Coords &y, const FockVector<S> &v) const
    {
        check(v);
        const auto px = pairing(x);
        const auto py = pairing(y);
        FockVector<S> out(m_d);
        for (const auto &[w, c] : v.terms()) {
            if (w.empty()) {
                continue;
            }
            const S f = px[w.front()] * py[w.back()];
            out.add(Word(w.begin() + 1, w.end() - 1), f * c);
        }
        return out;
    }

    FockVector<S> annihilation(const Coords &x, const Coords &y, const FockVector<S> &v,
                               AnnihilationRoute route = AnnihilationRoute::via_r) const
    {
        check(v);
        return route == AnnihilationRoute::via_r ? annihilation_via_r(x, y, v) : annihilation_via_sums(x, y, v);
    }

    FockVector<S> gaussian(const Coords &x, const Coords &y, const FockVector<S> &v,
                           AnnihilationRoute route = AnnihilationRoute::via_r) const
    {
        return annihilation(x, y, v, route) + creation(x, y, v);
    }

    // q^{2n} on level n; the printed convention sends the vacuum to zero.
    FockVector<S> q_squared_number(const FockVector<S> &v, VacuumConvention conv = VacuumConvention::graded) const
    {
        FockVector<S> out(m_d);
        for (const auto &[w, c] : v.terms()) {
            const int n = level_of(w);
            if (n == 0 && conv == VacuumConvention::printed) {
                continue;
            }
            out.add(w, power(m_def.q, static_cast<unsigned>(2 * n)) * c);
        }
        return out;
    }

    // sum_n P^(n) v_n
    FockVector<S> symmetrize(const FockVector<S> &v) const
    {
        check(v);
        FockVector<S> out(m_d);
        for (int n = 0; n <= v.max_level(); ++n) {
            const auto part = v.level(n);
            if (!part.is_zero()) {
                out += apply_element(p_cached(n), part);
            }
        }
        return out;
    }

    // Undeformed pairing: delta_{levels} prod <x_i, y_i>.
    S inner0(const FockVector<S> &u, const FockVector<S> &v) const
    {
        check(u);
        check(v);
        S s = from_rational<S>(0);
        if (m_unit_gram) {
            for (const auto &[w, c] : u.terms()) {
                const auto it = v.terms().find(w);
                if (it != v.terms().end()) {
                    s = s + c * it->second;
                }
            }
            return s;
        }
        for (const auto &[w, c] : u.terms()) {
            for (const auto &[w2, c2] : v.terms()) {
                if (w.size() != w2.size()) {
                    continue;
                }
                Rational f = 1;
                for (std::size_t k = 0; k < w.size() && f != 0; ++k) {
                    f *= m_gram[w[k]][w2[k]];
                }
                if (f != 0) {
                    s = s + from_rational<S>(f) * c * c2;
                }
            }
        }
        return s;
    }

    S inner(const FockVector<S> &u, const FockVector<S> &v) const
    {
        return inner0(u, symmetrize(v));
    }

    // Matrix of a level-homogeneous map from level `from` in the word basis.
    SparseMatrix<S> level_matrix(int from, int to, const std::function<FockVector<S>(const FockVector<S> &)> &op) const
    {
        require_bound(from <= 6 && to <= 6 && level_dimension(std::max(from, to), m_d) <= 531441,
                      "level too large to materialize");
        const std::size_t cols = level_dimension(from, m_d);
        SparseMatrix<S> m(level_dimension(to, m_d), cols);
        for (std::size_t j = 0; j < cols; ++j) {
            const auto image = op(FockVector<S>::basis(m_d, index_word(j, from, m_d)));
            for (const auto &[w, c] : image.terms()) {
                require_domain(level_of(w) == to, "operator is not level-homogeneous");
                m.add(word_index(w, m_d), j, c);
            }
        }
        return m;
    }

    FockOperator<S> materialize(int shift, int max_level,
                                const std::function<FockVector<S>(const FockVector<S> &)> &op) const
    {
        FockOperator<S> r;
        r.shift = shift;
        for (int n = std::max(0, -shift); n <= max_level && n + shift <= max_level; ++n) {
            r.levels.emplace(n, level_matrix(n, n + shift, op));
        }
        return r;
    }

    // b(x(x)y) b*(xi(x)eta) - q b*(xi(x)eta) b(x(x)y)
    //   - <x,xi><y,eta> I - alpha <x,eta><y,xi> (q^2)^N   on levels 0..N_max-1
    CommutationResult<S> commutator_check(const Coords &x, const Coords &y, const Coords &xi, const Coords &eta,
                                          int n_max, VacuumConvention conv = VacuumConvention::graded,
                                          AnnihilationRoute route = AnnihilationRoute::via_r) const
    {
        const S c1 = scalar(x, xi) * scalar(y, eta);
        const S c2 = m_def.alpha * scalar(x, eta) * scalar(y, xi);
        const S minus_q = from_rational<S>(-1) * m_def.q;
        auto op = [&](const FockVector<S> &v) {
            FockVector<S> lhs = annihilation(x, y, creation(xi, eta, v), route);
            lhs += minus_q * creation(xi, eta, annihilation(x, y, v, route));
            lhs -= c1 * v;
            lhs -= c2 * q_squared_number(v, conv);
            return lhs;
        };
        CommutationResult<S> res;
        res.holds = true;
        for (int n = 0; n < n_max; ++n) {
            res.residual.push_back(level_matrix(n, n, op));
            res.holds = res.holds && res.residual.back().is_zero();
        }
        return res;
    }

    const GroupAlgebraElement<S> &p_cached(int n) const
    {
        std::lock_guard lock(m_cache->mutex);
        auto it = m_cache->p.find(n);
        if (it == m_cache->p.end()) {
            it = m_cache->p.emplace(n, symmetrization_element(n, m_def)).first;
        }
        return it->second;
    }
    const GroupAlgebraElement<S> &r_cached(int n) const
    {
        std::lock_guard lock(m_cache->mutex);
        auto it = m_cache->r.find(n);
        if (it == m_cache->r.end()) {
            it = m_cache->r.emplace(n, r_element(n, m_def)).first;
        }
        return it->second;
    }

private:
    void check(const FockVector<S> &v) const
    {
        require_domain(v.dim() == m_d, "Fock vector over a different alphabet");
    }

    FockVector<S> annihilation_via_r(const Coords &x, const Coords &y, const FockVector<S> &v) const
    {
        FockVector<S> out(m_d);
        for (int n = 1; n <= v.max_level(); ++n) {
            const auto part = v.level(n);
            if (!part.is_zero()) {
                out += free_annihilation(x, y, apply_element(r_cached(n), part));
            }
        }
        return out;
    }

    // p_q: sum_k q^{n-k} <x,w_{-k}><y,w_k> (w without +-k)
    // n_q: q^{n-1} sum_k q^{k-1} <x,w_k><y,w_{-k}> (w without +-k)
    FockVector<S> annihilation_via_sums(const Coords &x, const Coords &y, const FockVector<S> &v) const
    {
        const auto px = pairing(x);
        const auto py = pairing(y);
        FockVector<S> out(m_d);
        for (const auto &[w, c] : v.terms()) {
            const int n = level_of(w);
            for (int k = 1; k <= n; ++k) {
                const std::size_t left = slot_of(n, -k);
                const std::size_t right = slot_of(n, k);
                Word rest;
                rest.reserve(w.size() - 2);
                for (std::size_t s = 0; s < w.size(); ++s) {
                    if (s != left && s != right) {
                        rest.push_back(w[s]);
                    }
                }
                const S pq = power(m_def.q, static_cast<unsigned>(n - k)) * px[w[left]] * py[w[right]];
                const S nq = m_def.alpha * power(m_def.q, static_cast<unsigned>(n - 1 + k - 1)) * px[w[right]] *
                             py[w[left]];
                out.add(rest, (pq + nq) * c);
            }
        }
        return out;
    }

    int m_d;
    Deformation<S> m_def;
    GramMatrix m_gram;
    bool m_unit_gram = true;
    // map nodes are stable, so references handed out stay valid
    struct Cache {
        std::mutex mutex;
        std::map<int, GroupAlgebraElement<S>> p;
        std::map<int, GroupAlgebraElement<S>> r;
    };
    std::shared_ptr<Cache> m_cache = std::make_shared<Cache>();
};

} // namespace bfock

#endif
