#ifndef BFOCK_LINALG_EXACT_HPP
#define BFOCK_LINALG_EXACT_HPP

#include <map>
#include <numeric>
#include <vector>

#include <bfock/errors.hpp>
#include <bfock/fock_core.hpp>
#include <bfock/rational.hpp>

namespace bfock
{

using RationalMatrix = SparseMatrix<Rational>;
using SparseColumn = std::map<std::size_t, Rational>;

// Groups of indices that a square matrix never mixes: i and j share a block
// when M(i,j) != 0. Permuting rows and columns together makes M block
// diagonal along these groups.
inline std::vector<std::vector<std::size_t>> connected_blocks(const RationalMatrix &m)
{
    require_domain(m.rows() == m.cols(), "block decomposition needs a square matrix");
    std::vector<std::size_t> parent(m.rows());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (const auto &kv : m.row(i)) {
            const auto a = find(i);
            const auto b = find(kv.first);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        groups[find(i)].push_back(i);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto &kv : groups) {
        out.push_back(std::move(kv.second));
    }
    return out;
}

// Integer echelon form by Bareiss elimination. Each row is first cleared of
// denominators; row scaling does not change the row space.
struct Echelon {
    std::vector<std::vector<Integer>> rows; // first rank() rows are the pivot rows
    std::vector<std::size_t> pivots;
    Rational det_factor = 1; // det(original) = det_factor * last pivot, when square and full rank
    std::size_t rank() const
    {
        return pivots.size();
    }
};

inline Echelon bareiss(const std::vector<std::vector<Rational>> &dense)
{
    Echelon e;
    const std::size_t m = dense.size();
    const std::size_t n = m == 0 ? 0 : dense[0].size();
    e.rows.assign(m, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < m; ++i) {
        Integer l = 1;
        for (const auto &x : dense[i]) {
            l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
        }
        for (std::size_t j = 0; j < n; ++j) {
            e.rows[i][j] = boost::multiprecision::numerator(dense[i][j]) * (l / boost::multiprecision::denominator(dense[i][j]));
        }
        e.det_factor /= l;
    }
    auto &A = e.rows;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && A[p][c] == 0) {
            ++p;
        }
        if (p == m) {
            continue;
        }
        if (p != r) {
            std::swap(A[p], A[r]);
            e.det_factor = -e.det_factor;
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) / prev;
            }
            A[i][c] = 0;
        }
        prev = A[r][c];
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

namespace detail
{

inline std::vector<std::vector<Rational>> dense_block(const RationalMatrix &m, const std::vector<std::size_t> &idx)
{
    std::vector<std::vector<Rational>> d(idx.size(), std::vector<Rational>(idx.size(), Rational(0)));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const auto &row = m.row(idx[a]);
        for (std::size_t b = 0; b < idx.size(); ++b) {
            const auto it = row.find(idx[b]);
            if (it != row.end()) {
                d[a][b] = it->second;
            }
        }
    }
    return d;
}

inline std::vector<std::vector<Rational>> nullspace_dense(const Echelon &e, std::size_t n)
{
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Rational> x(n, Rational(0));
        x[f] = 1;
        for (std::size_t k = e.rank(); k-- > 0;) {
            const std::size_t pc = e.pivots[k];
            Rational s = 0;
            for (std::size_t j = pc + 1; j < n; ++j) {
                if (x[j] != 0 && e.rows[k][j] != 0) {
                    s += Rational(e.rows[k][j]) * x[j];
                }
            }
            x[pc] = -s / Rational(e.rows[k][pc]);
        }
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace detail

inline std::size_t rank(const RationalMatrix &m)
{
    std::size_t r = 0;
    for (const auto &blk : connected_blocks(m)) {
        r += bareiss(detail::dense_block(m, blk)).rank();
    }
    return r;
}

inline Rational determinant(const RationalMatrix &m)
{
    Rational det = 1;
    for (const auto &blk : connected_blocks(m)) {
        const auto e = bareiss(detail::dense_block(m, blk));
        if (e.rank() < blk.size()) {
            return 0;
        }
        det *= e.det_factor * Rational(e.rows[blk.size() - 1][blk.size() - 1]);
    }
    return det;
}

// Basis of {v : M v = 0}, assembled block by block.
inline std::vector<SparseColumn> nullspace(const RationalMatrix &m)
{
    std::vector<SparseColumn> out;
    for (const auto &blk : connected_blocks(m)) {
        const auto e = bareiss(detail::dense_block(m, blk));
        for (const auto &x : detail::nullspace_dense(e, blk.size())) {
            SparseColumn v;
            for (std::size_t a = 0; a < blk.size(); ++a) {
                if (x[a] != 0) {
                    v.emplace(blk[a], x[a]);
                }
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

// Pivot columns of M: a basis of its column space.
inline std::vector<SparseColumn> image_basis(const RationalMatrix &m)
{
    const auto t = m.transpose();
    std::vector<SparseColumn> out;
    for (const auto &blk : connected_blocks(m)) {
        const auto e = bareiss(detail::dense_block(m, blk));
        for (auto p : e.pivots) {
            const auto &col = t.row(blk[p]);
            out.emplace_back(col.begin(), col.end());
        }
    }
    return out;
}

inline std::vector<Rational> multiply_column(const RationalMatrix &m, const SparseColumn &v)
{
    std::vector<Rational> r(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (const auto &[j, c] : m.row(i)) {
            const auto it = v.find(j);
            if (it != v.end()) {
                r[i] += c * it->second;
            }
        }
    }
    return r;
}

} // namespace bfock

#endif
