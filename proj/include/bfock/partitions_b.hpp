#ifndef BFOCK_PARTITIONS_B_HPP
#define BFOCK_PARTITIONS_B_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <bfock/bipoly.hpp>
#include <bfock/errors.hpp>

namespace bfock
{

inline constexpr int max_p12b_points = 8;
inline constexpr int max_p2b_points = 12;
inline constexpr int max_ncb_points = 12;

using Block = std::vector<int>;

// A B-pair ((-b,-a),(a,b)) with 0 < b and |a| < b. The right block (a,b) is
// the one holding the larger absolute value on the positive side.
struct BPair {
    int a = 0;
    int b = 0;

    Block right() const
    {
        return {a, b};
    }
    Block left() const
    {
        return {-b, -a};
    }
    bool positive() const noexcept
    {
        return a > 0;
    }
    friend bool operator==(const BPair &, const BPair &) = default;
};

struct PartitionStats {
    int cr = 0;
    int nb = 0;
    int cs = 0;
    friend bool operator==(const PartitionStats &, const PartitionStats &) = default;
};

namespace detail
{

inline bool blocks_cross(const Block &v, const Block &w)
{
    if (v.size() != 2 || w.size() != 2) {
        return false;
    }
    const int i = v[0], j = v[1], k = w[0], l = w[1];
    return (i < k && k < j && j < l) || (k < i && i < l && l < j);
}

// v = (i,j), w = (k,l) with i < k < j < l
inline bool cr_relation(const Block &v, const Block &w)
{
    return v[0] < w[0] && w[0] < v[1] && v[1] < w[1];
}

inline bool covers(const Block &w, int point)
{
    return w.size() == 2 && w[0] < point && point < w[1];
}

inline Block reflect(const Block &v)
{
    Block r;
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        r.push_back(-*it);
    }
    return r;
}

} // namespace detail

// Bar-symmetric partition of [+-n] into singletons and pairs with no
// self-reflective pair. Blocks are sorted internally and by minimum element.
class PartitionB
{
public:
    PartitionB() = default;

    PartitionB(int n, std::vector<Block> blocks) : m_n(n), m_blocks(std::move(blocks))
    {
        require_domain(n >= 1, "partition degree must be positive");
        canonicalize();
        validate();
    }

    int n() const noexcept
    {
        return m_n;
    }
    const std::vector<Block> &blocks() const noexcept
    {
        return m_blocks;
    }

    std::vector<BPair> b_pairs() const
    {
        std::vector<BPair> out;
        for (const auto &v : m_blocks) {
            if (v.size() == 2 && v[1] > 0 && std::abs(v[0]) < v[1]) {
                out.push_back({v[0], v[1]});
            }
        }
        return out;
    }

    // Positive representatives s of the B-singletons ((-s),(s)).
    std::vector<int> b_singletons() const
    {
        std::vector<int> out;
        for (const auto &v : m_blocks) {
            if (v.size() == 1 && v[0] > 0) {
                out.push_back(v[0]);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Block> pairs() const
    {
        std::vector<Block> out;
        std::copy_if(m_blocks.begin(), m_blocks.end(), std::back_inserter(out),
                     [](const Block &b) { return b.size() == 2; });
        return out;
    }

    bool has_singletons() const
    {
        return std::any_of(m_blocks.begin(), m_blocks.end(), [](const Block &b) { return b.size() == 1; });
    }

    std::string str() const
    {
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < m_blocks.size(); ++i) {
            os << (i ? "," : "") << "(";
            for (std::size_t j = 0; j < m_blocks[i].size(); ++j) {
                os << (j ? "," : "") << m_blocks[i][j];
            }
            os << ")";
        }
        os << "}";
        return os.str();
    }

    friend bool operator==(const PartitionB &, const PartitionB &) = default;
    friend auto operator<=>(const PartitionB &, const PartitionB &) = default;

private:
    void canonicalize()
    {
        for (auto &b : m_blocks) {
            std::sort(b.begin(), b.end());
        }
        std::sort(m_blocks.begin(), m_blocks.end());
    }

    void validate() const
    {
        std::set<int> seen;
        std::set<Block> as_set(m_blocks.begin(), m_blocks.end());
        for (const auto &b : m_blocks) {
            require_domain(b.size() == 1 || b.size() == 2, "blocks must be singletons or pairs");
            for (int x : b) {
                require_domain(x != 0 && std::abs(x) <= m_n, "block element outside [+-n]");
                require_domain(seen.insert(x).second, "blocks are not disjoint");
            }
            const Block r = detail::reflect(b);
            require_domain(as_set.contains(r), "partition is not bar-symmetric");
            require_domain(b.size() == 1 || r != b, "self-reflective pair");
        }
        require_domain(static_cast<int>(seen.size()) == 2 * m_n, "blocks do not cover [+-n]");
    }

    int m_n = 0;
    std::vector<Block> m_blocks;
};

namespace detail
{

struct EnumerationOptions {
    bool allow_singletons = true;
    bool noncrossing = false;
    bool positive_only = false;
};

inline void enumerate_rec(int n, std::vector<bool> &used, std::vector<Block> &blocks,
                          const EnumerationOptions &opt, std::vector<PartitionB> &out)
{
    int a = 1;
    while (a <= n && used[static_cast<std::size_t>(a)]) {
        ++a;
    }
    if (a > n) {
        out.emplace_back(n, blocks);
        return;
    }
    used[static_cast<std::size_t>(a)] = true;
    if (opt.allow_singletons) {
        blocks.push_back({a});
        blocks.push_back({-a});
        enumerate_rec(n, used, blocks, opt, out);
        blocks.resize(blocks.size() - 2);
    }
    for (int b = a + 1; b <= n; ++b) {
        if (used[static_cast<std::size_t>(b)]) {
            continue;
        }
        used[static_cast<std::size_t>(b)] = true;
        for (int sign : {1, -1}) {
            if (sign < 0 && opt.positive_only) {
                continue;
            }
            Block right{sign * a, b};
            std::sort(right.begin(), right.end());
            Block left = reflect(right);
            bool ok = true;
            if (opt.noncrossing) {
                for (const auto &w : blocks) {
                    if (blocks_cross(w, right) || blocks_cross(w, left)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                blocks.push_back(right);
                blocks.push_back(left);
                enumerate_rec(n, used, blocks, opt, out);
                blocks.resize(blocks.size() - 2);
            }
        }
        used[static_cast<std::size_t>(b)] = false;
    }
    used[static_cast<std::size_t>(a)] = false;
}

inline std::vector<PartitionB> enumerate(int n, const EnumerationOptions &opt)
{
    std::vector<PartitionB> out;
    if (n == 0) {
        return out;
    }
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    std::vector<Block> blocks;
    enumerate_rec(n, used, blocks, opt, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// P^B_{1,2}(n): all type-B singleton/pair partitions of [+-n].
inline std::vector<PartitionB> enumerate_p12b(int n)
{
    require_domain(n >= 1, "n must be positive");
    require_bound(n <= max_p12b_points, "P^B_{1,2}(n) enumeration limited to n <= 8");
    return detail::enumerate(n, {});
}

// P^B_2(n): type-B pair partitions (no singletons). Empty for odd n.
inline std::vector<PartitionB> enumerate_p2b(int n)
{
    require_domain(n >= 0, "n must be nonnegative");
    require_bound(n <= max_p2b_points, "P^B_2(n) enumeration limited to n <= 12");
    if (n % 2 != 0) {
        return {};
    }
    return detail::enumerate(n, {.allow_singletons = false});
}

// NC^B_2(n): crossing-free type-B pair partitions, generated with pruning.
inline std::vector<PartitionB> enumerate_ncb(int n)
{
    require_domain(n >= 0, "n must be nonnegative");
    require_bound(n <= max_ncb_points, "NC^B_2(n) enumeration limited to n <= 12");
    if (n % 2 != 0) {
        return {};
    }
    return detail::enumerate(n, {.allow_singletons = false, .noncrossing = true});
}

// NC^A_2(n): crossing-free with all B-pairs positive.
inline std::vector<PartitionB> enumerate_nca(int n)
{
    require_domain(n >= 0, "n must be nonnegative");
    require_bound(n <= max_ncb_points, "NC^A_2(n) enumeration limited to n <= 12");
    if (n % 2 != 0) {
        return {};
    }
    return detail::enumerate(n, {.allow_singletons = false, .noncrossing = true, .positive_only = true});
}

// Cr, Nb, Cs from the B-pair definitions.
//   Cr: ordered B-pair tuples whose right blocks satisfy V cr W, plus each
//       unordered pair of distinct B-pairs whose reflected block Vbar crosses
//       the other's right block W (Vbar cr W and its mirror Wbar cr V are the
//       same crossing seen from either side of the centre and count once).
//   Nb: negative B-pairs.
//   Cs: (B-singleton, B-pair) tuples with W covering s, plus W covering -s.
inline PartitionStats statistics(const PartitionB &pi)
{
    const auto bp = pi.b_pairs();
    PartitionStats st;
    for (std::size_t i = 0; i < bp.size(); ++i) {
        for (std::size_t j = 0; j < bp.size(); ++j) {
            if (detail::cr_relation(bp[i].right(), bp[j].right())) {
                ++st.cr;
            }
            if (i < j && detail::blocks_cross(bp[i].left(), bp[j].right())) {
                ++st.cr;
            }
        }
        if (!bp[i].positive()) {
            ++st.nb;
        }
    }
    for (int s : pi.b_singletons()) {
        for (const auto &w : bp) {
            st.cs += detail::covers(w.right(), s) ? 1 : 0;
            st.cs += detail::covers(w.right(), -s) ? 1 : 0;
        }
    }
    return st;
}

// Independent recount from the mirror-symmetric arc diagram with a vertical
// line at the centre. Arcs are semicircles over the points -n..-1,1..n; two
// crossing arcs (i,j), (k,l) meet at abscissa (kl - ij)/(k + l - i - j).
//   Cr: crossing points strictly left of the line; coincident mirror crossings
//       on the line contribute one between them.
//   Nb: B-pairs whose arcs straddle the line.
//   Cs: arcs passing over a left singleton.
inline PartitionStats statistics_centerline(const PartitionB &pi)
{
    const auto pairs = pi.pairs();
    PartitionStats st;
    int on_line = 0;
    int straddling = 0;
    for (std::size_t x = 0; x < pairs.size(); ++x) {
        if (pairs[x][0] < 0 && pairs[x][1] > 0) {
            ++straddling;
        }
        for (std::size_t y = x + 1; y < pairs.size(); ++y) {
            const auto &v = pairs[x];
            const auto &w = pairs[y];
            if (!detail::blocks_cross(v, w) || detail::reflect(v) == w) {
                continue;
            }
            const long long num = static_cast<long long>(w[0]) * w[1] - static_cast<long long>(v[0]) * v[1];
            // denominators are positive for crossing arcs
            if (num < 0) {
                ++st.cr;
            } else if (num == 0) {
                ++on_line;
            }
        }
    }
    st.cr += on_line / 2;
    st.nb = straddling / 2;
    for (const auto &b : pi.blocks()) {
        if (b.size() == 1 && b[0] < 0) {
            for (const auto &w : pairs) {
                st.cs += detail::covers(w, b[0]) ? 1 : 0;
            }
        }
    }
    return st;
}

// Sum over P^B_2(n) of alpha^Nb q^Cr, all inner products set to 1.
inline BiPoly generating_polynomial(int n)
{
    BiPoly sum;
    for (const auto &pi : enumerate_p2b(n)) {
        const auto st = statistics(pi);
        sum += BiPoly::monomial(1, static_cast<unsigned>(st.nb), static_cast<unsigned>(st.cr));
    }
    return sum;
}

// D: NC^B_2 -> NC^A_2, rewiring every negative B-pair ((-b,a'),(-a',b)) into
// the positive ((-b,-a'),(a',b)).
inline PartitionB d_map(const PartitionB &pi)
{
    require_domain(!pi.has_singletons(), "D-map needs a pair partition");
    require_domain(statistics(pi).cr == 0, "D-map needs a crossing-free partition");
    std::vector<Block> blocks;
    for (const auto &bp : pi.b_pairs()) {
        const int a = std::abs(bp.a);
        blocks.push_back({a, bp.b});
        blocks.push_back({-bp.b, -a});
    }
    return PartitionB(pi.n(), std::move(blocks));
}

// Number of B-pairs of a type-A non-crossing partition not covered by another.
inline int outer_count(const PartitionB &pi)
{
    require_domain(!pi.has_singletons(), "outer_count needs a pair partition");
    require_domain(statistics(pi).cr == 0, "outer_count needs a crossing-free partition");
    const auto bp = pi.b_pairs();
    int outer = 0;
    for (const auto &v : bp) {
        require_domain(v.positive(), "outer_count needs all B-pairs positive");
        const bool covered = std::any_of(bp.begin(), bp.end(), [&](const BPair &w) {
            return w.a < v.a && v.b < w.b;
        });
        outer += covered ? 0 : 1;
    }
    return outer;
}

} // namespace bfock

#endif
