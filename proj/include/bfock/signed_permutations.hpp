#ifndef BFOCK_SIGNED_PERMUTATIONS_HPP
#define BFOCK_SIGNED_PERMUTATIONS_HPP

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <bfock/errors.hpp>

namespace bfock
{

inline constexpr int max_group_degree = 6;
inline constexpr int max_bfs_degree = 3;

// Element of the hyperoctahedral group B(n): a bijection s of {-n..-1,1..n}
// with s(-i) = -s(i). Only the one-line image of 1..n is stored, so the sign
// symmetry holds by construction.
class SignedPermutation
{
public:
    SignedPermutation() = default;

    explicit SignedPermutation(std::vector<int> image) : m_image(std::move(image))
    {
        const int n = degree();
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (int v : m_image) {
            const int a = std::abs(v);
            require_domain(a >= 1 && a <= n && !seen[a], "image is not a signed permutation");
            seen[a] = true;
        }
    }

    static SignedPermutation identity(int n)
    {
        std::vector<int> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), 1);
        return SignedPermutation(std::move(img), trusted{});
    }

    int degree() const noexcept
    {
        return static_cast<int>(m_image.size());
    }
    const std::vector<int> &image() const noexcept
    {
        return m_image;
    }

    // Value on any point of [+-n].
    int operator()(int i) const
    {
        const int a = std::abs(i);
        require_domain(a >= 1 && a <= degree(), "point outside [+-n]");
        const int v = m_image[static_cast<std::size_t>(a - 1)];
        return i > 0 ? v : -v;
    }

    SignedPermutation inverse() const
    {
        std::vector<int> inv(m_image.size());
        for (int i = 1; i <= degree(); ++i) {
            const int v = m_image[static_cast<std::size_t>(i - 1)];
            inv[static_cast<std::size_t>(std::abs(v) - 1)] = v > 0 ? i : -i;
        }
        return SignedPermutation(std::move(inv), trusted{});
    }

    bool is_identity() const
    {
        for (int i = 1; i <= degree(); ++i) {
            if (m_image[static_cast<std::size_t>(i - 1)] != i) {
                return false;
            }
        }
        return true;
    }

    // Same permutation viewed in B(m), m >= n, fixing +-(n+1)..+-m.
    SignedPermutation extended(int m) const
    {
        require_domain(m >= degree(), "cannot extend to a smaller degree");
        std::vector<int> img = m_image;
        for (int i = degree() + 1; i <= m; ++i) {
            img.push_back(i);
        }
        return SignedPermutation(std::move(img), trusted{});
    }

    friend bool operator==(const SignedPermutation &, const SignedPermutation &) = default;
    friend auto operator<=>(const SignedPermutation &, const SignedPermutation &) = default;

private:
    struct trusted {
    };
    SignedPermutation(std::vector<int> image, trusted) : m_image(std::move(image)) {}

    std::vector<int> m_image;
};

// pi_0 flips the sign of 1; pi_i (i >= 1) swaps i and i+1.
inline SignedPermutation generator(int n, int i)
{
    require_domain(n >= 1, "degree must be positive");
    require_domain(i >= 0 && i <= n - 1, "generator index out of range");
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    if (i == 0) {
        img[0] = -1;
    } else {
        std::swap(img[static_cast<std::size_t>(i - 1)], img[static_cast<std::size_t>(i)]);
    }
    return SignedPermutation(std::move(img));
}

// (a o b)(i) = a(b(i))
inline SignedPermutation compose(const SignedPermutation &a, const SignedPermutation &b)
{
    require_domain(a.degree() == b.degree(), "degree mismatch in compose");
    std::vector<int> img(static_cast<std::size_t>(a.degree()));
    for (int i = 1; i <= a.degree(); ++i) {
        img[static_cast<std::size_t>(i - 1)] = a(b(i));
    }
    return SignedPermutation(std::move(img));
}

inline SignedPermutation operator*(const SignedPermutation &a, const SignedPermutation &b)
{
    return compose(a, b);
}

// Product of generators written left to right, e.g. {1,0,1} -> pi_1 pi_0 pi_1.
inline SignedPermutation word_product(int n, const std::vector<int> &generators)
{
    auto r = SignedPermutation::identity(n);
    for (int g : generators) {
        r = compose(r, generator(n, g));
    }
    return r;
}

// Negative inversions: number of i in 1..n with s(i) < 0. Equals l1.
inline int ninv(const SignedPermutation &s)
{
    return static_cast<int>(std::count_if(s.image().begin(), s.image().end(), [](int v) { return v < 0; }));
}

// Positive inversions: type-B roots e_i - e_j and e_i + e_j (i < j) sent to
// negative roots, i.e. s(i) > s(j) or s(i) + s(j) < 0. Equals l2.
inline int pinv(const SignedPermutation &s)
{
    const auto &img = s.image();
    int count = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = i + 1; j < img.size(); ++j) {
            count += img[i] > img[j] ? 1 : 0;
            count += img[i] + img[j] < 0 ? 1 : 0;
        }
    }
    return count;
}

// All 2^n n! elements, ordered lexicographically on the image sequence.
inline std::vector<SignedPermutation> enumerate_group(int n)
{
    require_domain(n >= 1, "degree must be positive");
    require_bound(n <= max_group_degree, "B(n) enumeration limited to n <= 6");
    std::vector<int> abs_img(static_cast<std::size_t>(n));
    std::iota(abs_img.begin(), abs_img.end(), 1);
    std::vector<std::vector<int>> images;
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> img = abs_img;
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    img[static_cast<std::size_t>(i)] = -img[static_cast<std::size_t>(i)];
                }
            }
            images.push_back(std::move(img));
        }
    } while (std::next_permutation(abs_img.begin(), abs_img.end()));
    std::sort(images.begin(), images.end());
    std::vector<SignedPermutation> out;
    out.reserve(images.size());
    for (auto &img : images) {
        out.emplace_back(std::move(img));
    }
    return out;
}

struct CoxeterLengths {
    int l1 = 0;
    int l2 = 0;
    friend bool operator==(const CoxeterLengths &, const CoxeterLengths &) = default;
};

// Test oracle: breadth-first search over the Cayley graph of B(n) for a
// shortest word, then count pi_0 factors and the remaining factors.
inline CoxeterLengths coxeter_length_bfs(const SignedPermutation &target)
{
    const int n = target.degree();
    require_bound(n <= max_bfs_degree, "BFS length oracle limited to degree <= 3");
    std::map<SignedPermutation, CoxeterLengths> found;
    std::deque<SignedPermutation> queue;
    const auto e = SignedPermutation::identity(n);
    found.emplace(e, CoxeterLengths{});
    queue.push_back(e);
    while (!queue.empty()) {
        const auto cur = queue.front();
        queue.pop_front();
        const auto lengths = found.at(cur);
        if (cur == target) {
            return lengths;
        }
        for (int g = 0; g < n; ++g) {
            auto next = compose(cur, generator(n, g));
            if (found.contains(next)) {
                continue;
            }
            CoxeterLengths l = lengths;
            (g == 0 ? l.l1 : l.l2) += 1;
            found.emplace(next, l);
            queue.push_back(std::move(next));
        }
    }
    throw DomainError("target not reachable"); // unreachable for valid input
}

} // namespace bfock

#endif
