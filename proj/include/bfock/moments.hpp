#ifndef BFOCK_MOMENTS_HPP
#define BFOCK_MOMENTS_HPP

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <bfock/errors.hpp>
#include <bfock/fock_core.hpp>
#include <bfock/partitions_b.hpp>

namespace bfock
{

inline constexpr int max_operator_gaussians = 8;
inline constexpr int max_partition_positions = 12;
inline constexpr int max_wick_length = 6;
inline constexpr int max_special_positions = 10;

// Vectors x_i for i in [+-n] together with the Gram matrix of the ambient space.
struct VectorAssignment {
    int d = 1;
    GramMatrix gram;
    std::map<int, Coords> vectors;

    int size() const
    {
        return static_cast<int>(vectors.size() / 2);
    }

    const Coords &at(int position) const
    {
        const auto it = vectors.find(position);
        require_domain(it != vectors.end(), "assignment has no vector at position " + std::to_string(position));
        return it->second;
    }

    Rational inner(int i, int j) const
    {
        return gram_inner(gram, at(i), at(j));
    }

    void validate() const
    {
        validate_gram(gram, d);
        const int n = size();
        require_domain(static_cast<int>(vectors.size()) == 2 * n, "assignment must cover [+-n]");
        for (int i = 1; i <= n; ++i) {
            require_domain(vectors.contains(i) && vectors.contains(-i), "assignment must cover [+-n]");
        }
        for (const auto &[p, v] : vectors) {
            require_domain(static_cast<int>(v.size()) == d, "assignment vector has wrong dimension");
        }
    }

    bool is_diagonal() const
    {
        for (int i = 1; i <= size(); ++i) {
            if (at(i) != at(-i)) {
                return false;
            }
        }
        return true;
    }
};

// Every position carries e_1 (unit vector) over R^d.
inline VectorAssignment unit_assignment(int n, int d = 1)
{
    VectorAssignment a;
    a.d = d;
    a.gram = identity_gram(d);
    for (int i = 1; i <= n; ++i) {
        a.vectors[i] = unit_vector(d, 0);
        a.vectors[-i] = unit_vector(d, 0);
    }
    return a;
}

// Coordinates p/r with p in -2..2 and r in 1..3, unit Gram.
inline VectorAssignment random_assignment(int n, int d, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> num(-2, 2);
    std::uniform_int_distribution<int> den(1, 3);
    VectorAssignment a;
    a.d = d;
    a.gram = identity_gram(d);
    for (int p = -n; p <= n; ++p) {
        if (p == 0) {
            continue;
        }
        Coords c;
        for (int k = 0; k < d; ++k) {
            const int nu = num(rng);
            c.emplace_back(nu, den(rng));
        }
        a.vectors[p] = std::move(c);
    }
    return a;
}

// Tensor x_{p_1} (x) ... (x) x_{p_k} expanded in the word basis.
template <Scalar S>
FockVector<S> tensor_of(const VectorAssignment &a, const std::vector<int> &positions)
{
    std::map<Word, Rational> acc{{Word{}, Rational(1)}};
    for (int p : positions) {
        const Coords &x = a.at(p);
        std::map<Word, Rational> next;
        for (const auto &[w, c] : acc) {
            for (int j = 0; j < a.d; ++j) {
                if (x[static_cast<std::size_t>(j)] == 0) {
                    continue;
                }
                Word u = w;
                u.push_back(static_cast<std::uint8_t>(j));
                next[u] += c * x[static_cast<std::size_t>(j)];
            }
        }
        acc = std::move(next);
    }
    FockVector<S> v(a.d);
    for (const auto &[w, c] : acc) {
        v.add(w, from_rational<S>(c));
    }
    return v;
}

// G(x_{-i} (x) x_i) applied in the given order (first entry acts first),
// then the vacuum coefficient.
template <Scalar S>
S moment_operator_ordered(const VectorAssignment &a, const std::vector<int> &order, const Deformation<S> &def)
{
    a.validate();
    require_bound(static_cast<int>(order.size()) <= max_operator_gaussians && a.d <= max_matrix_dim,
                  "operator moments limited to 8 Gaussians and d <= 3");
    DoubleFock<S> fock(a.d, def, a.gram);
    auto v = fock.vacuum();
    for (int i : order) {
        require_domain(i >= 1 && i <= a.size(), "Gaussian index outside the assignment");
        v = fock.gaussian(a.at(-i), a.at(i), v);
    }
    // P^(0) = I, so the deformed vacuum pairing is the vacuum coefficient
    return v.coefficient(Word{});
}

// phi(G_N ... G_1) with G_i = G(x_{-i} (x) x_i); G_1 acts first.
template <Scalar S = BiPoly>
S moment_operator(const VectorAssignment &a, const Deformation<S> &def)
{
    std::vector<int> order;
    for (int i = 1; i <= a.size(); ++i) {
        order.push_back(i);
    }
    return moment_operator_ordered(a, order, def);
}

inline BiPoly moment_operator(const VectorAssignment &a)
{
    return moment_operator<BiPoly>(a, symbolic());
}

template <Scalar S>
S block_weight(const PartitionB &pi, const VectorAssignment &a)
{
    Rational w = 1;
    for (const auto &b : pi.pairs()) {
        w *= a.inner(b[0], b[1]);
        if (w == 0) {
            break;
        }
    }
    return from_rational<S>(w);
}

// sum over P^B_2(N) of alpha^Nb q^Cr prod_{(i,j) in pi} <x_i, x_j>
template <Scalar S = BiPoly>
S moment_partitions(const VectorAssignment &a, const Deformation<S> &def)
{
    a.validate();
    require_bound(a.size() <= max_partition_positions, "partition moments limited to 12 positions");
    S sum = from_rational<S>(0);
    for (const auto &pi : enumerate_p2b(a.size())) {
        const S w = block_weight<S>(pi, a);
        if (is_zero(w)) {
            continue;
        }
        const auto st = statistics(pi);
        sum = sum + power(def.alpha, static_cast<unsigned>(st.nb)) * power(def.q, static_cast<unsigned>(st.cr)) * w;
    }
    return sum;
}

inline BiPoly moment_partitions(const VectorAssignment &a)
{
    return moment_partitions<BiPoly>(a, symbolic());
}

enum class Epsilon { annihilate, create };
using EpsilonWord = std::vector<Epsilon>;

inline EpsilonWord parse_epsilon(const std::string &s)
{
    EpsilonWord e;
    for (char c : s) {
        require_domain(c == '1' || c == '*', "epsilon word uses the symbols '1' and '*'");
        e.push_back(c == '*' ? Epsilon::create : Epsilon::annihilate);
    }
    return e;
}

// Partitions whose B-pairs ((-b,-a),(a,b)) have eps(|a|) = create and
// eps(b) = annihilate, with every singleton at a creation.
inline std::vector<PartitionB> compatible_by_filter(const EpsilonWord &eps)
{
    const int n = static_cast<int>(eps.size());
    std::vector<PartitionB> out;
    for (const auto &pi : enumerate_p12b(n)) {
        bool ok = true;
        for (const auto &bp : pi.b_pairs()) {
            ok = ok && eps[static_cast<std::size_t>(std::abs(bp.a) - 1)] == Epsilon::create &&
                 eps[static_cast<std::size_t>(bp.b - 1)] == Epsilon::annihilate;
        }
        for (int s : pi.b_singletons()) {
            ok = ok && eps[static_cast<std::size_t>(s - 1)] == Epsilon::create;
        }
        if (ok) {
            out.push_back(pi);
        }
    }
    return out;
}

// Same family generated left to right: each annihilation closes one of the
// currently open creations, with either sign.
inline std::vector<PartitionB> compatible_by_generator(const EpsilonWord &eps)
{
    const int n = static_cast<int>(eps.size());
    std::vector<PartitionB> out;
    std::vector<int> open;
    std::vector<Block> blocks;
    std::function<void(int)> rec = [&](int t) {
        if (t > n) {
            auto all = blocks;
            for (int s : open) {
                all.push_back({s});
                all.push_back({-s});
            }
            out.emplace_back(n, std::move(all));
            return;
        }
        if (eps[static_cast<std::size_t>(t - 1)] == Epsilon::create) {
            open.push_back(t);
            rec(t + 1);
            open.pop_back();
            return;
        }
        for (std::size_t k = 0; k < open.size(); ++k) {
            const int s = open[k];
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(k));
            for (int sign : {1, -1}) {
                blocks.push_back({sign * s, t});
                blocks.push_back({-t, -sign * s});
                rec(t + 1);
                blocks.resize(blocks.size() - 2);
            }
            open.insert(open.begin() + static_cast<std::ptrdiff_t>(k), s);
        }
    };
    if (n > 0) {
        rec(1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// b^{eps(n)} ... b^{eps(1)} (Omega (x) Omega) by operator action.
template <Scalar S>
FockVector<S> wick_operator(const EpsilonWord &eps, const VectorAssignment &a, const Deformation<S> &def)
{
    a.validate();
    require_domain(static_cast<int>(eps.size()) <= a.size(), "epsilon word longer than the assignment");
    DoubleFock<S> fock(a.d, def, a.gram);
    auto v = fock.vacuum();
    for (std::size_t t = 0; t < eps.size(); ++t) {
        const int i = static_cast<int>(t) + 1;
        v = eps[t] == Epsilon::create ? fock.creation(a.at(-i), a.at(i), v)
                                      : fock.annihilation(a.at(-i), a.at(i), v);
    }
    return v;
}

enum class WickGenerator { filter, direct };

// sum over eps-compatible pi of alpha^Nb q^{Cr+Cs} prod <x_i,x_j> times the
// tensor of the singleton vectors in increasing position order.
template <Scalar S = BiPoly>
FockVector<S> wick_expansion(const EpsilonWord &eps, const VectorAssignment &a, const Deformation<S> &def,
                             WickGenerator gen = WickGenerator::direct)
{
    a.validate();
    const int n = static_cast<int>(eps.size());
    require_bound(n <= max_wick_length, "Wick expansion limited to words of length 6");
    require_domain(n <= a.size(), "epsilon word longer than the assignment");
    FockVector<S> out(a.d);
    if (n == 0) {
        return FockVector<S>::vacuum(a.d);
    }
    const auto family = gen == WickGenerator::filter ? compatible_by_filter(eps) : compatible_by_generator(eps);
    for (const auto &pi : family) {
        const S w = block_weight<S>(pi, a);
        if (is_zero(w)) {
            continue;
        }
        const auto st = statistics(pi);
        std::vector<int> singles;
        for (const auto &b : pi.blocks()) {
            if (b.size() == 1) {
                singles.push_back(b[0]);
            }
        }
        const S coeff =
            power(def.alpha, static_cast<unsigned>(st.nb)) * power(def.q, static_cast<unsigned>(st.cr + st.cs)) * w;
        out += coeff * tensor_of<S>(a, singles);
    }
    return out;
}

// x_{-1} = x_4 = e_1, x_1 = x_{-4} = e_2, x_{-2} = x_3 = e_1, x_2 = x_{-3} = e_2
inline VectorAssignment trace_assignment(int d)
{
    require_domain(d >= 2, "trace experiment needs d >= 2");
    VectorAssignment a;
    a.d = d;
    a.gram = identity_gram(d);
    const auto e1 = unit_vector(d, 0);
    const auto e2 = unit_vector(d, 1);
    a.vectors = {{-1, e1}, {4, e1}, {1, e2}, {-4, e2}, {-2, e1}, {3, e1}, {2, e2}, {-3, e2}};
    return a;
}

// phi(G4 G3 G2 G1) - phi(G3 G2 G1 G4)
template <Scalar S = BiPoly>
S trace_defect(int d, const Deformation<S> &def)
{
    const auto a = trace_assignment(d);
    return moment_operator_ordered(a, {1, 2, 3, 4}, def) - moment_operator_ordered(a, {4, 1, 2, 3}, def);
}

inline BiPoly trace_defect(int d)
{
    return trace_defect<BiPoly>(d, symbolic());
}

enum class SpecialCase { alpha0, q0_typeB, q0_typeA_diag };

// alpha0:        sum over P^A_2 of q^Cr prod <x_i,x_j>
// q0_typeB:      sum over NC^B_2 of alpha^Nb prod <x_i,x_j>
// q0_typeA_diag: sum over NC^A_2 of (1+alpha)^Out prod over B-pairs <x_a,x_b>^2,
//                for assignments with x_{-i} = x_i
inline BiPoly special_moments(SpecialCase c, const VectorAssignment &a)
{
    a.validate();
    const int n = a.size();
    require_bound(n <= max_special_positions, "special moments limited to 10 positions");
    const BiPoly alpha = BiPoly::alpha();
    const BiPoly q = BiPoly::q();
    BiPoly sum;
    switch (c) {
    case SpecialCase::alpha0:
        for (const auto &pi : enumerate_p2b(n)) {
            const auto st = statistics(pi);
            if (st.nb == 0) {
                sum += power(q, static_cast<unsigned>(st.cr)) * block_weight<BiPoly>(pi, a);
            }
        }
        break;
    case SpecialCase::q0_typeB:
        for (const auto &pi : enumerate_ncb(n)) {
            sum += power(alpha, static_cast<unsigned>(statistics(pi).nb)) * block_weight<BiPoly>(pi, a);
        }
        break;
    case SpecialCase::q0_typeA_diag:
        require_domain(a.is_diagonal(), "the type-A form needs x_{-i} = x_i");
        for (const auto &pi : enumerate_nca(n)) {
            Rational w = 1;
            for (const auto &bp : pi.b_pairs()) {
                const Rational s = a.inner(bp.a, bp.b);
                w *= s * s;
            }
            sum += power(1 + alpha, static_cast<unsigned>(outer_count(pi))) * BiPoly(w);
        }
        break;
    }
    return sum;
}

} // namespace bfock

#endif
