#ifndef BFOCK_EDGE_CASES_HPP
#define BFOCK_EDGE_CASES_HPP

#include <string>
#include <utility>
#include <vector>

#include <bfock/errors.hpp>
#include <bfock/fock_core.hpp>
#include <bfock/linalg_exact.hpp>

namespace bfock
{

inline constexpr int max_kernel_level = 3;

struct ParameterPoint {
    Rational alpha;
    Rational q;
    friend bool operator==(const ParameterPoint &, const ParameterPoint &) = default;
};

// (+-1,+-1), (0,+-1), (+-1,0)
inline std::vector<ParameterPoint> boundary_points()
{
    return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {0, 1}, {0, -1}, {1, 0}, {-1, 0}};
}

inline bool is_boundary_point(const ParameterPoint &p)
{
    for (const auto &b : boundary_points()) {
        if (b == p) {
            return true;
        }
    }
    return false;
}

struct CharacterProjection {
    int n = 0;
    int d = 0;
    ParameterPoint point;
    std::vector<SignedPermutation> subgroup;
    std::vector<int> character; // values in {+1,-1}, aligned with subgroup
    RationalMatrix matrix;
};

// The subgroup on which alpha^{ninv} q^{pinv} (with 0^0 = 1) is supported,
// and the character values there.
inline std::pair<std::vector<SignedPermutation>, std::vector<int>> character_support(int n, const ParameterPoint &p)
{
    require_domain(is_boundary_point(p), "not one of the eight boundary parameter points");
    std::vector<SignedPermutation> h;
    std::vector<int> chi;
    for (const auto &s : enumerate_group(n)) {
        const int l1 = ninv(s), l2 = pinv(s);
        if ((p.alpha == 0 && l1 > 0) || (p.q == 0 && l2 > 0)) {
            continue;
        }
        const int sa = (p.alpha < 0 && l1 % 2 == 1) ? -1 : 1;
        const int sq = (p.q < 0 && l2 % 2 == 1) ? -1 : 1;
        h.push_back(s);
        chi.push_back(sa * sq);
    }
    return {std::move(h), std::move(chi)};
}

// (1/|H|) sum_{x in H} phi(x) x on level n of R^d.
inline CharacterProjection character_projection(int n, int d, const ParameterPoint &p)
{
    require_domain(n >= 1, "level must be positive");
    check_matrix_bounds(n, d);
    CharacterProjection cp;
    cp.n = n;
    cp.d = d;
    cp.point = p;
    std::tie(cp.subgroup, cp.character) = character_support(n, p);
    const Rational norm(1, static_cast<long long>(cp.subgroup.size()));
    GroupAlgebraElement<Rational> e(n);
    for (std::size_t i = 0; i < cp.subgroup.size(); ++i) {
        e.add(cp.subgroup[i], norm * cp.character[i]);
    }
    cp.matrix = representation_matrix(e, d);
    return cp;
}

struct KernelResult {
    std::vector<FockVector<Rational>> kernel;
    std::vector<FockVector<Rational>> image;
    std::size_t dimension() const
    {
        return kernel.size();
    }
};

inline FockVector<Rational> column_to_vector(const SparseColumn &c, int n, int d)
{
    FockVector<Rational> v(d);
    for (const auto &[i, x] : c) {
        v.add(index_word(i, n, d), x);
    }
    return v;
}

// Exact kernel and image of P^(n) at a rational parameter point.
inline KernelResult kernel_basis(int n, int d, const ParameterPoint &p)
{
    require_domain(n >= 1 && d >= 1, "level and dimension must be positive");
    require_bound(n <= max_kernel_level && d <= max_matrix_dim, "kernel computation limited to n <= 3, d <= 3");
    const auto m = symmetrization<Rational>(n, d, at_point(p.alpha, p.q));
    KernelResult r;
    for (const auto &c : nullspace(m)) {
        r.kernel.push_back(column_to_vector(c, n, d));
    }
    for (const auto &c : image_basis(m)) {
        r.image.push_back(column_to_vector(c, n, d));
    }
    return r;
}

enum class TensorKind {
    b_symmetric,
    b_antisymmetric,
    b_fermionic,
    b_bosonic,
    boolean_b,
    free_b,
    classical_bosonic,
    classical_fermionic
};

inline TensorKind parse_tensor_kind(const std::string &s)
{
    static const std::vector<std::pair<std::string, TensorKind>> names{
        {"b_symmetric", TensorKind::b_symmetric},
        {"b_antisymmetric", TensorKind::b_antisymmetric},
        {"b_fermionic", TensorKind::b_fermionic},
        {"b_bosonic", TensorKind::b_bosonic},
        {"boolean_b", TensorKind::boolean_b},
        {"free_b", TensorKind::free_b},
        {"classical_bosonic", TensorKind::classical_bosonic},
        {"classical_fermionic", TensorKind::classical_fermionic},
    };
    for (const auto &[name, k] : names) {
        if (name == s) {
            return k;
        }
    }
    throw DomainError("unknown tensor kind '" + s + "'");
}

// Parameter point whose character average realizes the tensor product.
inline ParameterPoint tensor_point(TensorKind k)
{
    switch (k) {
    case TensorKind::b_symmetric:
        return {1, 1};
    case TensorKind::b_antisymmetric:
        return {-1, -1};
    case TensorKind::b_fermionic:
        return {1, -1};
    case TensorKind::b_bosonic:
        return {-1, 1};
    case TensorKind::boolean_b:
        return {-1, 0};
    case TensorKind::free_b:
        return {1, 0};
    case TensorKind::classical_bosonic:
        return {0, 1};
    case TensorKind::classical_fermionic:
        return {0, -1};
    }
    throw DomainError("unknown tensor kind");
}

// Normalized signed average of the word over the matching subgroup.
inline FockVector<Rational> special_tensor(TensorKind k, const FockVector<Rational> &v)
{
    const int n = v.max_level();
    require_domain(n >= 1, "tensor needs a level >= 1 vector");
    require_domain(v.level(n) == v, "tensor input must be level-homogeneous");
    require_bound(n <= max_kernel_level && v.dim() <= max_matrix_dim, "special tensors limited to n <= 3, d <= 3");
    const auto [h, chi] = character_support(n, tensor_point(k));
    const Rational norm(1, static_cast<long long>(h.size()));
    FockVector<Rational> out(v.dim());
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (const auto &[w, c] : v.terms()) {
            out.add(group_action(h[i], w), norm * chi[i] * c);
        }
    }
    return out;
}

inline FockVector<Rational> special_tensor(TensorKind k, const Word &w, int d)
{
    return special_tensor(k, FockVector<Rational>::basis(d, w));
}

} // namespace bfock

#endif
