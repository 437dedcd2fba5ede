#include <catch_amalgamated.hpp>

#include <random>

#include <bfock/fock_core.hpp>

using namespace bfock;

namespace
{

using FV = FockVector<BiPoly>;

const BiPoly A = BiPoly::alpha();
const BiPoly Q = BiPoly::q();

Coords c2(int a, int b)
{
    return {Rational(a), Rational(b)};
}

Coords random_coords(std::mt19937_64 &rng, int d)
{
    std::uniform_int_distribution<int> num(-2, 2);
    std::uniform_int_distribution<int> den(1, 3);
    Coords c;
    for (int i = 0; i < d; ++i) {
        c.emplace_back(num(rng), den(rng));
    }
    return c;
}

// [n]_q
BiPoly qint(int n)
{
    BiPoly s;
    for (int k = 0; k < n; ++k) {
        s += power(Q, static_cast<unsigned>(k));
    }
    return s;
}

} // namespace

TEST_CASE("group action conventions", "[fock]")
{
    CHECK(group_action(generator(1, 0), Word{0, 1}) == Word{1, 0});
    // level 3, slots = positions -3,-2,-1,1,2,3
    const Word w{0, 1, 2, 3, 4, 5};
    CHECK(group_action(generator(3, 1), w) == Word{0, 2, 1, 4, 3, 5});
    CHECK(group_action(generator(3, 2), w) == Word{1, 0, 2, 3, 5, 4});
    CHECK(group_action(generator(3, 0), w) == Word{0, 1, 3, 2, 4, 5});
    CHECK(group_action(SignedPermutation::identity(3), w) == w);
    CHECK_THROWS_AS(group_action(generator(2, 0), w), DomainError);
}

TEST_CASE("group action is a homomorphism", "[fock][property]")
{
    const Word w{0, 1, 2, 3, 4, 5};
    const auto g = enumerate_group(3);
    for (const auto &a : g) {
        for (std::size_t k = 0; k < g.size(); k += 5) {
            const auto &b = g[k];
            REQUIRE(group_action(a * b, w) == group_action(a, group_action(b, w)));
        }
    }
}

TEST_CASE("symmetrization small cases", "[fock]")
{
    const auto p11 = symmetrization(1, 1);
    REQUIRE(p11.rows() == 1);
    CHECK(p11.at(0, 0) == 1 + A);
    CHECK(symmetrization(0, 2) == SparseMatrix<BiPoly>::identity(1));
    const auto p12 = symmetrization(1, 2);
    // basis (0,0),(0,1),(1,0),(1,1)
    CHECK(p12.at(0, 0) == 1 + A);
    CHECK(p12.at(1, 1) == 1);
    CHECK(p12.at(2, 1) == A);
    CHECK(p12.at(1, 2) == A);
    CHECK(p12.at(3, 3) == 1 + A);
    CHECK(p12.nonzeros() == 6);
    CHECK_THROWS_AS(symmetrization(5, 2), ResourceError);
    CHECK_THROWS_AS(symmetrization(2, 4), ResourceError);
}

TEST_CASE("R operator", "[fock]")
{
    GroupAlgebraElement<BiPoly> pi0(1);
    pi0.add(generator(1, 0), 1);
    CHECK(r_operator(1, 2) == SparseMatrix<BiPoly>::identity(4) + A * representation_matrix(pi0, 2));
    for (int n = 1; n <= 3; ++n) {
        const auto at_zero = r_operator<Rational>(n, 2, at_point(0, 0));
        CHECK(at_zero == SparseMatrix<Rational>::identity(level_dimension(n, 2)));
    }
}

TEST_CASE("factorization P(n) = (I (x) P(n-1) (x) I) R(n)", "[fock]")
{
    const auto def = symbolic();
    for (int n = 1; n <= 4; ++n) {
        const auto lhs = symmetrization_element(n, def);
        const auto rhs = symmetrization_element(n - 1, def).extended(n) * r_element(n, def);
        CHECK(lhs == rhs);
    }
    for (int n = 1; n <= 3; ++n) {
        for (int d = 1; d <= 2; ++d) {
            const auto inner = representation_matrix(symmetrization_element(n - 1, def).extended(n), d);
            CHECK(symmetrization(n, d) == inner * r_operator(n, d));
        }
    }
}

TEST_CASE("deformed inner product", "[fock]")
{
    DoubleFock<BiPoly> F(1, symbolic());
    CHECK(F.inner(F.vacuum(), F.vacuum()) == 1);
    const auto w = FV::basis(1, Word{0, 0});
    CHECK(F.inner(w, w) == 1 + A);
    CHECK(F.inner(w, F.vacuum()) == 0);
    DoubleFock<BiPoly> F2(2, symbolic());
    const auto u = FV::basis(2, Word{0, 1});
    const auto v = FV::basis(2, Word{1, 0});
    CHECK(F2.inner(u, v) == A);
    CHECK(F2.inner(u, u) == 1);
    CHECK_THROWS_AS(F2.inner(u, w), DomainError);
}

TEST_CASE("inner product is symmetric with a general Gram matrix", "[fock][property]")
{
    const GramMatrix g{{Rational(2), Rational(1, 2)}, {Rational(1, 2), Rational(1)}};
    DoubleFock<BiPoly> F(2, symbolic(), g);
    for (int n = 0; n <= 2; ++n) {
        for (std::size_t i = 0; i < level_dimension(n, 2); ++i) {
            for (std::size_t j = 0; j < level_dimension(n, 2); ++j) {
                const auto u = FV::basis(2, index_word(i, n, 2));
                const auto v = FV::basis(2, index_word(j, n, 2));
                REQUIRE(F.inner(u, v) == F.inner(v, u));
            }
        }
    }
}

TEST_CASE("creation operator", "[fock]")
{
    DoubleFock<BiPoly> F(2, symbolic());
    const Coords x = c2(1, 0), y = c2(0, 1);
    const auto one = F.creation(x, y, F.vacuum());
    CHECK(one == FV::basis(2, Word{0, 1}));
    const auto two = F.creation(x, y, FV::basis(2, Word{1, 0}));
    CHECK(two == FV::basis(2, Word{0, 1, 0, 1}));
    const auto mixed = F.creation(c2(1, 1), y, F.vacuum());
    CHECK(mixed.terms().size() == 2);
    CHECK(mixed.max_level() == 1);
}

TEST_CASE("annihilation examples", "[fock]")
{
    DoubleFock<BiPoly> F(2, symbolic());
    const Coords x = c2(1, 0);
    for (auto route : {AnnihilationRoute::via_r, AnnihilationRoute::via_sums}) {
        CHECK(F.annihilation(x, x, F.vacuum(), route).is_zero());
        // unit x, y with <x,y> = 0 and = 1
        CHECK(F.annihilation(x, c2(0, 1), F.creation(x, c2(0, 1), F.vacuum()), route) == F.vacuum());
        CHECK(F.annihilation(x, x, F.creation(x, x, F.vacuum()), route) == (1 + A) * F.vacuum());
    }
}

TEST_CASE("chain action of the Gaussian", "[fock]")
{
    // unit x, y with <x,y> = 3/5
    const GramMatrix g{{Rational(1), Rational(3, 5)}, {Rational(3, 5), Rational(1)}};
    DoubleFock<BiPoly> F(2, symbolic(), g);
    const Coords x = c2(1, 0), y = c2(0, 1);
    const BiPoly xy2 = BiPoly(Rational(9, 25));
    auto chain = [](int n) {
        Word w(static_cast<std::size_t>(n), 0);
        w.insert(w.end(), static_cast<std::size_t>(n), 1);
        return FV::basis(2, w);
    };
    for (int n = 1; n <= 4; ++n) {
        const FV expect = chain(n + 1) + (qint(n) * (1 + A * xy2 * power(Q, static_cast<unsigned>(n - 1)))) * chain(n - 1);
        CHECK(F.gaussian(x, y, chain(n)) == expect);
        CHECK(F.gaussian(x, y, chain(n), AnnihilationRoute::via_sums) == expect);
    }
}

TEST_CASE("annihilation routes agree", "[fock][property]")
{
    std::mt19937_64 rng(20240611);
    const GramMatrix g{{Rational(2), Rational(-1, 3)}, {Rational(-1, 3), Rational(1, 2)}};
    for (const auto &gram : {identity_gram(2), g}) {
        DoubleFock<BiPoly> F(2, symbolic(), gram);
        for (int trial = 0; trial < 4; ++trial) {
            const auto x = random_coords(rng, 2);
            const auto y = random_coords(rng, 2);
            for (int n = 0; n <= 3; ++n) {
                for (std::size_t i = 0; i < level_dimension(n, 2); ++i) {
                    const auto w = FV::basis(2, index_word(i, n, 2));
                    REQUIRE(F.annihilation(x, y, w, AnnihilationRoute::via_r) ==
                            F.annihilation(x, y, w, AnnihilationRoute::via_sums));
                }
            }
        }
    }
}

TEST_CASE("annihilation is the adjoint of creation", "[fock][property]")
{
    std::mt19937_64 rng(7);
    const GramMatrix g{{Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(1)}};
    for (const auto &gram : {identity_gram(2), g}) {
        DoubleFock<BiPoly> F(2, symbolic(), gram);
        const auto x = random_coords(rng, 2);
        const auto y = random_coords(rng, 2);
        for (int n = 0; n <= 2; ++n) {
            for (std::size_t i = 0; i < level_dimension(n, 2); ++i) {
                const auto u = FV::basis(2, index_word(i, n, 2));
                const auto bu = F.creation(x, y, u);
                for (std::size_t j = 0; j < level_dimension(n + 1, 2); ++j) {
                    const auto w = FV::basis(2, index_word(j, n + 1, 2));
                    REQUIRE(F.inner(bu, w) == F.inner(u, F.annihilation(x, y, w)));
                }
            }
        }
    }
}

TEST_CASE("commutation relation", "[fock]")
{
    DoubleFock<BiPoly> F(2, symbolic());
    const std::vector<Coords> vs{c2(1, 0), c2(0, 1), c2(1, -1), {Rational(1, 2), Rational(2)}};
    for (const auto &x : vs) {
        for (const auto &xi : vs) {
            const auto res = F.commutator_check(x, vs[1], xi, vs[3], 3);
            REQUIRE(res.residual.size() == 3);
            CHECK(res.holds);
        }
    }
    const auto again = F.commutator_check(vs[0], vs[1], vs[1], vs[0], 3, VacuumConvention::graded,
                                          AnnihilationRoute::via_sums);
    CHECK(again.holds);

    DoubleFock<BiPoly> F0(2, {BiPoly(0), Q});
    CHECK(F0.commutator_check(vs[2], vs[3], vs[0], vs[1], 3).holds);

    // (q^2)^N Omega = 0 leaves alpha <x,eta><y,xi> on the vacuum
    const auto printed = F.commutator_check(vs[0], vs[1], vs[1], vs[0], 3, VacuumConvention::printed);
    CHECK_FALSE(printed.holds);
    CHECK(printed.residual[0].at(0, 0) == A);
    CHECK(printed.residual[1].is_zero());
    CHECK(printed.residual[2].is_zero());
}
