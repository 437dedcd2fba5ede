#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <bfock/norm.hpp>

using namespace bfock;
using Catch::Approx;

namespace
{

std::vector<double> random_vector(std::size_t n, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> v(n);
    for (auto &c : v) {
        c = u(rng);
    }
    return v;
}

const double grid[] = {-0.9, -0.5, 0.0, 0.5, 0.9};

} // namespace

TEST_CASE("matrix-free P agrees with the materialized symmetrization", "[norm]")
{
    std::mt19937_64 rng(11);
    for (double a : {-0.7, 0.0, 0.4, 1.0}) {
        for (double q : {-0.6, 0.0, 0.3, 0.9}) {
            const NumericFock F(2, a, q, 3);
            for (int n = 0; n <= 3; ++n) {
                const auto P = symmetrization<double>(n, 2, numeric(a, q));
                const auto v = random_vector(level_dimension(n, 2), rng);
                const auto got = F.apply_p(n, v);
                for (std::size_t i = 0; i < v.size(); ++i) {
                    double want = 0;
                    for (const auto &[j, c] : P.row(i)) {
                        want += c * v[j];
                    }
                    REQUIRE(got[i] == Approx(want).margin(1e-12));
                }
            }
        }
    }
}

TEST_CASE("numeric annihilation is the adjoint of creation", "[norm]")
{
    std::mt19937_64 rng(5);
    for (double a : {-0.5, 0.8}) {
        for (double q : {-0.4, 0.6}) {
            const NumericFock F(2, a, q, 4);
            const auto x = random_vector(2, rng), y = random_vector(2, rng);
            for (int n = 0; n < 4; ++n) {
                const auto u = random_vector(level_dimension(n, 2), rng);
                const auto w = random_vector(level_dimension(n + 1, 2), rng);
                const double lhs = dot(F.creation(x, y, n, u), F.apply_p(n + 1, w));
                const double rhs = dot(F.apply_p(n, u), F.annihilation(x, y, n + 1, w));
                REQUIRE(lhs == Approx(rhs).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("symmetrization is strictly positive on the interior grid", "[norm]")
{
    for (double a : grid) {
        for (double q : grid) {
            for (int n = 0; n <= 3; ++n) {
                INFO("alpha=" << a << " q=" << q << " n=" << n);
                REQUIRE(symmetrization_min_eigenvalue(n, 2, a, q) > 1e-10);
            }
        }
    }
}

TEST_CASE("boundary points lose positivity", "[norm]")
{
    CHECK(symmetrization_min_eigenvalue(2, 2, 1, 1) < 1e-10);
    CHECK(symmetrization_min_eigenvalue(2, 2, -1, 0) < 1e-10);
    CHECK(symmetrization_min_eigenvalue(2, 2, 0, -1) < 1e-10);
}

TEST_CASE("Lanczos estimate matches the dense generalized eigenproblem", "[norm]")
{
    std::mt19937_64 rng(23);
    for (double a : {-0.9, -0.3, 0.0, 0.5, 0.95}) {
        for (double q : {-0.8, -0.2, 0.0, 0.4, 0.8}) {
            const auto x = random_vector(2, rng), y = random_vector(2, rng);
            const double dense = norm_estimate_dense(x, y, a, q, 3);
            const auto lz = norm_estimate(x, y, a, q, 3);
            INFO("alpha=" << a << " q=" << q);
            REQUIRE(lz.estimate == Approx(dense).epsilon(1e-8));
        }
    }
    const std::vector<double> x{0.3, -0.5}, y{0.7, 0.2};
    CHECK_THROWS_AS(norm_estimate_dense(x, y, 1.0, -0.8, 3), NumericError);
    // alpha = 1 is the limit of the interior values
    CHECK(norm_estimate(x, y, 1.0, -0.8, 3).estimate == Approx(norm_estimate(x, y, 0.9999, -0.8, 3).estimate).epsilon(1e-4));
}

TEST_CASE("norm examples", "[norm]")
{
    const std::vector<double> e1{1, 0}, e2{0, 1};
    SECTION("free creation is an isometry")
    {
        REQUIRE(norm_estimate(e1, e2, 0, 0, 6).estimate == Approx(1.0).epsilon(1e-12));
        REQUIRE(norm_estimate(e1, e1, 0, 0, 6).estimate == Approx(1.0).epsilon(1e-12));
    }
    SECTION("region C, orthogonal unit vectors")
    {
        const auto r = norm_estimate(e1, e2, 0, 0.5, 8);
        REQUIRE(r.theory.region == NormRegion::C);
        REQUIRE(r.theory.lower == Approx(std::sqrt(2.0)));
        REQUIRE(r.estimate <= r.theory.lower + 1e-12);
        REQUIRE(r.estimate == Approx(r.theory.lower).epsilon(0.02));
        for (std::size_t n = 1; n < r.level_values.size(); ++n) {
            REQUIRE(r.level_values[n] >= r.level_values[n - 1]);
        }
    }
    SECTION("region A, equal unit vectors")
    {
        const auto r = norm_estimate(e1, e1, 0.5, -0.5, 8);
        REQUIRE(r.theory.region == NormRegion::A);
        REQUIRE(r.theory.lower == Approx(std::sqrt(1.5)));
        REQUIRE(r.estimate == Approx(std::sqrt(1.5)).epsilon(0.02));
    }
}

TEST_CASE("region classification", "[norm]")
{
    const std::vector<double> x{1, 0};
    CHECK(norm_regime(0.5, -0.5, x, x).region == NormRegion::A);
    CHECK(norm_regime(0, 0, x, x).region == NormRegion::A);
    CHECK(norm_regime(-0.5, -0.5, x, x).region == NormRegion::B);
    CHECK(norm_regime(0.2, 0.5, x, x).region == NormRegion::C);
    CHECK(norm_regime(-0.5, 0.5, x, x).region == NormRegion::C);
    CHECK(norm_regime(0.8, 0.3, x, x).region == NormRegion::D);
    CHECK(norm_regime(-0.8, 0.3, x, x).region == NormRegion::D);
    const auto b = norm_regime(-0.5, -0.5, x, x);
    CHECK(b.lower <= b.upper);
    CHECK_THROWS_AS(norm_regime(0, 1, x, x), DomainError);
}

TEST_CASE("estimates respect the region bounds", "[norm]")
{
    std::mt19937_64 rng(101);
    const double slack = 0.02;
    for (auto [a, q] : {std::pair{-0.5, -0.5}, {-0.9, -0.2}, {0.8, 0.3}, {-0.8, 0.3}, {0.9, 0.5}}) {
        const auto x = random_vector(2, rng), y = random_vector(2, rng);
        const auto r = norm_estimate(x, y, a, q, 8);
        INFO("alpha=" << a << " q=" << q << " region=" << region_name(r.theory.region));
        REQUIRE(r.estimate <= r.theory.upper * (1 + 1e-9));
        REQUIRE(r.estimate >= r.theory.lower * (1 - slack));
    }
}

TEST_CASE("norm estimate errors", "[norm]")
{
    const std::vector<double> x{1, 0}, y3{1, 0, 0};
    CHECK_THROWS_AS(norm_estimate(x, y3, 0, 0, 3), DomainError);
    CHECK_THROWS_AS(norm_estimate(x, x, 0, 1, 3), DomainError);
    CHECK_THROWS_AS(norm_estimate(y3, y3, 0, 0, 8), ResourceError);
}
