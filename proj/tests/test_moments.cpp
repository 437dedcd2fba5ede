#include <catch_amalgamated.hpp>

#include <bfock/moments.hpp>

using namespace bfock;

namespace
{

const BiPoly A = BiPoly::alpha();
const BiPoly Q = BiPoly::q();

const BiPoly fourth = BiPoly(2) + Q + 3 * A + 2 * A * Q + A * Q * Q + A * A + A * A * Q + A * A * Q * Q;

long long binomial(int n, int k)
{
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

std::vector<EpsilonWord> all_words(int n)
{
    std::vector<EpsilonWord> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        EpsilonWord e;
        for (int i = 0; i < n; ++i) {
            e.push_back((mask >> i) & 1u ? Epsilon::create : Epsilon::annihilate);
        }
        out.push_back(e);
    }
    return out;
}

} // namespace

TEST_CASE("operator moments of unit vectors", "[moments]")
{
    CHECK(moment_operator(unit_assignment(2)) == 1 + A);
    CHECK(moment_operator(unit_assignment(4)) == fourth);
    CHECK(moment_operator(unit_assignment(4)) == (1 + A) * (2 + A + Q + A * Q + A * Q * Q));
    CHECK(moment_operator(unit_assignment(3)).is_zero());
    CHECK(moment_operator(unit_assignment(4, 2)) == fourth);
    CHECK_THROWS_AS(moment_operator(unit_assignment(9)), ResourceError);
}

TEST_CASE("partition moments reduce to the generating polynomial", "[moments]")
{
    for (int n : {2, 4, 6}) {
        CHECK(moment_partitions(unit_assignment(n)) == generating_polynomial(n));
    }
}

TEST_CASE("operator and partition moments agree on random assignments", "[moments][oracle]")
{
    std::mt19937_64 rng(1234);
    for (int n : {2, 4, 6}) {
        for (int trial = 0; trial < 6; ++trial) {
            const auto a = random_assignment(n, 2, rng);
            REQUIRE(moment_operator(a) == moment_partitions(a));
        }
    }
    // non-unit Gram
    auto a = random_assignment(4, 2, rng);
    a.gram = {{Rational(2), Rational(1, 3)}, {Rational(1, 3), Rational(1)}};
    CHECK(moment_operator(a) == moment_partitions(a));
}

TEST_CASE("rational specializations agree with the symbolic moment", "[moments]")
{
    std::mt19937_64 rng(99);
    const auto a = random_assignment(4, 2, rng);
    const BiPoly m = moment_operator(a);
    for (auto [al, qq] : {std::pair{Rational(1, 2), Rational(-1, 3)}, std::pair{Rational(-1), Rational(1)}}) {
        CHECK(moment_operator<Rational>(a, at_point(al, qq)) == m.eval(al, qq));
        CHECK(moment_partitions<Rational>(a, at_point(al, qq)) == m.eval(al, qq));
    }
    CHECK(moment_operator<double>(a, numeric(0.25, 0.5)) == Catch::Approx(m.eval(0.25, 0.5)).epsilon(1e-12));
}

TEST_CASE("traciality defect", "[moments]")
{
    const BiPoly t = trace_defect(2);
    CHECK(t == A * A * Q * Q - A * A);
    CHECK(t.substitute_alpha(0).is_zero());
    CHECK(t.substitute_q(1).is_zero());
    CHECK(trace_defect(3) == t);
    CHECK_THROWS_AS(trace_defect(1), DomainError);
    // the first ordering equals the partition sum with these inner products
    CHECK(moment_operator(trace_assignment(2)) == moment_partitions(trace_assignment(2)));
}

TEST_CASE("type-B Catalan count at alpha = 1, q = 0", "[moments]")
{
    for (int n = 1; n <= 5; ++n) {
        CHECK(moment_partitions<Rational>(unit_assignment(2 * n), at_point(1, 0)) == binomial(2 * n, n));
    }
}

TEST_CASE("Wick base cases", "[moments]")
{
    std::mt19937_64 rng(5);
    const auto a = random_assignment(2, 2, rng);
    const auto def = symbolic();
    const auto create = wick_expansion(parse_epsilon("*"), a, def);
    CHECK(create == tensor_of<BiPoly>(a, {-1, 1}));
    CHECK(wick_expansion(parse_epsilon("1"), a, def).is_zero());
    CHECK(wick_expansion(parse_epsilon("1*"), a, def).is_zero());
    CHECK(compatible_by_generator(parse_epsilon("11")).empty());
    CHECK_THROWS_AS(parse_epsilon("x"), DomainError);
}

TEST_CASE("Wick generators agree", "[moments][oracle]")
{
    for (int n = 1; n <= 6; ++n) {
        for (const auto &e : all_words(n)) {
            REQUIRE(compatible_by_filter(e) == compatible_by_generator(e));
        }
    }
}

TEST_CASE("Wick expansion equals operator action", "[moments][oracle]")
{
    std::mt19937_64 rng(77);
    const auto def = symbolic();
    for (int n = 1; n <= 4; ++n) {
        for (const auto &e : all_words(n)) {
            for (int trial = 0; trial < 2; ++trial) {
                const auto a = random_assignment(n, 2, rng);
                REQUIRE(wick_expansion(e, a, def) == wick_operator(e, a, def));
            }
        }
    }
    const auto a = random_assignment(5, 2, rng);
    CHECK(wick_expansion(parse_epsilon("**1*1"), a, def, WickGenerator::filter) ==
          wick_operator(parse_epsilon("**1*1"), a, def));
}

TEST_CASE("specialized moment sums", "[moments]")
{
    const auto u = unit_assignment(4);
    CHECK(special_moments(SpecialCase::alpha0, u) == 2 + Q);
    CHECK(special_moments(SpecialCase::q0_typeB, u) == 2 + 3 * A + A * A);
    CHECK(special_moments(SpecialCase::q0_typeA_diag, u) == 2 + 3 * A + A * A);
    CHECK(special_moments(SpecialCase::alpha0, u) == moment_operator(u).substitute_alpha(0));
    CHECK(special_moments(SpecialCase::q0_typeB, u) == moment_operator(u).substitute_q(0));

    std::mt19937_64 rng(3);
    for (int m = 1; m <= 3; ++m) {
        auto a = random_assignment(2 * m, 2, rng);
        CHECK(special_moments(SpecialCase::alpha0, a) == moment_operator(a).substitute_alpha(0));
        CHECK(special_moments(SpecialCase::q0_typeB, a) == moment_operator(a).substitute_q(0));
        for (int i = 1; i <= 2 * m; ++i) {
            a.vectors[-i] = a.vectors[i];
        }
        CHECK(special_moments(SpecialCase::q0_typeA_diag, a) == special_moments(SpecialCase::q0_typeB, a));
        a.vectors[-1] = unit_vector(2, 1);
        a.vectors[1] = unit_vector(2, 0);
        CHECK_THROWS_AS(special_moments(SpecialCase::q0_typeA_diag, a), DomainError);
    }
}
