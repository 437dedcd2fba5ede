#include <catch_amalgamated.hpp>

#include <bfock/signed_permutations.hpp>

using namespace bfock;

namespace
{

using SP = SignedPermutation;

SP power_of(const SP &s, int k)
{
    auto r = SP::identity(s.degree());
    for (int i = 0; i < k; ++i) {
        r = r * s;
    }
    return r;
}

// x^k in {+-1}, 0^0 = 1
int sign_power(int x, int k)
{
    return k == 0 ? 1 : (x == 1 ? 1 : (k % 2 == 0 ? 1 : -1));
}

} // namespace

TEST_CASE("generators are involutions", "[group]")
{
    for (int n = 1; n <= 4; ++n) {
        for (int i = 0; i < n; ++i) {
            const auto g = generator(n, i);
            CHECK((g * g).is_identity());
        }
    }
    CHECK(generator(2, 0).image() == std::vector<int>{-1, 2});
    CHECK(generator(3, 2).image() == std::vector<int>{1, 3, 2});
    CHECK_THROWS_AS(generator(2, 2), DomainError);
    CHECK_THROWS_AS(generator(2, -1), DomainError);
}

TEST_CASE("Coxeter relations of type B", "[group]")
{
    for (int n = 2; n <= 5; ++n) {
        const auto p0 = generator(n, 0);
        const auto p1 = generator(n, 1);
        CHECK(power_of(p0 * p1, 4).is_identity());
        CHECK_FALSE(power_of(p0 * p1, 2).is_identity());
        for (int i = 1; i + 1 < n; ++i) {
            CHECK(power_of(generator(n, i) * generator(n, i + 1), 3).is_identity());
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 2; j < n; ++j) {
                CHECK(power_of(generator(n, i) * generator(n, j), 2).is_identity());
            }
        }
    }
}

TEST_CASE("degree 2 elements and their lengths", "[group]")
{
    const auto s = word_product(2, {1, 0, 1});
    CHECK(s.image() == std::vector<int>{1, -2});
    CHECK(s(-2) == 2);
    CHECK(ninv(s) == 1);
    CHECK(pinv(s) == 2);

    const auto t = word_product(2, {0, 1, 0});
    CHECK(t.image() == std::vector<int>{-2, -1});
    CHECK(ninv(t) == 2);
    CHECK(pinv(t) == 1);

    const auto p1 = generator(2, 1);
    CHECK(ninv(p1) == 0);
    CHECK(pinv(p1) == 1);
    CHECK(ninv(SP::identity(4)) == 0);
    CHECK(pinv(SP::identity(4)) == 0);
}

TEST_CASE("compose and inverse", "[group]")
{
    const auto a = SP({2, -3, 1});
    const auto b = SP({-1, 3, 2});
    CHECK((a * b).image() == std::vector<int>{-2, 1, -3});
    CHECK((a * a.inverse()).is_identity());
    CHECK((a.inverse() * a).is_identity());
    CHECK(SP::identity(3) * a == a);
    CHECK_THROWS_AS(compose(a, SP::identity(2)), DomainError);
    CHECK_THROWS_AS(SP({1, 1}), DomainError);
    CHECK_THROWS_AS(SP({1, 3}), DomainError);
    CHECK(a.extended(5).image() == std::vector<int>{2, -3, 1, 4, 5});
}

TEST_CASE("enumeration sizes and order", "[group]")
{
    int size = 1;
    for (int n = 1; n <= 5; ++n) {
        size *= 2 * n;
        const auto g = enumerate_group(n);
        REQUIRE(static_cast<int>(g.size()) == size);
        CHECK(std::is_sorted(g.begin(), g.end()));
        CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
    }
    CHECK(enumerate_group(1).size() == 2);
    CHECK_THROWS_AS(enumerate_group(7), ResourceError);
}

TEST_CASE("closed-form statistics equal BFS Coxeter lengths", "[group][oracle]")
{
    CHECK(coxeter_length_bfs(SP::identity(2)) == CoxeterLengths{0, 0});
    CHECK(coxeter_length_bfs(generator(2, 0)) == CoxeterLengths{1, 0});
    CHECK(coxeter_length_bfs(word_product(2, {1, 0, 1})) == CoxeterLengths{1, 2});
    for (int n = 1; n <= 3; ++n) {
        for (const auto &s : enumerate_group(n)) {
            const auto l = coxeter_length_bfs(s);
            CHECK(l.l1 == ninv(s));
            CHECK(l.l2 == pinv(s));
        }
    }
    CHECK_THROWS_AS(coxeter_length_bfs(SP::identity(4)), ResourceError);
}

TEST_CASE("statistics are characters at the corner points", "[group][property]")
{
    for (int alpha : {1, -1}) {
        for (int q : {1, -1}) {
            for (int n = 1; n <= 3; ++n) {
                const auto g = enumerate_group(n);
                for (const auto &s : g) {
                    for (const auto &t : g) {
                        const auto st = s * t;
                        const int lhs = sign_power(alpha, ninv(st)) * sign_power(q, pinv(st));
                        const int rhs = sign_power(alpha, ninv(s)) * sign_power(q, pinv(s)) *
                                        sign_power(alpha, ninv(t)) * sign_power(q, pinv(t));
                        REQUIRE(lhs == rhs);
                    }
                }
            }
        }
    }
}
