#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <bfock/edge_cases.hpp>
#include <bfock/json_io.hpp>

using namespace bfock;
using io::Json;

TEST_CASE("polynomials round-trip", "[json]")
{
    const BiPoly a = BiPoly::alpha(), q = BiPoly::q();
    const BiPoly p = (1 + a) * (2 + a + q + a * q + a * q * q);
    const Json j = io::to_json(p);
    CHECK(j.size() == p.size());
    CHECK(j[0] == Json::parse("[0,0,2,1]"));
    CHECK(io::bipoly_from_json(j) == p);

    const BiPoly half = BiPoly::monomial(Rational(-3, 4), 2, 1);
    CHECK(io::to_json(half) == Json::parse("[[2,1,-3,4]]"));
    CHECK(io::to_json(BiPoly()) == Json::array());

    Integer big = 1;
    for (int i = 0; i < 30; ++i) {
        big *= 10;
    }
    const BiPoly huge = BiPoly::monomial(Rational(big + 1, 7), 0, 3);
    const Json hj = io::to_json(huge);
    CHECK(hj[0][2].is_string());
    CHECK(hj[0][3] == 7);
    CHECK(io::bipoly_from_json(hj) == huge);
}

TEST_CASE("polynomial decoding rejects bad input", "[json]")
{
    CHECK_THROWS_AS(io::bipoly_from_json(Json::parse("{}")), DomainError);
    CHECK_THROWS_AS(io::bipoly_from_json(Json::parse("[[0,0,1]]")), DomainError);
    CHECK_THROWS_AS(io::bipoly_from_json(Json::parse("[[0,0,1,0]]")), DomainError);
    CHECK_THROWS_AS(io::bipoly_from_json(Json::parse("[[-1,0,1,1]]")), DomainError);
    CHECK_THROWS_AS(io::parse("[1,"), DomainError);
}

TEST_CASE("signed permutations and partitions", "[json]")
{
    for (const auto &s : enumerate_group(3)) {
        const Json j = io::to_json(s);
        CHECK(j.size() == 3);
        CHECK(io::permutation_from_json(j) == s);
    }
    CHECK(io::to_json(generator(2, 0)) == Json::parse("[-1,2]"));
    CHECK_THROWS_AS(io::permutation_from_json(Json::parse("[1,1]")), DomainError);

    for (const auto &p : enumerate_p12b(4)) {
        const Json j = io::to_json(p);
        CHECK(io::partition_from_json(j) == p);
    }
    const PartitionB p(2, {{1, 2}, {-2, -1}});
    CHECK(io::to_json(p) == Json::parse("[[-2,-1],[1,2]]"));
    CHECK_THROWS_AS(io::partition_from_json(Json::parse("[[1,2]]")), DomainError);
}

TEST_CASE("matrices round-trip dense row-major", "[json]")
{
    const auto P = symmetrization(2, 2);
    const Json j = io::to_json(P);
    CHECK(j["rows"] == 16);
    CHECK(j["entries"].size() == 16);
    CHECK(j["entries"][0][0] == io::to_json(P.at(0, 0)));
    CHECK(io::matrix_from_json<BiPoly>(j) == P);

    const auto R = symmetrization<Rational>(2, 2, at_point(Rational(1, 2), Rational(-1, 3)));
    const Json jr = io::to_json(R);
    CHECK(jr["entries"][0][0].is_string());
    CHECK(io::matrix_from_json<Rational>(jr) == R);

    CHECK_THROWS_AS(io::matrix_from_json<Rational>(Json::parse(R"({"rows":2,"cols":1,"entries":[["1"]]})")), DomainError);
}

TEST_CASE("assignments round-trip and validate", "[json]")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5; ++i) {
        const auto a = random_assignment(3, 2, rng);
        const Json j = io::to_json(a);
        const auto b = io::assignment_from_json(j);
        CHECK(b.d == a.d);
        CHECK(b.gram == a.gram);
        CHECK(b.vectors == a.vectors);
    }
    const auto a = io::assignment_from_json(io::parse(R"({"d":1,"vectors":{"-1":["1"],"1":["1/2"]}})"));
    CHECK(a.gram == identity_gram(1));
    CHECK(a.inner(-1, 1) == Rational(1, 2));

    CHECK_THROWS_AS(io::assignment_from_json(io::parse(R"({"vectors":{}})")), DomainError);
    CHECK_THROWS_AS(io::assignment_from_json(io::parse(R"({"d":1,"vectors":{"-1":["1"]}})")), DomainError);
    CHECK_THROWS_AS(io::assignment_from_json(io::parse(R"({"d":1,"vectors":{"x":["1"],"1":["1"]}})")), DomainError);
    CHECK_THROWS_AS(io::assignment_from_json(io::parse(R"({"d":2,"gram":[["1","2"],["0","1"]],"vectors":{"-1":["1","0"],"1":["1","0"]}})")),
                    DomainError);
    CHECK_THROWS_AS(io::assignment_from_json(io::parse(R"({"d":1,"vectors":{"-1":["0.5"],"1":["1"]}})")), DomainError);
}

TEST_CASE("kernel bases use 1-based letters", "[json]")
{
    const auto k = kernel_basis(1, 2, {1, 0});
    const Json j = io::basis_to_json(k.kernel);
    REQUIRE(j.size() == k.dimension());
    for (const auto &v : j) {
        for (const auto &t : v["terms"]) {
            for (int l : t["word"].get<std::vector<int>>()) {
                CHECK((l == 1 || l == 2));
            }
        }
    }
    CHECK(io::basis_from_json<Rational>(j) == k.kernel);
    CHECK_THROWS_AS(io::vector_from_json<Rational>(io::parse(R"({"d":2,"terms":[{"word":[0,1],"coeff":"1"}]})")), DomainError);
}

TEST_CASE("moment result schema", "[json]")
{
    io::MomentResult r{{2, 1}, unit_assignment(2, 1), "both", moment_operator(unit_assignment(2, 1))};
    const Json j = io::to_json(r);
    CHECK(j.contains("word"));
    CHECK(j.contains("assignment"));
    CHECK(j["route"] == "both");
    const auto back = io::moment_result_from_json(j);
    CHECK(back.word == r.word);
    CHECK(back.polynomial == r.polynomial);
    CHECK(back.assignment.vectors == r.assignment.vectors);
}
