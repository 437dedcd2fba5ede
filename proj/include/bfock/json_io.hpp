#ifndef BFOCK_JSON_IO_HPP
#define BFOCK_JSON_IO_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include <bfock/bipoly.hpp>
#include <bfock/errors.hpp>
#include <bfock/fock_core.hpp>
#include <bfock/moments.hpp>
#include <bfock/partitions_b.hpp>
#include <bfock/rational.hpp>
#include <bfock/signed_permutations.hpp>

namespace bfock::io
{

using Json = nlohmann::json;

// Integers go out as JSON numbers when they fit in int64, otherwise as
// decimal strings.
inline Json integer_to_json(const Integer &z)
{
    if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(z);
    }
    return z.str();
}

inline Integer integer_from_json(const Json &j)
{
    if (j.is_number_integer()) {
        return Integer(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        require_domain(detail::is_integer_literal(s), "not an integer: '" + s + "'");
        return detail::parse_integer(s);
    }
    throw DomainError("expected an integer, got " + j.dump());
}

// Rationals as "p/q" strings (integer strings and JSON integers accepted on input).
inline Json rational_to_json(const Rational &r)
{
    return to_string(r);
}

inline Rational rational_from_json(const Json &j)
{
    if (j.is_number_integer()) {
        return Rational(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    throw DomainError("expected a rational \"p/q\" string, got " + j.dump());
}

// [[deg_alpha, deg_q, numerator, denominator], ...] in sorted monomial order.
inline Json to_json(const BiPoly &p)
{
    Json out = Json::array();
    for (const auto &[m, c] : p.terms()) {
        out.push_back({m.first, m.second, integer_to_json(numerator(c)), integer_to_json(denominator(c))});
    }
    return out;
}

inline BiPoly bipoly_from_json(const Json &j)
{
    require_domain(j.is_array(), "polynomial must be a list of [deg_alpha, deg_q, num, den]");
    BiPoly p;
    for (const auto &t : j) {
        require_domain(t.is_array() && t.size() == 4, "polynomial term must be [deg_alpha, deg_q, num, den]");
        require_domain(t[0].is_number_unsigned() && t[1].is_number_unsigned(), "degrees must be nonnegative integers");
        const Integer den = integer_from_json(t[3]);
        require_domain(den != 0, "zero denominator");
        p += BiPoly::monomial(Rational(integer_from_json(t[2]), den), t[0].get<unsigned>(), t[1].get<unsigned>());
    }
    return p;
}

inline Json to_json(const SignedPermutation &s)
{
    return s.image();
}

inline SignedPermutation permutation_from_json(const Json &j)
{
    require_domain(j.is_array(), "signed permutation must be an array of signed integers");
    return SignedPermutation(j.get<std::vector<int>>());
}

inline Json to_json(const PartitionB &p)
{
    return p.blocks();
}

inline PartitionB partition_from_json(const Json &j)
{
    require_domain(j.is_array(), "partition must be a list of blocks");
    const auto blocks = j.get<std::vector<Block>>();
    int n = 0;
    for (const auto &b : blocks) {
        for (int x : b) {
            n = std::max(n, std::abs(x));
        }
    }
    return PartitionB(n, blocks);
}

inline Json scalar_to_json(const BiPoly &p)
{
    return to_json(p);
}
inline Json scalar_to_json(const Rational &r)
{
    return rational_to_json(r);
}
inline Json scalar_to_json(double x)
{
    return x;
}

template <Scalar S>
S scalar_from_json(const Json &j)
{
    if constexpr (std::is_same_v<S, BiPoly>) {
        return bipoly_from_json(j);
    } else if constexpr (std::is_same_v<S, Rational>) {
        return rational_from_json(j);
    } else {
        return j.get<double>();
    }
}

// {"rows", "cols", "entries"}: dense row-major.
template <Scalar S>
Json to_json(const SparseMatrix<S> &m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r.push_back(scalar_to_json(m.at(i, j)));
        }
        rows.push_back(std::move(r));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <Scalar S>
SparseMatrix<S> matrix_from_json(const Json &j)
{
    require_domain(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries"),
                   "matrix needs rows, cols and entries");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto &e = j.at("entries");
    require_domain(e.is_array() && e.size() == rows, "matrix entries do not match the row count");
    SparseMatrix<S> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        require_domain(e[i].is_array() && e[i].size() == cols, "matrix row does not match the column count");
        for (std::size_t k = 0; k < cols; ++k) {
            m.add(i, k, scalar_from_json<S>(e[i][k]));
        }
    }
    return m;
}

inline Json gram_to_json(const GramMatrix &g)
{
    Json out = Json::array();
    for (const auto &row : g) {
        Json r = Json::array();
        for (const auto &c : row) {
            r.push_back(rational_to_json(c));
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline GramMatrix gram_from_json(const Json &j, int d)
{
    require_domain(j.is_array(), "Gram matrix must be a list of rows");
    GramMatrix g;
    for (const auto &row : j) {
        require_domain(row.is_array(), "Gram matrix row must be a list");
        std::vector<Rational> r;
        for (const auto &c : row) {
            r.push_back(rational_from_json(c));
        }
        g.push_back(std::move(r));
    }
    validate_gram(g, d);
    return g;
}

inline Json coords_to_json(const Coords &c)
{
    Json out = Json::array();
    for (const auto &x : c) {
        out.push_back(rational_to_json(x));
    }
    return out;
}

inline Coords coords_from_json(const Json &j)
{
    require_domain(j.is_array(), "vector must be a list of rationals");
    Coords c;
    for (const auto &x : j) {
        c.push_back(rational_from_json(x));
    }
    return c;
}

// Assignment file:
//   {"d": 2, "gram": [["1","0"],["0","1"]], "vectors": {"-1": ["1","0"], "1": ["0","1/2"]}}
// "gram" is optional and defaults to the identity.
inline Json to_json(const VectorAssignment &a)
{
    Json v = Json::object();
    for (const auto &[p, c] : a.vectors) {
        v[std::to_string(p)] = coords_to_json(c);
    }
    return {{"d", a.d}, {"gram", gram_to_json(a.gram)}, {"vectors", std::move(v)}};
}

inline VectorAssignment assignment_from_json(const Json &j)
{
    require_domain(j.is_object(), "assignment must be a JSON object");
    require_domain(j.contains("d") && j.at("d").is_number_integer(), "assignment needs an integer \"d\"");
    require_domain(j.contains("vectors") && j.at("vectors").is_object(), "assignment needs a \"vectors\" object");
    VectorAssignment a;
    a.d = j.at("d").get<int>();
    require_domain(a.d >= 1 && a.d <= 255, "assignment dimension out of range");
    a.gram = j.contains("gram") ? gram_from_json(j.at("gram"), a.d) : identity_gram(a.d);
    for (const auto &[key, value] : j.at("vectors").items()) {
        int p = 0;
        try {
            std::size_t used = 0;
            p = std::stoi(key, &used);
            require_domain(used == key.size(), "");
        } catch (const std::exception &) {
            throw DomainError("assignment position '" + key + "' is not an integer");
        }
        require_domain(p != 0, "assignment position 0 does not exist");
        a.vectors[p] = coords_from_json(value);
    }
    a.validate();
    return a;
}

// Sparse word -> coefficient list; letters are 1-based.
template <Scalar S>
Json to_json(const FockVector<S> &v)
{
    Json terms = Json::array();
    for (const auto &[w, c] : v.terms()) {
        std::vector<int> letters;
        for (auto l : w) {
            letters.push_back(static_cast<int>(l) + 1);
        }
        terms.push_back({{"word", letters}, {"coeff", scalar_to_json(c)}});
    }
    return {{"d", v.dim()}, {"terms", std::move(terms)}};
}

template <Scalar S>
FockVector<S> vector_from_json(const Json &j)
{
    require_domain(j.is_object() && j.contains("d") && j.contains("terms"), "vector needs d and terms");
    const int d = j.at("d").get<int>();
    FockVector<S> v(d);
    for (const auto &t : j.at("terms")) {
        Word w;
        for (int l : t.at("word").get<std::vector<int>>()) {
            require_domain(l >= 1 && l <= d, "word letter outside 1..d");
            w.push_back(static_cast<std::uint8_t>(l - 1));
        }
        require_domain(w.size() % 2 == 0, "words have even length");
        v.add(w, scalar_from_json<S>(t.at("coeff")));
    }
    return v;
}

template <Scalar S>
Json basis_to_json(const std::vector<FockVector<S>> &basis)
{
    Json out = Json::array();
    for (const auto &v : basis) {
        out.push_back(to_json(v));
    }
    return out;
}

template <Scalar S>
std::vector<FockVector<S>> basis_from_json(const Json &j)
{
    require_domain(j.is_array(), "basis must be a list of vectors");
    std::vector<FockVector<S>> out;
    for (const auto &v : j) {
        out.push_back(vector_from_json<S>(v));
    }
    return out;
}

struct MomentResult {
    std::vector<int> word; // Gaussian order, leftmost applied last
    VectorAssignment assignment;
    std::string route;
    BiPoly polynomial;
};

inline Json to_json(const MomentResult &r)
{
    return {{"word", r.word}, {"assignment", to_json(r.assignment)}, {"route", r.route}, {"polynomial", to_json(r.polynomial)}};
}

inline MomentResult moment_result_from_json(const Json &j)
{
    require_domain(j.is_object(), "moment result must be an object");
    return {j.at("word").get<std::vector<int>>(), assignment_from_json(j.at("assignment")), j.at("route").get<std::string>(),
            bipoly_from_json(j.at("polynomial"))};
}

inline Json parse(const std::string &text)
{
    try {
        return Json::parse(text);
    } catch (const Json::exception &e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace bfock::io

#endif
