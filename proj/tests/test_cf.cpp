#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "engelcf/cf.hpp"
#include "engelcf/errors.hpp"
#include "oracles.hpp"

using namespace engelcf;

namespace {

std::vector<BigInt> v(std::initializer_list<long> xs) {
    std::vector<BigInt> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("evaluate small expansions") {
    CHECK(evaluate(v({1, 2, 1, 8, 3})) == Rational(BigInt(109), BigInt(81)));
    CHECK(evaluate(v({1, 2, 1, 1, 3})) == Rational(BigInt(25), BigInt(18)));
    CHECK(evaluate(v({7})) == Rational(BigInt(7)));
    CHECK(convergents(v({1, 2, 1, 8, 3})).back().q == 81);
}

TEST_CASE("expand_rational matches a floor-and-reciprocal loop") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(0, 100000), den(1, 100000);
    for (int t = 0; t < 500; ++t) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        const auto got = expand_rational(Rational(q));
        CHECK(got.vector() == oracle::euclid(q));
        CHECK(got.is_canonical());
        CHECK(oracle::fold_cf(got.vector()) == q);
    }
}

TEST_CASE("round trip through evaluate and expand_rational") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> len(1, 30), coeff(1, 1000), head(0, 50);
    for (int t = 0; t < 300; ++t) {
        std::vector<BigInt> a{head(rng)};
        for (long i = 1, n = len(rng); i < n; ++i) a.emplace_back(coeff(rng));
        if (a.size() > 1 && a.back() == 1) a.back() = 2;
        CHECK(expand_rational(evaluate(a)).vector() == a);
    }
}

TEST_CASE("determinant identity on random expansions") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> len(1, 40), coeff(1, 1'000'000);
    for (int t = 0; t < 1000; ++t) {
        std::vector<BigInt> a;
        for (long i = 0, n = len(rng); i < n; ++i) a.emplace_back(coeff(rng));
        const auto table = convergents(a);
        REQUIRE(table.size() == a.size());
        for (std::size_t j = 0; j < table.size(); ++j) {
            CHECK(table.matrix(j).determinant() == (j % 2 == 0 ? -1 : 1));
        }
        CHECK(Rational(table.back().p, table.back().q) == Rational(oracle::fold_cf(a)));
    }
}

TEST_CASE("normalize_zeros preserves value and shortens by two per zero") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> len(2, 25), coeff(0, 4);
    int tried = 0;
    for (int t = 0; t < 2000; ++t) {
        std::vector<BigInt> a{BigInt(coeff(rng) + 1)};
        for (long i = 1, n = len(rng); i < n; ++i) a.emplace_back(coeff(rng));
        a.back() += 1;
        std::size_t zeros = 0;
        bool isolated = true;
        for (std::size_t i = 1; i + 1 < a.size(); ++i) {
            if (a[i] == 0) {
                ++zeros;
                if (a[i - 1] == 0 || a[i + 1] == 0) isolated = false;
            }
        }
        const auto n = normalize_zeros(a);
        CHECK(oracle::fold_cf(n.vector()) == oracle::fold_cf(a));
        for (std::size_t i = 1; i < n.size(); ++i) CHECK(n[i] >= 1);
        if (isolated) {
            ++tried;
            CHECK(n.size() == a.size() - 2 * zeros);
        }
    }
    CHECK(tried > 100);
}

TEST_CASE("normalize_zeros rejects a trailing zero") {
    CHECK_THROWS_AS(normalize_zeros(v({1, 2, 0})), TrailingZero);
    CHECK_THROWS_AS(normalize_zeros(v({1, -2, 3})), ValidationError);
}

TEST_CASE("merge_trailing_one") {
    CHECK(merge_trailing_one(CFExpansion(v({1, 2, 1, 1}))).vector() == v({1, 2, 2}));
    CHECK(merge_trailing_one(CFExpansion(v({1, 2, 3}))).vector() == v({1, 2, 3}));
}

TEST_CASE("CFExpansion validation") {
    CHECK_THROWS_AS(CFExpansion(v({1, 0, 2})), ZeroCoefficient);
    CHECK_THROWS_AS(CFExpansion(std::vector<BigInt>{}), ValidationError);
    CHECK_FALSE(CFExpansion(v({1, 2, 1})).is_canonical());
}

TEST_CASE("format and parse") {
    CHECK(format_cf(v({1, 2, 1, 8, 3})) == "[1;2,1,8,3]");
    CHECK(format_cf(v({4})) == "[4]");
    CHECK(parse_cf("[1;2,1,8,3]") == v({1, 2, 1, 8, 3}));
    CHECK(parse_cf(" [ 4 ] ") == v({4}));
    CHECK_THROWS_AS(parse_cf("[1;2,,3]"), ParseError);
    CHECK(Rational(BigInt(6), BigInt(-4)).str() == "-3/2");
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), ValidationError);
}
