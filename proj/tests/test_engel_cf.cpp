#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "engelcf/engel_cf.hpp"
#include "engelcf/errors.hpp"
#include "oracles.hpp"

using namespace engelcf;

namespace {

std::vector<BigInt> v(std::initializer_list<const char*> xs) {
    std::vector<BigInt> out;
    for (const char* x : xs) out.emplace_back(x);
    return out;
}

std::vector<BigInt> euclid_of_sum(const std::vector<BigInt>& z, std::size_t n) {
    return oracle::euclid(oracle::direct_sum(oracle::terms_from_factors(z, n), n));
}

bool is_prefix(const std::vector<BigInt>& p, const std::vector<BigInt>& whole) {
    return p.size() <= whole.size() && std::equal(p.begin(), p.end(), whole.begin());
}

}  // namespace

TEST_CASE("length formulas") {
    CHECK(generic_length(3) == 5);
    CHECK(generic_length(4) == 11);
    CHECK(generic_length(5) == 23);
    CHECK(z2eq2_length(4) == 10);
    CHECK(z2eq2_length(5) == 20);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(ones_tail_length(n, BigInt(3)) == std::vector<std::size_t>{1, 2, 3, 5, 9, 17}[n - 1]);
    for (std::size_t n = 1; n <= 7; ++n) CHECK(ones_tail_length(n, BigInt(2)) == std::vector<std::size_t>{1, 2, 3, 4, 6, 10, 18}[n - 1]);
}

TEST_CASE("generic recursion against the Euclidean expansion") {
    CHECK(generic_partial_cf(FactorSequence(v({"3", "9"})), 3).coefficients.vector() == v({"1", "2", "1", "8", "3"}));
    CHECK(generic_partial_cf(FactorSequence(v({"3", "2"})), 3).coefficients.vector() == v({"1", "2", "1", "1", "3"}));
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> z2(3, 40), z(2, 40);
    for (int t = 0; t < 60; ++t) {
        std::vector<BigInt> f{z2(rng)};
        for (int j = 3; j <= 7; ++j) f.emplace_back(z(rng));
        const FactorSequence zs(f);
        for (std::size_t n = 3; n <= 7; ++n) {
            const auto pcf = generic_partial_cf(zs, n);
            CHECK(pcf.coefficients.vector() == euclid_of_sum(f, n));
            CHECK(pcf.length() == generic_length(n));
            CHECK(convergents(pcf.coefficients).back().q == oracle::terms_from_factors(f, n).back());
        }
    }
}

TEST_CASE("z2 = 2 recursion against the Euclidean expansion") {
    const FactorSequence mrec(v({"2", "6", "300", "1244167200"}));
    CHECK(z2eq2_partial_cf(mrec, 4).coefficients.vector() == v({"1", "1", "1", "5", "2", "299", "1", "1", "5", "2"}));
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> z(2, 40);
    for (int t = 0; t < 60; ++t) {
        std::vector<BigInt> f{2};
        for (int j = 3; j <= 7; ++j) f.emplace_back(z(rng));
        const FactorSequence zs(f);
        for (std::size_t n = 4; n <= 7; ++n) {
            const auto pcf = z2eq2_partial_cf(zs, n);
            CHECK(pcf.coefficients.vector() == euclid_of_sum(f, n));
            CHECK(pcf.length() == z2eq2_length(n));
            CHECK(pcf.coefficients.back() == 2);
            const auto raw = raw_generic_partial_cf(f, n);
            CHECK(merge_trailing_one(normalize_zeros(raw)) == pcf.coefficients);
        }
    }
}

TEST_CASE("class mismatches and fallback") {
    CHECK_THROWS_AS(generic_partial_cf(FactorSequence(v({"2", "5"})), 3), ClassMismatch);
    CHECK_THROWS_AS(z2eq2_partial_cf(FactorSequence(v({"3", "5", "5"})), 4), ClassMismatch);
    const std::vector<BigInt> mixed = v({"3", "1", "4", "1"});
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK(partial_cf(FactorSequence(mixed), n).coefficients.vector() == euclid_of_sum(mixed, n));
    }
}

TEST_CASE("stream prefixes are stable across modes") {
    const auto rec = stream(make_recurrence_source(SecondOrderSpec{3, v({"3"})}), 11);
    CHECK(is_prefix(v({"1", "2", "1", "8", "3", "80", "1", "2", "8", "1", "2", "19682"}), rec.certified));
    const auto forced = [&] {
        CoefficientStream s(make_recurrence_source(SecondOrderSpec{3, v({"3"})}), true);
        s.extend(11);
        return s.certified();
    }();
    const std::size_t m = std::min(forced.size(), rec.certified.size());
    CHECK(std::equal(forced.begin(), forced.begin() + m, rec.certified.begin()));

    const auto mrec = stream(make_recurrence_source(SecondOrderSpec{3, v({"1", "1"})}), 17);
    CHECK(mrec.cls == FactorClass::Z2Equals2);
    CHECK(is_prefix(v({"1", "1", "1", "5", "2", "299", "1", "1", "5", "1", "1", "1244167199", "2", "5", "1", "1", "299"}),
                    mrec.certified));
}

TEST_CASE("oracle stream for ONES_TAIL") {
    for (int u = 3; u <= 6; ++u) {
        const auto b = stream(make_ones_tail_source(BigInt(u)), 40);
        REQUIRE(b.certified.size() >= 40);
        for (const auto& a : b.certified) CHECK(in_ones_tail_alphabet(a, BigInt(u)));
    }
}

TEST_CASE("certified prefix of an interval") {
    const Rational lo(BigInt(109), BigInt(81));
    const Rational hi(BigInt(110), BigInt(81));
    const auto p = certified_prefix(lo, hi);
    CHECK(is_prefix(p, v({"1", "2", "1", "8", "3"})));
    CHECK(p.size() < 5);
    CHECK(certified_decimal(Rational(BigInt(13331), BigInt(10000)), Rational(BigInt(13339), BigInt(10000)), 10) == "1.333");
}

TEST_CASE("step identities") {
    const FactorSequence zs(v({"3", "9", "5", "7"}));
    for (std::size_t n = 3; n < 5; ++n) {
        const auto r = verify_step_identities(zs, n);
        CHECK(r.det_n == -1);
        CHECK(r.q_next == r.x_next);
        CHECK(r.length_next == 2 * r.length_n + 1);
    }
}
