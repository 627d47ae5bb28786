#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ramexp/error.hpp"
#include "ramexp/ramanujan.hpp"

using namespace ramexp;

namespace {
// cosine sum over reduced residues, straight from the definition
double cosine_sum(std::uint64_t q, std::uint64_t a) {
    double s = 0;
    for (std::uint64_t j = 1; j <= q; ++j)
        if (gcd(j, q) == 1) s += std::cos(2 * std::numbers::pi * double(j) * double(a) / double(q));
    return s;
}
}  // namespace

TEST_CASE("frozen values") {
    CHECK(ramanujan_sum(1, 17) == 1);
    CHECK(ramanujan_sum(4, 2) == -2);
    CHECK(ramanujan_sum(6, 4) == -1);
    CHECK(ramanujan_sum(16, 12) == 0);
    CHECK(ramanujan_sum(9, 1) == 0);
    CHECK(ramanujan_sum(12, 12) == 4);
    CHECK(ramanujan_sum_kluyver(6, 4) == -1);
}

TEST_CASE("c_{q rad q}(q) = q mu(rad q)") {
    for (std::uint64_t q = 1; q <= 60; ++q) CHECK(ramanujan_sum(q * radical(q), q) == std::int64_t(q) * mobius(radical(q)));
}

TEST_CASE("coprime arguments give mu(q)") {
    for (std::uint64_t q = 1; q <= 100; ++q)
        for (std::uint64_t a = 1; a <= 30; ++a)
            if (gcd(q, a) == 1) CHECK(ramanujan_sum(q, a) == mobius(q));
}

TEST_CASE("vertical limit bound") {
    CHECK(vertical_limit_bound(2, 12) == 3);
    CHECK(ramanujan_sum(16, 12) == 0);
    CHECK(vertical_limit_bound(3, 1) == 1);
    CHECK(vertical_limit_bound(5, 5) == 2);
    CHECK_THROWS_AS(vertical_limit_bound(6, 5), DomainError);
    for (std::uint64_t p : {2, 3, 5, 7})
        for (std::uint64_t a = 1; a <= 200; ++a) {
            unsigned v = valuation(p, a);
            for (unsigned K = v + 2; K <= v + 4; ++K) CHECK(ramanujan_sum(checked_pow(p, K), a) == 0);
            for (unsigned K = 0; K <= v + 4; ++K)
                CHECK(ramanujan_sum_prime_power(p, K, v) == ramanujan_sum(checked_pow(p, K), a));
        }
}

TEST_CASE("Kluyver equals Hoelder on 1..200") {
    for (std::uint64_t q = 1; q <= 200; ++q)
        for (std::uint64_t a = 1; a <= 200; ++a)
            if (ramanujan_sum(q, a) != ramanujan_sum_kluyver(q, a)) FAIL("q=" << q << " a=" << a);
}

TEST_CASE("multiplicative in q") {
    for (std::uint64_t q1 = 1; q1 <= 100; ++q1)
        for (std::uint64_t q2 = 1; q2 <= 100; q2 += 7)
            if (gcd(q1, q2) == 1)
                for (std::uint64_t a = 1; a <= 100; a += 3)
                    CHECK(ramanujan_sum(q1 * q2, a) == ramanujan_sum(q1, a) * ramanujan_sum(q2, a));
}

TEST_CASE("divisor sum of c_d(a) against the cosine definition") {
    for (std::uint64_t q = 1; q <= 200; q += 3)
        for (std::uint64_t a = 1; a <= 200; a += 5) {
            std::int64_t s = 0;
            double fs = 0;
            for (std::uint64_t d : divisors(q)) {
                s += ramanujan_sum(d, a);
                fs += cosine_sum(d, a);
                CHECK(std::abs(cosine_sum(d, a) - double(ramanujan_sum(d, a))) < 1e-6);
            }
            std::int64_t expect = (a % q == 0) ? std::int64_t(q) : 0;
            CHECK(std::abs(fs - double(expect)) < 1e-6);
            CHECK(s == expect);
        }
}

TEST_CASE("table is row-major and matches the direct path") {
    RamanujanSumTable t(12, 9);
    for (std::uint64_t q = 1; q <= 12; ++q)
        for (std::uint64_t a = 1; a <= 9; ++a) CHECK(t.at(q, a) == ramanujan_sum(q, a));
    auto csv = t.to_csv();
    CHECK(csv.rfind("q,a,c\n1,1,1\n", 0) == 0);
    CHECK_THROWS_AS(t.at(13, 1), DomainError);
}
