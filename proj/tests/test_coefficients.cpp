#include <doctest.h>

#include <random>

#include "ramexp/coefficients.hpp"
#include "ramexp/error.hpp"
#include "ramexp/generators.hpp"
#include "ramexp/ramanujan.hpp"

using namespace ramexp;
using Q = QComplex;
using Spec = CoefficientSpec<Q>;

namespace {
Q r(long long n, long long d = 1) { return Q(Rational(n, d)); }

Spec spec_3_2_4() {  // G(3)=2, G(9)=4, zero beyond
    return Spec({{3, PrimeEntry<Q>{{r(2), r(4)}, ZeroTail{}}}}, ZeroOnPrimes{});
}
Spec spec_5_transparent() {  // G(5)=G(25)=1, G(125)=3
    return Spec({{5, PrimeEntry<Q>{{r(1), r(1), r(3)}, ZeroTail{}}}}, ZeroOnPrimes{});
}
}  // namespace

TEST_CASE("value_at: frozen values") {
    CHECK(value_at(spec_3_2_4(), 1) == r(1));
    CHECK(value_at(spec_3_2_4(), 9) == r(4));
    CHECK(value_at(spec_3_2_4(), 27) == r(0));
    CHECK(value_at(spec_3_2_4(), 2) == r(0));

    CoefficientSpec<Complex> pl({}, PowerLaw{Complex(2, 0), false});
    CHECK(std::abs(value_at(pl, 12) - Complex(1.0 / 144, 0)) < 1e-15);
    Spec ple({}, PowerLaw{Complex(2, 0), false});
    CHECK(value_at(ple, 12) == r(1, 144));
    Spec neg({}, PowerLaw{Complex(1, 0), true});
    CHECK(value_at(neg, 6) == r(1, 6));
    CHECK(value_at(neg, 4) == r(1, 4));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(Spec({{4, PrimeEntry<Q>{{r(1)}, ZeroTail{}}}}, ZeroOnPrimes{}), DomainError);
    CHECK_THROWS_AS(Spec({{3, PrimeEntry<Q>{{}, ZeroTail{}}}}, ZeroOnPrimes{}), DomainError);
    CHECK_THROWS_AS(CoefficientSpec<Complex>({}, PowerLaw{Complex(-1, 0), false}), DomainError);
    CHECK_THROWS_AS(Spec({}, PowerLaw{Complex(0.5, 0), false}), DomainError);
}

TEST_CASE("tail rules extend the table") {
    Spec g({{2, PrimeEntry<Q>{{r(3), r(5)}, GeometricTail<Q>{r(1, 2)}}}, {3, PrimeEntry<Q>{{r(7)}, OneTail{}}}},
           ZeroOnPrimes{});
    CHECK(g.prime_power(2, 0) == r(1));
    CHECK(g.prime_power(2, 2) == r(5));
    CHECK(g.prime_power(2, 4) == r(5, 4));
    CHECK(g.prime_power(3, 1) == r(7));
    CHECK(g.prime_power(3, 9) == r(1));
}

TEST_CASE("cm_index: frozen values") {
    CHECK(cm_index(spec_3_2_4(), 3) == 2);
    Spec one({{2, PrimeEntry<Q>{{r(1)}, OneTail{}}}}, ZeroOnPrimes{});
    CHECK(cm_index(one, 2) == kInfinite);
    Spec zero({{7, PrimeEntry<Q>{{r(0), r(0)}, ZeroTail{}}}}, ZeroOnPrimes{});
    CHECK(cm_index(zero, 7) == kInfinite);
    CHECK(cm_index(zero, 11) == kInfinite);  // default zero on primes
    Spec geo({{2, PrimeEntry<Q>{{r(3), r(9)}, GeometricTail<Q>{r(3)}}}}, ZeroOnPrimes{});
    CHECK(cm_index(geo, 2) == kInfinite);
    Spec geo_off({{2, PrimeEntry<Q>{{r(3), r(9)}, GeometricTail<Q>{r(2)}}}}, ZeroOnPrimes{});
    CHECK(cm_index(geo_off, 2) == 2);
    Spec one_then({{2, PrimeEntry<Q>{{r(-1)}, OneTail{}}}}, ZeroOnPrimes{});
    CHECK(cm_index(one_then, 2) == 2);  // (-1)^2 = 1, (-1)^3 != 1
}

TEST_CASE("transparency_index: frozen values") {
    CHECK(transparency_index(spec_3_2_4(), 3) == 0);
    CHECK(transparency_index(spec_5_transparent(), 5) == 2);
    Spec every({}, OneEverywhere{});
    CHECK(transparency_index(every, 101) == kInfinite);
}

TEST_CASE("classification and conductors: frozen values") {
    auto pc = classify_prime(spec_3_2_4(), 3);
    CHECK(pc.cls == PrimeClass::SimplyBad);
    CHECK(pc.w == 2);
    auto cd = conductors(spec_3_2_4());
    CHECK(cd.N == 9);
    CHECK(cd.N_T == 1);
    CHECK(cd.equality_regime == "exact");

    auto pt = classify_prime(spec_5_transparent(), 5);
    CHECK(pt.cls == PrimeClass::SimplyTransparent);
    CHECK(pt.v == 2);
    CHECK(conductors(spec_5_transparent()).N_T == 25);
    CHECK(conductors(spec_5_transparent()).N == 25);

    auto empty = conductors(Spec({}, ZeroOnPrimes{}));
    CHECK(empty.N == 1);
    CHECK(empty.N_T == 1);

    auto every = conductors(Spec({}, OneEverywhere{}));
    CHECK(every.N == 1);
    CHECK(every.unlisted_hypertransparent);
    CHECK(classify_prime(Spec({}, OneEverywhere{}), 13).cls == PrimeClass::HyperTransparent);

    CHECK(conductors(CoefficientSpec<Complex>({}, ZeroOnPrimes{})).equality_regime != "exact");
}

TEST_CASE("classification invariants on random specs") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        auto g = gen::random_finite_spec<Q>(rng);
        auto cd = conductors(g);
        CHECK(cd.N % cd.N_T == 0);
        for (std::uint64_t p : g.listed_primes()) {
            auto pc = classify_prime(g, p);
            if (pc.transparent()) CHECK(pc.bad());
            bool g1 = g.prime_power(p, 1) == r(1);
            if (!g1) CHECK(pc.v == 0);
            if (g1) CHECK(pc.v == pc.w);
            CHECK((pc.cls == PrimeClass::HyperTransparent) == (pc.v == kInfinite));
            // w is the true index on a long prefix
            unsigned w = 0;
            Q g_p = g.prime_power(p, 1);
            while (w < 12 && g.prime_power(p, w + 1) == ipow(g_p, w + 1)) ++w;
            if (pc.w == kInfinite)
                CHECK(w == 12);
            else
                CHECK(w == pc.w);
        }
    }
}

TEST_CASE("finite factors: frozen values") {
    Q g2 = r(1, 3), g3 = r(-2);
    Spec two({{2, PrimeEntry<Q>{{g2}, GeometricTail<Q>{g2}}}, {3, PrimeEntry<Q>{{g3}, GeometricTail<Q>{g3}}}},
             ZeroOnPrimes{});
    CHECK(finite_factor(FactorKind::C, two, 6) == (r(1) - g2) * (r(1) - g3));
    CHECK(finite_factor(FactorKind::D, two, 6) == r(1) + r(2) * g2 + r(3) * g3 + r(6) * g2 * g3);

    Q g = r(5, 7);
    Spec one_term({{3, PrimeEntry<Q>{{g}, ZeroTail{}}}}, ZeroOnPrimes{});
    CHECK(finite_factor(FactorKind::E, one_term, 3) == r(1) + r(2) * g);

    Spec hyper({{2, PrimeEntry<Q>{{r(1)}, OneTail{}}}}, ZeroOnPrimes{});
    CHECK(finite_factor(FactorKind::E, hyper, 8) == r(0));
}

TEST_CASE("finite factors: product form equals divisor-sum form, multiplicative") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 40; ++i) {
        auto g = gen::random_finite_spec<Q>(rng);
        for (std::uint64_t a = 1; a <= 120; ++a)
            for (FactorKind k : {FactorKind::E, FactorKind::U, FactorKind::C, FactorKind::D})
                if (!(finite_factor(k, g, a) == finite_factor_divisor_form(k, g, a)))
                    FAIL("kind " << int(k) << " a=" << a);
    }
    for (int i = 0; i < 200; ++i) {
        auto g = gen::random_finite_spec<Q>(rng);
        std::uint64_t m = gen::uniform(rng, 1, 300), n = gen::uniform(rng, 1, 300);
        if (gcd(m, n) != 1) continue;
        for (FactorKind k : {FactorKind::E, FactorKind::U, FactorKind::C, FactorKind::D})
            CHECK(finite_factor(k, g, m * n) == finite_factor(k, g, m) * finite_factor(k, g, n));
    }
}

TEST_CASE("U divisor form up to 500") {
    std::mt19937_64 rng(23);
    auto g = gen::random_finite_spec<Q>(rng);
    for (std::uint64_t d = 1; d <= 500; ++d)
        CHECK(finite_factor(FactorKind::U, g, d) == finite_factor_divisor_form(FactorKind::U, g, d));
}

TEST_CASE("local Euler factor: three forms agree") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 100; ++i) {
        auto g = gen::random_finite_spec<Q>(rng);
        for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
            for (unsigned v = 0; v <= 5; ++v) {
                Q a = local_euler_factor(g, p, v, 0);
                CHECK(a == local_euler_factor(g, p, v, 1));
                CHECK(a == local_euler_factor(g, p, v, 2));
            }
    }
}

TEST_CASE("Ramanujan factorization of integers") {
    Q two = r(2);
    Spec g({{2, PrimeEntry<Q>{{two}, GeometricTail<Q>{two}}}, {5, PrimeEntry<Q>{{r(1), r(1), r(3)}, ZeroTail{}}}},
           ZeroOnPrimes{});
    CHECK(classify_prime(g, 2).cls == PrimeClass::HyperBad);
    auto f = ramanujan_factorization(g, 200);
    CHECK(f.h == 8);
    CHECK(f.t == 25);
    CHECK(f.a_tilde == 1);
    f = ramanujan_factorization(g, 600);
    CHECK(f.h == 8);
    CHECK(f.t == 25);
    CHECK(f.a_tilde == 3);
    f = ramanujan_factorization(g, 21);
    CHECK(f.h == 1);
    CHECK(f.t == 1);
    CHECK(f.a_tilde == 21);

    for (std::uint64_t m = 1; m <= 60; ++m)
        for (std::uint64_t n = 1; n <= 60; ++n)
            if (gcd(m, n) == 1) {
                auto fm = ramanujan_factorization(g, m), fn = ramanujan_factorization(g, n),
                     fmn = ramanujan_factorization(g, m * n);
                CHECK(fmn.h == fm.h * fn.h);
                CHECK(fmn.t == fm.t * fn.t);
                CHECK(fmn.a_tilde == fm.a_tilde * fn.a_tilde);
            }
}
