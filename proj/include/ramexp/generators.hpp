#pragma once

// Seeded random inputs shared by the CLI, the tests and the acceptance runner.
// Draws use rng() % n so streams are identical across standard libraries.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "ramexp/arith.hpp"
#include "ramexp/coefficients.hpp"

namespace ramexp::gen {

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

// num/den with num in [-3, 3], den in [1, 3]; an imaginary part now and then.
template <class T>
T small_value(std::mt19937_64& rng, bool allow_complex = true) {
    auto part = [&] {
        long long num = static_cast<long long>(uniform(rng, 0, 6)) - 3;
        long long den = static_cast<long long>(uniform(rng, 1, 3));
        return Rational(num, den);
    };
    Rational re = part();
    Rational im = (allow_complex && uniform(rng, 0, 4) == 0) ? part() : Rational(0);
    return convert<T>(QComplex(re, im));
}

template <class T>
T small_value_not(std::mt19937_64& rng, const T& avoid, bool allow_complex = true) {
    for (;;) {
        T v = small_value<T>(rng, allow_complex);
        if (!same_value(v, avoid)) return v;
    }
}

struct SpecShape {
    std::vector<std::uint64_t> pool{2, 3, 5, 7, 11, 13};
    unsigned max_primes = 3;
    bool allow_hyper = true;        // OneTail and infinite-index geometric tails
    bool allow_complex = true;
};

// A single listed prime; kinds cover generic, completely multiplicative, transparent, hyper.
template <class T>
PrimeEntry<T> random_entry(std::mt19937_64& rng, const SpecShape& shape) {
    PrimeEntry<T> e;
    unsigned kinds = shape.allow_hyper ? 6 : 4;
    switch (uniform(rng, 0, kinds - 1)) {
        case 0: {  // generic finite table
            unsigned K = static_cast<unsigned>(uniform(rng, 1, 3));
            for (unsigned k = 0; k < K; ++k) e.values.push_back(small_value<T>(rng, shape.allow_complex));
            e.tail = ZeroTail{};
            break;
        }
        case 1: {  // simply transparent
            unsigned v = static_cast<unsigned>(uniform(rng, 1, 2));
            for (unsigned k = 0; k < v; ++k) e.values.push_back(from_int<T>(1));
            e.values.push_back(small_value_not<T>(rng, from_int<T>(1), shape.allow_complex));
            e.tail = ZeroTail{};
            break;
        }
        case 2: {  // zero at p, square-full support
            e.values.push_back(from_int<T>(0));
            e.values.push_back(small_value<T>(rng, shape.allow_complex));
            e.tail = ZeroTail{};
            break;
        }
        case 3: {  // table then a free geometric tail
            e.values.push_back(small_value<T>(rng, shape.allow_complex));
            e.values.push_back(small_value<T>(rng, shape.allow_complex));
            e.tail = GeometricTail<T>{small_value<T>(rng, shape.allow_complex)};
            break;
        }
        case 4: {  // completely multiplicative along p
            T g = small_value<T>(rng, shape.allow_complex);
            e.values.push_back(g);
            if (uniform(rng, 0, 1)) e.values.push_back(g * g);
            e.tail = GeometricTail<T>{g};
            break;
        }
        default: {  // hypertransparent
            e.values.push_back(from_int<T>(1));
            e.tail = OneTail{};
            break;
        }
    }
    return e;
}

// Zero default rule, so every series involved has finitely many nonzero terms at fixed a.
template <class T>
CoefficientSpec<T> random_finite_spec(std::mt19937_64& rng, const SpecShape& shape = {}) {
    std::vector<std::uint64_t> pool = shape.pool;
    unsigned n = static_cast<unsigned>(uniform(rng, 1, std::min<std::uint64_t>(shape.max_primes, pool.size())));
    std::map<std::uint64_t, PrimeEntry<T>> entries;
    for (unsigned i = 0; i < n; ++i) {
        std::size_t j = uniform(rng, 0, pool.size() - 1);
        std::uint64_t p = pool[j];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
        entries.emplace(p, random_entry<T>(rng, shape));
    }
    return CoefficientSpec<T>(std::move(entries), ZeroOnPrimes{});
}

// Multiplicative F on 1..a_max with small rational values at prime powers, F(1) = 1.
template <class T>
TabulatedFunction<T> random_multiplicative(std::mt19937_64& rng, std::uint64_t a_max, bool allow_complex = false) {
    std::map<std::uint64_t, T> at_pp;
    for (std::uint64_t n = 2; n <= a_max; ++n) {
        auto f = factorize(n);
        if (f.factors.size() == 1) at_pp.emplace(n, small_value<T>(rng, allow_complex));
    }
    return TabulatedFunction<T>::generate(a_max, [&](std::uint64_t n) {
        T v = from_int<T>(1);
        for (const auto& pp : factorize(n).factors) v *= at_pp.at(checked_pow(pp.p, pp.e));
        return v;
    });
}

// Integer values in [-5, 5].
template <class T>
TabulatedFunction<T> random_integer_function(std::mt19937_64& rng, std::uint64_t a_max) {
    return TabulatedFunction<T>::generate(a_max, [&](std::uint64_t) {
        return from_int<T>(static_cast<long long>(uniform(rng, 0, 10)) - 5);
    });
}

}  // namespace ramexp::gen
