#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ramexp/error.hpp"
#include "ramexp/numeric.hpp"

namespace ramexp {

struct PrimePower {
    std::uint64_t p;
    unsigned e;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing
};

inline constexpr std::uint64_t kDefaultSieveBound = 10'000'000;

// Linear sieve of smallest prime factors.
class Sieve {
public:
    explicit Sieve(std::uint64_t bound);

    std::uint64_t bound() const { return bound_; }
    std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= bound_ && spf_[n] == n; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }
    Factorization factorize(std::uint64_t n) const;

private:
    std::uint64_t bound_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

// RK_SIEVE_BOUND if set and valid, else 10^7.
std::uint64_t configured_sieve_bound();
// Built on first use; read-only afterwards.
const Sieve& default_sieve();

Factorization factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);

int mobius(std::uint64_t n);
int mobius(const Factorization& f);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t euler_phi(const Factorization& f);
std::uint64_t radical(std::uint64_t n);
std::uint64_t radical(const Factorization& f);
unsigned valuation(std::uint64_t p, std::uint64_t n);
unsigned valuation(std::uint64_t p, const Factorization& f);

std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> divisors(const Factorization& f);  // ascending

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t p, unsigned e);

// Arithmetic function known on 1..a_max.
template <class T>
class TabulatedFunction {
public:
    TabulatedFunction() = default;
    explicit TabulatedFunction(std::vector<T> values) : values_(std::move(values)) {
        if (values_.empty()) throw DomainError("tabulated function needs a_max >= 1");
    }
    static TabulatedFunction generate(std::uint64_t a_max, const std::function<T(std::uint64_t)>& f) {
        std::vector<T> v;
        v.reserve(a_max);
        for (std::uint64_t a = 1; a <= a_max; ++a) v.push_back(f(a));
        return TabulatedFunction(std::move(v));
    }

    std::uint64_t a_max() const { return values_.size(); }
    const T& operator()(std::uint64_t a) const {
        if (a == 0 || a > values_.size())
            throw DomainError("tabulated function queried at " + std::to_string(a) +
                              " outside 1.." + std::to_string(values_.size()));
        return values_[a - 1];
    }
    const std::vector<T>& values() const { return values_; }

private:
    std::vector<T> values_;
};

// (f*g)(n) on n <= min(a_max).
template <class T>
TabulatedFunction<T> dirichlet_convolve(const TabulatedFunction<T>& f, const TabulatedFunction<T>& g) {
    std::uint64_t A = std::min(f.a_max(), g.a_max());
    std::vector<T> out(A, from_int<T>(0));
    for (std::uint64_t d = 1; d <= A; ++d) {
        if (is_zero(f(d)) && NumericMode<T>::exact) continue;
        for (std::uint64_t m = 1; d * m <= A; ++m) out[d * m - 1] += f(d) * g(m);
    }
    return TabulatedFunction<T>(std::move(out));
}

template <class T>
TabulatedFunction<T> mobius_function(std::uint64_t a_max) {
    return TabulatedFunction<T>::generate(a_max, [](std::uint64_t n) { return from_int<T>(mobius(n)); });
}

// f' = f * mu
template <class T>
TabulatedFunction<T> eratosthenes_transform(const TabulatedFunction<T>& f) {
    return dirichlet_convolve(f, mobius_function<T>(f.a_max()));
}

// f * 1, inverse of the transform
template <class T>
TabulatedFunction<T> divisor_sum(const TabulatedFunction<T>& f) {
    auto one = TabulatedFunction<T>::generate(f.a_max(), [](std::uint64_t) { return from_int<T>(1); });
    return dirichlet_convolve(f, one);
}

// Checks f(n) = prod f(p^k) over the domain. On failure, witness receives n.
template <class T>
bool is_multiplicative(const TabulatedFunction<T>& f, std::uint64_t* witness = nullptr) {
    if (!same_value(f(1), from_int<T>(1))) {
        if (witness) *witness = 1;
        return false;
    }
    for (std::uint64_t n = 2; n <= f.a_max(); ++n) {
        Factorization fac = factorize(n);
        if (fac.factors.size() < 2) continue;
        T prod = from_int<T>(1);
        for (const auto& pp : fac.factors) prod *= f(checked_pow(pp.p, pp.e));
        if (!same_value(prod, f(n))) {
            if (witness) *witness = n;
            return false;
        }
    }
    return true;
}

}  // namespace ramexp
