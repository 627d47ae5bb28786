#include "ramexp/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>

namespace ramexp {

Sieve::Sieve(std::uint64_t bound) : bound_(bound) {
    if (bound < 2) bound_ = 2;
    if (bound_ > std::numeric_limits<std::uint32_t>::max())
        throw DomainError("sieve bound too large: " + std::to_string(bound));
    spf_.assign(bound_ + 1, 0);
    for (std::uint64_t i = 2; i <= bound_; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes_.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes_) {
            std::uint64_t m = i * p;
            if (p > spf_[i] || m > bound_) break;
            spf_[m] = p;
        }
    }
}

Factorization Sieve::factorize(std::uint64_t n) const {
    if (n == 0) throw DomainError("factorize(0)");
    if (n > bound_)
        throw DomainError("n = " + std::to_string(n) + " exceeds sieve bound " + std::to_string(bound_));
    Factorization f;
    f.n = n;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    return f;
}

std::uint64_t configured_sieve_bound() {
    const char* env = std::getenv("RK_SIEVE_BOUND");
    if (!env || !*env) return kDefaultSieveBound;
    char* end = nullptr;
    double v = std::strtod(env, &end);  // allows 1e6
    if (end == env || *end != '\0' || !(v >= 2) || v > 4e9)
        throw DomainError(std::string("invalid RK_SIEVE_BOUND '") + env + "'");
    return static_cast<std::uint64_t>(v);
}

const Sieve& default_sieve() {
    static std::once_flag once;
    static std::unique_ptr<Sieve> sieve;
    std::call_once(once, [] { sieve = std::make_unique<Sieve>(configured_sieve_bound()); });
    return *sieve;
}

Factorization factorize(std::uint64_t n) { return default_sieve().factorize(n); }

bool is_prime(std::uint64_t n) {
    const Sieve& s = default_sieve();
    if (n <= s.bound()) return s.is_prime(n);
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

int mobius(const Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.e > 1) return 0;
    return (f.factors.size() % 2) ? -1 : 1;
}
int mobius(std::uint64_t n) { return mobius(factorize(n)); }

std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t r = 1;
    for (const auto& pp : f.factors) r *= checked_pow(pp.p, pp.e - 1) * (pp.p - 1);
    return r;
}
std::uint64_t euler_phi(std::uint64_t n) { return euler_phi(factorize(n)); }

std::uint64_t radical(const Factorization& f) {
    std::uint64_t r = 1;
    for (const auto& pp : f.factors) r *= pp.p;
    return r;
}
std::uint64_t radical(std::uint64_t n) { return radical(factorize(n)); }

unsigned valuation(std::uint64_t p, std::uint64_t n) {
    if (!is_prime(p)) throw DomainError("valuation base " + std::to_string(p) + " is not prime");
    if (n == 0) throw DomainError("valuation of 0");
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

unsigned valuation(std::uint64_t p, const Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.p == p) return pp.e;
    return 0;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
    std::vector<std::uint64_t> out{1};
    for (const auto& pp : f.factors) {
        std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= pp.e; ++k) {
            pk *= pp.p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}
std::vector<std::uint64_t> divisors(std::uint64_t n) { return divisors(factorize(n)); }

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer overflow in product");
    return r;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r = checked_mul(r, p);
    return r;
}

}  // namespace ramexp
