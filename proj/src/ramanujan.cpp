#include "ramexp/ramanujan.hpp"

#include <sstream>

namespace ramexp {

std::int64_t ramanujan_sum(const Factorization& q, std::uint64_t a) {
    if (a == 0) throw DomainError("ramanujan_sum needs a >= 1");
    // phi(q) mu(q/g) / phi(q/g), with q/g read off the factorization
    std::int64_t phi_q = 1, phi_r = 1;
    int mu_r = 1;
    for (const auto& pp : q.factors) {
        unsigned v = 0;
        std::uint64_t t = a;
        while (v < pp.e && t % pp.p == 0) {
            t /= pp.p;
            ++v;
        }
        unsigned rest = pp.e - v;  // exponent of p in q/g
        phi_q *= static_cast<std::int64_t>(checked_pow(pp.p, pp.e - 1) * (pp.p - 1));
        if (rest >= 2) return 0;
        if (rest == 1) {
            mu_r = -mu_r;
            phi_r *= static_cast<std::int64_t>(pp.p - 1);
        }
    }
    return phi_q / phi_r * mu_r;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t a) { return ramanujan_sum(factorize(q), a); }

std::int64_t ramanujan_sum_kluyver(std::uint64_t q, std::uint64_t a) {
    if (q == 0 || a == 0) throw DomainError("ramanujan_sum needs q, a >= 1");
    std::int64_t s = 0;
    for (std::uint64_t d : divisors(gcd(q, a))) s += static_cast<std::int64_t>(d) * mobius(q / d);
    return s;
}

std::int64_t ramanujan_sum_prime_power(std::uint64_t p, unsigned k, unsigned v) {
    if (k == 0) return 1;
    if (k <= v) return static_cast<std::int64_t>(checked_pow(p, k) - checked_pow(p, k - 1));
    if (k == v + 1) return -static_cast<std::int64_t>(checked_pow(p, k - 1));
    return 0;
}

unsigned vertical_limit_bound(std::uint64_t p, std::uint64_t a) { return valuation(p, a) + 1; }

RamanujanSumTable::RamanujanSumTable(std::uint64_t q_max, std::uint64_t a_max)
    : q_max_(q_max), a_max_(a_max), entries_(q_max * a_max) {
    for (std::uint64_t q = 1; q <= q_max; ++q) {
        Factorization f = factorize(q);
        for (std::uint64_t a = 1; a <= a_max; ++a) entries_[(q - 1) * a_max + (a - 1)] = ramanujan_sum(f, a);
    }
}

std::int64_t RamanujanSumTable::at(std::uint64_t q, std::uint64_t a) const {
    if (q == 0 || a == 0 || q > q_max_ || a > a_max_)
        throw DomainError("table lookup outside 1.." + std::to_string(q_max_) + " x 1.." + std::to_string(a_max_));
    return entries_[(q - 1) * a_max_ + (a - 1)];
}

std::string RamanujanSumTable::to_csv() const {
    std::ostringstream os;
    os << "q,a,c\n";
    for (std::uint64_t q = 1; q <= q_max_; ++q)
        for (std::uint64_t a = 1; a <= a_max_; ++a) os << q << ',' << a << ',' << at(q, a) << '\n';
    return os.str();
}

}  // namespace ramexp
