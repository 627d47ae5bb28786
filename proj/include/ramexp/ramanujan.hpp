#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramexp/arith.hpp"

namespace ramexp {

// c_q(a) by Hoelder: phi(q) mu(q/g) / phi(q/g), g = (q, a).
std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t a);
// Same, with q given by its factorization (q may exceed the sieve bound).
std::int64_t ramanujan_sum(const Factorization& q, std::uint64_t a);
// Kluyver: sum over d | (q, a) of d mu(q/d). Verification path.
std::int64_t ramanujan_sum_kluyver(std::uint64_t q, std::uint64_t a);
// c_{p^k}(a) given v = v_p(a).
std::int64_t ramanujan_sum_prime_power(std::uint64_t p, unsigned k, unsigned v);

// v_p(a) + 1; c_{p^K}(a) vanishes for every larger K.
unsigned vertical_limit_bound(std::uint64_t p, std::uint64_t a);

class RamanujanSumTable {
public:
    RamanujanSumTable(std::uint64_t q_max, std::uint64_t a_max);

    std::uint64_t q_max() const { return q_max_; }
    std::uint64_t a_max() const { return a_max_; }
    std::int64_t at(std::uint64_t q, std::uint64_t a) const;
    std::string to_csv() const;

private:
    std::uint64_t q_max_, a_max_;
    std::vector<std::int64_t> entries_;  // row-major in q
};

}  // namespace ramexp
