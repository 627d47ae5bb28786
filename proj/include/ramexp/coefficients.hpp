#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ramexp/arith.hpp"
#include "ramexp/numeric.hpp"

namespace ramexp {

// Tail rules continue a prime's table past its last listed power K.
struct ZeroTail {};
template <class T> struct GeometricTail { T ratio; };  // G(p^k) = G(p^K) ratio^(k-K)
struct OneTail {};
template <class T> using TailRule = std::variant<ZeroTail, GeometricTail<T>, OneTail>;

// Default rules cover every unlisted prime.
struct ZeroOnPrimes {};
struct PowerLaw {
    Complex s;            // Re s > 0
    bool negate = false;  // G(p^k) = (-p^-s)^k instead of p^-ks
};
struct OneEverywhere {};
using DefaultRule = std::variant<ZeroOnPrimes, PowerLaw, OneEverywhere>;

template <class T>
struct PrimeEntry {
    std::vector<T> values;  // G(p), G(p^2), ..., G(p^K)
    TailRule<T> tail = ZeroTail{};
};

// Index value standing for infinity.
inline constexpr unsigned kInfinite = std::numeric_limits<unsigned>::max();

template <class T>
class CoefficientSpec {
public:
    CoefficientSpec() = default;
    CoefficientSpec(std::map<std::uint64_t, PrimeEntry<T>> primes, DefaultRule rule);

    const std::map<std::uint64_t, PrimeEntry<T>>& primes() const { return primes_; }
    const DefaultRule& default_rule() const { return default_; }
    bool listed(std::uint64_t p) const { return primes_.count(p) != 0; }
    std::vector<std::uint64_t> listed_primes() const;

    // G(p^k), k >= 0
    T prime_power(std::uint64_t p, unsigned k) const;
    T value(const Factorization& f) const;
    T operator()(std::uint64_t n) const { return value(factorize(n)); }

    // Default is ZeroOnPrimes, so G(p) = 0 for all but finitely many p.
    bool zero_default() const { return std::holds_alternative<ZeroOnPrimes>(default_); }

private:
    std::map<std::uint64_t, PrimeEntry<T>> primes_;
    DefaultRule default_ = ZeroOnPrimes{};
};

template <class T>
T value_at(const CoefficientSpec<T>& g, std::uint64_t n) { return g(n); }

template <class T> unsigned cm_index(const CoefficientSpec<T>& g, std::uint64_t p);
template <class T> unsigned transparency_index(const CoefficientSpec<T>& g, std::uint64_t p);

enum class PrimeClass { NotBad, SimplyBad, HyperBad, SimplyTransparent, HyperTransparent };
const char* to_string(PrimeClass c);

struct PrimeClassification {
    std::uint64_t p = 0;
    unsigned w = 0;  // kInfinite for infinity
    unsigned v = 0;
    PrimeClass cls = PrimeClass::NotBad;

    bool bad() const { return cls != PrimeClass::NotBad; }
    bool transparent() const { return cls == PrimeClass::SimplyTransparent || cls == PrimeClass::HyperTransparent; }
    bool hyper() const { return cls == PrimeClass::HyperBad || cls == PrimeClass::HyperTransparent; }
    bool simply_bad() const { return cls == PrimeClass::SimplyBad || cls == PrimeClass::SimplyTransparent; }
};

struct Conductors {
    std::uint64_t N = 1;
    std::uint64_t N_T = 1;
    std::vector<PrimeClassification> bad_primes;          // listed primes only
    std::vector<PrimeClassification> transparent_primes;  // listed primes only
    std::string equality_regime;                          // "exact" or "tolerance 1e-12"
    bool unlisted_hypertransparent = false;               // OneEverywhere default
};

template <class T> PrimeClassification classify_prime(const CoefficientSpec<T>& g, std::uint64_t p);
template <class T> Conductors conductors(const CoefficientSpec<T>& g);

enum class FactorKind { E, U, C, D };

template <class T> T finite_factor(FactorKind kind, const CoefficientSpec<T>& g, std::uint64_t a);
// The divisor-sum definitions; same values, used as an oracle.
template <class T> T finite_factor_divisor_form(FactorKind kind, const CoefficientSpec<T>& g, std::uint64_t a);

// Local Euler factor E_{p,G}(a) with v = v_p(a), in three equivalent forms:
// 0: sum up to K = v + 4, 1: sum up to the vertical limit v + 1, 2: telescoped.
template <class T> T local_euler_factor(const CoefficientSpec<T>& g, std::uint64_t p, unsigned v, int form = 2);

struct RamanujanFactorization {
    std::uint64_t h = 1;        // primes with infinite cm index that are bad
    std::uint64_t t = 1;        // simply transparent primes
    std::uint64_t a_tilde = 1;  // the rest
};

template <class T> RamanujanFactorization ramanujan_factorization(const CoefficientSpec<T>& g, std::uint64_t a);

}  // namespace ramexp
