#include "ramexp/coefficients.hpp"

#include "ramexp/ramanujan.hpp"

namespace ramexp {

namespace {

template <class T>
T power_law_base(const PowerLaw& rule, std::uint64_t p) {
    if constexpr (NumericMode<T>::exact) {
        auto s = static_cast<unsigned>(rule.s.real());
        T b(Rational(BigInt(1), boost::multiprecision::pow(BigInt(p), s)));
        return rule.negate ? T(-b) : b;
    } else {
        Complex b = std::pow(Complex(double(p), 0.0), -rule.s);
        return rule.negate ? -b : b;
    }
}

template <class T>
bool is_one(const T& x) { return same_value(x, from_int<T>(1)); }

}  // namespace

template <class T>
CoefficientSpec<T>::CoefficientSpec(std::map<std::uint64_t, PrimeEntry<T>> primes, DefaultRule rule)
    : primes_(std::move(primes)), default_(rule) {
    for (const auto& [p, entry] : primes_) {
        if (!is_prime(p)) throw DomainError("spec lists non-prime " + std::to_string(p));
        if (entry.values.empty()) throw DomainError("prime " + std::to_string(p) + " has an empty value table");
    }
    if (const auto* pl = std::get_if<PowerLaw>(&default_)) {
        if (!(pl->s.real() > 0)) throw DomainError("power-law default needs Re s > 0");
        if constexpr (NumericMode<T>::exact) {
            double r = pl->s.real();
            if (pl->s.imag() != 0 || r != std::floor(r) || r > 64)
                throw DomainError("power-law default in exact mode needs a positive integer s");
        }
    }
}

template <class T>
std::vector<std::uint64_t> CoefficientSpec<T>::listed_primes() const {
    std::vector<std::uint64_t> out;
    for (const auto& kv : primes_) out.push_back(kv.first);
    return out;
}

template <class T>
T CoefficientSpec<T>::prime_power(std::uint64_t p, unsigned k) const {
    if (k == 0) return from_int<T>(1);
    auto it = primes_.find(p);
    if (it == primes_.end()) {
        return std::visit(
            [&](const auto& rule) -> T {
                using R = std::decay_t<decltype(rule)>;
                if constexpr (std::is_same_v<R, ZeroOnPrimes>) return from_int<T>(0);
                else if constexpr (std::is_same_v<R, OneEverywhere>) return from_int<T>(1);
                else return ipow(power_law_base<T>(rule, p), k);
            },
            default_);
    }
    const auto& vals = it->second.values;
    if (k <= vals.size()) return vals[k - 1];
    unsigned K = static_cast<unsigned>(vals.size());
    return std::visit(
        [&](const auto& tail) -> T {
            using R = std::decay_t<decltype(tail)>;
            if constexpr (std::is_same_v<R, ZeroTail>) return from_int<T>(0);
            else if constexpr (std::is_same_v<R, OneTail>) return from_int<T>(1);
            else return vals[K - 1] * ipow(tail.ratio, k - K);
        },
        it->second.tail);
}

template <class T>
T CoefficientSpec<T>::value(const Factorization& f) const {
    T r = from_int<T>(1);
    for (const auto& pp : f.factors) {
        r *= prime_power(pp.p, pp.e);
        if constexpr (NumericMode<T>::exact)
            if (is_zero(r)) break;
    }
    return r;
}

template <class T>
unsigned cm_index(const CoefficientSpec<T>& g, std::uint64_t p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    auto it = g.primes().find(p);
    if (it == g.primes().end()) return kInfinite;  // every default rule is completely multiplicative
    const auto& vals = it->second.values;
    const T& gp = vals[0];
    unsigned K = static_cast<unsigned>(vals.size());
    T pw = gp;
    for (unsigned k = 2; k <= K; ++k) {
        pw *= gp;
        if (!same_value(vals[k - 1], pw)) return k - 1;
    }
    // table agrees with G(p)^k up to K; the tail decides the rest
    return std::visit(
        [&](const auto& tail) -> unsigned {
            using R = std::decay_t<decltype(tail)>;
            if constexpr (std::is_same_v<R, ZeroTail>) {
                return is_zero(gp) ? kInfinite : K;
            } else if constexpr (std::is_same_v<R, OneTail>) {
                if (is_one(gp)) return kInfinite;
                return is_one(T(pw * gp)) ? K + 1 : K;
            } else {
                if (is_zero(gp) || same_value(tail.ratio, gp)) return kInfinite;
                return K;
            }
        },
        it->second.tail);
}

template <class T>
unsigned transparency_index(const CoefficientSpec<T>& g, std::uint64_t p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    auto it = g.primes().find(p);
    if (it == g.primes().end())
        return std::holds_alternative<OneEverywhere>(g.default_rule()) ? kInfinite : 0;
    const auto& vals = it->second.values;
    for (unsigned k = 1; k <= vals.size(); ++k)
        if (!is_one(vals[k - 1])) return k - 1;
    unsigned K = static_cast<unsigned>(vals.size());
    return std::visit(
        [&](const auto& tail) -> unsigned {
            using R = std::decay_t<decltype(tail)>;
            if constexpr (std::is_same_v<R, ZeroTail>) return K;
            else if constexpr (std::is_same_v<R, OneTail>) return kInfinite;
            else return is_one(tail.ratio) ? kInfinite : K;
        },
        it->second.tail);
}

const char* to_string(PrimeClass c) {
    switch (c) {
        case PrimeClass::NotBad: return "not_bad";
        case PrimeClass::SimplyBad: return "simply_bad";
        case PrimeClass::HyperBad: return "hyperbad";
        case PrimeClass::SimplyTransparent: return "simply_transparent";
        case PrimeClass::HyperTransparent: return "hypertransparent";
    }
    return "?";
}

template <class T>
PrimeClassification classify_prime(const CoefficientSpec<T>& g, std::uint64_t p) {
    PrimeClassification c;
    c.p = p;
    c.w = cm_index(g, p);
    c.v = transparency_index(g, p);
    T gp = g.prime_power(p, 1);
    long long pl = static_cast<long long>(p);
    if (is_one(gp)) {
        c.cls = (c.w == kInfinite) ? PrimeClass::HyperTransparent : PrimeClass::SimplyTransparent;
    } else if (abs_between(gp, 1, pl)) {
        c.cls = (c.w == kInfinite) ? PrimeClass::HyperBad : PrimeClass::SimplyBad;
    } else {
        c.cls = PrimeClass::NotBad;
    }
    return c;
}

template <class T>
Conductors conductors(const CoefficientSpec<T>& g) {
    Conductors out;
    out.equality_regime = NumericMode<T>::exact ? "exact" : "tolerance 1e-12";
    out.unlisted_hypertransparent = std::holds_alternative<OneEverywhere>(g.default_rule());
    for (std::uint64_t p : g.listed_primes()) {
        PrimeClassification c = classify_prime(g, p);
        if (c.bad()) out.bad_primes.push_back(c);
        if (c.transparent()) out.transparent_primes.push_back(c);
        if (c.simply_bad()) out.N = checked_mul(out.N, checked_pow(p, c.w));
        if (c.cls == PrimeClass::SimplyTransparent) out.N_T = checked_mul(out.N_T, checked_pow(p, c.v));
    }
    return out;
}

template <class T>
T local_euler_factor(const CoefficientSpec<T>& g, std::uint64_t p, unsigned v, int form) {
    T s = from_int<T>(0);
    if (form == 2) {
        std::uint64_t pk = 1;
        for (unsigned K = 0; K <= v; ++K) {
            s += from_int<T>(static_cast<long long>(pk)) * (g.prime_power(p, K) - g.prime_power(p, K + 1));
            if (K < v) pk = checked_mul(pk, p);
        }
        return s;
    }
    unsigned top = (form == 0) ? v + 4 : v + 1;
    for (unsigned K = 0; K <= top; ++K) {
        std::int64_t c = ramanujan_sum_prime_power(p, K, v);
        if (c) s += from_int<T>(c) * g.prime_power(p, K);
    }
    return s;
}

template <class T>
T finite_factor(FactorKind kind, const CoefficientSpec<T>& g, std::uint64_t a) {
    Factorization f = factorize(a);
    T r = from_int<T>(1);
    switch (kind) {
        case FactorKind::E:
            for (const auto& pp : f.factors) r *= local_euler_factor(g, pp.p, pp.e, 2);
            return r;
        case FactorKind::U:
            for (const auto& pp : f.factors) r *= g.prime_power(pp.p, pp.e) - g.prime_power(pp.p, pp.e + 1);
            return r;
        case FactorKind::C:
            for (const auto& pp : f.factors) r *= from_int<T>(1) - g.prime_power(pp.p, 1);
            return r;
        case FactorKind::D:
            // multiplicative in a: local factor sum_k G(p^k) p^k
            for (const auto& pp : f.factors) {
                T loc = from_int<T>(0);
                std::uint64_t pk = 1;
                for (unsigned k = 0; k <= pp.e; ++k) {
                    loc += g.prime_power(pp.p, k) * from_int<T>(static_cast<long long>(pk));
                    if (k < pp.e) pk *= pp.p;
                }
                r *= loc;
            }
            return r;
    }
    return r;
}

template <class T>
T finite_factor_divisor_form(FactorKind kind, const CoefficientSpec<T>& g, std::uint64_t a) {
    Factorization f = factorize(a);
    T s = from_int<T>(0);
    switch (kind) {
        case FactorKind::E: {
            // d | a rad a, evaluated through the factorization of a rad a
            Factorization ar = f;
            ar.n = checked_mul(a, radical(f));
            for (auto& pp : ar.factors) ++pp.e;
            for (std::uint64_t d : divisors(ar)) {
                Factorization fd;
                fd.n = d;
                std::uint64_t t = d;
                for (const auto& pp : ar.factors) {
                    unsigned e = 0;
                    while (t % pp.p == 0) { t /= pp.p; ++e; }
                    if (e) fd.factors.push_back({pp.p, e});
                }
                std::int64_t c = ramanujan_sum(fd, a);
                if (c) s += g.value(fd) * from_int<T>(c);
            }
            return s;
        }
        case FactorKind::U:
            for (std::uint64_t d : divisors(f)) {
                int mu = mobius(d);
                if (mu) s += from_int<T>(mu) * g(checked_mul(d, a));
            }
            return s;
        case FactorKind::C:
            for (std::uint64_t d : divisors(f)) {
                int mu = mobius(d);
                if (mu) s += from_int<T>(mu) * g(d);
            }
            return s;
        case FactorKind::D:
            for (std::uint64_t d : divisors(f)) s += g(d) * from_int<T>(static_cast<long long>(d));
            return s;
    }
    return s;
}

template <class T>
RamanujanFactorization ramanujan_factorization(const CoefficientSpec<T>& g, std::uint64_t a) {
    RamanujanFactorization r;
    for (const auto& pp : factorize(a).factors) {
        std::uint64_t pe = checked_pow(pp.p, pp.e);
        PrimeClassification c = classify_prime(g, pp.p);
        if (c.bad() && c.hyper()) r.h *= pe;
        else if (c.cls == PrimeClass::SimplyTransparent) r.t *= pe;
        else r.a_tilde *= pe;
    }
    return r;
}

#define RAMEXP_INSTANTIATE(T)                                                                   \
    template class CoefficientSpec<T>;                                                          \
    template unsigned cm_index(const CoefficientSpec<T>&, std::uint64_t);                       \
    template unsigned transparency_index(const CoefficientSpec<T>&, std::uint64_t);             \
    template PrimeClassification classify_prime(const CoefficientSpec<T>&, std::uint64_t);      \
    template Conductors conductors(const CoefficientSpec<T>&);                                  \
    template T local_euler_factor(const CoefficientSpec<T>&, std::uint64_t, unsigned, int);     \
    template T finite_factor(FactorKind, const CoefficientSpec<T>&, std::uint64_t);             \
    template T finite_factor_divisor_form(FactorKind, const CoefficientSpec<T>&, std::uint64_t); \
    template RamanujanFactorization ramanujan_factorization(const CoefficientSpec<T>&, std::uint64_t);

RAMEXP_INSTANTIATE(Complex)
RAMEXP_INSTANTIATE(QComplex)

}  // namespace ramexp
