#include "ramexp/clouds.hpp"

#include <algorithm>
#include <set>

#include "ramexp/ramanujan.hpp"

namespace ramexp {

namespace {

template <class T>
bool close(const T& a, const T& b) {
    if constexpr (NumericMode<T>::exact) return a == b;
    else {
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        return std::abs(a - b) <= kCloudTolerance * scale;
    }
}

template <class T>
bool vanishes(const T& a) { return close(a, from_int<T>(0)); }

std::uint64_t max_power_index(std::uint64_t p, std::uint64_t bound) {
    // largest v >= 1 with p^(v-1) <= bound
    unsigned v = 1;
    std::uint64_t pk = 1;
    while (pk <= bound / p) {
        pk *= p;
        ++v;
    }
    return v;
}

}  // namespace

template <class T>
CoefficientSpec<T> canonical_coefficient(const TabulatedFunction<T>& F, std::uint64_t q_max) {
    if (!close(F(1), from_int<T>(1))) throw NotMultiplicative("canonical coefficient needs F(1) = 1");
    std::uint64_t witness = 0;
    if (!is_multiplicative(F, &witness))
        throw NotMultiplicative("F is not multiplicative on its domain (fails at n = " + std::to_string(witness) + ")");
    std::uint64_t A = std::min(q_max, F.a_max());
    std::map<std::uint64_t, PrimeEntry<T>> entries;
    for (std::uint32_t p : default_sieve().primes()) {
        if (p > A) break;
        std::uint64_t V = max_power_index(p, A);
        std::vector<T> vals;
        bool nonzero = false;
        // running sum of F'(p^K) / p^K for K < v
        T acc = from_int<T>(0);
        T prev = from_int<T>(1);  // F(p^(K-1))
        std::uint64_t pk = 1;
        for (std::uint64_t v = 1; v <= V; ++v) {
            std::uint64_t K = v - 1;
            T fprime = (K == 0) ? from_int<T>(1) : T(F(pk) - prev);
            if (K > 0) prev = F(pk);
            acc += fprime / from_int<T>(static_cast<long long>(pk));
            T gv = from_int<T>(1) - acc;
            nonzero |= !is_zero(gv);
            vals.push_back(gv);
            if (v < V) pk *= p;
        }
        if (nonzero) entries.emplace(p, PrimeEntry<T>{std::move(vals), ZeroTail{}});
    }
    return CoefficientSpec<T>(std::move(entries), ZeroOnPrimes{});
}

template <class T>
const T& HildebrandCoefficient<T>::at(std::uint64_t n) const {
    auto it = values.find(n);
    if (it == values.end()) throw DomainError("Hildebrand coefficient missing at " + std::to_string(n));
    return it->second;
}

namespace {

// c_{d rad d}(q) for d | q, read off the factorizations.
std::int64_t ramsum_square_full(const Factorization& d, const Factorization& q) {
    std::int64_t c = 1;
    for (const auto& pp : d.factors) {
        c *= ramanujan_sum_prime_power(pp.p, pp.e + 1, valuation(pp.p, q));
        if (c == 0) return 0;
    }
    return c;
}

std::vector<Factorization> factored_divisors(const Factorization& n) {
    std::vector<Factorization> out{Factorization{}};
    for (const auto& pp : n.factors) {
        std::size_t base = out.size();
        for (unsigned k = 1; k <= pp.e; ++k)
            for (std::size_t i = 0; i < base; ++i) {
                Factorization f = out[i];
                f.n *= checked_pow(pp.p, k);
                f.factors.push_back({pp.p, k});
                out.push_back(std::move(f));
            }
    }
    return out;
}

}  // namespace

template <class T>
HildebrandCoefficient<T> hildebrand_coefficient(const TabulatedFunction<T>& F, std::uint64_t q_max) {
    HildebrandCoefficient<T> hi;
    hi.q_max = std::min(q_max, F.a_max());
    for (std::uint64_t q = 1; q <= hi.q_max; ++q) {
        Factorization fq = factorize(q);
        T s = F(q);
        for (const Factorization& d : factored_divisors(fq)) {
            if (d.n == q) continue;
            std::int64_t c = ramsum_square_full(d, fq);
            if (c) s -= hi.values.at(checked_mul(d.n, radical(d))) * from_int<T>(c);
        }
        // c_{q rad q}(q) = q mu(rad q)
        long long den = static_cast<long long>(q) * ((fq.factors.size() % 2) ? -1 : 1);
        hi.values.emplace(checked_mul(q, radical(fq)), s / from_int<T>(den));
    }
    return hi;
}

template <class T>
T hildebrand_reconstruct(const HildebrandCoefficient<T>& hi, std::uint64_t a) {
    Factorization fa = factorize(a);
    T s = from_int<T>(0);
    for (const Factorization& q : factored_divisors(fa)) {
        std::int64_t c = ramsum_square_full(q, fa);
        const T& h = hi.at(checked_mul(q.n, radical(q)));
        if (c) s += h * from_int<T>(c);
    }
    return s;
}

template <class T>
CmCloudResult<T> cm_cloud_coefficient(const TabulatedFunction<T>& F, double tolerance) {
    CmCloudResult<T> out;
    const T f1 = F(1);
    if (is_zero(f1)) {
        out.reason = "F(1) = 0, so R_G(1) = F(1) cannot hold for completely multiplicative G";
        return out;
    }
    auto Fp = eratosthenes_transform(F);
    const std::uint64_t A = F.a_max();
    auto h = [&](std::uint64_t n) { return T(Fp(n) / f1); };
    for (std::uint64_t n = 2; n <= A; ++n) {
        Factorization fn = factorize(n);
        if (fn.factors.size() == 1 && fn.factors[0].e == 1) continue;
        T prod = from_int<T>(1);
        for (const auto& pp : fn.factors) prod *= ipow(h(pp.p), pp.e);
        if (!close(prod, h(n))) {
            out.reason = "F'/F(1) is not completely multiplicative (fails at n = " + std::to_string(n) + ")";
            return out;
        }
    }

    std::map<std::uint64_t, PrimeEntry<T>> entries;
    std::uint64_t support_product = 1;
    bool product_fits = true;
    for (std::uint32_t p : default_sieve().primes()) {
        if (p > A) break;
        T g = h(p) / from_int<T>(p);
        if (is_zero(g)) continue;
        entries.emplace(p, PrimeEntry<T>{{g}, GeometricTail<T>{g}});
        if (support_product > A / p) product_fits = false;
        else support_product *= p;
    }

    // partial sums of F'(q) mu(q) / q, expected to tend to F(1)^2
    const T target = f1 * f1;
    std::vector<TracePoint> trace;
    T acc = from_int<T>(0);
    auto sched = geometric_schedule(1, double(A), 1.25);
    std::size_t si = 0;
    for (std::uint64_t q = 1; q <= A; ++q) {
        int mu = mobius(q);
        if (mu) acc += Fp(q) * from_int<T>(mu) / from_int<T>(static_cast<long long>(q));
        while (si < sched.size() && std::uint64_t(sched[si]) == q) trace.push_back({sched[si++], to_complex(acc)});
    }
    out.coprime_sum = to_complex(acc);
    if constexpr (NumericMode<T>::exact) {
        if (product_fits) {
            // every square-free product of support primes lies in the domain
            out.convergence_check = "exact";
            if (acc != target) {
                out.reason = "sum of F'(q) mu(q)/q is " + to_string(acc) + ", not F(1)^2";
                return out;
            }
            out.coefficient = CoefficientSpec<T>(std::move(entries), ZeroOnPrimes{});
            return out;
        }
    }
    out.convergence_check = "heuristic";
    LimitOptions opt;
    opt.cauchy_tol = tolerance;
    Verdict v = judge_trace(trace, opt);
    double scale = std::max(1.0, magnitude(target));
    if (v.kind != Verdict::Kind::Converged || std::abs(to_complex(acc) - to_complex(target)) > tolerance * scale) {
        out.reason = "sum of F'(q) mu(q)/q does not settle at F(1)^2 on the domain (verdict " +
                     std::string(to_string(v.kind)) + ")";
        return out;
    }
    out.coefficient = CoefficientSpec<T>(std::move(entries), ZeroOnPrimes{});
    return out;
}

template <class T>
OpacityCore<T>::OpacityCore(std::uint64_t n_t, std::map<std::uint64_t, T> prime_values, DefaultRule rule)
    : n_t_(n_t), primes_(std::move(prime_values)), rule_(rule) {
    if (std::holds_alternative<OneEverywhere>(rule_))
        throw PreconditionError("finitely many transparent primes",
                                "OneEverywhere default gives infinitely many transparent primes");
}

template <class T>
T OpacityCore<T>::at_prime(std::uint64_t p) const {
    auto it = primes_.find(p);
    if (it != primes_.end()) return it->second;
    // unlisted primes are never transparent, so H(p) = G(p)
    CoefficientSpec<T> probe({}, rule_);
    return probe.prime_power(p, 1);
}

template <class T>
T OpacityCore<T>::operator()(std::uint64_t q) const {
    Factorization f = factorize(q);
    T r = from_int<T>(1);
    for (const auto& pp : f.factors) {
        if (pp.e > 1) return from_int<T>(0);
        r *= at_prime(pp.p);
    }
    return r;
}

template <class T>
std::map<std::uint64_t, T> OpacityCore<T>::tabulate(std::uint64_t q_max) const {
    std::map<std::uint64_t, T> out;
    for (std::uint64_t q = 1; q <= q_max; ++q)
        if (mobius(q) != 0) out.emplace(q, (*this)(q));
    return out;
}

template <class T>
CoefficientSpec<T> OpacityCore<T>::as_spec() const {
    if (!finite_support()) throw DomainError("opacity core with a nonzero default rule has no finite spec");
    std::map<std::uint64_t, PrimeEntry<T>> entries;
    for (const auto& [p, v] : primes_)
        if (!is_zero(v)) entries.emplace(p, PrimeEntry<T>{{v}, ZeroTail{}});
    return CoefficientSpec<T>(std::move(entries), ZeroOnPrimes{});
}

template <class T>
OpacityCore<T> opacity_core(const CoefficientSpec<T>& g) {
    if (std::holds_alternative<OneEverywhere>(g.default_rule()))
        throw PreconditionError("finitely many transparent primes",
                                "OneEverywhere default gives infinitely many transparent primes");
    Conductors cd = conductors(g);
    std::map<std::uint64_t, T> vals;
    for (std::uint64_t p : g.listed_primes()) {
        PrimeClassification pc = classify_prime(g, p);
        if (pc.cls == PrimeClass::HyperTransparent) vals.emplace(p, from_int<T>(1));
        else vals.emplace(p, g.prime_power(p, pc.v + 1));
    }
    return OpacityCore<T>(cd.N_T, std::move(vals), g.default_rule());
}

template <class T>
std::variant<SemiMultiplicativeForm<T>, NotSemiMultiplicative> selberg_decompose(const TabulatedFunction<T>& F) {
    const std::uint64_t A = F.a_max();
    std::uint64_t aF = 0;
    for (std::uint64_t n = 1; n <= A; ++n)
        if (!vanishes(F(n))) {
            aF = n;
            break;
        }
    if (aF == 0) return NotSemiMultiplicative{"F vanishes on the whole domain", 0, 0};
    for (std::uint64_t n = aF + 1; n <= A; ++n)
        if (n % aF != 0 && !vanishes(F(n)))
            return NotSemiMultiplicative{"F(" + std::to_string(n) + ") != 0 although " + std::to_string(aF) +
                                             " does not divide it",
                                         aF, n};
    SemiMultiplicativeForm<T> form;
    form.a_F = aF;
    form.c = F(aF);
    form.M = TabulatedFunction<T>::generate(A / aF, [&](std::uint64_t n) { return T(F(aF * n) / form.c); });
    for (std::uint64_t n = 2; n <= form.M.a_max(); ++n) {
        Factorization fn = factorize(n);
        if (fn.factors.size() < 2) continue;
        std::uint64_t m = checked_pow(fn.factors[0].p, fn.factors[0].e);
        T prod = from_int<T>(1);
        for (const auto& pp : fn.factors) prod *= form.M(checked_pow(pp.p, pp.e));
        if (!close(prod, form.M(n)))
            return NotSemiMultiplicative{"M_F(mn) != M_F(m) M_F(n) for coprime m = " + std::to_string(m) +
                                             ", n = " + std::to_string(n / m),
                                         m, n / m};
    }
    // product expression over primes, checked on every a in the domain
    Factorization fa_F = factorize(aF);
    for (std::uint64_t a = 1; a <= A; ++a) {
        Factorization fa = factorize(a);
        std::set<std::uint64_t> ps;
        for (const auto& pp : fa.factors) ps.insert(pp.p);
        for (const auto& pp : fa_F.factors) ps.insert(pp.p);
        T prod = form.c;
        if (a % aF != 0) prod = from_int<T>(0);
        else
            for (std::uint64_t p : ps) {
                unsigned diff = valuation(p, fa) - valuation(p, fa_F);
                prod *= F(checked_mul(aF, checked_pow(p, diff))) / form.c;
            }
        if (!close(prod, F(a)))
            return NotSemiMultiplicative{"Selberg factor expression fails at a = " + std::to_string(a), 0, a};
    }
    return form;
}

template <class T>
Reconstruction<T> reconstruct_from_core(const SemiMultiplicativeForm<T>& F, const OpacityCore<T>& H, std::uint64_t N,
                                        std::uint64_t q_max) {
    if (N == 0 || N % F.a_F != 0) throw PreconditionError("a_F | N", "threshold a_F must divide N");
    if (!H.finite_support())
        throw PreconditionError("H finitely supported", "reconstruction needs H with finite support");
    Reconstruction<T> out;
    const std::uint64_t D = std::min(q_max, F.M.a_max());
    const TabulatedFunction<T> M = TabulatedFunction<T>::generate(D, [&](std::uint64_t n) { return F.M(n); });
    const CoefficientSpec<T> GM = canonical_coefficient(M, D);
    const auto Mp = eratosthenes_transform(M);
    const T one = from_int<T>(1);

    // relative simply bad primes of (M, H)
    for (const auto& [p, hp] : H.prime_values()) {
        if (!abs_between(hp, 1, static_cast<long long>(p))) continue;
        bool cm_inf = true;
        for (std::uint64_t pk = p, k = 1; pk <= D; ++k) {
            if (!close(Mp(pk), ipow(Mp(p), static_cast<unsigned>(k)))) {
                cm_inf = false;
                break;
            }
            if (pk > D / p) break;
            pk *= p;
        }
        bool matches = p <= D && close(hp, T((M(p) - one) / from_int<T>(static_cast<long long>(p))));
        if (!cm_inf || !matches) {
            out.relative_simply_bad.push_back(p);
            if (N % p != 0)
                throw PreconditionError("relative simply bad primes divide N",
                                        "relative simply bad prime " + std::to_string(p) + " does not divide N");
        }
    }

    // finite support: both analytic hypotheses reduce to finite products.
    // Each transparent p contributes p^v (1 - H(p)) to R_G(N_T), hence the a_F.
    out.analytic_checks = "exact";
    T total = one;
    for (const auto& [p, hp] : H.prime_values()) total *= one - hp;
    if (!close(T(total * from_int<T>(static_cast<long long>(F.a_F))), F.c))
        throw PreconditionError("a_F sum H(q)mu(q) = F(a_F)",
                                "a_F times the sum of H(q) mu(q) is " +
                                    to_string(T(total * from_int<T>(static_cast<long long>(F.a_F)))) +
                                    ", expected F(a_F) = " + to_string(F.c));

    std::set<std::uint64_t> primes;
    for (const auto& pp : factorize(F.a_F).factors) primes.insert(pp.p);
    for (const auto& [p, hp] : H.prime_values())
        if (!is_zero(hp)) primes.insert(p);
    for (std::uint64_t p : GM.listed_primes()) primes.insert(p);

    std::map<std::uint64_t, PrimeEntry<T>> entries;
    for (std::uint64_t p : primes) {
        unsigned e = valuation(p, F.a_F);
        T hp = H.at_prime(p);
        std::vector<T> vals(e, one);
        std::uint64_t L = GM.listed(p) ? GM.primes().at(p).values.size() : max_power_index(p, std::max<std::uint64_t>(D, 1));
        for (std::uint64_t v = 1; v <= L; ++v) vals.push_back(hp + (one - hp) * GM.prime_power(p, unsigned(v)));

        PrimeEntry<T> entry;
        bool all_zero = e == 0 && std::all_of(vals.begin(), vals.end(), [](const T& x) { return is_zero(x); });
        if (all_zero) continue;
        if (close(hp, one)) {
            entry.values = {one};
            entry.tail = OneTail{};
        } else {
            bool cm = e == 0 && !is_zero(vals[0]);
            for (std::size_t k = 1; cm && k < vals.size(); ++k)
                cm = close(vals[k], ipow(vals[0], unsigned(k + 1)));
            entry.values = vals;
            if (cm) entry.tail = GeometricTail<T>{vals[0]};
            else if (is_zero(vals.back())) entry.tail = ZeroTail{};
            else entry.tail = GeometricTail<T>{one};
        }
        entries.emplace(p, std::move(entry));
    }
    out.G = CoefficientSpec<T>(std::move(entries), ZeroOnPrimes{});

    // R_G = F where both sides are known
    out.verified_up_to = F.a_F * D;
    out.verified = true;
    for (std::uint64_t a = 1; a <= out.verified_up_to; ++a) {
        T fa = (a % F.a_F == 0) ? T(F.c * M(a / F.a_F)) : from_int<T>(0);
        if (!close(exact_sum(out.G, r_series(a)), fa)) {
            out.verified = false;
            out.first_mismatch = a;
            break;
        }
    }
    return out;
}

const char* to_string(CloudVerdict v) {
    switch (v) {
        case CloudVerdict::InNullCloud: return "in_null_cloud";
        case CloudVerdict::NotInNullCloud: return "not_in_null_cloud";
        case CloudVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

template <class T>
NullCloudReport null_cloud_test(const CoefficientSpec<T>& g, std::uint64_t x_budget, double tolerance) {
    NullCloudReport rep;
    Conductors cd = conductors(g);
    rep.N = cd.N;
    if (g.zero_default()) {
        T s = exact_sum(g, s_series(cd.N));
        rep.exact = true;
        rep.coprime_value = to_complex(s);
        bool zero = NumericMode<T>::exact ? is_zero(s) : std::abs(to_complex(s)) <= tolerance;
        rep.verdict = zero ? CloudVerdict::InNullCloud : CloudVerdict::NotInNullCloud;
        for (std::uint64_t a = 1; a <= 30; ++a) rep.sampled_R.emplace_back(a, to_complex(exact_sum(g, r_series(a))));
    } else {
        auto sched = geometric_schedule(16, double(std::max<std::uint64_t>(x_budget, 64)), 1.25);
        auto tr = estimate_limit(g, s_series(cd.N), sched);
        rep.coprime_value = to_complex(tr.checkpoints.back().second);
        if (tr.verdict.kind != Verdict::Kind::Converged) {
            rep.verdict = CloudVerdict::Inconclusive;
            rep.note = std::string("coprime series verdict: ") + to_string(tr.verdict.kind);
        } else {
            double m = std::abs(tr.verdict.value);
            rep.coprime_value = tr.verdict.value;
            if (m + tr.verdict.error_bound <= tolerance) rep.verdict = CloudVerdict::InNullCloud;
            else if (m - tr.verdict.error_bound > 10 * tolerance) rep.verdict = CloudVerdict::NotInNullCloud;
            else rep.verdict = CloudVerdict::Inconclusive;
            rep.note = "heuristic estimate";
        }
        for (std::uint64_t a = 1; a <= 30; ++a) {
            auto ta = estimate_limit(g, r_series(a), sched);
            rep.sampled_R.emplace_back(a, ta.verdict.kind == Verdict::Kind::Converged
                                              ? ta.verdict.value
                                              : Complex(std::nan(""), std::nan("")));
        }
    }
    bool all_zero = true;
    for (const auto& [a, v] : rep.sampled_R)
        if (!(std::abs(v) <= tolerance)) all_zero = false;
    if (rep.verdict == CloudVerdict::InNullCloud) rep.sample_consistent = all_zero;
    else if (rep.verdict == CloudVerdict::NotInNullCloud && cd.N_T <= 30) rep.sample_consistent = !all_zero;
    return rep;
}

template <class T>
T euler_selberg_local(const CoefficientSpec<T>& g, const PrimeClassification& pc, unsigned K) {
    const std::uint64_t p = pc.p;
    const T one = from_int<T>(1);
    T s = from_int<T>(0);
    std::uint64_t pk = 1;
    if (pc.cls == PrimeClass::HyperTransparent) {
        for (unsigned k = 0; k <= K; ++k, pk *= p) s += from_int<T>(static_cast<long long>(pk));
        return s;
    }
    unsigned shift = (pc.cls == PrimeClass::SimplyTransparent) ? pc.v : 0;
    for (unsigned k = 0; k <= K; ++k) {
        s += from_int<T>(static_cast<long long>(pk)) *
             (g.prime_power(p, shift + k) - g.prime_power(p, shift + k + 1));
        if (k < K) pk = checked_mul(pk, p);
    }
    return s / (one - g.prime_power(p, shift + 1));
}

template <class T>
EulerSelbergValue<T> euler_selberg_value(const CoefficientSpec<T>& g, std::uint64_t a, std::optional<T> base,
                                         std::uint64_t x_budget) {
    EulerSelbergValue<T> out;
    Conductors cd = conductors(g);
    out.N_T = cd.N_T;
    out.parts = ramanujan_factorization(g, a);

    if (base) {
        out.base = *base;
        out.base_source = "supplied";
    } else if (g.zero_default()) {
        out.base = exact_sum(g, r_series(cd.N_T));
        out.base_source = "exact";
    } else {
        if constexpr (NumericMode<T>::exact) {
            throw FinitenessNotProvable("base R_G(N_T) needs an estimate, which exact mode cannot supply");
        } else {
            auto sched = geometric_schedule(16, double(std::max<std::uint64_t>(x_budget, 64)), 1.25);
            auto tr = estimate_limit(g, s_series(radical(cd.N_T)), sched);
            if (tr.verdict.kind != Verdict::Kind::Converged)
                throw FinitenessNotProvable("S_G(rad N_T) did not settle; base unavailable");
            out.base = finite_factor(FactorKind::E, g, cd.N_T) * T(tr.verdict.value);
            out.base_source = "estimated: E_G(N_T) S_G(rad N_T)";
        }
    }

    // explicit product
    if (a % cd.N_T != 0) {
        out.value = from_int<T>(0);
    } else {
        T v = out.base;
        for (const auto& pp : factorize(a).factors) {
            unsigned K = pp.e - valuation(pp.p, cd.N_T);
            if (K == 0) continue;
            v *= euler_selberg_local(g, classify_prime(g, pp.p), K);
        }
        out.value = v;
    }

    // factorized form
    const auto& pr = out.parts;
    std::uint64_t rad_nt = radical(cd.N_T), rad_t = radical(pr.t);
    T f = finite_factor(FactorKind::D, g, pr.h) * finite_factor(FactorKind::C, g, rad_nt / rad_t) *
          finite_factor(FactorKind::E, g, pr.t) / finite_factor(FactorKind::E, g, cd.N_T) *
          finite_factor(FactorKind::E, g, pr.a_tilde) / finite_factor(FactorKind::C, g, pr.a_tilde) * out.base;
    out.factorized = f;
    return out;
}

#define RAMEXP_INSTANTIATE(T)                                                                                    \
    template CoefficientSpec<T> canonical_coefficient(const TabulatedFunction<T>&, std::uint64_t);               \
    template struct HildebrandCoefficient<T>;                                                                    \
    template HildebrandCoefficient<T> hildebrand_coefficient(const TabulatedFunction<T>&, std::uint64_t);        \
    template T hildebrand_reconstruct(const HildebrandCoefficient<T>&, std::uint64_t);                          \
    template CmCloudResult<T> cm_cloud_coefficient(const TabulatedFunction<T>&, double);                         \
    template class OpacityCore<T>;                                                                               \
    template OpacityCore<T> opacity_core(const CoefficientSpec<T>&);                                             \
    template std::variant<SemiMultiplicativeForm<T>, NotSemiMultiplicative> selberg_decompose(                  \
        const TabulatedFunction<T>&);                                                                            \
    template Reconstruction<T> reconstruct_from_core(const SemiMultiplicativeForm<T>&, const OpacityCore<T>&,    \
                                                     std::uint64_t, std::uint64_t);                              \
    template NullCloudReport null_cloud_test(const CoefficientSpec<T>&, std::uint64_t, double);                  \
    template T euler_selberg_local(const CoefficientSpec<T>&, const PrimeClassification&, unsigned);            \
    template EulerSelbergValue<T> euler_selberg_value(const CoefficientSpec<T>&, std::uint64_t, std::optional<T>, \
                                                      std::uint64_t);

RAMEXP_INSTANTIATE(Complex)
RAMEXP_INSTANTIATE(QComplex)

}  // namespace ramexp
