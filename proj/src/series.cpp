#include "ramexp/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ramexp/ramanujan.hpp"

namespace ramexp {

std::string describe(const SeriesParams& sp) {
    std::ostringstream os;
    switch (sp.kind) {
        case SeriesKind::R: os << "R(" << sp.a << ")"; break;
        case SeriesKind::S: os << "S(" << sp.b << ")"; break;
        case SeriesKind::L: os << "L(" << sp.c << ")"; break;
        case SeriesKind::F: os << "F(" << sp.a << "," << sp.b << "," << sp.c << ")"; break;
    }
    return os.str();
}

std::uint64_t scan_budget() { return std::min<std::uint64_t>(default_sieve().bound(), 10'000'000); }

namespace {

unsigned plain_valuation(std::uint64_t p, std::uint64_t n) {
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

void check_params(const SeriesParams& sp) {
    if (sp.a == 0 || sp.b == 0 || sp.c == 0) throw DomainError("series arguments must be >= 1");
}

// Evaluates G(cq) c_q(a) [(q,b)=1] with c pre-factored.
template <class T>
struct TermContext {
    const CoefficientSpec<T>& g;
    SeriesParams sp;
    Factorization cfac;

    TermContext(const CoefficientSpec<T>& g_, const SeriesParams& sp_) : g(g_), sp(sp_) {
        check_params(sp);
        cfac = factorize(sp.c);
    }

    T operator()(const Factorization& q) const {
        std::int64_t c = 1;
        for (const auto& pp : q.factors) {
            if (sp.b % pp.p == 0) return from_int<T>(0);
            std::int64_t loc = ramanujan_sum_prime_power(pp.p, pp.e, plain_valuation(pp.p, sp.a));
            if (loc == 0) return from_int<T>(0);
            c *= loc;
        }
        T gv = from_int<T>(c);
        // primes of q, merged with those of c
        for (const auto& pp : q.factors) gv *= g.prime_power(pp.p, pp.e + valuation(pp.p, cfac));
        for (const auto& pp : cfac.factors)
            if (valuation(pp.p, q) == 0) gv *= g.prime_power(pp.p, pp.e);
        return gv;
    }
};

std::uint64_t floor_arg(double x) {
    if (!(x >= 1)) return 0;
    return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

template <class T>
T series_term(const CoefficientSpec<T>& g, const SeriesParams& sp, std::uint64_t q) {
    TermContext<T> ctx(g, sp);
    return ctx(factorize(q));
}

template <class T>
SeriesEvaluator<T>::SeriesEvaluator(const CoefficientSpec<T>& g, SeriesParams sp, std::uint64_t x_max) : sp_(sp) {
    if (x_max > scan_budget())
        throw ResourceError("scan to x = " + std::to_string(x_max) + " exceeds budget " + std::to_string(scan_budget()));
    TermContext<T> ctx(g, sp);
    const Sieve& sv = default_sieve();
    prefix_.reserve(x_max + 1);
    prefix_.push_back(from_int<T>(0));
    T acc = from_int<T>(0);
    for (std::uint64_t q = 1; q <= x_max; ++q) {
        acc += ctx(sv.factorize(q));
        prefix_.push_back(acc);
    }
}

template <class T>
T SeriesEvaluator<T>::at(double x) const {
    std::uint64_t n = floor_arg(x);
    if (n >= prefix_.size()) throw DomainError("evaluator queried beyond its x_max");
    return prefix_[n];
}

template <class T>
T partial_sum(const CoefficientSpec<T>& g, const SeriesParams& sp, double x) {
    if (x < 0) throw DomainError("x must be >= 0");
    std::uint64_t n = floor_arg(x);
    if (x > double(scan_budget())) throw ResourceError("x exceeds scan budget");
    return SeriesEvaluator<T>(g, sp, n).at(x);
}

template <class T>
T exact_sum(const CoefficientSpec<T>& g, const SeriesParams& sp) {
    check_params(sp);
    if (!g.zero_default())
        throw FinitenessNotProvable("default rule is nonzero on unlisted primes; use partial sums and estimate_limit");
    // Euler product over listed primes and primes of c; the vertical limit caps each factor.
    std::vector<std::uint64_t> primes = g.listed_primes();
    for (const auto& pp : factorize(sp.c).factors) primes.push_back(pp.p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    T total = from_int<T>(1);
    for (std::uint64_t p : primes) {
        unsigned ec = plain_valuation(p, sp.c);
        unsigned va = plain_valuation(p, sp.a);
        T loc = g.prime_power(p, ec);
        if (sp.b % p != 0) {
            for (unsigned k = 1; k <= va + 1; ++k) {
                std::int64_t cs = ramanujan_sum_prime_power(p, k, va);
                loc += from_int<T>(cs) * g.prime_power(p, ec + k);
            }
        }
        total *= loc;
        if constexpr (NumericMode<T>::exact)
            if (is_zero(total)) break;
    }
    return total;
}

const char* to_string(Identity id) {
    switch (id) {
        case Identity::SRec: return "S-rec";
        case Identity::RS: return "RS";
        case Identity::RRec: return "R-rec";
        case Identity::LS: return "LS";
        case Identity::LRec: return "L-rec";
        case Identity::LR: return "LR";
        case Identity::FGTransform: return "FGtransform";
    }
    return "?";
}

Identity identity_from_string(const std::string& name) {
    for (Identity id : kAllIdentities)
        if (name == to_string(id)) return id;
    throw DomainError("unknown identity '" + name + "'");
}

namespace {

template <class T>
class EvaluatorCache {
public:
    EvaluatorCache(const CoefficientSpec<T>& g, std::uint64_t x_max) : g_(g), x_max_(x_max) {}

    // F_G(a,b,c)(x)
    T F(std::uint64_t a, std::uint64_t b, std::uint64_t c, double x) {
        auto key = std::make_tuple(a, b, c);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, std::make_unique<SeriesEvaluator<T>>(g_, f_series(a, b, c), x_max_)).first;
        return it->second->at(x);
    }
    T R(std::uint64_t a, double x) { return F(a, 1, 1, x); }
    T S(std::uint64_t b, double x) { return F(1, b, 1, x); }
    T L(std::uint64_t d, double x) { return F(1, 1, d, x); }

private:
    const CoefficientSpec<T>& g_;
    std::uint64_t x_max_;
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, std::unique_ptr<SeriesEvaluator<T>>> cache_;
};

template <class T>
bool infinite_cm_on(const CoefficientSpec<T>& g, std::uint64_t c) {
    for (const auto& pp : factorize(c).factors)
        if (cm_index(g, pp.p) != kInfinite) return false;
    return true;
}

// Divisors of a rad a, as factorizations, without going through the sieve.
std::vector<Factorization> divisors_of_a_rad_a(std::uint64_t a) {
    Factorization fa = factorize(a);
    std::vector<Factorization> out{Factorization{}};
    for (const auto& pp : fa.factors) {
        std::size_t base = out.size();
        for (unsigned k = 1; k <= pp.e + 1; ++k)
            for (std::size_t i = 0; i < base; ++i) {
                Factorization f = out[i];
                f.n = checked_mul(f.n, checked_pow(pp.p, k));
                f.factors.push_back({pp.p, k});
                out.push_back(std::move(f));
            }
    }
    return out;
}

}  // namespace

template <class T>
IdentityResidual identity_residual(Identity id, const CoefficientSpec<T>& g, const IdentityParams& ip,
                                   const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double xm = *std::max_element(xs.begin(), xs.end());
    EvaluatorCache<T> ev(g, floor_arg(xm));

    // side conditions
    switch (id) {
        case Identity::SRec:
            if (gcd(ip.b, ip.c) != 1) throw PreconditionError("(b,c)=1", "S-rec needs (b,c) = 1");
            break;
        case Identity::RRec:
            if (gcd(ip.b, ip.c) != 1) throw PreconditionError("(b,c)=1", "R-rec needs (b,c) = 1");
            if (!infinite_cm_on(g, ip.c)) throw PreconditionError("w_p=inf for p|c", "R-rec needs w_p = inf on primes of c");
            break;
        case Identity::LRec:
            if (!infinite_cm_on(g, ip.c)) throw PreconditionError("w_p=inf for p|c", "L-rec needs w_p = inf on primes of c");
            break;
        case Identity::FGTransform:
            if (ip.p == 0 || !is_prime(ip.p)) throw PreconditionError("p prime", "FGtransform needs a prime p");
            if (ip.a % ip.p == 0 || ip.b % ip.p == 0 || ip.c % ip.p == 0)
                throw PreconditionError("p does not divide abc", "FGtransform needs p not dividing abc");
            if (ip.w == 0) throw PreconditionError("w>=1", "FGtransform needs w >= 1");
            break;
        default: break;
    }

    T delta{};
    if (id == Identity::FGTransform) {
        delta = g.prime_power(ip.p, ip.w) * g.prime_power(ip.p, 1) - g.prime_power(ip.p, ip.w + 1);
        if (is_zero(delta)) throw PreconditionError("Delta!=0", "FGtransform needs Delta = G(p^w)G(p) - G(p^(w+1)) != 0");
    }

    IdentityResidual res;
    for (double x : xs) {
        T lhs{}, rhs = from_int<T>(0);
        switch (id) {
            case Identity::SRec: {
                lhs = ev.S(ip.b, x);
                std::uint64_t bc = checked_mul(ip.b, ip.c);
                for (std::uint64_t d : divisors(ip.c)) {
                    int mu = mobius(d);
                    if (mu) rhs += g(d) * from_int<T>(mu) * ev.S(bc, x / double(d));
                }
                break;
            }
            case Identity::RS: {
                lhs = ev.R(ip.a, x);
                for (const Factorization& d : divisors_of_a_rad_a(ip.a)) {
                    std::int64_t c = ramanujan_sum(d, ip.a);
                    if (c) rhs += g.value(d) * from_int<T>(c) * ev.S(ip.a, x / double(d.n));
                }
                break;
            }
            case Identity::RRec: {
                lhs = ev.R(checked_mul(ip.b, ip.c), x);
                for (std::uint64_t h : divisors(ip.c))
                    rhs += g(h) * from_int<T>(static_cast<long long>(h)) * ev.R(ip.b, x / double(h));
                break;
            }
            case Identity::LS: {
                lhs = ev.L(ip.d, x);
                for (std::uint64_t l : divisors(ip.d)) {
                    int mu = mobius(l);
                    if (mu) rhs += from_int<T>(mu) * g(checked_mul(l, ip.d)) * ev.S(ip.d, x / double(l));
                }
                break;
            }
            case Identity::LRec: {
                lhs = ev.L(checked_mul(ip.b, ip.c), x);
                rhs = g(ip.c) * ev.L(ip.b, x);
                break;
            }
            case Identity::LR: {
                lhs = ev.R(ip.a, x);
                for (std::uint64_t d : divisors(ip.a))
                    rhs += from_int<T>(static_cast<long long>(d)) * ev.L(d, x / double(d));
                break;
            }
            case Identity::FGTransform: {
                lhs = ev.F(ip.a, checked_mul(ip.p, ip.b), ip.c, x);
                std::uint64_t pwc = checked_mul(checked_pow(ip.p, ip.w), ip.c);
                rhs = (g.prime_power(ip.p, 1) * ev.F(ip.a, ip.b, pwc, x) -
                       g.prime_power(ip.p, ip.w + 1) * ev.F(ip.a, ip.b, ip.c, x)) /
                      delta;
                break;
            }
        }
        T diff = lhs - rhs;
        double m = magnitude(diff);
        res.max_abs = std::max(res.max_abs, m);
        if constexpr (NumericMode<T>::exact) {
            if (!is_zero(diff)) res.exact_zero = false;
        } else {
            if (m > 1e-10) res.exact_zero = false;
        }
        ++res.checked;
    }
    return res;
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); }

template <class T>
std::vector<std::uint64_t> cm_primes(const CoefficientSpec<T>& g) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
        if (cm_index(g, p) == kInfinite) out.push_back(p);
    return out;
}

}  // namespace

template <class T>
std::optional<IdentityParams> sample_identity_params(Identity id, const CoefficientSpec<T>& g, std::mt19937_64& rng,
                                                     std::string* why) {
    IdentityParams ip;
    auto coprime_to = [&](std::uint64_t m, std::uint64_t hi) {
        for (;;) {
            std::uint64_t v = draw(rng, 1, hi);
            if (gcd(v, m) == 1) return v;
        }
    };
    auto cm_product = [&](const std::vector<std::uint64_t>& ps) {
        std::uint64_t c = 1;
        for (std::uint64_t p : ps) {
            unsigned e = static_cast<unsigned>(draw(rng, 0, 2));
            if (c * checked_pow(p, e) <= 100) c *= checked_pow(p, e);
        }
        return c;
    };
    switch (id) {
        case Identity::SRec:
            ip.b = draw(rng, 1, 60);
            ip.c = coprime_to(ip.b, 60);
            return ip;
        case Identity::RS:
        case Identity::LR:
            ip.a = draw(rng, 1, 120);
            return ip;
        case Identity::LS:
            ip.d = draw(rng, 1, 120);
            return ip;
        case Identity::RRec:
        case Identity::LRec: {
            auto ps = cm_primes(g);
            ip.c = cm_product(ps);
            ip.b = (id == Identity::RRec) ? coprime_to(ip.c, 60) : draw(rng, 1, 60);
            ip.a = ip.b * ip.c;
            return ip;
        }
        case Identity::FGTransform: {
            std::vector<std::pair<std::uint64_t, unsigned>> ok;
            for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
                for (unsigned w = 1; w <= 4; ++w) {
                    T delta = g.prime_power(p, w) * g.prime_power(p, 1) - g.prime_power(p, w + 1);
                    if (!is_zero(delta)) ok.emplace_back(p, w);
                }
            if (ok.empty()) {
                if (why) *why = "no prime p <= 13 and w <= 4 with Delta != 0";
                return std::nullopt;
            }
            auto [p, w] = ok[draw(rng, 0, ok.size() - 1)];
            ip.p = p;
            ip.w = w;
            ip.a = coprime_to(p, 30);
            ip.b = coprime_to(p, 30);
            ip.c = coprime_to(p, 30);
            return ip;
        }
    }
    return std::nullopt;
}

const char* to_string(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Converged: return "converged_estimate";
        case Verdict::Kind::Diverging: return "diverging";
        case Verdict::Kind::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::optional<GrowthFit> fit_growth(const std::vector<TracePoint>& pts) {
    if (pts.empty()) return std::nullopt;
    double xmax = pts.back().x;
    double lo = std::sqrt(xmax);
    std::vector<double> lx, ly;
    GrowthFit fit;
    for (const auto& tp : pts) {
        if (tp.x < lo || tp.x <= 0 || std::abs(tp.sum) <= 0) continue;
        if (lx.empty()) fit.x_from = tp.x;
        fit.x_to = tp.x;
        lx.push_back(std::log(tp.x));
        ly.push_back(std::log(std::abs(tp.sum)));
    }
    std::size_t n = lx.size();
    if (n < 4) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx <= 0) return std::nullopt;
    fit.exponent = sxy / sxx;
    fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.points = n;
    return fit;
}

Verdict judge_trace(const std::vector<TracePoint>& pts, const LimitOptions& opt) {
    Verdict v;
    if (pts.size() >= opt.window && opt.window > 0) {
        const Complex last = pts.back().sum;
        double spread = 0;
        for (std::size_t i = pts.size() - opt.window; i < pts.size(); ++i)
            spread = std::max(spread, std::abs(pts[i].sum - last));
        double scale = std::max(1.0, std::abs(last));
        if (spread <= opt.cauchy_tol * scale) {
            v.kind = Verdict::Kind::Converged;
            v.value = last;
            v.error_bound = spread;
            v.note = "heuristic: Cauchy window of " + std::to_string(opt.window) + " checkpoints";
            return v;
        }
        v.error_bound = spread;
    }
    if (auto fit = fit_growth(pts); fit && fit->exponent > opt.min_exponent && fit->r2 > opt.min_r2) {
        v.kind = Verdict::Kind::Diverging;
        v.exponent = fit->exponent;
        v.r2 = fit->r2;
        v.note = "heuristic: power-law growth fit";
        return v;
    }
    v.kind = Verdict::Kind::Inconclusive;
    v.note = "heuristic: neither Cauchy-flat nor power-law growth";
    return v;
}

template <class T>
std::vector<TracePoint> SeriesTrace<T>::points() const {
    std::vector<TracePoint> out;
    for (const auto& [x, s] : checkpoints) out.push_back({x, to_complex(s)});
    return out;
}

template <class T>
SeriesTrace<T> estimate_limit(const CoefficientSpec<T>& g, const SeriesParams& sp, const std::vector<double>& schedule,
                              const LimitOptions& opt) {
    if (schedule.size() < 4) throw DomainError("estimate_limit needs at least 4 checkpoints");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i] > schedule[i - 1])) throw DomainError("schedule must be strictly increasing");
    if (schedule.front() < 0) throw DomainError("schedule must be non-negative");

    SeriesTrace<T> tr;
    tr.params = sp;
    SeriesEvaluator<T> ev(g, sp, floor_arg(schedule.back()));
    for (double x : schedule) tr.checkpoints.emplace_back(x, ev.at(x));
    if (g.zero_default()) {
        tr.exact = exact_sum(g, sp);
        tr.verdict.kind = Verdict::Kind::Converged;
        tr.verdict.value = to_complex(*tr.exact);
        tr.verdict.error_bound = 0;
        tr.verdict.note = "exact: finitely many nonzero terms";
        return tr;
    }
    tr.verdict = judge_trace(tr.points(), opt);
    if (std::holds_alternative<OneEverywhere>(g.default_rule()))
        tr.verdict.note += "; unlisted primes are hypertransparent, so S_G(1) cannot converge absolutely";
    return tr;
}

std::vector<double> geometric_schedule(double x_min, double x_max, double ratio) {
    if (!(x_min > 0) || !(x_max >= x_min) || !(ratio > 1)) throw DomainError("bad schedule parameters");
    std::vector<double> out;
    for (double x = x_min; x < x_max; x *= ratio) {
        double r = std::floor(x);
        if (out.empty() || r > out.back()) out.push_back(r);
    }
    if (out.empty() || x_max > out.back()) out.push_back(x_max);
    return out;
}

namespace {

Verdict::Kind combine(const std::vector<ProbeResult>& probes) {
    bool all_conv = true;
    for (const auto& pr : probes) {
        if (pr.verdict.kind == Verdict::Kind::Diverging) return Verdict::Kind::Diverging;
        if (pr.verdict.kind != Verdict::Kind::Converged) all_conv = false;
    }
    return all_conv ? Verdict::Kind::Converged : Verdict::Kind::Inconclusive;
}

}  // namespace

template <class T>
FinitenessReport finiteness_check(const CoefficientSpec<T>& g, std::uint64_t x_budget) {
    FinitenessReport rep;
    Conductors cd = conductors(g);
    rep.N = cd.N;
    rep.absolute_convergence_impossible = cd.unlisted_hypertransparent;
    auto sched = geometric_schedule(16, double(std::max<std::uint64_t>(x_budget, 64)), 1.25);

    auto probe = [&](const SeriesParams& sp) { return ProbeResult{describe(sp), estimate_limit(g, sp, sched).verdict}; };

    ConditionReport c1, c2, c3, c4;
    c1.name = "(1) R_G(a) for sampled a";
    c2.name = "(2) R_G(a) for a | N(G)";
    c3.name = "(3) S_G(N(G))";
    c4.name = "(4) S_G(b) for sampled b free of hyperbad primes";
    for (std::uint64_t a = 1; a <= 8; ++a) c1.probes.push_back(probe(r_series(a)));
    for (std::uint64_t a : divisors(cd.N)) c2.probes.push_back(probe(r_series(a)));
    c3.probes.push_back(probe(s_series(cd.N)));
    for (std::uint64_t b = 1, taken = 0; b <= 40 && taken < 6; ++b) {
        bool ok = true;
        for (const auto& pp : factorize(b).factors) {
            auto pc = classify_prime(g, pp.p);
            if (pc.bad() && pc.hyper()) ok = false;
        }
        if (!ok) continue;
        c4.probes.push_back(probe(s_series(b)));
        ++taken;
    }
    for (ConditionReport* c : {&c1, &c2, &c3, &c4}) {
        c->verdict = combine(c->probes);
        rep.conditions.push_back(*c);
    }
    bool any_conv = false, any_div = false;
    for (const auto& c : rep.conditions) {
        any_conv |= c.verdict == Verdict::Kind::Converged;
        any_div |= c.verdict == Verdict::Kind::Diverging;
    }
    rep.consistent = !(any_conv && any_div);
    return rep;
}

#define RAMEXP_INSTANTIATE(T)                                                                                     \
    template class SeriesEvaluator<T>;                                                                            \
    template struct SeriesTrace<T>;                                                                               \
    template T series_term(const CoefficientSpec<T>&, const SeriesParams&, std::uint64_t);                        \
    template T partial_sum(const CoefficientSpec<T>&, const SeriesParams&, double);                               \
    template T exact_sum(const CoefficientSpec<T>&, const SeriesParams&);                                         \
    template IdentityResidual identity_residual(Identity, const CoefficientSpec<T>&, const IdentityParams&,       \
                                                const std::vector<double>&);                                      \
    template std::optional<IdentityParams> sample_identity_params(Identity, const CoefficientSpec<T>&,            \
                                                                  std::mt19937_64&, std::string*);                \
    template SeriesTrace<T> estimate_limit(const CoefficientSpec<T>&, const SeriesParams&,                        \
                                           const std::vector<double>&, const LimitOptions&);                      \
    template FinitenessReport finiteness_check(const CoefficientSpec<T>&, std::uint64_t);

RAMEXP_INSTANTIATE(Complex)
RAMEXP_INSTANTIATE(QComplex)

}  // namespace ramexp
