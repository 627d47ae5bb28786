#include "ramexp/lab.hpp"

#include <cmath>

namespace ramexp {

const char* to_string(Branch b) { return b == Branch::Contraction ? "contraction" : "dilation"; }

Branch branch_of(Complex alpha, double rho) {
    if (!(rho > 1)) throw DomainError("rho must exceed 1");
    if (std::abs(alpha + 1.0) == 0) throw DomainError("alpha = -1 is excluded");
    double a = std::abs(alpha);
    if (a < 1) return Branch::Contraction;
    if (a > rho) return Branch::Dilation;
    throw UnsupportedBranch("|alpha| in [1, rho] is outside both branches");
}

std::function<Complex(std::uint64_t)> synthetic_source(Complex limit, Complex beta, Complex gamma) {
    return [=](std::uint64_t n) {
        double d = 1.0 + double(n);
        return limit + beta / d + gamma / (d * d);
    };
}

ContractionReport converse_limit_demo(const ContractionExperiment& exp, const std::vector<double>& xs) {
    ContractionReport rep;
    rep.branch = branch_of(exp.alpha, exp.rho);
    if (!exp.h_source) throw DomainError("experiment has no H source");
    if (xs.size() < 2) throw DomainError("need at least two checkpoints");
    auto H = [&](double x) { return exp.h_source(x < 0 ? 0 : static_cast<std::uint64_t>(std::floor(x))); };
    auto K = [&](double x) { return H(x) + exp.alpha * H(x / exp.rho); };

    rep.xs = xs;
    rep.predicted_H = exp.ell / (1.0 + exp.alpha);
    for (double x : xs) {
        rep.H.push_back(H(x));
        rep.K.push_back(K(x));
        rep.residuals.push_back(std::abs(rep.H.back() - rep.predicted_H));
    }
    // first-order Richardson step for a 1/x tail
    double xl = xs.back();
    rep.K_limit = 2.0 * K(xl) - K(xl / 2);
    rep.H_limit = 2.0 * H(xl) - H(xl / 2);
    rep.H_from_K = rep.K_limit / (1.0 + exp.alpha);
    rep.K_error = std::abs(rep.K_limit - exp.ell);
    rep.H_error = std::abs(rep.H_limit - rep.predicted_H);
    rep.H_from_K_error = std::abs(rep.H_from_K - rep.predicted_H);

    std::size_t i = rep.residuals.size() - 1;
    while (i > 0 && rep.residuals[i - 1] >= rep.residuals[i]) --i;
    rep.monotone_from = xs[i];
    return rep;
}

CoefficientSpec<Complex> counterexample_coefficient(Complex s, std::uint64_t p1, std::uint64_t p2) {
    if (!(s.real() >= 0.5 && s.real() < 1)) throw DomainError("need 1/2 <= Re s < 1");
    if (!is_prime(p1) || !is_prime(p2)) throw DomainError("p1 and p2 must be prime");
    if (p1 == p2) throw DomainError("p1 and p2 must differ");
    std::map<std::uint64_t, PrimeEntry<Complex>> entries;
    Complex g1 = std::pow(Complex(double(p1)), 1.0 - s);
    Complex g2 = -std::pow(Complex(double(p2)), -s);
    entries.emplace(p1, PrimeEntry<Complex>{{g1}, ZeroTail{}});
    entries.emplace(p2, PrimeEntry<Complex>{{g2}, GeometricTail<Complex>{g2}});
    return CoefficientSpec<Complex>(std::move(entries), PowerLaw{s, true});
}

GrowthFit growth_exponent(const std::vector<TracePoint>& trace) {
    if (trace.size() < 8) throw DomainError("growth fit needs at least 8 checkpoints");
    auto fit = fit_growth(trace);
    if (!fit) throw NotGrowing("too few usable checkpoints above sqrt(x_max)");
    double first = 0;
    for (const auto& tp : trace)
        if (tp.x >= fit->x_from) {
            first = std::abs(tp.sum);
            break;
        }
    // a poor fit means a bounded wobble, not a power law
    if (fit->exponent <= 0.05 || fit->r2 < 0.9 || std::abs(trace.back().sum) <= first)
        throw NotGrowing("partial sums do not grow (fitted exponent " + std::to_string(fit->exponent) +
                         ", r2 " + std::to_string(fit->r2) + ")");
    return *fit;
}

SquarefreeStats squarefree_stats(std::uint64_t x) {
    SquarefreeStats st;
    if (x == 0) return st;
    if (x > default_sieve().bound()) throw DomainError("x exceeds sieve bound");
    std::vector<char> sf(x + 1, 1);
    for (std::uint32_t p : default_sieve().primes()) {
        std::uint64_t p2 = std::uint64_t(p) * p;
        if (p2 > x) break;
        for (std::uint64_t m = p2; m <= x; m += p2) sf[m] = 0;
    }
    for (std::uint64_t n = 1; n <= x; ++n) st.count += sf[n];
    st.ratio = double(st.count) / double(x);
    return st;
}

SfDirichlet sf_dirichlet(Complex s, std::uint64_t b, std::uint64_t x) {
    if (!(s.real() >= 0.5)) throw DomainError("need Re s >= 1/2");
    if (s == Complex(1, 0)) throw DomainError("s = 1 is excluded");
    if (b == 0) throw DomainError("b must be >= 1");
    if (x > default_sieve().bound()) throw DomainError("x exceeds sieve bound");
    SfDirichlet out;
    const Sieve& sv = default_sieve();
    for (std::uint64_t q = 1; q <= x; ++q) {
        if (gcd(q, b) != 1) continue;
        if (mobius(sv.factorize(q)) == 0) continue;
        out.partial += std::exp(-s * std::log(double(q)));
    }
    out.C1 = kSixOverPiSquared;
    out.C2 = 1;
    for (const auto& pp : factorize(b).factors) {
        out.C1 /= 1.0 + 1.0 / double(pp.p);
        out.C2 /= 1.0 + std::pow(Complex(double(pp.p)), -s);
    }
    out.zeta_ratio = zeta(s) / zeta(2.0 * s);
    out.predicted = out.C1 * std::pow(Complex(double(x)), 1.0 - s) / (1.0 - s) + out.C2 * out.zeta_ratio;
    return out;
}

Complex zeta(Complex s) {
    if (std::abs(s - 1.0) < 1e-15) throw DomainError("zeta has a pole at s = 1");
    using LD = long double;
    const int n = 60;
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    std::vector<LD> d(n + 1);
    LD term = 1.0L / n, acc = 0;
    for (int i = 0; i <= n; ++i) {
        acc += term;
        d[i] = n * acc;
        term *= LD(4) * (n + i) * (n - i) / ((2.0L * i + 1) * (2.0L * i + 2));
    }
    std::complex<LD> sl(s.real(), s.imag()), eta = 0;
    for (int k = 0; k < n; ++k) {
        std::complex<LD> t = (d[k] - d[n]) * std::exp(-sl * std::log(LD(k + 1)));
        eta += (k % 2) ? -t : t;
    }
    eta = -eta / d[n];
    std::complex<LD> den = LD(1) - std::exp((LD(1) - sl) * std::log(LD(2)));
    std::complex<LD> z = eta / den;
    return Complex(double(z.real()), double(z.imag()));
}

}  // namespace ramexp
