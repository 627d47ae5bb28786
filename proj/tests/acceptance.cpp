// Acceptance runner: one PASS/FAIL line per criterion, measured values included.
// Usage: acceptance [k ...]   (no argument runs all eleven)
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ramexp/clouds.hpp"
#include "ramexp/generators.hpp"
#include "ramexp/lab.hpp"
#include "ramexp/ramanujan.hpp"

using namespace ramexp;
using Q = QComplex;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Q r(long long n, long long d = 1) { return Q(Rational(n, d)); }

bool square_full(std::uint64_t n) {
    for (const auto& pp : factorize(n).factors)
        if (pp.e < 2) return false;
    return true;
}

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

Outcome kluyver_hoelder() {
    std::uint64_t bad = 0;
    for (std::uint64_t q = 1; q <= 512; ++q)
        for (std::uint64_t a = 1; a <= 512; ++a) bad += ramanujan_sum(q, a) != ramanujan_sum_kluyver(q, a);
    return {bad == 0, fmt("%llu of 262144 pairs disagree", (unsigned long long)bad)};
}

Outcome identity_suite() {
    std::vector<double> xs;
    for (int x = 1; x <= 300; ++x) xs.push_back(x);
    std::size_t exact_fail = 0, runs = 0, skipped = 0;
    double float_max = 0;
    for (unsigned seed = 0; seed < 50; ++seed) {
        std::mt19937_64 rq(1000 + seed), rf(1000 + seed);
        auto gq = gen::random_finite_spec<Q>(rq);
        auto gf = gen::random_finite_spec<Complex>(rf);
        std::mt19937_64 pq(seed), pf(seed);
        for (Identity id : kAllIdentities) {
            auto ipq = sample_identity_params(id, gq, pq);
            auto ipf = sample_identity_params(id, gf, pf);
            if (!ipq) {
                ++skipped;
                continue;
            }
            ++runs;
            if (!identity_residual(id, gq, *ipq, xs).exact_zero) ++exact_fail;
            if (ipf) float_max = std::max(float_max, identity_residual(id, gf, *ipf, xs).max_abs);
        }
    }
    bool ok = exact_fail == 0 && float_max <= 1e-10;
    return {ok, fmt("%zu identity runs (%zu skipped for side conditions); exact nonzero residuals %zu; float max %.3g",
                    runs, skipped, exact_fail, float_max)};
}

Outcome hildebrand_round_trip() {
    std::mt19937_64 rng(3);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
        auto F = gen::random_integer_function<Q>(rng, 100);
        auto hi = hildebrand_coefficient(F, 100);
        for (std::uint64_t a = 1; a <= 100; ++a) bad += !(hildebrand_reconstruct(hi, a) == F(a));
    }
    return {bad == 0, fmt("100 functions x 100 arguments, %zu mismatches", bad)};
}

Outcome canonical_coefficients() {
    const std::uint64_t A = 200;
    std::vector<std::pair<std::string, TabulatedFunction<Q>>> fs;
    fs.emplace_back("Id", TabulatedFunction<Q>::generate(A, [](std::uint64_t n) { return Q((long long)n); }));
    fs.emplace_back("phi", TabulatedFunction<Q>::generate(A, [](std::uint64_t n) { return Q((long long)euler_phi(n)); }));
    fs.emplace_back("sum 1/d", TabulatedFunction<Q>::generate(A, [](std::uint64_t n) {
        Q s = r(0);
        for (std::uint64_t d : divisors(n)) s += r(1, (long long)d);
        return s;
    }));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) fs.emplace_back("random", gen::random_multiplicative<Q>(rng, A));
    std::size_t sum_bad = 0, hi_bad = 0, hi_checked = 0;
    for (const auto& [name, F] : fs) {
        auto G = canonical_coefficient(F, A);
        for (std::uint64_t a = 1; a <= A; ++a) sum_bad += !(exact_sum(G, r_series(a)) == F(a));
        auto hi = hildebrand_coefficient(F, A);
        for (std::uint64_t n = 1; n <= A; ++n)
            if (n > 1 && square_full(n)) {
                ++hi_checked;
                hi_bad += !(hi.at(n) == G(n));
            }
    }
    return {sum_bad == 0 && hi_bad == 0,
            fmt("23 functions; R series mismatches %zu; G_F vs Hi_F mismatches %zu of %zu square-full checks", sum_bad,
                hi_bad, hi_checked)};
}

Outcome null_cloud() {
    CoefficientSpec<Q> g({{2, PrimeEntry<Q>{{r(1)}, OneTail{}}}}, ZeroOnPrimes{});
    auto cd = conductors(g);
    bool s_zero = exact_sum(g, s_series(cd.N)) == r(0);
    std::size_t nonzero = 0;
    for (std::uint64_t a = 1; a <= 100; ++a) nonzero += !(exact_sum(g, r_series(a)) == r(0));

    std::mt19937_64 rng(5);
    int found = 0, witnessed = 0, drawn = 0;
    while (found < 10 && drawn < 1000) {
        ++drawn;
        auto h = gen::random_finite_spec<Q>(rng);
        if (exact_sum(h, s_series(conductors(h).N)) == r(0)) continue;
        ++found;
        for (std::uint64_t a = 1; a <= 30; ++a)
            if (!(exact_sum(h, r_series(a)) == r(0))) {
                ++witnessed;
                break;
            }
    }
    bool ok = s_zero && nonzero == 0 && found == 10 && witnessed == 10;
    return {ok, fmt("S_G(N)=0: %s; nonzero R_G(a), a<=100: %zu; specs with S_G(N)!=0 witnessed %d/%d", s_zero ? "yes" : "no",
                    nonzero, witnessed, found)};
}

Outcome euler_selberg() {
    std::mt19937_64 rng(6);
    gen::SpecShape shape;
    shape.allow_hyper = true;
    std::size_t bad_value = 0, bad_form = 0, h_parts = 0, t_parts = 0, a_parts = 0;
    for (int i = 0; i < 30; ++i) {
        auto g = gen::random_finite_spec<Q>(rng, shape);
        for (std::uint64_t a = 1; a <= 200; ++a) {
            auto es = euler_selberg_value(g, a);
            bad_value += !(es.value == exact_sum(g, r_series(a)));
            bad_form += !(es.factorized == es.value);
            h_parts += es.parts.h > 1;
            t_parts += es.parts.t > 1;
            a_parts += es.parts.a_tilde > 1 && !(es.value == r(0));
        }
    }
    bool ok = bad_value == 0 && bad_form == 0 && h_parts > 0 && t_parts > 0 && a_parts > 0;
    return {ok, fmt("6000 evaluations; product vs sum mismatches %zu; factorized vs product mismatches %zu; "
                    "nontrivial h %zu, t %zu, a~ %zu",
                    bad_value, bad_form, h_parts, t_parts, a_parts)};
}

Outcome opacity_round_trip() {
    std::mt19937_64 rng(7);
    gen::SpecShape shape;
    shape.allow_hyper = true;
    const std::uint64_t A = 300;
    int triples = 0, drawn = 0, round_trip = 0, first_eq = 0, second_literal = 0, second_scaled = 0, with_nt = 0;
    while (triples < 30 && drawn < 2000) {
        ++drawn;
        auto g0 = gen::random_finite_spec<Q>(rng, shape);
        auto cd = conductors(g0);
        if (exact_sum(g0, r_series(cd.N_T)) == r(0)) continue;  // F = 0 has no core to speak of
        auto F = TabulatedFunction<Q>::generate(A, [&](std::uint64_t a) { return exact_sum(g0, r_series(a)); });
        auto dec = selberg_decompose(F);
        if (!std::holds_alternative<SemiMultiplicativeForm<Q>>(dec)) continue;
        ++triples;
        with_nt += cd.N_T > 1;
        auto H = opacity_core(g0);
        auto rec = reconstruct_from_core(std::get<SemiMultiplicativeForm<Q>>(dec), H, cd.N, A);
        auto H2 = opacity_core(rec.G);
        bool same = rec.verified && H2.n_t() == H.n_t();
        for (std::uint64_t q = 1; same && q <= A; ++q) same = H2(q) == H(q);
        round_trip += same;

        auto G = rec.G;
        auto cg = conductors(G);
        auto hs = opacity_core(G).as_spec();
        first_eq += exact_sum(G, s_series(cg.N)) == exact_sum(hs, s_series(cg.N));
        Q rt = exact_sum(G, r_series(cg.N_T)), sh = exact_sum(hs, s_series(1));
        second_literal += rt == sh;
        second_scaled += rt == r((long long)cg.N_T) * sh;
    }
    bool ok = triples == 30 && round_trip == 30 && first_eq == 30 && second_literal == 30;
    return {ok, fmt("%d triples (%d with N_T > 1); core round trip %d/30; S_G(N)=S_H(N) %d/30; "
                    "R_G(N_T)=S_H(1) %d/30; R_G(N_T)=N_T S_H(1) %d/30",
                    triples, with_nt, round_trip, first_eq, second_literal, second_scaled)};
}

Outcome cm_round_trip() {
    std::mt19937_64 rng(8);
    const std::uint64_t A = 1200;
    int exact_runs = 0, recovered = 0;
    for (int i = 0; i < 10; ++i) {
        std::map<std::uint64_t, PrimeEntry<Q>> e;
        std::vector<std::uint64_t> pool{2, 3, 5, 7, 11};
        unsigned k = unsigned(gen::uniform(rng, 1, 3));
        std::shuffle(pool.begin(), pool.end(), rng);
        for (unsigned j = 0; j < k; ++j) {
            Q v = gen::small_value_not<Q>(rng, r(1));
            while (v == r(0)) v = gen::small_value_not<Q>(rng, r(1));
            e.emplace(pool[j], PrimeEntry<Q>{{v}, GeometricTail<Q>{v}});
        }
        CoefficientSpec<Q> g(std::move(e), ZeroOnPrimes{});
        Q base = exact_sum(g, r_series(1));
        if (base == r(0)) continue;
        auto F = TabulatedFunction<Q>::generate(A, [&](std::uint64_t a) { return finite_factor(FactorKind::D, g, a) * base; });
        auto res = cm_cloud_coefficient(F);
        exact_runs += res.convergence_check == "exact";
        bool ok = res.coefficient.has_value();
        for (std::uint64_t q = 1; ok && q <= A; ++q) ok = (*res.coefficient)(q) == g(q);
        recovered += ok;
    }
    return {recovered == 10 && exact_runs == 10,
            fmt("10 completely multiplicative specs, recovered exactly on 1..%llu: %d, exact checks %d",
                (unsigned long long)A, recovered, exact_runs)};
}

Outcome divergent_family() {
    auto g = counterexample_coefficient(Complex(0.6, 0), 2, 3);
    auto sched = geometric_schedule(16, 1e6, 1.1);
    LimitOptions tight;
    tight.cauchy_tol = 1e-4;
    struct Side {
        std::uint64_t b;
        Verdict cauchy;
        std::string growth;
        double last;
    };
    std::vector<Side> sides;
    for (std::uint64_t b : {2, 1}) {
        auto tr = estimate_limit(g, s_series(b), sched, tight);
        auto pts = tr.points();
        Side s{b, judge_trace(pts, tight), "", std::abs(pts.back().sum)};
        try {
            auto f = growth_exponent(pts);
            s.growth = fmt("%.3f (r2 %.4f)", f.exponent, f.r2);
        } catch (const NotGrowing&) {
            s.growth = "not growing";
        }
        // spread over the last five checkpoints, for the record
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = pts.size() - 5; i < pts.size(); ++i) {
            lo = std::min(lo, pts[i].sum.real());
            hi = std::max(hi, pts[i].sum.real());
        }
        s.growth += fmt(", window spread %.2e", hi - lo);
        sides.push_back(s);
    }
    // as stated: b = 2 (p1 | b) converges at 1e-4, b = 1 (p1 does not divide b) grows with exponent 0.40 +- 0.05
    bool conv = sides[0].cauchy.kind == Verdict::Kind::Converged;
    bool grow = false;
    try {
        auto f = growth_exponent(estimate_limit(g, s_series(1), sched).points());
        grow = std::abs(f.exponent - 0.4) <= 0.05;
    } catch (const NotGrowing&) {
    }
    return {conv && grow,
            fmt("p1|b (b=2): verdict %s, |S| %.4g, growth %s; p1 does not divide b (b=1): verdict %s, |S| %.4g, growth %s",
                to_string(sides[0].cauchy.kind), sides[0].last, sides[0].growth.c_str(), to_string(sides[1].cauchy.kind),
                sides[1].last, sides[1].growth.c_str())};
}

Outcome squarefree_constant() {
    auto st = squarefree_stats(1000000);
    double err = std::abs(st.ratio - kSixOverPiSquared);
    return {err < 1e-3, fmt("count %llu, ratio %.6f, |ratio - 6/pi^2| = %.2e",
                            (unsigned long long)st.count, st.ratio, err)};
}

Outcome contraction_demo() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        ContractionExperiment e;
        e.rho = 1.5 + 3 * u(rng);
        e.alpha = std::polar(0.95 * u(rng), 6.283185307179586 * u(rng));
        e.ell = Complex(4 * u(rng) - 2, 4 * u(rng) - 2);
        Complex lim = e.ell / (1.0 + e.alpha);
        e.h_source = synthetic_source(lim, Complex(4 * u(rng) - 2, 4 * u(rng) - 2), Complex(4 * u(rng) - 2, 0));
        auto rep = converse_limit_demo(e, geometric_schedule(16, 1e5, 1.5));
        worst = std::max(worst, rep.H_error);
    }
    return {worst < 1e-6, fmt("20 runs, worst |H limit - ell/(1+alpha)| = %.2e at x = 1e5", worst)};
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {"kluyver-hoelder agreement", kluyver_hoelder},
        {"identity suite", identity_suite},
        {"hildebrand round trip", hildebrand_round_trip},
        {"canonical coefficient", canonical_coefficients},
        {"null cloud", null_cloud},
        {"euler-selberg products", euler_selberg},
        {"opacity core round trip", opacity_round_trip},
        {"completely multiplicative cloud", cm_round_trip},
        {"divergent coprime family", divergent_family},
        {"square-free constant", squarefree_constant},
        {"converse limit demo", contraction_demo},
    };
    std::vector<int> pick;
    for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
    if (pick.empty())
        for (int k = 1; k <= int(all.size()); ++k) pick.push_back(k);

    int failed = 0;
    for (int k : pick) {
        if (k < 1 || k > int(all.size())) {
            std::fprintf(stderr, "no criterion %d\n", k);
            return 2;
        }
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[k - 1].run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", k, all[k - 1].name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
