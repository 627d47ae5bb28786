#include "commands.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ramexp/clouds.hpp"
#include "ramexp/error.hpp"
#include "ramexp/generators.hpp"
#include "ramexp/lab.hpp"
#include "ramexp/ramanujan.hpp"
#include "ramexp/series.hpp"
#include "ramexp/spec_io.hpp"

using namespace ramexp;

namespace {

struct Options {
    std::string mode = "auto";
    std::string format;

    std::vector<std::uint64_t> positional;  // ramsum q a
    std::vector<std::uint64_t> table;       // ramsum --table qmax amax
    bool kluyver = false;

    std::string spec, function;
    std::string kind = "R";
    std::uint64_t a = 1, b = 1, c = 1, d = 1;
    std::string xs = "1:100:1";
    std::string as = "";
    std::uint64_t seed = 0;
    double xmax = 300;
    double qmax = 100;
    double tolerance = 1e-6;
    bool finiteness = false;
    std::vector<std::string> identities;
    std::string base;

    // lab
    double s_re = 0.6, s_im = 0;
    std::uint64_t p1 = 2, p2 = 3;
    double ratio = 1.1;
    double alpha_re = 0.5, alpha_im = 0, rho = 2, ell = 1.5, beta = 1, gamma = 0;
    std::size_t points = 20;
    double x = 1e6;
    bool with_dirichlet = false;
};

Json envelope(const std::string& command, const std::string& mode, const std::string& ref) {
    Json j;
    j["tool"] = "ramexp";
    j["version"] = RAMEXP_VERSION;
    j["command"] = command;
    j["numeric_mode"] = mode;
    j["paper_ref"] = ref;
    j["sieve_bound"] = configured_sieve_bound();
    return j;
}

void csv_preamble(std::ostream& out, const Json& env) {
    out << "# ramexp " << env["version"].get<std::string>() << " command=" << env["command"].get<std::string>()
        << " numeric_mode=" << env["numeric_mode"].get<std::string>() << "\n";
    out << "# paper_ref=" << env["paper_ref"].get<std::string>() << "\n";
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::uint64_t as_count(double v, const std::string& name) {
    if (!(v >= 1) || v != std::floor(v) || v > 1e18) throw DomainError(name + " must be a positive integer");
    return static_cast<std::uint64_t>(v);
}

// "a:b:step" (linear), "geom:a:b:ratio", or "x1,x2,...".
std::vector<double> parse_xs(const std::string& text) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep)) parts.push_back(item);
        return parts;
    };
    auto num = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ParseError("--xs: cannot read '" + s + "' as a number");
        }
    };
    std::vector<double> xs;
    if (text.rfind("geom:", 0) == 0) {
        auto p = split(text.substr(5), ':');
        if (p.size() != 3) throw ParseError("--xs: expected geom:start:stop:ratio");
        xs = geometric_schedule(num(p[0]), num(p[1]), num(p[2]));
    } else if (text.find(':') != std::string::npos) {
        auto p = split(text, ':');
        if (p.size() != 3) throw ParseError("--xs: expected start:stop:step");
        double lo = num(p[0]), hi = num(p[1]), step = num(p[2]);
        if (!(step > 0) || hi < lo) throw DomainError("--xs: need step > 0 and stop >= start");
        for (std::size_t i = 0;; ++i) {
            double v = lo + double(i) * step;
            if (v > hi + 1e-9) break;
            xs.push_back(v);
        }
    } else {
        for (const auto& s : split(text, ',')) xs.push_back(num(s));
    }
    if (xs.empty()) throw DomainError("--xs: no checkpoints");
    for (double v : xs)
        if (v < 0) throw DomainError("--xs: checkpoints must be non-negative");
    return xs;
}

// Spec-driven commands: "auto" means exact arithmetic whenever the default rule is zero on primes.
std::string resolve_spec_mode(const std::string& mode, const Json& spec) {
    if (mode == "exact" || mode == "float") return mode;
    if (mode != "auto") throw ParseError("--mode: expected exact, float or auto");
    if (!spec.is_object() || !spec.contains("default")) return "exact";
    const Json& d = spec["default"];
    std::string tag = d.is_string() ? d.get<std::string>() : (d.is_object() && d.contains("tag") ? d["tag"].get<std::string>() : "");
    return (tag.empty() || tag == "zero_on_primes") ? "exact" : "float";
}

std::string resolve_function_mode(const std::string& mode) {
    if (mode == "auto" || mode == "exact") return "exact";
    if (mode == "float") return mode;
    throw ParseError("--mode: expected exact, float or auto");
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["heuristic"] = true;
    if (v.kind == Verdict::Kind::Converged) {
        j["value"] = value_to_json(v.value);
        j["error_bound"] = v.error_bound;
    } else if (v.kind == Verdict::Kind::Diverging) {
        j["exponent"] = v.exponent;
        j["r2"] = v.r2;
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Json classification_json(const PrimeClassification& pc) {
    return {{"p", pc.p}, {"w", index_to_json(pc.w)}, {"v", index_to_json(pc.v)}, {"class", to_string(pc.cls)}};
}

template <class T>
std::string csv_value(const T& z) {
    if constexpr (NumericMode<T>::exact) {
        return z.re.str() + "," + z.im.str();
    } else {
        std::ostringstream os;
        os.precision(17);
        os << z.real() << "," << z.imag();
        return os.str();
    }
}

std::string csv_x(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// ---- ramsum

int cmd_ramsum(const Options& o, std::ostream& out) {
    std::string fmt = o.format.empty() ? (o.table.empty() ? "text" : "csv") : o.format;
    Json env = envelope("ramsum", "exact", "Ramanujan sums: Hoelder and Kluyver formulas");
    if (!o.table.empty()) {
        if (o.table.size() != 2) throw ParseError("--table expects qmax amax");
        RamanujanSumTable tab(o.table[0], o.table[1]);
        if (fmt == "csv") {
            csv_preamble(out, env);
            out << tab.to_csv();
        } else if (fmt == "json") {
            env["q_max"] = tab.q_max();
            env["a_max"] = tab.a_max();
            Json rows = Json::array();
            for (std::uint64_t q = 1; q <= tab.q_max(); ++q) {
                Json row = Json::array();
                for (std::uint64_t a = 1; a <= tab.a_max(); ++a) row.push_back(tab.at(q, a));
                rows.push_back(row);
            }
            env["rows"] = rows;
            emit(out, env);
        } else {
            throw ParseError("--format: table output is csv or json");
        }
        return 0;
    }
    if (o.positional.size() != 2) throw ParseError("ramsum expects q and a (or --table qmax amax)");
    std::uint64_t q = o.positional[0], a = o.positional[1];
    if (q == 0 || a == 0) throw DomainError("q and a must be >= 1");
    std::int64_t v = o.kluyver ? ramanujan_sum_kluyver(q, a) : ramanujan_sum(q, a);
    if (fmt == "text") {
        out << v << "\n";
    } else if (fmt == "json") {
        env["q"] = q;
        env["a"] = a;
        env["method"] = o.kluyver ? "kluyver" : "hoelder";
        env["value"] = v;
        emit(out, env);
    } else {
        throw ParseError("--format: ramsum prints text or json");
    }
    return 0;
}

// ---- classify

template <class T>
int cmd_classify(const Options& o, const Json& spec_json, const std::string& mode, std::ostream& out) {
    auto g = parse_spec<T>(spec_json, o.spec);
    Json env = envelope("classify", mode,
                        o.finiteness ? "finiteness convergence theorem"
                                     : "bad and transparent primes; Ramanujan and transparency conductors");
    Conductors cd = conductors(g);
    env["N"] = cd.N;
    env["N_T"] = cd.N_T;
    env["equality_regime"] = cd.equality_regime;
    env["default"] = spec_to_json(g)["default"];
    env["unlisted_primes_hypertransparent"] = cd.unlisted_hypertransparent;
    Json primes = Json::array();
    for (std::uint64_t p : g.listed_primes()) primes.push_back(classification_json(classify_prime(g, p)));
    env["primes"] = primes;
    Json bad = Json::array(), tr = Json::array();
    for (const auto& pc : cd.bad_primes) bad.push_back(pc.p);
    for (const auto& pc : cd.transparent_primes) tr.push_back(pc.p);
    env["bad_primes"] = bad;
    env["transparent_primes"] = tr;
    if (o.finiteness) {
        FinitenessReport fr = finiteness_check(g, as_count(o.xmax, "--xmax"));
        Json conds = Json::array();
        for (const auto& c : fr.conditions) {
            Json probes = Json::array();
            for (const auto& pr : c.probes) probes.push_back({{"series", pr.series}, {"verdict", verdict_json(pr.verdict)}});
            conds.push_back({{"condition", c.name}, {"verdict", to_string(c.verdict)}, {"probes", probes}});
        }
        env["finiteness"] = {{"conditions", conds},
                             {"consistent", fr.consistent},
                             {"absolute_convergence_impossible", fr.absolute_convergence_impossible},
                             {"x_budget", as_count(o.xmax, "--xmax")}};
    }
    emit(out, env);
    return 0;
}

// ---- series

SeriesParams series_params(const Options& o) {
    if (o.kind == "R") return r_series(o.a);
    if (o.kind == "S") return s_series(o.b);
    if (o.kind == "L") return l_series(o.d);
    if (o.kind == "F") return f_series(o.a, o.b, o.c);
    throw ParseError("--kind: expected R, S, L or F");
}

template <class T>
int cmd_series(const Options& o, const Json& spec_json, const std::string& mode, std::ostream& out) {
    auto g = parse_spec<T>(spec_json, o.spec);
    SeriesParams sp = series_params(o);
    if (sp.a == 0 || sp.b == 0 || sp.c == 0) throw DomainError("series parameters must be >= 1");
    auto xs = parse_xs(o.xs);
    Json env = envelope("series", mode, "truncated Ramanujan, coprime and Lucht series");
    std::string fmt = o.format.empty() ? "csv" : o.format;

    bool increasing = true;
    for (std::size_t i = 1; i < xs.size(); ++i) increasing = increasing && xs[i] > xs[i - 1];
    SeriesTrace<T> tr;
    if (xs.size() >= 4 && increasing) {
        tr = estimate_limit(g, sp, xs);
    } else {
        double top = 0;
        for (double x : xs) top = std::max(top, x);
        SeriesEvaluator<T> ev(g, sp, static_cast<std::uint64_t>(std::floor(top)));
        tr.params = sp;
        for (double x : xs) tr.checkpoints.emplace_back(x, ev.at(x));
    }

    if (fmt == "csv") {
        csv_preamble(out, env);
        out << "# series=" << describe(sp);
        if (xs.size() >= 4 && increasing) out << " verdict=" << to_string(tr.verdict.kind);
        out << "\n";
        out << "x,re,im\n";
        for (const auto& [x, v] : tr.checkpoints) out << csv_x(x) << "," << csv_value(v) << "\n";
    } else if (fmt == "json") {
        env["series"] = describe(sp);
        Json pts = Json::array();
        for (const auto& [x, v] : tr.checkpoints) pts.push_back({{"x", x}, {"value", value_to_json(v)}});
        env["checkpoints"] = pts;
        if (xs.size() >= 4 && increasing) env["verdict"] = verdict_json(tr.verdict);
        if (tr.exact) env["exact"] = value_to_json(*tr.exact);
        emit(out, env);
    } else {
        throw ParseError("--format: expected csv or json");
    }
    return 0;
}

// ---- verify-identities

Json identity_params_json(Identity id, const IdentityParams& ip) {
    switch (id) {
        case Identity::SRec: return {{"b", ip.b}, {"c", ip.c}};
        case Identity::RS: return {{"a", ip.a}};
        case Identity::RRec: return {{"b", ip.b}, {"c", ip.c}};
        case Identity::LS: return {{"d", ip.d}};
        case Identity::LRec: return {{"b", ip.b}, {"c", ip.c}};
        case Identity::LR: return {{"a", ip.a}};
        case Identity::FGTransform: return {{"a", ip.a}, {"b", ip.b}, {"c", ip.c}, {"p", ip.p}, {"w", ip.w}};
    }
    return {};
}

template <class T>
int cmd_verify(const Options& o, const Json* spec_json, const std::string& mode, std::ostream& out) {
    std::mt19937_64 rng(o.seed);
    CoefficientSpec<T> g = spec_json ? parse_spec<T>(*spec_json, o.spec) : gen::random_finite_spec<T>(rng);
    std::uint64_t xmax = as_count(o.xmax, "--xmax");
    std::vector<double> xs;
    for (std::uint64_t x = 1; x <= xmax; ++x) xs.push_back(double(x));

    std::vector<Identity> ids;
    if (o.identities.empty())
        ids.assign(std::begin(kAllIdentities), std::end(kAllIdentities));
    else
        for (const auto& name : o.identities) ids.push_back(identity_from_string(name));

    Json env = envelope("verify-identities", mode, "partial-sum recursions and the F_G transformation formula");
    env["seed"] = o.seed;
    env["spec"] = spec_to_json(g);
    env["x_max"] = xmax;
    env["tolerance"] = NumericMode<T>::exact ? 0.0 : 1e-10;
    Json rows = Json::array();
    bool all_zero = true;
    for (Identity id : ids) {
        std::string why;
        auto ip = sample_identity_params(id, g, rng, &why);
        Json row{{"identity", to_string(id)}};
        if (!ip) {
            row["status"] = "skipped";
            row["reason"] = why;
        } else {
            auto res = identity_residual(id, g, *ip, xs);
            row["params"] = identity_params_json(id, *ip);
            row["max_residual"] = res.max_abs;
            row["exact_zero"] = res.exact_zero;
            row["checked"] = res.checked;
            row["status"] = res.exact_zero ? "pass" : "fail";
            all_zero = all_zero && res.exact_zero;
        }
        rows.push_back(row);
    }
    env["identities"] = rows;
    env["all_zero"] = all_zero;
    emit(out, env);
    return 0;
}

// ---- canonical / hildebrand / selberg

template <class T>
int cmd_canonical(const Options& o, const std::string& mode, std::ostream& out) {
    auto F = load_function<T>(o.function);
    std::uint64_t qmax = as_count(o.qmax, "--qmax");
    auto G = canonical_coefficient(F, qmax);
    Json env = envelope("canonical", mode, "canonical Ramanujan coefficient");
    env["coefficient"] = spec_to_json(G);
    std::uint64_t top = std::min(qmax, F.a_max());
    std::uint64_t bad = 0;
    for (std::uint64_t a = 1; a <= top && !bad; ++a) {
        T r = exact_sum(G, r_series(a));
        bool ok = NumericMode<T>::exact ? r == F(a) : std::abs(to_complex(r) - to_complex(F(a))) <= kCloudTolerance;
        if (!ok) bad = a;
    }
    env["reconstruction"] = {{"checked_up_to", top}, {"exact_sum_equals_F", bad == 0}};
    if (bad) env["reconstruction"]["first_mismatch"] = bad;
    emit(out, env);
    return 0;
}

template <class T>
int cmd_hildebrand(const Options& o, const std::string& mode, std::ostream& out) {
    auto F = load_function<T>(o.function);
    std::uint64_t qmax = as_count(o.qmax, "--qmax");
    auto hi = hildebrand_coefficient(F, qmax);
    Json env = envelope("hildebrand", mode, "Hildebrand coefficient recursion");
    Json vals = Json::array();
    for (const auto& [n, v] : hi.values) vals.push_back({{"n", n}, {"value", value_to_json(v)}});
    env["q_max"] = hi.q_max;
    env["values"] = vals;
    std::uint64_t top = std::min(qmax, F.a_max()), bad = 0;
    for (std::uint64_t a = 1; a <= top && !bad; ++a) {
        T r = hildebrand_reconstruct(hi, a);
        bool ok = NumericMode<T>::exact ? r == F(a) : std::abs(to_complex(r) - to_complex(F(a))) <= kCloudTolerance;
        if (!ok) bad = a;
    }
    env["reconstruction"] = {{"checked_up_to", top}, {"equals_F", bad == 0}};
    if (bad) env["reconstruction"]["first_mismatch"] = bad;
    emit(out, env);
    return 0;
}

template <class T>
int cmd_selberg(const Options& o, const std::string& mode, std::ostream& out) {
    auto F = load_function<T>(o.function);
    auto res = selberg_decompose(F);
    Json env = envelope("selberg", mode, "Selberg factorization of semi-multiplicative functions");
    if (auto* form = std::get_if<SemiMultiplicativeForm<T>>(&res)) {
        env["semi_multiplicative"] = true;
        env["a_F"] = form->a_F;
        env["c"] = value_to_json(form->c);
        Json m = Json::array();
        for (const auto& v : form->M.values()) m.push_back(value_to_json(v));
        env["M"] = m;
    } else {
        const auto& bad = std::get<NotSemiMultiplicative>(res);
        env["semi_multiplicative"] = false;
        env["reason"] = bad.reason;
        if (bad.m) env["violated_pair"] = {bad.m, bad.n};
    }
    emit(out, env);
    return 0;
}

// ---- cloud-check / euler-selberg

template <class T>
int cmd_cloud(const Options& o, const Json& spec_json, const std::string& mode, std::ostream& out) {
    auto g = parse_spec<T>(spec_json, o.spec);
    auto rep = null_cloud_test(g, as_count(o.xmax, "--xmax"), o.tolerance);
    Json env = envelope("cloud-check", mode, "null Ramanujan cloud characterization");
    env["verdict"] = to_string(rep.verdict);
    env["N"] = rep.N;
    env["coprime_value"] = value_to_json(rep.coprime_value);
    env["exact"] = rep.exact;
    Json rs = Json::array();
    for (const auto& [a, v] : rep.sampled_R) rs.push_back({{"a", a}, {"R", value_to_json(v)}});
    env["sampled_R"] = rs;
    env["sample_consistent"] = rep.sample_consistent;
    if (!rep.note.empty()) env["note"] = rep.note;
    emit(out, env);
    return 0;
}

template <class T>
int cmd_euler_selberg(const Options& o, const Json& spec_json, const std::string& mode, std::ostream& out) {
    auto g = parse_spec<T>(spec_json, o.spec);
    std::optional<T> base;
    if (!o.base.empty()) {
        // JSON ([re, im], numbers) or a bare rational like 3/4
        Json bj = Json::parse(o.base, nullptr, false);
        if (bj.is_discarded()) bj = o.base;
        base = parse_value<T>(bj, "--base");
    }
    std::vector<std::uint64_t> as;
    if (o.as.empty())
        as.push_back(o.a);
    else
        for (double x : parse_xs(o.as)) as.push_back(as_count(x, "--as"));

    Json env = envelope("euler-selberg", mode, "finite Euler products explicit formula; Ramanujan series factorization");
    Json rows = Json::array();
    bool agree = true;
    std::uint64_t N_T = 1;
    std::string base_source;
    Json base_json;
    for (std::uint64_t a : as) {
        auto es = euler_selberg_value(g, a, base, as_count(o.xmax, "--xmax"));
        N_T = es.N_T;
        base_source = es.base_source;
        base_json = value_to_json(es.base);
        bool same = NumericMode<T>::exact ? es.value == es.factorized
                                          : std::abs(to_complex(es.value) - to_complex(es.factorized)) <=
                                                kCloudTolerance * std::max(1.0, std::abs(to_complex(es.value)));
        agree = agree && same;
        Json row{{"a", a},
                 {"value", value_to_json(es.value)},
                 {"factorized", value_to_json(es.factorized)},
                 {"forms_agree", same},
                 {"h", es.parts.h},
                 {"t", es.parts.t},
                 {"a_tilde", es.parts.a_tilde}};
        if (g.zero_default()) row["exact_sum"] = value_to_json(exact_sum(g, r_series(a)));
        rows.push_back(row);
    }
    env["N_T"] = N_T;
    env["base"] = base_json;
    env["base_source"] = base_source;
    env["values"] = rows;
    env["forms_agree"] = agree;
    emit(out, env);
    return 0;
}

// ---- lab

void require_float(const Options& o) {
    if (o.mode == "exact") throw DomainError("lab experiments run in floating mode only");
}

int cmd_lab_a2(const Options& o, std::ostream& out) {
    require_float(o);
    Complex s(o.s_re, o.s_im);
    auto g = counterexample_coefficient(s, o.p1, o.p2);
    std::uint64_t xmax = as_count(o.xmax, "--xmax");
    if (xmax < 64) throw DomainError("--xmax must be at least 64");
    auto sched = geometric_schedule(16, double(xmax), o.ratio);
    auto tr = estimate_limit(g, s_series(o.b), sched);
    Json env = envelope("lab a2", "float", "divergent coprime series family");
    Json growth;
    try {
        auto fit = growth_exponent(tr.points());
        growth = {{"status", "growing"}, {"exponent", fit.exponent}, {"r2", fit.r2},
                  {"fit_from", fit.x_from}, {"fit_to", fit.x_to}, {"points", fit.points}};
    } catch (const NotGrowing& e) {
        growth = {{"status", "not_growing"}, {"message", e.what()}};
    }
    growth["predicted_exponent"] = 1 - o.s_re;
    std::string fmt = o.format.empty() ? "json" : o.format;
    if (fmt == "csv") {
        csv_preamble(out, env);
        out << "# series=" << describe(tr.params) << " s=" << o.s_re << (o.s_im ? "+" + std::to_string(o.s_im) + "i" : "")
            << " p1=" << o.p1 << " p2=" << o.p2 << " verdict=" << to_string(tr.verdict.kind);
        if (growth["status"] == "growing") out << " exponent=" << growth["exponent"].get<double>();
        out << "\n";
        out << "x,re,im\n";
        for (const auto& [x, v] : tr.checkpoints) out << csv_x(x) << "," << csv_value(v) << "\n";
    } else if (fmt == "json") {
        env["series"] = describe(tr.params);
        env["s"] = value_to_json(s);
        env["p1"] = o.p1;
        env["p2"] = o.p2;
        env["p1_divides_b"] = o.b % o.p1 == 0;
        env["verdict"] = verdict_json(tr.verdict);
        env["growth"] = growth;
        Json pts = Json::array();
        for (const auto& [x, v] : tr.checkpoints) pts.push_back({{"x", x}, {"value", value_to_json(v)}});
        env["checkpoints"] = pts;
        emit(out, env);
    } else {
        throw ParseError("--format: expected csv or json");
    }
    return 0;
}

int cmd_lab_contraction(const Options& o, std::ostream& out) {
    require_float(o);
    ContractionExperiment exp;
    exp.alpha = Complex(o.alpha_re, o.alpha_im);
    exp.rho = o.rho;
    exp.ell = Complex(o.ell, 0);
    branch_of(exp.alpha, exp.rho);
    exp.h_source = synthetic_source(exp.ell / (1.0 + exp.alpha), Complex(o.beta, 0), Complex(o.gamma, 0));
    double xmax = double(as_count(o.xmax, "--xmax"));
    if (o.points < 2) throw DomainError("--points must be at least 2");
    std::vector<double> xs;
    for (std::size_t i = 0; i < o.points; ++i)
        xs.push_back(std::floor(10.0 * std::pow(xmax / 10.0, double(i) / double(o.points - 1))));
    xs.back() = xmax;
    auto rep = converse_limit_demo(exp, xs);
    Json env = envelope("lab contraction", "float", "converse convergence theorem");
    env["branch"] = to_string(rep.branch);
    env["alpha"] = value_to_json(exp.alpha);
    env["rho"] = exp.rho;
    env["ell"] = value_to_json(exp.ell);
    env["H_source"] = "synthetic: ell/(1+alpha) + beta/(1+n) + gamma/(1+n)^2";
    env["predicted_H_limit"] = value_to_json(rep.predicted_H);
    env["H_limit"] = value_to_json(rep.H_limit);
    env["K_limit"] = value_to_json(rep.K_limit);
    env["H_from_K"] = value_to_json(rep.H_from_K);
    env["H_error"] = rep.H_error;
    env["K_error"] = rep.K_error;
    env["H_from_K_error"] = rep.H_from_K_error;
    env["extrapolation"] = "Richardson, f(x) -> 2 f(x) - f(x/2) at the last checkpoint";
    env["residuals_monotone_from"] = rep.monotone_from;
    Json pts = Json::array();
    for (std::size_t i = 0; i < xs.size(); ++i)
        pts.push_back({{"x", xs[i]}, {"H", value_to_json(rep.H[i])}, {"K", value_to_json(rep.K[i])},
                       {"residual", rep.residuals[i]}});
    env["checkpoints"] = pts;
    emit(out, env);
    return 0;
}

int cmd_lab_squarefree(const Options& o, std::ostream& out) {
    require_float(o);
    std::uint64_t x = as_count(o.x, "--x");
    auto st = squarefree_stats(x);
    Json env = envelope("lab squarefree", "float", "square-free counts and truncated Dirichlet series");
    env["x"] = x;
    env["count"] = st.count;
    env["ratio"] = st.ratio;
    env["six_over_pi_squared"] = kSixOverPiSquared;
    env["ratio_error"] = std::abs(st.ratio - kSixOverPiSquared);
    if (o.with_dirichlet) {
        Complex s(o.s_re, o.s_im);
        auto sd = sf_dirichlet(s, o.b, x);
        env["dirichlet"] = {{"s", value_to_json(s)},
                            {"b", o.b},
                            {"partial", value_to_json(sd.partial)},
                            {"C1", sd.C1},
                            {"C2", value_to_json(sd.C2)},
                            {"zeta_ratio", value_to_json(sd.zeta_ratio)},
                            {"predicted", value_to_json(sd.predicted)},
                            {"abs_difference", std::abs(sd.partial - sd.predicted)}};
    }
    emit(out, env);
    return 0;
}

void error_json(std::ostream& err, const std::string& kind, const std::string& message, const std::string& condition,
                int code) {
    Json e;
    e["tool"] = "ramexp";
    e["version"] = RAMEXP_VERSION;
    e["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    if (!condition.empty()) e["error"]["condition"] = condition;
    err << e.dump() << "\n";
}

template <class F>
int with_mode(const std::string& mode, F&& f) {
    if (mode == "exact") return f(QComplex{});
    return f(Complex{});
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Ramanujan expansion toolkit", "ramexp"};
    app.set_version_flag("--version", std::string(RAMEXP_VERSION));
    app.require_subcommand(1);
    app.add_option("--mode", o.mode, "exact, float or auto")->check(CLI::IsMember({"exact", "float", "auto"}));

    auto* ramsum = app.add_subcommand("ramsum", "Ramanujan sum c_q(a), or a table of them");
    ramsum->add_option("q_a", o.positional, "q and a")->expected(0, 2);
    ramsum->add_option("--table", o.table, "qmax amax")->expected(2);
    ramsum->add_flag("--kluyver", o.kluyver, "use the Kluyver divisor sum");
    ramsum->add_option("--format", o.format, "text, json or csv");

    auto* classify = app.add_subcommand("classify", "prime classes and conductors of a coefficient spec");
    classify->add_option("spec", o.spec, "coefficient spec JSON")->required();
    classify->add_flag("--finiteness", o.finiteness, "probe the four finiteness conditions");
    classify->add_option("--xmax", o.xmax, "scan budget for --finiteness");

    auto* series = app.add_subcommand("series", "partial sums of R, S, L or F series");
    series->add_option("--spec", o.spec, "coefficient spec JSON")->required();
    series->add_option("--kind", o.kind, "R, S, L or F");
    series->add_option("--a", o.a);
    series->add_option("--b", o.b);
    series->add_option("--c", o.c);
    series->add_option("--d", o.d);
    series->add_option("--xs", o.xs, "start:stop:step, geom:start:stop:ratio or a comma list");
    series->add_option("--format", o.format, "csv or json");

    auto* verify = app.add_subcommand("verify-identities", "residuals of the partial-sum identities");
    verify->add_option("--spec", o.spec, "coefficient spec JSON (random finite spec when omitted)");
    verify->add_option("--seed", o.seed);
    verify->add_option("--xmax", o.xmax, "checks x = 1..xmax");
    verify->add_option("--identity", o.identities, "restrict to named identities");

    auto* canonical = app.add_subcommand("canonical", "canonical coefficient of a multiplicative F");
    canonical->add_option("function", o.function, "F JSON")->required();
    canonical->add_option("--qmax", o.qmax);

    auto* hildebrand = app.add_subcommand("hildebrand", "Hildebrand coefficient of F");
    hildebrand->add_option("function", o.function, "F JSON")->required();
    hildebrand->add_option("--qmax", o.qmax);

    auto* cloud = app.add_subcommand("cloud-check", "null cloud test");
    cloud->add_option("spec", o.spec, "coefficient spec JSON")->required();
    cloud->add_option("--xmax", o.xmax, "scan budget when the series is not finite");
    cloud->add_option("--tolerance", o.tolerance);

    auto* selberg = app.add_subcommand("selberg", "semi-multiplicative decomposition of F");
    selberg->add_option("function", o.function, "F JSON")->required();

    auto* es = app.add_subcommand("euler-selberg", "R_G(a) from the finite Euler product");
    es->add_option("spec", o.spec, "coefficient spec JSON")->required();
    es->add_option("--a", o.a);
    es->add_option("--as", o.as, "several a, same syntax as --xs");
    es->add_option("--base", o.base, "R_G(N_T) if known");
    es->add_option("--xmax", o.xmax, "scan budget for estimating the base");

    auto* lab = app.add_subcommand("lab", "numerical experiments");
    lab->require_subcommand(1);
    auto* a2 = lab->add_subcommand("a2", "coprime series of the divergent family");
    a2->add_option("--s", o.s_re);
    a2->add_option("--s-im", o.s_im);
    a2->add_option("--p1", o.p1);
    a2->add_option("--p2", o.p2);
    a2->add_option("--b", o.b);
    a2->add_option("--xmax", o.xmax);
    a2->add_option("--ratio", o.ratio, "checkpoint spacing");
    a2->add_option("--format", o.format, "json or csv");
    auto* contraction = lab->add_subcommand("contraction", "converse limit demo");
    contraction->add_option("--alpha", o.alpha_re);
    contraction->add_option("--alpha-im", o.alpha_im);
    contraction->add_option("--rho", o.rho);
    contraction->add_option("--ell", o.ell);
    contraction->add_option("--beta", o.beta);
    contraction->add_option("--gamma", o.gamma);
    contraction->add_option("--xmax", o.xmax);
    contraction->add_option("--points", o.points);
    auto* sqf = lab->add_subcommand("squarefree", "square-free density and Dirichlet series");
    sqf->add_option("--x", o.x);
    sqf->add_flag("--dirichlet", o.with_dirichlet, "also evaluate the truncated Dirichlet series");
    sqf->add_option("--s", o.s_re);
    sqf->add_option("--s-im", o.s_im);
    sqf->add_option("--b", o.b);

    // command-specific defaults that differ from the shared fields
    bool xmax_given = false;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        error_json(err, "usage", e.what(), "", 2);
        return 2;
    }
    for (auto* sc : {classify, verify, cloud, es, a2, contraction})
        if (sc->parsed() && sc->count("--xmax")) xmax_given = true;

    try {
        if (ramsum->parsed()) return cmd_ramsum(o, out);
        if (canonical->parsed() || hildebrand->parsed() || selberg->parsed()) {
            std::string mode = resolve_function_mode(o.mode);
            return with_mode(mode, [&](auto tag) {
                using T = decltype(tag);
                if (canonical->parsed()) return cmd_canonical<T>(o, mode, out);
                if (hildebrand->parsed()) return cmd_hildebrand<T>(o, mode, out);
                return cmd_selberg<T>(o, mode, out);
            });
        }
        if (lab->parsed()) {
            if (a2->parsed()) {
                if (!xmax_given) o.xmax = 1e6;
                return cmd_lab_a2(o, out);
            }
            if (contraction->parsed()) {
                if (!xmax_given) o.xmax = 1e5;
                return cmd_lab_contraction(o, out);
            }
            return cmd_lab_squarefree(o, out);
        }
        if (verify->parsed() && o.spec.empty()) {
            std::string mode = resolve_spec_mode(o.mode, Json::object());
            return with_mode(mode, [&](auto tag) { return cmd_verify<decltype(tag)>(o, nullptr, mode, out); });
        }
        if ((classify->parsed() || cloud->parsed() || es->parsed()) && !xmax_given) o.xmax = 1e5;
        Json spec_json = read_json_file(o.spec);
        std::string mode = resolve_spec_mode(o.mode, spec_json);
        return with_mode(mode, [&](auto tag) {
            using T = decltype(tag);
            if (classify->parsed()) return cmd_classify<T>(o, spec_json, mode, out);
            if (series->parsed()) return cmd_series<T>(o, spec_json, mode, out);
            if (verify->parsed()) return cmd_verify<T>(o, &spec_json, mode, out);
            if (cloud->parsed()) return cmd_cloud<T>(o, spec_json, mode, out);
            return cmd_euler_selberg<T>(o, spec_json, mode, out);
        });
    } catch (const PreconditionError& e) {
        error_json(err, e.kind(), e.what(), e.condition(), 2);
        return 2;
    } catch (const UsageError& e) {
        error_json(err, e.kind(), e.what(), "", 2);
        return 2;
    } catch (const std::exception& e) {
        error_json(err, "internal", e.what(), "", 1);
        return 1;
    }
}
