#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "commands.hpp"
#include "ramexp/clouds.hpp"
#include "ramexp/error.hpp"
#include "ramexp/lab.hpp"
#include "ramexp/ramanujan.hpp"
#include "ramexp/spec_io.hpp"

namespace py = pybind11;
using namespace ramexp;

namespace {

// exact values cross the boundary as (re, im) rational strings
using ExactPair = std::pair<std::string, std::string>;
ExactPair exact_pair(const QComplex& z) { return {to_string(z.re), to_string(z.im)}; }

SeriesParams params(const std::string& kind, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    if (kind == "R") return r_series(a);
    if (kind == "S") return s_series(b);
    if (kind == "L") return l_series(c);
    if (kind == "F") return f_series(a, b, c);
    throw DomainError("kind must be one of R, S, L, F");
}

template <class T>
CoefficientSpec<T> spec_from(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("<spec>: ") + e.what());
    }
    return parse_spec<T>(j, "<spec>");
}

py::dict classify_dict(const std::string& spec_json) {
    auto g = spec_from<QComplex>(spec_json);
    auto cd = conductors(g);
    py::dict out;
    out["N"] = cd.N;
    out["N_T"] = cd.N_T;
    out["unlisted_primes_hypertransparent"] = cd.unlisted_hypertransparent;
    py::list primes;
    for (std::uint64_t p : g.listed_primes()) {
        auto pc = classify_prime(g, p);
        py::dict d;
        d["p"] = p;
        d["class"] = to_string(pc.cls);
        d["w"] = pc.w == kInfinite ? py::object(py::str("inf")) : py::object(py::int_(pc.w));
        d["v"] = pc.v == kInfinite ? py::object(py::str("inf")) : py::object(py::int_(pc.v));
        primes.append(d);
    }
    out["primes"] = primes;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ramanujan expansions with multiplicative coefficients";
    m.attr("__version__") = RAMEXP_VERSION;

    // domain, parse and precondition failures all derive from UsageError
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

    m.def("ramanujan_sum", [](std::uint64_t q, std::uint64_t a, const std::string& method) {
              if (method == "kluyver") return ramanujan_sum_kluyver(q, a);
              if (method != "hoelder") throw DomainError("method must be hoelder or kluyver");
              return ramanujan_sum(q, a);
          },
          py::arg("q"), py::arg("a"), py::arg("method") = "hoelder");

    m.def("factorize", [](std::uint64_t n) {
        std::vector<std::pair<std::uint64_t, unsigned>> out;
        for (const auto& pp : factorize(n).factors) out.emplace_back(pp.p, pp.e);
        return out;
    });
    m.def("mobius", [](std::uint64_t n) { return mobius(n); });
    m.def("euler_phi", [](std::uint64_t n) { return euler_phi(n); });
    m.def("radical", [](std::uint64_t n) { return radical(n); });

    m.def("classify", &classify_dict, py::arg("spec_json"));

    m.def("series_exact", [](const std::string& spec, const std::string& kind, std::uint64_t a, std::uint64_t b,
                             std::uint64_t c, std::optional<double> x) {
              auto g = spec_from<QComplex>(spec);
              auto sp = params(kind, a, b, c);
              return exact_pair(x ? partial_sum(g, sp, *x) : exact_sum(g, sp));
          },
          py::arg("spec_json"), py::arg("kind"), py::arg("a") = 1, py::arg("b") = 1, py::arg("c") = 1,
          py::arg("x") = py::none());

    m.def("series_float", [](const std::string& spec, const std::string& kind, std::uint64_t a, std::uint64_t b,
                             std::uint64_t c, double x) {
              auto g = spec_from<Complex>(spec);
              return partial_sum(g, params(kind, a, b, c), x);
          },
          py::arg("spec_json"), py::arg("kind"), py::arg("a") = 1, py::arg("b") = 1, py::arg("c") = 1,
          py::arg("x"));

    m.def("euler_selberg", [](const std::string& spec, std::uint64_t a) {
              auto es = euler_selberg_value(spec_from<QComplex>(spec), a);
              py::dict d;
              d["value"] = exact_pair(es.value);
              d["factorized"] = exact_pair(es.factorized);
              d["h"] = es.parts.h;
              d["t"] = es.parts.t;
              d["a_tilde"] = es.parts.a_tilde;
              return d;
          },
          py::arg("spec_json"), py::arg("a"));

    m.def("squarefree_count", [](std::uint64_t x) { return squarefree_stats(x).count; });
    m.def("zeta", [](Complex s) { return zeta(s); });

    // the command line, in process
    m.def("cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> all{"ramexp"};
        all.insert(all.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& s : all) argv.push_back(s.c_str());
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
