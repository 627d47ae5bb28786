#include "ramexp/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "ramexp/error.hpp"

namespace ramexp {

template <> Complex parse_value<Complex>(const Json& j, const std::string& where);
template <> QComplex parse_value<QComplex>(const Json& j, const std::string& where);

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw ParseError(where + ": " + msg); }

Rational scalar_rational(const Json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number_unsigned()) return Rational(static_cast<long long>(j.get<unsigned long long>()));
        if (j.is_number_float()) return parse_rational(j.dump());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const UsageError& e) {
        fail(where, e.what());
    }
    fail(where, "expected a number or a rational string");
}

double scalar_double(const Json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        // rationals like "1/3" are fine in float mode too
        try {
            return parse_rational(j.get<std::string>()).convert_to<double>();
        } catch (const UsageError& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a number or a rational string");
}

template <class T>
T make_value(const Json& re, const Json& im, const std::string& where);

template <>
Complex make_value<Complex>(const Json& re, const Json& im, const std::string& where) {
    return Complex(scalar_double(re, where + "/0"), im.is_null() ? 0.0 : scalar_double(im, where + "/1"));
}

template <>
QComplex make_value<QComplex>(const Json& re, const Json& im, const std::string& where) {
    return QComplex(scalar_rational(re, where + "/0"), im.is_null() ? Rational(0) : scalar_rational(im, where + "/1"));
}

template <class T>
TailRule<T> parse_tail(const Json& j, const std::string& where) {
    if (j.is_null()) return ZeroTail{};
    if (j.is_string()) {
        std::string tag = j.get<std::string>();
        if (tag == "zero") return ZeroTail{};
        if (tag == "one") return OneTail{};
        fail(where, "unknown tail tag '" + tag + "'");
    }
    if (!j.is_object() || !j.contains("tag")) fail(where, "tail must be an object with a tag");
    std::string tag = j["tag"].get<std::string>();
    if (tag == "zero") return ZeroTail{};
    if (tag == "one") return OneTail{};
    if (tag == "geometric") {
        if (!j.contains("ratio")) fail(where, "geometric tail needs a ratio");
        return GeometricTail<T>{parse_value<T>(j["ratio"], where + "/ratio")};
    }
    fail(where + "/tag", "unknown tail tag '" + tag + "'");
}

DefaultRule parse_default(const Json& j, const std::string& where) {
    if (j.is_null()) return ZeroOnPrimes{};
    std::string tag;
    if (j.is_string())
        tag = j.get<std::string>();
    else if (j.is_object() && j.contains("tag") && j["tag"].is_string())
        tag = j["tag"].get<std::string>();
    else
        fail(where, "default must be a tag or an object with a tag");
    if (tag == "zero_on_primes") return ZeroOnPrimes{};
    if (tag == "one_everywhere") return OneEverywhere{};
    if (tag == "power_law") {
        if (!j.is_object() || !j.contains("s")) fail(where, "power_law needs s");
        PowerLaw pl{parse_value<Complex>(j["s"], where + "/s"), false};
        if (j.contains("negate")) {
            if (!j["negate"].is_boolean()) fail(where + "/negate", "expected a boolean");
            pl.negate = j["negate"].get<bool>();
        }
        return pl;
    }
    fail(where, "unknown default tag '" + tag + "'");
}

template <class T>
T builtin(const std::string& name, std::uint64_t a) {
    Factorization f = factorize(a);
    if (name == "id") return from_int<T>(static_cast<long long>(a));
    if (name == "phi") return from_int<T>(static_cast<long long>(euler_phi(f)));
    if (name == "one") return from_int<T>(1);
    if (name == "unit") return from_int<T>(a == 1 ? 1 : 0);
    long long sigma = 0;
    for (std::uint64_t d : divisors(a)) sigma += static_cast<long long>(d);
    if (name == "sigma") return from_int<T>(sigma);
    if (name == "divisor_reciprocal_sum") return from_ratio<T>(sigma, static_cast<long long>(a));
    throw ParseError("unknown builtin function '" + name + "'");
}

}  // namespace

template <>
Complex parse_value<Complex>(const Json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) fail(where, "complex value must be [re, im]");
        return make_value<Complex>(j[0], j[1], where);
    }
    return Complex(scalar_double(j, where), 0.0);
}

template <>
QComplex parse_value<QComplex>(const Json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) fail(where, "complex value must be [re, im]");
        return make_value<QComplex>(j[0], j[1], where);
    }
    return QComplex(scalar_rational(j, where));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": byte " + std::to_string(e.byte) + ": malformed JSON");
    }
}

template <class T>
CoefficientSpec<T> parse_spec(const Json& j, const std::string& source) {
    if (!j.is_object()) fail(source, "spec must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "default" && it.key() != "primes") fail(source + ":/" + it.key(), "unknown field");
    DefaultRule rule = parse_default(j.contains("default") ? j["default"] : Json(), source + ":/default");
    std::map<std::uint64_t, PrimeEntry<T>> entries;
    if (j.contains("primes")) {
        const Json& ps = j["primes"];
        if (!ps.is_object()) fail(source + ":/primes", "expected an object keyed by primes");
        for (auto it = ps.begin(); it != ps.end(); ++it) {
            std::string where = source + ":/primes/" + it.key();
            std::uint64_t p = 0;
            try {
                std::size_t used = 0;
                p = std::stoull(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument("junk");
            } catch (const std::exception&) {
                fail(where, "key is not a decimal integer");
            }
            if (p < 2 || !is_prime(p)) fail(where, std::to_string(p) + " is not prime");
            const Json& e = it.value();
            if (!e.is_object() || !e.contains("values") || !e["values"].is_array())
                fail(where, "entry needs a values list");
            PrimeEntry<T> pe;
            const Json& vs = e["values"];
            for (std::size_t k = 0; k < vs.size(); ++k)
                pe.values.push_back(parse_value<T>(vs[k], where + "/values/" + std::to_string(k)));
            if (pe.values.empty()) fail(where + "/values", "at least one value is required");
            pe.tail = parse_tail<T>(e.contains("tail") ? e["tail"] : Json(), where + "/tail");
            entries.emplace(p, std::move(pe));
        }
    }
    try {
        return CoefficientSpec<T>(std::move(entries), rule);
    } catch (const DomainError& e) {
        fail(source, e.what());
    }
}

template <class T>
CoefficientSpec<T> load_spec(const std::string& path) {
    return parse_spec<T>(read_json_file(path), path);
}

template <class T>
TabulatedFunction<T> parse_function(const Json& j, const std::string& source) {
    if (!j.is_object()) fail(source, "function file must be a JSON object");
    if (j.contains("values")) {
        const Json& vs = j["values"];
        if (!vs.is_array() || vs.empty()) fail(source + ":/values", "expected a non-empty list");
        std::vector<T> out;
        for (std::size_t i = 0; i < vs.size(); ++i)
            out.push_back(parse_value<T>(vs[i], source + ":/values/" + std::to_string(i)));
        return TabulatedFunction<T>(std::move(out));
    }
    if (j.contains("function")) {
        if (!j["function"].is_string()) fail(source + ":/function", "expected a name");
        if (!j.contains("a_max") || !j["a_max"].is_number_unsigned() || j["a_max"].get<std::uint64_t>() == 0)
            fail(source + ":/a_max", "expected a positive integer");
        std::string name = j["function"].get<std::string>();
        std::uint64_t A = j["a_max"].get<std::uint64_t>();
        try {
            builtin<T>(name, 1);
        } catch (const ParseError& e) {
            fail(source + ":/function", e.what());
        }
        return TabulatedFunction<T>::generate(A, [&](std::uint64_t a) { return builtin<T>(name, a); });
    }
    fail(source, "expected 'values' or 'function'");
}

template <class T>
TabulatedFunction<T> load_function(const std::string& path) {
    return parse_function<T>(read_json_file(path), path);
}

Json value_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }
Json value_to_json(const QComplex& z) { return Json::array({z.re.str(), z.im.str()}); }

Json index_to_json(unsigned idx) {
    if (idx == kInfinite) return "inf";
    return idx;
}

template <class T>
Json spec_to_json(const CoefficientSpec<T>& g) {
    Json out;
    std::visit(
        [&](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ZeroOnPrimes>)
                out["default"] = {{"tag", "zero_on_primes"}};
            else if constexpr (std::is_same_v<R, OneEverywhere>)
                out["default"] = {{"tag", "one_everywhere"}};
            else
                out["default"] = {{"tag", "power_law"}, {"s", value_to_json(r.s)}, {"negate", r.negate}};
        },
        g.default_rule());
    Json ps = Json::object();
    for (const auto& [p, e] : g.primes()) {
        Json vals = Json::array();
        for (const auto& v : e.values) vals.push_back(value_to_json(v));
        Json tail;
        std::visit(
            [&](const auto& t) {
                using U = std::decay_t<decltype(t)>;
                if constexpr (std::is_same_v<U, ZeroTail>)
                    tail = {{"tag", "zero"}};
                else if constexpr (std::is_same_v<U, OneTail>)
                    tail = {{"tag", "one"}};
                else
                    tail = {{"tag", "geometric"}, {"ratio", value_to_json(t.ratio)}};
            },
            e.tail);
        ps[std::to_string(p)] = {{"values", vals}, {"tail", tail}};
    }
    out["primes"] = ps;
    return out;
}

#define RAMEXP_INSTANTIATE(T)                                                          \
    template CoefficientSpec<T> parse_spec<T>(const Json&, const std::string&);        \
    template CoefficientSpec<T> load_spec<T>(const std::string&);                      \
    template TabulatedFunction<T> parse_function<T>(const Json&, const std::string&);  \
    template TabulatedFunction<T> load_function<T>(const std::string&);                \
    template Json spec_to_json<T>(const CoefficientSpec<T>&);

RAMEXP_INSTANTIATE(Complex)
RAMEXP_INSTANTIATE(QComplex)

}  // namespace ramexp
