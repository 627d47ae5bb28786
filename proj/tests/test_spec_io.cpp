#include <doctest.h>

#include <random>

#include "ramexp/error.hpp"
#include "ramexp/generators.hpp"
#include "ramexp/spec_io.hpp"

using namespace ramexp;
using Q = QComplex;

namespace {
Q r(long long n, long long d = 1) { return Q(Rational(n, d)); }

std::string parse_error_of(const std::string& text) {
    try {
        parse_spec<Q>(Json::parse(text), "mem");
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("values: numbers, rational strings and pairs") {
    CHECK(parse_value<Q>(Json(3), "v") == r(3));
    CHECK(parse_value<Q>(Json("-3/4"), "v") == r(-3, 4));
    CHECK(parse_value<Q>(Json("0.25"), "v") == r(1, 4));
    CHECK(parse_value<Q>(Json("010/-08"), "v") == r(-5, 4));
    CHECK(parse_value<Q>(Json(0.125), "v") == r(1, 8));
    CHECK(parse_value<Q>(Json::parse(R"(["1/2", -2])"), "v") == Q(Rational(1, 2), Rational(-2)));
    CHECK(parse_value<Complex>(Json::parse("[0.5, 1.5]"), "v") == Complex(0.5, 1.5));
    CHECK(parse_value<Complex>(Json("1/3"), "v") == Complex(1.0 / 3, 0));
    CHECK_THROWS_AS(parse_value<Q>(Json("one"), "v"), ParseError);
    CHECK_THROWS_AS(parse_value<Q>(Json::parse("[1, 2, 3]"), "v"), ParseError);
    CHECK_THROWS_AS(parse_value<Q>(Json("1/0"), "v"), ParseError);
}

TEST_CASE("spec file: frozen example") {
    auto g = load_spec<Q>("data/transparent.json");
    CHECK(g(3) == r(2));
    CHECK(g(9) == r(4));
    CHECK(g(125) == r(3));
    CHECK(g(7) == r(0));
    auto cd = conductors(g);
    CHECK(cd.N == 225);
    CHECK(cd.N_T == 25);

    auto e = load_spec<Q>("data/euler.json");
    CHECK(e(16) == r(16));
    CHECK(e(7 * 7 * 7) == r(1));
    auto pl = load_spec<Complex>("data/power_law.json");
    CHECK(std::abs(pl(10) - Complex(0.01, 0)) < 1e-15);
}

TEST_CASE("parse errors carry file and pointer") {
    try {
        load_spec<Q>("data/bad_value.json");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("data/bad_value.json:/primes/7/values/1") != std::string::npos);
    }
    CHECK(parse_error_of(R"({"primes": {"4": {"values": [1]}}})").find("mem:/primes/4") != std::string::npos);
    CHECK(parse_error_of(R"({"primes": {"3": {"values": []}}})").find("mem:/primes/3/values") != std::string::npos);
    CHECK(parse_error_of(R"({"default": "sometimes"})").find("mem:/default") != std::string::npos);
    CHECK(parse_error_of(R"({"colour": 1})").find("mem:/colour") != std::string::npos);
    CHECK(parse_error_of(R"({"primes": {"3": {"values": [1], "tail": {"tag": "geometric"}}}})")
              .find("mem:/primes/3/tail") != std::string::npos);
    CHECK(parse_error_of(R"({"default": {"tag": "power_law", "s": "1/2"}})").find("mem") != std::string::npos);
    CHECK_THROWS_AS(load_spec<Q>("data/missing.json"), ParseError);
}

TEST_CASE("spec round trip through JSON") {
    std::mt19937_64 rng(71);
    gen::SpecShape shape;
    shape.allow_complex = true;
    for (int i = 0; i < 50; ++i) {
        auto g = gen::random_finite_spec<Q>(rng, shape);
        auto back = parse_spec<Q>(Json::parse(spec_to_json(g).dump()), "rt");
        for (std::uint64_t n = 1; n <= 500; ++n) CHECK(back(n) == g(n));
    }
    CoefficientSpec<Q> neg({}, PowerLaw{Complex(3, 0), true});
    auto nb = parse_spec<Q>(spec_to_json(neg), "rt");
    for (std::uint64_t n = 1; n <= 50; ++n) CHECK(nb(n) == neg(n));
}

TEST_CASE("function files") {
    auto id = load_function<Q>("data/identity.json");
    CHECK(id.a_max() == 100);
    CHECK(id(37) == r(37));
    auto phi = parse_function<Q>(Json::parse(R"({"function": "phi", "a_max": 12})"), "m");
    CHECK(phi(12) == r(4));
    auto sig = parse_function<Q>(Json::parse(R"({"function": "sigma", "a_max": 12})"), "m");
    CHECK(sig(12) == r(28));
    auto drs = parse_function<Q>(Json::parse(R"({"function": "divisor_reciprocal_sum", "a_max": 12})"), "m");
    CHECK(drs(6) == r(2));
    auto unit = parse_function<Q>(Json::parse(R"({"function": "unit", "a_max": 5})"), "m");
    CHECK(unit(1) == r(1));
    CHECK(unit(5) == r(0));
    auto vals = parse_function<Q>(Json::parse(R"({"values": [1, "1/2", [0, 1]]})"), "m");
    CHECK(vals(3) == Q(Rational(0), Rational(1)));
    CHECK_THROWS_AS(parse_function<Q>(Json::parse(R"({"function": "zeta", "a_max": 5})"), "m"), ParseError);
    CHECK_THROWS_AS(parse_function<Q>(Json::parse(R"({"function": "id"})"), "m"), ParseError);
    CHECK_THROWS_AS(parse_function<Q>(Json::parse(R"({"values": []})"), "m"), ParseError);
}

TEST_CASE("output encoding") {
    CHECK(value_to_json(Complex(0.5, -1)) == Json::parse("[0.5, -1.0]"));
    CHECK(value_to_json(Q(Rational(-3, 4), Rational(0))) == Json::parse(R"(["-3/4", "0"])"));
    CHECK(index_to_json(kInfinite) == Json("inf"));
    CHECK(index_to_json(3) == Json(3));
}
