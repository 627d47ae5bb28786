#include "ramexp/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ramexp/error.hpp"

namespace ramexp {

QComplex& QComplex::operator*=(const QComplex& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) {
    Rational den = o.re * o.re + o.im * o.im;
    if (den == 0) throw DomainError("division by zero");
    Rational r = (re * o.re + im * o.im) / den;
    Rational i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex to_complex(const QComplex& z) {
    return Complex(z.re.convert_to<double>(), z.im.convert_to<double>());
}

bool abs_between(const QComplex& z, long long lo, long long hi) {
    Rational n2 = z.re * z.re + z.im * z.im;
    return n2 >= Rational(lo) * lo && n2 <= Rational(hi) * hi;
}

bool abs_between(const Complex& z, long long lo, long long hi) {
    double a = std::abs(z);
    double slack = kFloatTolerance * std::max(1.0, a);
    return a >= double(lo) - slack && a <= double(hi) + slack;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const QComplex& z) {
    if (z.im == 0) return z.re.str();
    std::string s = z.re.str();
    s += (z.im < 0) ? "-" : "+";
    Rational a = abs(z.im);
    s += (a == 1) ? std::string("i") : a.str() + "i";
    return s;
}

std::string to_string(const Complex& z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

namespace {
BigInt parse_integer(std::string s, const std::string& text) {
    bool neg = !s.empty() && s[0] == '-';
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.erase(0, 1);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("malformed number '" + text + "'");
    s.erase(0, std::min(s.find_first_not_of('0'), s.size() - 1));
    BigInt v(s);
    return neg ? BigInt(-v) : v;
}
}  // namespace

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw ParseError("empty number");

    auto slash = t.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num = parse_integer(t.substr(0, slash), text);
            BigInt den = parse_integer(t.substr(slash + 1), text);
            if (den == 0) throw ParseError("zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        // decimal with optional exponent, converted exactly
        std::size_t epos = t.find_first_of("eE");
        std::string mant = t.substr(0, epos);
        long long exp10 = 0;
        if (epos != std::string::npos) exp10 = std::stoll(t.substr(epos + 1));
        bool neg = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            neg = mant[0] == '-';
            mant.erase(0, 1);
        }
        std::size_t dot = mant.find('.');
        std::string digits = mant;
        if (dot != std::string::npos) {
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
            exp10 -= static_cast<long long>(mant.size() - dot - 1);
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("malformed number '" + text + "'");
        // a leading 0 would make BigInt read octal
        digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
        Rational q{BigInt(digits)};
        BigInt ten(10);
        BigInt scale = boost::multiprecision::pow(ten, static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
        q = exp10 < 0 ? q / Rational(scale) : q * Rational(scale);
        return neg ? Rational(-q) : q;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed number '" + text + "'");
    }
}

}  // namespace ramexp
