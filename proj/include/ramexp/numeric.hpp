#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace ramexp {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Gaussian rational: exact complex arithmetic over Q.
class QComplex {
public:
    Rational re{0};
    Rational im{0};

    QComplex() = default;
    QComplex(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
    QComplex(long long n) : re(n), im(0) {}
    QComplex(int n) : re(n), im(0) {}

    QComplex& operator+=(const QComplex& o) { re += o.re; im += o.im; return *this; }
    QComplex& operator-=(const QComplex& o) { re -= o.re; im -= o.im; return *this; }
    QComplex& operator*=(const QComplex& o);
    QComplex& operator/=(const QComplex& o);

    friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
    friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
    friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
    friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
    friend QComplex operator-(const QComplex& a) { return QComplex(-a.re, -a.im); }
    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
};

// Relative tolerance for knife-edge comparisons in floating mode.
inline constexpr double kFloatTolerance = 1e-12;
// Equality-style postconditions of cloud constructions in floating mode.
inline constexpr double kCloudTolerance = 1e-9;

template <class T> struct NumericMode;
template <> struct NumericMode<Complex> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
};
template <> struct NumericMode<QComplex> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
};

inline Complex to_complex(const Complex& z) { return z; }
Complex to_complex(const QComplex& z);

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const QComplex& z) { return std::abs(to_complex(z)); }

inline bool is_zero(const QComplex& z) { return z.re == 0 && z.im == 0; }
inline bool is_zero(const Complex& z) { return std::abs(z) <= kFloatTolerance; }

inline bool same_value(const QComplex& a, const QComplex& b) { return a == b; }
inline bool same_value(const Complex& a, const Complex& b) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= kFloatTolerance * scale;
}

// lo <= |z| <= hi; exact through |z|^2 for Gaussian rationals.
bool abs_between(const QComplex& z, long long lo, long long hi);
bool abs_between(const Complex& z, long long lo, long long hi);

template <class T> T from_int(long long n);
template <> inline Complex from_int<Complex>(long long n) { return Complex(double(n), 0.0); }
template <> inline QComplex from_int<QComplex>(long long n) { return QComplex(n); }

template <class T> T from_ratio(long long num, long long den);
template <> inline Complex from_ratio<Complex>(long long num, long long den) {
    return Complex(double(num) / double(den), 0.0);
}
template <> inline QComplex from_ratio<QComplex>(long long num, long long den) {
    return QComplex(Rational(num, den));
}

// Lossy for Complex -> QComplex is not offered; going down is always allowed.
template <class T> T convert(const QComplex& z);
template <> inline QComplex convert<QComplex>(const QComplex& z) { return z; }
template <> inline Complex convert<Complex>(const QComplex& z) { return to_complex(z); }

template <class T> T ipow(T base, unsigned k) {
    T r = from_int<T>(1);
    while (k) {
        if (k & 1u) r *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return r;
}

std::string to_string(const QComplex& z);
std::string to_string(const Complex& z);
std::string to_string(const Rational& q);

// Accepts "7", "-3/4", "0.125", "1e-3". Decimal input is converted exactly.
Rational parse_rational(const std::string& text);

}  // namespace ramexp
