#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ramexp/coefficients.hpp"
#include "ramexp/series.hpp"

namespace ramexp {

// K(x) = H(x) + alpha H(x / rho); H depends on floor(x) only.
struct ContractionExperiment {
    Complex alpha{0.5, 0};
    double rho = 2;
    Complex ell{1.5, 0};
    std::function<Complex(std::uint64_t)> h_source;
};

enum class Branch { Contraction, Dilation };
const char* to_string(Branch b);
Branch branch_of(Complex alpha, double rho);

// H(n) = limit + beta/(1+n) + gamma/(1+n)^2
std::function<Complex(std::uint64_t)> synthetic_source(Complex limit, Complex beta, Complex gamma = {});

struct ContractionReport {
    Branch branch = Branch::Contraction;
    std::vector<double> xs;
    std::vector<Complex> H, K;
    Complex K_limit{};       // Richardson estimate from K(x/2), K(x) at the last checkpoint
    Complex H_limit{};       // same for H
    Complex H_from_K{};      // K_limit / (1 + alpha)
    Complex predicted_H{};   // ell / (1 + alpha)
    double K_error = 0;      // |K_limit - ell|
    double H_error = 0;      // |H_limit - predicted_H|
    double H_from_K_error = 0;
    std::vector<double> residuals;  // |H(x) - predicted_H|
    double monotone_from = 0;       // residuals non-increasing from this checkpoint on
};

ContractionReport converse_limit_demo(const ContractionExperiment& exp, const std::vector<double>& xs);

// G(p1) = p1^(1-s) with zero tail, G(p2) = -p2^-s, G(p) = -p^-s elsewhere.
CoefficientSpec<Complex> counterexample_coefficient(Complex s, std::uint64_t p1, std::uint64_t p2);

// Power-law fit over checkpoints with x >= sqrt(x_max); NotGrowing unless slope > 0.05 and r2 >= 0.9.
GrowthFit growth_exponent(const std::vector<TracePoint>& trace);

struct SquarefreeStats {
    std::uint64_t count = 0;
    double ratio = 0;
};
SquarefreeStats squarefree_stats(std::uint64_t x);

struct SfDirichlet {
    Complex partial{};
    double C1 = 0;
    Complex C2{};
    Complex zeta_ratio{};  // zeta(s) / zeta(2s)
    Complex predicted{};   // C1 x^(1-s)/(1-s) + C2 zeta(s)/zeta(2s)
};
SfDirichlet sf_dirichlet(Complex s, std::uint64_t b, std::uint64_t x);

// Riemann zeta away from s = 1 (Borwein's alternating-series method).
Complex zeta(Complex s);

inline constexpr double kSixOverPiSquared = 0.60792710185402662866;

}  // namespace ramexp
