#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ramexp/coefficients.hpp"
#include "ramexp/series.hpp"

namespace ramexp {

// Square-free-vanishing G_F with R_{G_F} = F, for multiplicative F with F(1) = 1.
// Prime powers are tabulated while p^(v-1) <= min(q_max, a_max of F); ZeroTail beyond.
template <class T>
CoefficientSpec<T> canonical_coefficient(const TabulatedFunction<T>& F, std::uint64_t q_max);

// Values on square-full arguments n = q rad q, keyed by n.
template <class T>
struct HildebrandCoefficient {
    std::uint64_t q_max = 0;
    std::map<std::uint64_t, T> values;
    const T& at(std::uint64_t n) const;
};

template <class T>
HildebrandCoefficient<T> hildebrand_coefficient(const TabulatedFunction<T>& F, std::uint64_t q_max);
template <class T>
T hildebrand_reconstruct(const HildebrandCoefficient<T>& hi, std::uint64_t a);

template <class T>
struct CmCloudResult {
    std::optional<CoefficientSpec<T>> coefficient;  // empty: no completely multiplicative member
    std::string reason;
    std::string convergence_check;  // "exact" or "heuristic"
    Complex coprime_sum{};          // last partial sum of F'(q) mu(q) / q
};

template <class T>
CmCloudResult<T> cm_cloud_coefficient(const TabulatedFunction<T>& F, double tolerance = 1e-2);

// H_G(q) = G(q N_T) mu^2(q).
template <class T>
class OpacityCore {
public:
    OpacityCore() = default;
    OpacityCore(std::uint64_t n_t, std::map<std::uint64_t, T> prime_values, DefaultRule rule);

    std::uint64_t n_t() const { return n_t_; }
    const std::map<std::uint64_t, T>& prime_values() const { return primes_; }
    const DefaultRule& default_rule() const { return rule_; }
    T at_prime(std::uint64_t p) const;
    T operator()(std::uint64_t q) const;  // 0 off the square-free numbers
    std::map<std::uint64_t, T> tabulate(std::uint64_t q_max) const;
    // H as a spec; only finite support (zero default) is representable.
    CoefficientSpec<T> as_spec() const;
    bool finite_support() const { return std::holds_alternative<ZeroOnPrimes>(rule_); }

private:
    std::uint64_t n_t_ = 1;
    std::map<std::uint64_t, T> primes_;  // primes where H differs from the default rule
    DefaultRule rule_ = ZeroOnPrimes{};
};

template <class T>
OpacityCore<T> opacity_core(const CoefficientSpec<T>& g);

template <class T>
struct SemiMultiplicativeForm {
    std::uint64_t a_F = 1;
    T c{};
    TabulatedFunction<T> M;  // M(n) = F(a_F n) / c on n <= a_max / a_F
};

struct NotSemiMultiplicative {
    std::string reason;
    std::uint64_t m = 0, n = 0;  // first violated coprime pair, when there is one
};

template <class T>
std::variant<SemiMultiplicativeForm<T>, NotSemiMultiplicative> selberg_decompose(const TabulatedFunction<T>& F);

template <class T>
struct Reconstruction {
    CoefficientSpec<T> G;
    std::vector<std::uint64_t> relative_simply_bad;
    std::string analytic_checks;  // "exact" or "heuristic"
    std::uint64_t verified_up_to = 0;
    bool verified = false;        // R_G = F on 1..verified_up_to
    std::uint64_t first_mismatch = 0;
};

template <class T>
Reconstruction<T> reconstruct_from_core(const SemiMultiplicativeForm<T>& F, const OpacityCore<T>& H, std::uint64_t N,
                                        std::uint64_t q_max);

enum class CloudVerdict { InNullCloud, NotInNullCloud, Inconclusive };
const char* to_string(CloudVerdict v);

struct NullCloudReport {
    CloudVerdict verdict = CloudVerdict::Inconclusive;
    std::uint64_t N = 1;
    Complex coprime_value{};
    bool exact = false;
    std::vector<std::pair<std::uint64_t, Complex>> sampled_R;  // a <= 30
    bool sample_consistent = true;
    std::string note;
};

template <class T>
NullCloudReport null_cloud_test(const CoefficientSpec<T>& g, std::uint64_t x_budget, double tolerance = 1e-6);

template <class T>
struct EulerSelbergValue {
    T value{};           // product over prime powers of a / N_T
    T factorized{};      // D(h) C(rad N_T / rad t) E(t)/E(N_T) E(a~)/C(a~) base
    T base{};            // R_G(N_T)
    std::string base_source;
    std::uint64_t N_T = 1;
    RamanujanFactorization parts;
};

template <class T>
EulerSelbergValue<T> euler_selberg_value(const CoefficientSpec<T>& g, std::uint64_t a,
                                         std::optional<T> base = std::nullopt, std::uint64_t x_budget = 100000);

// M_G(p^K) from the explicit product.
template <class T>
T euler_selberg_local(const CoefficientSpec<T>& g, const PrimeClassification& pc, unsigned K);

}  // namespace ramexp
