#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "ramexp/coefficients.hpp"

namespace ramexp {

enum class SeriesKind { R, S, L, F };

// Every kind is a specialisation of F_G(a,b,c): R = F(a,1,1), S = F(1,b,1), L = F(1,1,d).
struct SeriesParams {
    SeriesKind kind = SeriesKind::R;
    std::uint64_t a = 1, b = 1, c = 1;
};

inline SeriesParams r_series(std::uint64_t a) { return {SeriesKind::R, a, 1, 1}; }
inline SeriesParams s_series(std::uint64_t b) { return {SeriesKind::S, 1, b, 1}; }
inline SeriesParams l_series(std::uint64_t d) { return {SeriesKind::L, 1, 1, d}; }
inline SeriesParams f_series(std::uint64_t a, std::uint64_t b, std::uint64_t c) { return {SeriesKind::F, a, b, c}; }
std::string describe(const SeriesParams& sp);

// Largest x a scan may reach: min(sieve bound, 10^7).
std::uint64_t scan_budget();

// Prefix sums of one series up to x_max, summed in increasing q.
template <class T>
class SeriesEvaluator {
public:
    SeriesEvaluator(const CoefficientSpec<T>& g, SeriesParams sp, std::uint64_t x_max);

    T at(double x) const;  // constant on [n, n+1)
    std::uint64_t x_max() const { return prefix_.size() - 1; }
    const SeriesParams& params() const { return sp_; }

private:
    SeriesParams sp_;
    std::vector<T> prefix_;
};

// G(cq) c_q(a) [(q,b)=1]
template <class T> T series_term(const CoefficientSpec<T>& g, const SeriesParams& sp, std::uint64_t q);
template <class T> T partial_sum(const CoefficientSpec<T>& g, const SeriesParams& sp, double x);
// Full value when only finitely many terms are nonzero (zero default rule).
template <class T> T exact_sum(const CoefficientSpec<T>& g, const SeriesParams& sp);

enum class Identity { SRec, RS, RRec, LS, LRec, LR, FGTransform };
inline constexpr Identity kAllIdentities[] = {Identity::SRec, Identity::RS,   Identity::RRec,       Identity::LS,
                                              Identity::LRec, Identity::LR, Identity::FGTransform};
const char* to_string(Identity id);
Identity identity_from_string(const std::string& name);

struct IdentityParams {
    std::uint64_t a = 1, b = 1, c = 1, d = 1, p = 0;
    unsigned w = 1;
};

struct IdentityResidual {
    double max_abs = 0;
    bool exact_zero = true;  // every difference compared equal to 0 in the active mode
    std::size_t checked = 0;
};

template <class T>
IdentityResidual identity_residual(Identity id, const CoefficientSpec<T>& g, const IdentityParams& ip,
                                   const std::vector<double>& xs);

// Random parameters meeting the identity's side conditions; nullopt when the spec admits none.
template <class T>
std::optional<IdentityParams> sample_identity_params(Identity id, const CoefficientSpec<T>& g, std::mt19937_64& rng,
                                                     std::string* why = nullptr);

struct LimitOptions {
    double cauchy_tol = 1e-6;
    std::size_t window = 5;
    double min_exponent = 0.05;
    double min_r2 = 0.99;
};

struct Verdict {
    enum class Kind { Converged, Diverging, Inconclusive };
    Kind kind = Kind::Inconclusive;
    Complex value{};          // Converged
    double error_bound = 0;   // Converged: spread over the Cauchy window
    double exponent = 0;      // Diverging
    double r2 = 0;            // Diverging
    std::string note;
};
const char* to_string(Verdict::Kind k);

struct TracePoint {
    double x;
    Complex sum;
};

struct GrowthFit {
    double exponent = 0;
    double r2 = 0;
    double x_from = 0, x_to = 0;
    std::size_t points = 0;
};

// Least squares of log|sum| on log x over checkpoints with x >= sqrt(x_max).
std::optional<GrowthFit> fit_growth(const std::vector<TracePoint>& pts);
Verdict judge_trace(const std::vector<TracePoint>& pts, const LimitOptions& opt = {});

template <class T>
struct SeriesTrace {
    SeriesParams params;
    std::vector<std::pair<double, T>> checkpoints;
    Verdict verdict;
    std::optional<T> exact;
    std::vector<TracePoint> points() const;
};

template <class T>
SeriesTrace<T> estimate_limit(const CoefficientSpec<T>& g, const SeriesParams& sp, const std::vector<double>& schedule,
                              const LimitOptions& opt = {});

// Roughly geometric, strictly increasing, ending exactly at x_max.
std::vector<double> geometric_schedule(double x_min, double x_max, double ratio);

struct ProbeResult {
    std::string series;
    Verdict verdict;
};
struct ConditionReport {
    std::string name;
    Verdict::Kind verdict = Verdict::Kind::Inconclusive;
    std::vector<ProbeResult> probes;
};
struct FinitenessReport {
    std::uint64_t N = 1;
    std::vector<ConditionReport> conditions;  // (1) .. (4)
    bool consistent = true;
    bool absolute_convergence_impossible = false;
};

template <class T> FinitenessReport finiteness_check(const CoefficientSpec<T>& g, std::uint64_t x_budget);

}  // namespace ramexp
