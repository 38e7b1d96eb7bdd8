#pragma once

// Growth diagnostics for x_{n+2} x_n = x_{n+1}^{d1} G(x_{n+1}) with
// x_0 = x_1 = 1. Writing L_n = log x_n and D = d1 + d2,
//     L_{n+1} - D L_n + L_{n-1} = log c + alpha_n,
//     alpha_n = log(G(x_n) / (c x_n^{d2})),
// whose dominant root lambda = (D + sqrt(D^2 - 4)) / 2 gives L_n ~ C lambda^n.
// All functions take the decimal precision explicitly.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "engelcf/real.hpp"
#include "engelcf/sequences.hpp"

namespace engelcf {

inline constexpr unsigned kDefaultDigits = 50;

/// Larger root of t^2 - (d1 + d2) t + 1. Throws DegenerateRoot if d1 + d2 <= 2.
Real dominant_root(unsigned d1, unsigned d2, unsigned digits = kDefaultDigits);

struct LambdaReconstruction {
    std::size_t n = 0;
    Real exact;  // closed formula in lambda and alpha_1 .. alpha_{n-1}
    Real truth;  // log x_n from the integer
    Real relative_error() const;  // |exact - truth| / max(1, truth)
};

/// Closed-form L_n against log x_n for one index n >= 0.
LambdaReconstruction reconstruct_lambda_n(const SecondOrderSpec& spec, std::size_t n,
                                          unsigned digits = kDefaultDigits, BitBudget budget = {});

/// Same for n = 0 .. n_max, sharing one generated sequence.
std::vector<LambdaReconstruction> reconstruct_lambda_range(const SecondOrderSpec& spec, std::size_t n_max,
                                                           unsigned digits = kDefaultDigits,
                                                           BitBudget budget = {});

/// alpha_k for k = 1 .. terms.size()-1 from recurrence terms x_0, x_1, ...
std::vector<Real> alpha_terms(const SecondOrderSpec& spec, const std::vector<BigInt>& terms, mpfr_prec_t precision);

struct CEstimate {
    Real value;
    Real error_bound;   // bound on the omitted tail of the alpha series
    std::size_t terms = 0;  // alpha terms summed
    Real lambda;
};

/// C = log c (1 - 1/lambda) / ((D - 2)(lambda - 1/lambda))
///   + sum_k lambda^{-k} alpha_k / (lambda - 1/lambda),
/// truncated once a term drops below 1e-15 of the running value, or after
/// max_terms terms when max_terms > 0.
CEstimate estimate_C(const SecondOrderSpec& spec, unsigned digits = kDefaultDigits, BitBudget budget = {},
                     std::size_t max_terms = 0);

struct EmpiricalC {
    Real value;
    Real change;  // |estimate(n) - estimate(n - 1)|
    std::size_t n = 0;
    Real lambda;
};

/// C' in log X_n ~ C' lambda^n for a lifted third-order spec, from
/// (log X_{n+2} - log X_n) / (lambda^{n+2} - lambda^n), which removes both
/// the additive constant and the (-1)^n mode of the lifted recurrence.
/// Throws DegenerateRoot when spec is not a lift.
EmpiricalC estimate_C_lift(const ThirdOrderSpec& spec, std::size_t n_max = 12, unsigned digits = kDefaultDigits,
                           BitBudget budget = {});

/// log x_n + log(c)/(D - 2) - C lambda^n; tends to 0.
Real prefactor_residual(const SecondOrderSpec& spec, const BigInt& x_n, std::size_t n, const CEstimate& c);

struct GrowthRow {
    std::size_t n = 0;
    Real exponent;  // log x_{n+1} / log x_n
    bool holds = false;  // x_{n+1} > x_n^{lambda - epsilon}
};

struct GrowthReport {
    Real lambda;
    double epsilon = 0.1;
    std::vector<GrowthRow> rows;
    /// Smallest n from which every row holds.
    std::optional<std::size_t> threshold;
};

/// Rows for Engel indices n >= 2 with x_{n+1} available.
GrowthReport growth_report(const EngelSequence& x, const Real& lambda, double epsilon = 0.1,
                           unsigned digits = kDefaultDigits);

struct RothRecord {
    std::size_t n = 0;
    std::size_t q_bits = 0;
    Real lower;  // from |S - S_n| <= 2 / x_{n+1}, rounded down
    Real upper;  // from |S - S_n| >= 1 / x_{n+1}, rounded up
};

struct RothReport {
    std::vector<RothRecord> records;
    /// lower bracket of the deepest record minus 2
    Real delta;
};

/// -log|S - S_n| / log x_n bracketed for n = 2 .. depth + 1.
RothReport roth_exponents(const EngelSequence& x, std::size_t depth, unsigned digits = kDefaultDigits);
RothReport roth_exponents(std::unique_ptr<EngelSource> source, std::size_t depth, unsigned digits = kDefaultDigits);

}  // namespace engelcf
