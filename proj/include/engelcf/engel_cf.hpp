#pragma once

// Continued fractions of Engel series with x_n^2 | x_{n+1}.
//
// Generic factors (z_2 >= 3, z_j >= 2): S_n has 3*2^{n-2} - 1 coefficients
// and S_{n+1} is built from S_n by
//     S_n, z_{n+1} - 1, 1, a_{last} - 1, reverse(a_1 .. a_{last-1}).
// z_2 = 2 (z_j >= 2): S_n has 5*2^{n-3} coefficients (n >= 4) and
//     a_0 .. a_{last-1}, 1, 1, z_{n+1} - 1, reverse(a_2 .. a_{last-1}), 2.
// Every coefficient of S_n survives into S_{n+1} (generic) or all but the
// last (z_2 = 2), which certifies prefixes of the infinite expansion.
// Other factor patterns go through an interval oracle:
//     S_n < S < S_n + 2 / x_{n+1}.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "engelcf/bigint.hpp"
#include "engelcf/cf.hpp"
#include "engelcf/sequences.hpp"

namespace engelcf {

struct PartialCF {
    std::size_t n = 0;
    CFExpansion coefficients;
    std::size_t length() const { return coefficients.size(); }
};

/// Expected lengths of S_n for n >= 1 (all coefficients including a_0).
std::size_t generic_length(std::size_t n);
std::size_t z2eq2_length(std::size_t n);
std::size_t ones_tail_length(std::size_t n, const BigInt& u);

/// One step of the generic recursion on raw coefficients. Zeros pass
/// through untouched, so it also yields the raw degenerate expansions.
std::vector<BigInt> generic_step(std::span<const BigInt> current, const BigInt& z_next);
std::vector<BigInt> z2eq2_step(std::span<const BigInt> current, const BigInt& z_next);

/// [1; z2-1, 1, z3-1, z2] carried forward to S_n without any class check.
std::vector<BigInt> raw_generic_partial_cf(std::span<const BigInt> z, std::size_t n);

/// Throws ClassMismatch unless zs is GENERIC; n >= 3.
PartialCF generic_partial_cf(const FactorSequence& zs, std::size_t n);

/// Throws ClassMismatch unless zs is Z2_EQUALS_2; n >= 4.
PartialCF z2eq2_partial_cf(const FactorSequence& zs, std::size_t n);

/// Expansion of S_n by whichever constructor applies, falling back to the
/// Euclidean expansion of the exact partial sum.
PartialCF partial_cf(const FactorSequence& zs, std::size_t n);

/// Coefficients guaranteed to be shared by every real in [lo, hi]: the
/// common prefix of both canonical expansions, never including the last
/// coefficient of the shorter one.
std::vector<BigInt> certified_prefix(const Rational& lo, const Rational& hi);

/// Decimal digits (truncated) common to lo and hi, at most max_digits
/// after the point. Every printed digit holds for all values in [lo, hi].
std::string certified_decimal(const Rational& lo, const Rational& hi, std::size_t max_digits);

/// Certified decimal expansion of the full series S, refining n until
/// `digits` digits after the point are settled.
std::string certified_series_value(std::unique_ptr<EngelSource> source, std::size_t digits);

struct Enclosure {
    Rational lo;
    Rational hi;
};

/// S_n < S < S_n + 2/x_{n+1}; needs x_{n+1} >= 2.
Enclosure enclose_series(const EngelSequence& x, std::size_t n);

/// Is a coefficient in {1, z2, z2-2} U {z_j - 1 : 2 <= j <= max_j}?
bool in_generic_alphabet(const BigInt& a, std::span<const BigInt> z);
/// Is a coefficient in {1, u-2, u-1, u, u+2}?
bool in_ones_tail_alphabet(const BigInt& a, const BigInt& u);

struct StreamBatch {
    FactorClass cls = FactorClass::Generic;
    std::size_t n_used = 0;
    std::vector<BigInt> certified;
    std::vector<std::size_t> lengths;  // length of the CF of S_1 .. S_{n_used}
};

/// Certified coefficients of the infinite expansion of S. Stateful:
/// extend() only appends, and each emitted coefficient is final.
class CoefficientStream {
  public:
    /// force_oracle routes every class through the interval oracle.
    explicit CoefficientStream(std::unique_ptr<EngelSource> source, bool force_oracle = false);

    /// Certifies at least k coefficients (a_0 counts). Throws
    /// BitBudgetExceeded, or ValidationError when a finite source runs dry.
    void extend(std::size_t k);

    FactorClass classification() const { return cursor_.classification(); }
    const std::vector<BigInt>& certified() const { return certified_; }
    std::size_t n_used() const { return n_; }
    const std::vector<std::size_t>& lengths() const { return lengths_; }
    const EngelCursor& cursor() const { return cursor_; }
    StreamBatch batch() const;

  private:
    void extend_recursive(std::size_t k);
    void extend_oracle(std::size_t k);
    void check_factor(std::size_t j) const;
    void require(std::size_t n);
    void record_small_lengths(std::size_t upto);
    void accept(std::vector<BigInt> prefix);

    EngelCursor cursor_;
    bool force_oracle_ = false;
    std::vector<BigInt> certified_;
    std::vector<BigInt> current_;  // coefficients of S_n in the recursive modes
    std::vector<std::size_t> lengths_;
    Rational sum_{BigInt(1)};
    std::size_t n_ = 0;
};

StreamBatch stream(std::unique_ptr<EngelSource> source, std::size_t k);

struct StepIdentityReport {
    std::size_t n = 0;
    std::size_t length_n = 0;
    std::size_t length_next = 0;
    BigInt det_n;           // det M_n, must be -1
    BigInt p_next, q_next;  // final convergent of S_{n+1}
    BigInt p_next_prev, q_next_prev;
    BigInt x_next;
};

/// Checks, from the convergent tables of S_n and S_{n+1} (generic class):
///   p~ = z q p + 1,  q~ = z q^2 = x_{n+1},
///   p~' = z p (p - q) - 1,  q~' = z q (p - q) - 1,  det M_n = -1.
/// Throws IdentityViolation naming the failing index.
StepIdentityReport verify_step_identities(const FactorSequence& zs, std::size_t n);

}  // namespace engelcf
