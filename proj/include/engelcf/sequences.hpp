#pragma once

// Integer sequences x_1 = 1, x_{n+1} = z_{n+1} x_n^2 with square
// divisibility, their factor sequences, exact partial sums, and the
// generators: explicit factors, second-order x_{n+2} x_n = x_{n+1}^{d1} G(x_{n+1}),
// third-order X_{n+3} X_n = X_{n+1}^{e1} X_{n+2}^{e2} H(X_{n+1}, X_{n+2}),
// and sums of u^{-c_k}.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "engelcf/bigint.hpp"

namespace engelcf {

/// Resource contract for doubly-exponential growth.
struct BitBudget {
    std::size_t max_term_bits = std::size_t{1} << 25;
    std::size_t max_total_bits = std::size_t{1} << 26;
};

/// Tracks cumulative bits against a BitBudget; throws BitBudgetExceeded.
class BudgetMeter {
  public:
    explicit BudgetMeter(BitBudget budget = {}) : budget_(budget) {}
    /// Rejects a term whose estimated size is already over the cap.
    void precheck(std::size_t estimated_bits) const;
    void charge(const BigInt& term);
    const BitBudget& budget() const { return budget_; }
    std::size_t total_bits() const { return total_; }

  private:
    BitBudget budget_;
    std::size_t total_ = 0;
};

enum class FactorClass { Generic, Z2Equals2, OnesTail, Mixed };

std::string to_string(FactorClass c);

/// Factors z_2, z_3, ... with x_n = prod_{j=2}^{n} z_j^{2^{n-j}}.
class FactorSequence {
  public:
    /// Throws ValidationError unless z_2 >= 2 and every factor is >= 1.
    explicit FactorSequence(std::vector<BigInt> z);

    /// z_j for j >= 2.
    const BigInt& z(std::size_t j) const;
    /// Number of stored factors; the largest index is count() + 1.
    std::size_t count() const { return z_.size(); }
    const std::vector<BigInt>& factors() const { return z_; }
    FactorClass classification() const { return class_; }
    /// The base u of a ONES_TAIL sequence (= z_2).
    const BigInt& u() const { return z_.front(); }

    static FactorClass classify(std::span<const BigInt> z);

    friend bool operator==(const FactorSequence& a, const FactorSequence& b) { return a.z_ == b.z_; }

  private:
    std::vector<BigInt> z_;
    FactorClass class_;
};

/// x_1 = 1 < x_2 < ... with x_n^2 | x_{n+1}.
class EngelSequence {
  public:
    /// Throws ValidationError / DivisibilityViolation.
    explicit EngelSequence(std::vector<BigInt> x);

    /// x_n for n >= 1.
    const BigInt& x(std::size_t n) const;
    /// Engel quotient y_1 = x_1, y_{n+1} = x_{n+1} / x_n.
    BigInt y(std::size_t n) const;
    std::size_t size() const { return x_.size(); }
    const std::vector<BigInt>& terms() const { return x_; }

  private:
    std::vector<BigInt> x_;
};

/// x_{n+2} x_n = x_{n+1}^{d1} G(x_{n+1}); G dense, constant term first.
struct SecondOrderSpec {
    unsigned d1 = 3;
    std::vector<BigInt> G;

    unsigned d2() const;
    const BigInt& leading() const;  // c
    BigInt eval_G(const BigInt& x) const;
    /// d1 >= 3, G(0) != 0, coefficients >= 0, G(1) >= 2. Throws ValidationError.
    void validate() const;
    friend bool operator==(const SecondOrderSpec&, const SecondOrderSpec&) = default;
};

struct BivariateTerm {
    unsigned i = 0;  // power of X_{n+1}
    unsigned j = 0;  // power of X_{n+2}
    BigInt coeff;
    friend bool operator==(const BivariateTerm&, const BivariateTerm&) = default;
};

/// X_{n+3} X_n = X_{n+1}^{e1} X_{n+2}^{e2} H(X_{n+1}, X_{n+2}).
struct ThirdOrderSpec {
    unsigned e1 = 1;
    unsigned e2 = 2;
    std::vector<BivariateTerm> H;

    BigInt eval_H(const BigInt& x, const BigInt& y) const;
    /// e1 >= 1, e2 >= 2, coefficients > 0, H divisible by neither
    /// argument, H(1,1) >= 2. Throws ValidationError.
    void validate() const;
    friend bool operator==(const ThirdOrderSpec&, const ThirdOrderSpec&) = default;
};

using RecurrenceSpec = std::variant<SecondOrderSpec, ThirdOrderSpec>;

void validate(const RecurrenceSpec& spec);
unsigned order(const RecurrenceSpec& spec);

/// Class of the Engel series the (valid) spec generates.
FactorClass classify(const RecurrenceSpec& spec);

/// Lazily produces x_0, x_1, ... from all-ones initial values, dividing
/// exactly (InexactDivision otherwise).
class RecurrenceGenerator {
  public:
    RecurrenceGenerator(RecurrenceSpec spec, BitBudget budget = {});

    BigInt next();
    std::size_t produced() const { return produced_; }
    const RecurrenceSpec& spec() const { return spec_; }

  private:
    RecurrenceSpec spec_;
    BudgetMeter meter_;
    std::vector<BigInt> window_;
    std::size_t produced_ = 0;
};

/// The first n terms x_0, ..., x_{n-1}.
std::vector<BigInt> generate_recurrence(const RecurrenceSpec& spec, std::size_t n, BitBudget budget = {});

/// e1 = e2 = d1 - 1 and H(X, Y) = G(XY), so that X_n X_{n+1} = x_n.
ThirdOrderSpec lift_spec(const SecondOrderSpec& spec);

/// Recognizes a spec produced by lift_spec and returns its base.
std::optional<SecondOrderSpec> unlift_spec(const ThirdOrderSpec& spec);

/// Reduces any run of leading 1s to a single 1.
std::vector<BigInt> strip_leading_ones(std::span<const BigInt> terms);

/// x_1..x_n from z_2..z_n.
EngelSequence from_factors(const FactorSequence& zs, std::size_t n, BitBudget budget = {});

/// z_n = x_n / x_{n-1}^2 after leading 1s are collapsed.
FactorSequence factors_from_sequence(std::span<const BigInt> x);

/// Engel-side view of recurrence output (leading 1s collapsed).
EngelSequence engel_from_terms(std::span<const BigInt> terms);

/// sum_{j=1}^{n} 1/x_j, cross-checked against the closed-form numerator
/// sum_j x_n/x_j built from factor powers (IdentityViolation on mismatch).
Rational partial_sum(const EngelSequence& x, std::size_t n);

/// z_2 = u^{c_0}, z_j = u^{c_{j-2} - 2 c_{j-3}} for j >= 3.
FactorSequence shallit_factors(const BigInt& u, std::span<const BigInt> c);

/// Produces Engel terms x_2, x_3, ... on demand.
class EngelSource {
  public:
    virtual ~EngelSource() = default;
    virtual FactorClass classification() const = 0;
    /// Next term, or nullopt for an exhausted finite source.
    virtual std::optional<BigInt> next_term() = 0;
};

std::unique_ptr<EngelSource> make_factor_source(FactorSequence zs, BitBudget budget = {});
std::unique_ptr<EngelSource> make_recurrence_source(RecurrenceSpec spec, BitBudget budget = {});
/// z = (u, 1, 1, ...): x_n = u^{2^{n-2}}, unbounded.
std::unique_ptr<EngelSource> make_ones_tail_source(const BigInt& u, BitBudget budget = {});

/// Pulls terms from a source and keeps x_1.. and z_2.. in step.
class EngelCursor {
  public:
    explicit EngelCursor(std::unique_ptr<EngelSource> source);

    FactorClass classification() const { return source_->classification(); }
    /// Makes x_n available; false if the source ran out first.
    bool ensure(std::size_t n);
    std::size_t available() const { return x_.size(); }
    const BigInt& x(std::size_t n) const { return x_.at(n - 1); }
    const BigInt& z(std::size_t j) const { return z_.at(j - 2); }
    const std::vector<BigInt>& factors() const { return z_; }
    const std::vector<BigInt>& terms() const { return x_; }

  private:
    std::unique_ptr<EngelSource> source_;
    std::vector<BigInt> x_{BigInt(1)};
    std::vector<BigInt> z_;
};

}  // namespace engelcf
