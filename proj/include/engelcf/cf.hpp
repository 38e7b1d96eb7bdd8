#pragma once

// Finite continued fractions [a0; a1, ..., am] over arbitrary-precision
// integers: convergents via the 2x2 matrix product, exact evaluation, the
// Euclidean expansion of a rational, and removal of zero partial quotients.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "engelcf/bigint.hpp"

namespace engelcf {

/// A normalized expansion: a0 >= 0 and a_j >= 1 for j >= 1.
class CFExpansion {
  public:
    CFExpansion() = default;
    /// Throws ZeroCoefficient / ValidationError if not normalized.
    explicit CFExpansion(std::vector<BigInt> coefficients);

    std::span<const BigInt> coefficients() const { return coeffs_; }
    const std::vector<BigInt>& vector() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }
    const BigInt& operator[](std::size_t j) const { return coeffs_[j]; }
    const BigInt& back() const { return coeffs_.back(); }

    /// Final coefficient >= 2 whenever the length exceeds one.
    bool is_canonical() const;

    friend bool operator==(const CFExpansion&, const CFExpansion&) = default;

  private:
    std::vector<BigInt> coeffs_;
};

struct Convergent {
    BigInt p;
    BigInt q;
};

/// p_j/q_j for j = 0..m. Row -1 is the identity column (1, 0), so
/// matrix(j) is the full product of the first j+1 factors in
/// [[a,1],[1,0]] form.
class ConvergentTable {
  public:
    struct Matrix {
        BigInt p, p_prev, q, q_prev;
        BigInt determinant() const { return p * q_prev - p_prev * q; }
    };

    explicit ConvergentTable(std::vector<Convergent> rows) : rows_(std::move(rows)) {}

    std::size_t size() const { return rows_.size(); }
    const Convergent& operator[](std::size_t j) const { return rows_[j]; }
    const Convergent& back() const { return rows_.back(); }
    Matrix matrix(std::size_t j) const;

  private:
    std::vector<Convergent> rows_;
};

ConvergentTable convergents(std::span<const BigInt> coefficients);
inline ConvergentTable convergents(const CFExpansion& cf) { return convergents(cf.coefficients()); }

Rational evaluate(std::span<const BigInt> coefficients);
inline Rational evaluate(const CFExpansion& cf) { return evaluate(cf.coefficients()); }

/// Canonical expansion of r >= 0 by the Euclidean algorithm.
CFExpansion expand_rational(const Rational& r);

/// Applies [..., a, 0, b, ...] -> [..., a+b, ...] left to right until no
/// zero remains at positions >= 1. Throws TrailingZero if the last
/// coefficient is (or becomes) zero.
CFExpansion normalize_zeros(std::vector<BigInt> raw);

/// Folds a trailing 1 into its predecessor: [..., a, 1] -> [..., a+1].
CFExpansion merge_trailing_one(const CFExpansion& cf);

/// "[a0;a1,...,am]", or "[a0]" for a single coefficient.
std::string format_cf(std::span<const BigInt> coefficients);
inline std::string format_cf(const CFExpansion& cf) { return format_cf(cf.coefficients()); }

/// Inverse of format_cf. Accepts zeros so raw sequences can be parsed.
std::vector<BigInt> parse_cf(std::string_view text);

}  // namespace engelcf
