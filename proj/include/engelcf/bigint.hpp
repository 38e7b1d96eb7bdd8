#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace engelcf {

using BigInt = mpz_class;

/// Number of bits in |v|; 0 for v = 0.
std::size_t bit_length(const BigInt& v);

std::string to_decimal(const BigInt& v);

/// Parses an optionally signed decimal integer. Throws ParseError.
BigInt parse_bigint(std::string_view text);

std::vector<std::string> to_decimal(const std::vector<BigInt>& values);

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
  public:
    Rational() = default;
    Rational(const BigInt& num);  // NOLINT: integers convert implicitly
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(mpq_class q);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    mpq_class to_mpq() const;

    std::string str() const;  // "p/q", or "p" when q = 1

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& other) { return *this = *this + other; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  private:
    BigInt num_{0};
    BigInt den_{1};
};

}  // namespace engelcf
