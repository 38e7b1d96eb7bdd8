#pragma once

#include <compare>
#include <string>

#include <mpfr.h>

#include "engelcf/bigint.hpp"

namespace engelcf {

/// Binary precision for a decimal digit count, plus 16 guard bits.
mpfr_prec_t digits_to_bits(unsigned digits);

/// Owning MPFR value. Binary operations round to nearest at the larger
/// of the operand precisions.
class Real {
  public:
    explicit Real(mpfr_prec_t precision = 64);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    static Real from_long(long v, mpfr_prec_t precision);
    static Real from_int(const BigInt& v, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from_rational(const Rational& v, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from_string(const std::string& text, mpfr_prec_t precision);

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_nan() const { return mpfr_nan_p(value_) != 0; }
    /// Decimal string with `digits` significant digits ("%.*Rg").
    std::string str(unsigned digits) const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real operator-() const;

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  private:
    void widen_to(const Real& o);
    mpfr_t value_;
};

Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real abs(const Real& x);
Real pow(const Real& x, long e);

/// Directed-rounding enclosure lower <= log(v) <= upper, v >= 1.
struct LogBounds {
    Real lower;
    Real upper;
};
LogBounds log_bounds(const BigInt& v, mpfr_prec_t precision);

/// log(v) rounded to nearest.
Real log_of(const BigInt& v, mpfr_prec_t precision);

}  // namespace engelcf
