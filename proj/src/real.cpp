#include "engelcf/real.hpp"

#include <algorithm>
#include <cmath>

#include "engelcf/errors.hpp"

namespace engelcf {

mpfr_prec_t digits_to_bits(unsigned digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

Real::Real(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_long(long v, mpfr_prec_t precision) {
    Real r(precision);
    mpfr_set_si(r.value_, v, MPFR_RNDN);
    return r;
}

Real Real::from_int(const BigInt& v, mpfr_prec_t precision, mpfr_rnd_t rnd) {
    Real r(precision);
    mpfr_set_z(r.value_, v.get_mpz_t(), rnd);
    return r;
}

Real Real::from_rational(const Rational& v, mpfr_prec_t precision, mpfr_rnd_t rnd) {
    Real r(precision);
    const mpq_class q = v.to_mpq();
    mpfr_set_q(r.value_, q.get_mpq_t(), rnd);
    return r;
}

Real Real::from_string(const std::string& text, mpfr_prec_t precision) {
    Real r(precision);
    if (mpfr_set_str(r.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw ParseError("invalid real literal '" + text + "'");
    }
    return r;
}

std::string Real::str(unsigned digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", static_cast<int>(digits), value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

void Real::widen_to(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(value_, o.precision(), MPFR_RNDN);
}

Real& Real::operator+=(const Real& o) {
    widen_to(o);
    mpfr_add(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    widen_to(o);
    mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    widen_to(o);
    mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    widen_to(o);
    mpfr_div(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real r(*this);
    mpfr_neg(r.value_, r.value_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

namespace {

template <typename F>
Real unary(const Real& x, F f) {
    Real r(x.precision());
    f(r.get(), x.get(), MPFR_RNDN);
    return r;
}

}  // namespace

Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real abs(const Real& x) { return unary(x, mpfr_abs); }

Real pow(const Real& x, long e) {
    Real r(x.precision());
    mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

LogBounds log_bounds(const BigInt& v, mpfr_prec_t precision) {
    if (v < 1) throw ValidationError("log_bounds needs v >= 1");
    Real lo = Real::from_int(v, precision, MPFR_RNDD);
    Real hi = Real::from_int(v, precision, MPFR_RNDU);
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

Real log_of(const BigInt& v, mpfr_prec_t precision) {
    if (v < 1) throw ValidationError("log_of needs v >= 1");
    // Round the integer once at a wider precision so the log is within
    // an ulp of the exact value.
    Real wide = Real::from_int(v, precision + 64, MPFR_RNDN);
    Real r(precision);
    mpfr_log(r.get(), wide.get(), MPFR_RNDN);
    return r;
}

}  // namespace engelcf
