#include "engelcf/bigint.hpp"

#include <cctype>
#include <utility>

#include "engelcf/errors.hpp"

namespace engelcf {

std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

std::vector<std::string> to_decimal(const std::vector<BigInt>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(to_decimal(v));
    return out;
}

BigInt parse_bigint(std::string_view text) {
    std::size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
    if (start == text.size()) throw ParseError("empty integer literal");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw ParseError("invalid integer literal '" + std::string(text) + "'");
        }
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return BigInt(digits, 10);
}

Rational::Rational(const BigInt& num) : num_(num), den_(1) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ValidationError("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    num_ = q.get_num();
    den_ = q.get_den();
}

Rational::Rational(mpq_class q) {
    q.canonicalize();
    num_ = q.get_num();
    den_ = q.get_den();
}

mpq_class Rational::to_mpq() const { return mpq_class(num_, den_); }

std::string Rational::str() const {
    if (den_ == 1) return to_decimal(num_);
    return to_decimal(num_) + "/" + to_decimal(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}
Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
}
Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}
Rational operator/(const Rational& a, const Rational& b) {
    if (b.num() == 0) throw ValidationError("division by zero");
    return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.to_mpq(), b.to_mpq());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace engelcf
