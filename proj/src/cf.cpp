#include "engelcf/cf.hpp"

#include <cctype>
#include <utility>

#include "engelcf/errors.hpp"

namespace engelcf {

namespace {

void check_normalized(std::span<const BigInt> a) {
    if (a.empty()) throw ValidationError("empty continued fraction");
    if (a[0] < 0) throw ValidationError("negative leading coefficient");
    for (std::size_t j = 1; j < a.size(); ++j) {
        if (a[j] == 0) throw ZeroCoefficient(j);
        if (a[j] < 0) throw ValidationError("negative partial quotient at index " + std::to_string(j));
    }
}

}  // namespace

CFExpansion::CFExpansion(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {
    check_normalized(coeffs_);
}

bool CFExpansion::is_canonical() const { return coeffs_.size() <= 1 || coeffs_.back() >= 2; }

ConvergentTable::Matrix ConvergentTable::matrix(std::size_t j) const {
    Matrix m;
    m.p = rows_.at(j).p;
    m.q = rows_[j].q;
    if (j == 0) {
        m.p_prev = 1;
        m.q_prev = 0;
    } else {
        m.p_prev = rows_[j - 1].p;
        m.q_prev = rows_[j - 1].q;
    }
    return m;
}

ConvergentTable convergents(std::span<const BigInt> a) {
    check_normalized(a);
    std::vector<Convergent> rows;
    rows.reserve(a.size());
    BigInt p_prev = 1, q_prev = 0;
    BigInt p = a[0], q = 1;
    rows.push_back({p, q});
    for (std::size_t j = 1; j < a.size(); ++j) {
        BigInt p_next = a[j] * p + p_prev;
        BigInt q_next = a[j] * q + q_prev;
        p_prev = std::exchange(p, std::move(p_next));
        q_prev = std::exchange(q, std::move(q_next));
        rows.push_back({p, q});
    }
    return ConvergentTable(std::move(rows));
}

Rational evaluate(std::span<const BigInt> a) {
    check_normalized(a);
    BigInt p_prev = 1, q_prev = 0;
    BigInt p = a[0], q = 1;
    for (std::size_t j = 1; j < a.size(); ++j) {
        BigInt p_next = a[j] * p + p_prev;
        BigInt q_next = a[j] * q + q_prev;
        p_prev = std::exchange(p, std::move(p_next));
        q_prev = std::exchange(q, std::move(q_next));
    }
    return Rational(p, q);
}

CFExpansion expand_rational(const Rational& r) {
    if (r.num() < 0) throw ValidationError("expand_rational requires r >= 0");
    std::vector<BigInt> out;
    BigInt num = r.num();
    BigInt den = r.den();
    BigInt quot, rem;
    while (den != 0) {
        mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out.push_back(quot);
        num.swap(den);
        den.swap(rem);
    }
    return CFExpansion(std::move(out));
}

CFExpansion normalize_zeros(std::vector<BigInt> raw) {
    if (raw.empty()) throw ValidationError("empty continued fraction");
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (raw[j] < 0) throw ValidationError("negative coefficient at index " + std::to_string(j));
    }
    if (raw.size() > 1 && raw.back() == 0) throw TrailingZero();
    // Every zero at j >= 1 folds its two neighbours together. Entries of
    // `out` past position 0 are >= 1, so a fold never creates a new zero
    // beyond a0.
    std::vector<BigInt> out;
    out.reserve(raw.size());
    out.push_back(std::move(raw[0]));
    std::size_t j = 1;
    while (j < raw.size()) {
        if (raw[j] == 0) {
            out.back() += raw[j + 1];
            j += 2;
        } else {
            out.push_back(std::move(raw[j]));
            ++j;
        }
    }
    return CFExpansion(std::move(out));
}

CFExpansion merge_trailing_one(const CFExpansion& cf) {
    if (cf.size() <= 1 || cf.back() != 1) return cf;
    std::vector<BigInt> a = cf.vector();
    a.pop_back();
    a.back() += 1;
    return CFExpansion(std::move(a));
}

std::string format_cf(std::span<const BigInt> a) {
    std::string out = "[";
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == 1) out += ';';
        else if (j > 1) out += ',';
        out += to_decimal(a[j]);
    }
    out += ']';
    return out;
}

std::vector<BigInt> parse_cf(std::string_view input) {
    std::string compact;
    for (char ch : input) {
        if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
    }
    std::string_view text = compact;
    if (text.size() < 3 || text.front() != '[' || text.back() != ']') {
        throw ParseError("continued fraction must look like [a0;a1,...]");
    }
    text = text.substr(1, text.size() - 2);
    std::vector<BigInt> out;
    const auto semi = text.find(';');
    out.push_back(parse_bigint(text.substr(0, semi)));
    if (semi == std::string_view::npos) return out;
    std::string_view rest = text.substr(semi + 1);
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(parse_bigint(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

}  // namespace engelcf
