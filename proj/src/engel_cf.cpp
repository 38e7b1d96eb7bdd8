#include "engelcf/engel_cf.hpp"

#include <algorithm>
#include <utility>

#include "engelcf/errors.hpp"

namespace engelcf {

std::size_t generic_length(std::size_t n) {
    if (n == 0) throw ValidationError("n must be >= 1");
    if (n <= 2) return n;
    return 3 * (std::size_t{1} << (n - 2)) - 1;
}

std::size_t z2eq2_length(std::size_t n) {
    if (n == 0) throw ValidationError("n must be >= 1");
    if (n <= 2) return n;
    if (n == 3) return 5;
    return 5 * (std::size_t{1} << (n - 3));
}

std::size_t ones_tail_length(std::size_t n, const BigInt& u) {
    if (n == 0) throw ValidationError("n must be >= 1");
    if (n <= 3) return n;
    if (u == 2) return (std::size_t{1} << (n - 3)) + 2;
    return (std::size_t{1} << (n - 2)) + 1;
}

std::vector<BigInt> generic_step(std::span<const BigInt> cur, const BigInt& z_next) {
    const std::size_t len = cur.size();
    if (len < 2) throw ValidationError("generic step needs at least two coefficients");
    std::vector<BigInt> out;
    out.reserve(2 * len + 1);
    out.assign(cur.begin(), cur.end());
    out.push_back(z_next - 1);
    out.emplace_back(1);
    out.push_back(cur[len - 1] - 1);
    for (std::size_t j = len - 1; j-- > 1;) out.push_back(cur[j]);
    return out;
}

std::vector<BigInt> z2eq2_step(std::span<const BigInt> cur, const BigInt& z_next) {
    const std::size_t len = cur.size();
    if (len < 4) throw ValidationError("z2 = 2 step needs at least four coefficients");
    std::vector<BigInt> out;
    out.reserve(2 * len);
    out.assign(cur.begin(), cur.end() - 1);
    out.emplace_back(1);
    out.emplace_back(1);
    out.push_back(z_next - 1);
    for (std::size_t j = len; j-- > 3;) out.push_back(cur[j]);
    out.emplace_back(2);
    return out;
}

std::vector<BigInt> raw_generic_partial_cf(std::span<const BigInt> z, std::size_t n) {
    if (n == 0) throw ValidationError("n must be >= 1");
    if (z.size() + 1 < n) throw ValidationError("not enough factors for n = " + std::to_string(n));
    if (n == 1) return {BigInt(1)};
    if (n == 2) return {BigInt(1), z[0]};
    std::vector<BigInt> a{BigInt(1), z[0] - 1, BigInt(1), z[1] - 1, z[0]};
    for (std::size_t k = 3; k < n; ++k) a = generic_step(a, z[k - 1]);
    return a;
}

namespace {

FactorClass prefix_class(const FactorSequence& zs, std::size_t n) {
    if (zs.count() + 1 < n) throw ValidationError("not enough factors for n = " + std::to_string(n));
    const auto& z = zs.factors();
    return FactorSequence::classify(std::span<const BigInt>(z.data(), std::max<std::size_t>(n, 2) - 1));
}

}  // namespace

PartialCF generic_partial_cf(const FactorSequence& zs, std::size_t n) {
    if (n < 3) throw ValidationError("generic construction starts at n = 3");
    if (prefix_class(zs, n) != FactorClass::Generic) throw ClassMismatch("factors are not GENERIC");
    return {n, CFExpansion(raw_generic_partial_cf(zs.factors(), n))};
}

PartialCF z2eq2_partial_cf(const FactorSequence& zs, std::size_t n) {
    if (n < 4) throw ValidationError("z2 = 2 construction starts at n = 4");
    if (prefix_class(zs, n) != FactorClass::Z2Equals2) throw ClassMismatch("factors are not Z2_EQUALS_2");
    const BigInt& z3 = zs.z(3);
    const BigInt& z4 = zs.z(4);
    std::vector<BigInt> a{1, 1, 1, z3 - 1, 2, z4 - 1, 1, 1, z3 - 1, 2};
    for (std::size_t k = 4; k < n; ++k) a = z2eq2_step(a, zs.z(k + 1));
    return {n, CFExpansion(std::move(a))};
}

PartialCF partial_cf(const FactorSequence& zs, std::size_t n) {
    if (n < 1) throw ValidationError("n must be >= 1");
    const FactorClass cls = prefix_class(zs, n);
    if (cls == FactorClass::Generic && n >= 3) return generic_partial_cf(zs, n);
    if (cls == FactorClass::Z2Equals2 && n >= 4) return z2eq2_partial_cf(zs, n);
    return {n, expand_rational(partial_sum(from_factors(zs, n), n))};
}

namespace {

std::vector<BigInt> common_certified(const CFExpansion& a, const CFExpansion& b) {
    const std::size_t shorter = std::min(a.size(), b.size());
    std::size_t m = 0;
    while (m < shorter && a[m] == b[m]) ++m;
    m = std::min(m, shorter - 1);
    return {a.vector().begin(), a.vector().begin() + static_cast<std::ptrdiff_t>(m)};
}

}  // namespace

std::vector<BigInt> certified_prefix(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw ValidationError("empty enclosure");
    return common_certified(expand_rational(lo), expand_rational(hi));
}

std::string certified_decimal(const Rational& lo, const Rational& hi, std::size_t max_digits) {
    if (hi < lo) throw ValidationError("empty enclosure");
    const auto floor_scaled = [](const Rational& r, const BigInt& scale) {
        BigInt out;
        const BigInt num = r.num() * scale;
        mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), r.den().get_mpz_t());
        return out;
    };
    BigInt scale = 1;
    if (floor_scaled(lo, scale) != floor_scaled(hi, scale)) return "";
    std::size_t digits = 0;
    while (digits < max_digits) {
        const BigInt next = scale * 10;
        if (floor_scaled(lo, next) != floor_scaled(hi, next)) break;
        scale = next;
        ++digits;
    }
    std::string text = to_decimal(floor_scaled(lo, scale));
    if (digits == 0) return text;
    if (text.size() <= digits) text.insert(0, digits + 1 - text.size(), '0');
    text.insert(text.size() - digits, ".");
    return text;
}

Enclosure enclose_series(const EngelSequence& x, std::size_t n) {
    if (n + 1 > x.size()) throw ValidationError("enclosure needs x_{n+1}");
    mpq_class s = 0;
    for (std::size_t j = 1; j <= n; ++j) s += mpq_class(1, x.x(j));
    Rational lo{mpq_class(s)};
    return {lo, lo + Rational(2, x.x(n + 1))};
}

std::string certified_series_value(std::unique_ptr<EngelSource> source, std::size_t digits) {
    EngelCursor cursor(std::move(source));
    mpq_class s = 1;
    for (std::size_t n = 1;; ++n) {
        if (!cursor.ensure(n + 1)) throw ValidationError("factor source exhausted before the value settled");
        if (n >= 2) s += mpq_class(1, cursor.x(n));
        const Rational lo{mpq_class(s)};
        const std::string text = certified_decimal(lo, lo + Rational(2, cursor.x(n + 1)), digits);
        const auto point = text.find('.');
        if (point != std::string::npos && text.size() - point - 1 >= digits) return text;
    }
}

bool in_generic_alphabet(const BigInt& a, std::span<const BigInt> z) {
    if (z.empty()) return a == 1;
    if (a == 1 || a == z[0] || a == z[0] - 2) return true;
    return std::any_of(z.begin(), z.end(), [&](const BigInt& zj) { return a == zj - 1; });
}

bool in_ones_tail_alphabet(const BigInt& a, const BigInt& u) {
    return a == 1 || a == u - 2 || a == u - 1 || a == u || a == u + 2;
}

// ---------------------------------------------------------------- stream

CoefficientStream::CoefficientStream(std::unique_ptr<EngelSource> source, bool force_oracle)
    : cursor_(std::move(source)), force_oracle_(force_oracle) {}

void CoefficientStream::require(std::size_t n) {
    if (!cursor_.ensure(n)) {
        throw ValidationError("factor source exhausted before x_" + std::to_string(n));
    }
}

void CoefficientStream::check_factor(std::size_t j) const {
    const BigInt& z = cursor_.z(j);
    const FactorClass cls = classification();
    bool ok = true;
    if (cls == FactorClass::Generic) ok = j == 2 ? z >= 3 : z >= 2;
    else if (cls == FactorClass::Z2Equals2) ok = j == 2 ? z == 2 : z >= 2;
    if (!ok) {
        throw ClassMismatch("z_" + std::to_string(j) + " = " + to_decimal(z) + " breaks the " +
                            to_string(cls) + " classification");
    }
}

void CoefficientStream::accept(std::vector<BigInt> prefix) {
    if (prefix.size() < certified_.size()) return;
    if (!std::equal(certified_.begin(), certified_.end(), prefix.begin())) {
        throw InvariantViolation("certified coefficient changed at n = " + std::to_string(n_));
    }
    certified_ = std::move(prefix);
}

void CoefficientStream::record_small_lengths(std::size_t upto) {
    mpq_class s = 0;
    for (std::size_t j = 1; j <= upto; ++j) {
        s += mpq_class(1, cursor_.x(j));
        lengths_.push_back(expand_rational(Rational(mpq_class(s))).size());
    }
}

void CoefficientStream::extend(std::size_t k) {
    const FactorClass cls = classification();
    if (!force_oracle_ && (cls == FactorClass::Generic || cls == FactorClass::Z2Equals2)) {
        extend_recursive(k);
    } else {
        extend_oracle(k);
    }
}

void CoefficientStream::extend_recursive(std::size_t k) {
    const bool generic = classification() == FactorClass::Generic;
    if (n_ == 0) {
        const std::size_t base = generic ? 3 : 4;
        require(base);
        for (std::size_t j = 2; j <= base; ++j) check_factor(j);
        record_small_lengths(base - 1);
        const BigInt& z2 = cursor_.z(2);
        const BigInt& z3 = cursor_.z(3);
        if (generic) current_ = {1, z2 - 1, 1, z3 - 1, z2};
        else current_ = {1, 1, 1, z3 - 1, 2, cursor_.z(4) - 1, 1, 1, z3 - 1, 2};
        n_ = base;
        lengths_.push_back(current_.size());
        const std::size_t final_count = generic ? current_.size() : current_.size() - 1;
        accept({current_.begin(), current_.begin() + static_cast<std::ptrdiff_t>(final_count)});
    }
    while (current_.size() <= k) {
        require(n_ + 1);
        check_factor(n_ + 1);
        const BigInt& z = cursor_.z(n_ + 1);
        current_ = generic ? generic_step(current_, z) : z2eq2_step(current_, z);
        ++n_;
        lengths_.push_back(current_.size());
        const std::size_t final_count = generic ? current_.size() : current_.size() - 1;
        accept({current_.begin(), current_.begin() + static_cast<std::ptrdiff_t>(final_count)});
    }
}

void CoefficientStream::extend_oracle(std::size_t k) {
    while (certified_.size() < k) {
        ++n_;
        require(n_ + 1);
        if (n_ >= 2) sum_ += Rational(1, cursor_.x(n_));
        const CFExpansion lo = expand_rational(sum_);
        const CFExpansion hi = expand_rational(sum_ + Rational(2, cursor_.x(n_ + 1)));
        lengths_.push_back(lo.size());
        accept(common_certified(lo, hi));
    }
}

StreamBatch CoefficientStream::batch() const {
    return {classification(), n_, certified_, lengths_};
}

StreamBatch stream(std::unique_ptr<EngelSource> source, std::size_t k) {
    if (k < 1) throw ValidationError("K must be >= 1");
    CoefficientStream s(std::move(source));
    s.extend(k);
    return s.batch();
}

// ---------------------------------------------------------------- identities

StepIdentityReport verify_step_identities(const FactorSequence& zs, std::size_t n) {
    if (n < 3) throw ValidationError("identities start at n = 3");
    if (prefix_class(zs, n + 1) != FactorClass::Generic) throw ClassMismatch("factors are not GENERIC");
    const auto a_n = raw_generic_partial_cf(zs.factors(), n);
    const auto a_next = raw_generic_partial_cf(zs.factors(), n + 1);
    const auto table_n = convergents(a_n);
    const auto table_next = convergents(a_next);
    const auto m = table_n.matrix(table_n.size() - 1);
    const auto t = table_next.matrix(table_next.size() - 1);
    const BigInt& z = zs.z(n + 1);
    const BigInt delta = m.p - m.q;

    StepIdentityReport r;
    r.n = n;
    r.length_n = a_n.size();
    r.length_next = a_next.size();
    r.det_n = m.determinant();
    r.p_next = t.p;
    r.q_next = t.q;
    r.p_next_prev = t.p_prev;
    r.q_next_prev = t.q_prev;
    r.x_next = from_factors(zs, n + 1).x(n + 1);

    if (r.det_n != -1) throw IdentityViolation("det M_n != -1", n);
    if (m.q != from_factors(zs, n).x(n)) throw IdentityViolation("q_{l_n - 1} != x_n", n);
    if (t.p != z * m.q * m.p + 1) throw IdentityViolation("p~ != z q p + 1", n + 1);
    if (t.q != z * m.q * m.q) throw IdentityViolation("q~ != z q^2", n + 1);
    if (t.q != r.x_next) throw IdentityViolation("q~ != x_{n+1}", n + 1);
    if (t.p_prev != z * m.p * delta - 1) throw IdentityViolation("p~' != z p (p - q) - 1", n + 1);
    if (t.q_prev != z * m.q * delta - 1) throw IdentityViolation("q~' != z q (p - q) - 1", n + 1);
    return r;
}

}  // namespace engelcf
