#include "engelcf/sequences.hpp"

#include <algorithm>
#include <utility>

#include "engelcf/errors.hpp"

namespace engelcf {

// ---------------------------------------------------------------- budget

void BudgetMeter::precheck(std::size_t estimated_bits) const {
    if (estimated_bits > budget_.max_term_bits + 2) {
        throw BitBudgetExceeded("next term needs about " + std::to_string(estimated_bits) +
                                " bits, cap is " + std::to_string(budget_.max_term_bits));
    }
    if (total_ + estimated_bits > budget_.max_total_bits + 2) {
        throw BitBudgetExceeded("total bit budget of " + std::to_string(budget_.max_total_bits) +
                                " would be exceeded");
    }
}

void BudgetMeter::charge(const BigInt& term) {
    const std::size_t bits = bit_length(term);
    if (bits > budget_.max_term_bits) {
        throw BitBudgetExceeded("term of " + std::to_string(bits) + " bits exceeds cap of " +
                                std::to_string(budget_.max_term_bits));
    }
    total_ += bits;
    if (total_ > budget_.max_total_bits) {
        throw BitBudgetExceeded("total bit budget of " + std::to_string(budget_.max_total_bits) +
                                " exceeded");
    }
}

// ---------------------------------------------------------------- classes

std::string to_string(FactorClass c) {
    switch (c) {
        case FactorClass::Generic: return "GENERIC";
        case FactorClass::Z2Equals2: return "Z2_EQUALS_2";
        case FactorClass::OnesTail: return "ONES_TAIL";
        case FactorClass::Mixed: return "MIXED";
    }
    return "UNKNOWN";
}

FactorClass FactorSequence::classify(std::span<const BigInt> z) {
    if (z.empty()) throw ValidationError("factor sequence needs z_2");
    const BigInt& z2 = z[0];
    const auto tail = z.subspan(1);
    const bool ones = !tail.empty() && std::all_of(tail.begin(), tail.end(), [](const BigInt& v) { return v == 1; });
    if (ones) return FactorClass::OnesTail;
    const bool big = std::all_of(tail.begin(), tail.end(), [](const BigInt& v) { return v >= 2; });
    if (big && z2 >= 3) return FactorClass::Generic;
    if (big && z2 == 2) return FactorClass::Z2Equals2;
    return FactorClass::Mixed;
}

FactorSequence::FactorSequence(std::vector<BigInt> z) : z_(std::move(z)) {
    if (z_.empty()) throw ValidationError("factor sequence needs z_2");
    if (z_[0] < 2) throw ValidationError("z_2 must be >= 2");
    for (std::size_t k = 1; k < z_.size(); ++k) {
        if (z_[k] < 1) throw ValidationError("z_" + std::to_string(k + 2) + " must be >= 1");
    }
    class_ = classify(z_);
}

const BigInt& FactorSequence::z(std::size_t j) const {
    if (j < 2 || j - 2 >= z_.size()) {
        throw ValidationError("factor z_" + std::to_string(j) + " not available");
    }
    return z_[j - 2];
}

EngelSequence::EngelSequence(std::vector<BigInt> x) : x_(std::move(x)) {
    if (x_.empty() || x_[0] != 1) throw ValidationError("Engel sequence must start with x_1 = 1");
    if (x_.size() >= 2 && x_[1] < 2) throw ValidationError("x_2 must be >= 2");
    for (std::size_t k = 1; k < x_.size(); ++k) {
        if (!mpz_divisible_p(x_[k].get_mpz_t(), BigInt(x_[k - 1] * x_[k - 1]).get_mpz_t())) {
            throw DivisibilityViolation(k + 1);
        }
    }
}

const BigInt& EngelSequence::x(std::size_t n) const {
    if (n < 1 || n > x_.size()) throw ValidationError("x_" + std::to_string(n) + " not available");
    return x_[n - 1];
}

BigInt EngelSequence::y(std::size_t n) const {
    if (n == 1) return x(1);
    BigInt q;
    mpz_divexact(q.get_mpz_t(), x(n).get_mpz_t(), x(n - 1).get_mpz_t());
    return q;
}

// ---------------------------------------------------------------- specs

unsigned SecondOrderSpec::d2() const {
    if (G.empty()) throw ValidationError("G has no coefficients");
    return static_cast<unsigned>(G.size() - 1);
}

const BigInt& SecondOrderSpec::leading() const {
    if (G.empty()) throw ValidationError("G has no coefficients");
    return G.back();
}

BigInt SecondOrderSpec::eval_G(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = G.rbegin(); it != G.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void SecondOrderSpec::validate() const {
    if (d1 < 3) throw ValidationError("d1 must be >= 3");
    if (G.empty()) throw ValidationError("G has no coefficients");
    for (const auto& g : G) {
        if (g < 0) throw ValidationError("G coefficients must be non-negative");
    }
    if (G.front() == 0) throw ValidationError("G(0) must be non-zero");
    if (G.back() == 0) throw ValidationError("leading coefficient of G must be non-zero");
    if (eval_G(1) < 2) throw ValidationError("G(1) must be >= 2");
}

BigInt ThirdOrderSpec::eval_H(const BigInt& x, const BigInt& y) const {
    BigInt acc = 0, px, py;
    for (const auto& t : H) {
        mpz_pow_ui(px.get_mpz_t(), x.get_mpz_t(), t.i);
        mpz_pow_ui(py.get_mpz_t(), y.get_mpz_t(), t.j);
        acc += t.coeff * px * py;
    }
    return acc;
}

void ThirdOrderSpec::validate() const {
    if (e1 < 1) throw ValidationError("e1 must be >= 1");
    if (e2 < 2) throw ValidationError("e2 must be >= 2");
    if (H.empty()) throw ValidationError("H has no terms");
    bool free_of_x = false, free_of_y = false;
    for (const auto& t : H) {
        if (t.coeff <= 0) throw ValidationError("H coefficients must be positive");
        free_of_x = free_of_x || t.i == 0;
        free_of_y = free_of_y || t.j == 0;
    }
    if (!free_of_x) throw ValidationError("H is divisible by its first argument");
    if (!free_of_y) throw ValidationError("H is divisible by its second argument");
    if (eval_H(1, 1) < 2) throw ValidationError("H(1,1) must be >= 2");
}

void validate(const RecurrenceSpec& spec) {
    std::visit([](const auto& s) { s.validate(); }, spec);
}

unsigned order(const RecurrenceSpec& spec) { return std::holds_alternative<SecondOrderSpec>(spec) ? 2 : 3; }

FactorClass classify(const RecurrenceSpec& spec) {
    validate(spec);
    const BigInt at_one = std::visit(
        [](const auto& s) -> BigInt {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, SecondOrderSpec>) return s.eval_G(1);
            else return s.eval_H(1, 1);
        },
        spec);
    return at_one >= 3 ? FactorClass::Generic : FactorClass::Z2Equals2;
}

// ---------------------------------------------------------------- generation

RecurrenceGenerator::RecurrenceGenerator(RecurrenceSpec spec, BitBudget budget)
    : spec_(std::move(spec)), meter_(budget) {
    validate(spec_);
}

namespace {

BigInt pow_ui(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

BigInt divide_exact(const BigInt& num, const BigInt& den, std::size_t index) {
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw InexactDivision(index);
    return q;
}

std::size_t coeff_sum_bits(const std::vector<BigInt>& coeffs) {
    BigInt s = 0;
    for (const auto& c : coeffs) s += c;
    return bit_length(s) + 1;
}

}  // namespace

BigInt RecurrenceGenerator::next() {
    const std::size_t n = produced_;
    const std::size_t k = order(spec_);
    BigInt term;
    if (n < k) {
        term = 1;
    } else if (const auto* s2 = std::get_if<SecondOrderSpec>(&spec_)) {
        const BigInt& prev = window_[0];
        const BigInt& last = window_[1];
        const std::size_t b = bit_length(last);
        meter_.precheck((s2->d1 + s2->d2()) * b + coeff_sum_bits(s2->G) + 1 - std::min(bit_length(prev) - 1, (s2->d1 + s2->d2()) * b));
        term = divide_exact(pow_ui(last, s2->d1) * s2->eval_G(last), prev, n);
    } else {
        const auto& s3 = std::get<ThirdOrderSpec>(spec_);
        const BigInt& x0 = window_[0];
        const BigInt& x1 = window_[1];
        const BigInt& x2 = window_[2];
        const std::size_t b1 = bit_length(x1), b2 = bit_length(x2);
        std::size_t h_bits = 0;
        std::vector<BigInt> coeffs;
        for (const auto& t : s3.H) {
            h_bits = std::max<std::size_t>(h_bits, t.i * b1 + t.j * b2);
            coeffs.push_back(t.coeff);
        }
        const std::size_t est = s3.e1 * b1 + s3.e2 * b2 + h_bits + coeff_sum_bits(coeffs) + 1;
        meter_.precheck(est - std::min(bit_length(x0) - 1, est));
        term = divide_exact(pow_ui(x1, s3.e1) * pow_ui(x2, s3.e2) * s3.eval_H(x1, x2), x0, n);
    }
    meter_.charge(term);
    window_.push_back(term);
    if (window_.size() > k) window_.erase(window_.begin());
    ++produced_;
    return term;
}

std::vector<BigInt> generate_recurrence(const RecurrenceSpec& spec, std::size_t n, BitBudget budget) {
    RecurrenceGenerator gen(spec, budget);
    std::vector<BigInt> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(gen.next());
    return out;
}

ThirdOrderSpec lift_spec(const SecondOrderSpec& spec) {
    spec.validate();
    ThirdOrderSpec out;
    out.e1 = spec.d1 - 1;
    out.e2 = spec.d1 - 1;
    for (std::size_t k = 0; k < spec.G.size(); ++k) {
        if (spec.G[k] != 0) out.H.push_back({static_cast<unsigned>(k), static_cast<unsigned>(k), spec.G[k]});
    }
    return out;
}

std::optional<SecondOrderSpec> unlift_spec(const ThirdOrderSpec& spec) {
    if (spec.e1 != spec.e2 || spec.e1 < 2) return std::nullopt;
    SecondOrderSpec base;
    base.d1 = spec.e1 + 1;
    for (const auto& t : spec.H) {
        if (t.i != t.j) return std::nullopt;
        if (base.G.size() <= t.i) base.G.resize(t.i + 1, BigInt(0));
        base.G[t.i] += t.coeff;
    }
    try {
        base.validate();
    } catch (const ValidationError&) {
        return std::nullopt;
    }
    return base;
}

// ---------------------------------------------------------------- Engel side

std::vector<BigInt> strip_leading_ones(std::span<const BigInt> terms) {
    std::size_t first = 0;
    while (first + 1 < terms.size() && terms[first] == 1 && terms[first + 1] == 1) ++first;
    return {terms.begin() + static_cast<std::ptrdiff_t>(first), terms.end()};
}

EngelSequence from_factors(const FactorSequence& zs, std::size_t n, BitBudget budget) {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (zs.count() + 1 < n) throw ValidationError("not enough factors for n = " + std::to_string(n));
    BudgetMeter meter(budget);
    std::vector<BigInt> x{BigInt(1)};
    for (std::size_t k = 2; k <= n; ++k) {
        meter.precheck(2 * bit_length(x.back()) + bit_length(zs.z(k)));
        BigInt next = zs.z(k) * x.back() * x.back();
        meter.charge(next);
        x.push_back(std::move(next));
    }
    return EngelSequence(std::move(x));
}

FactorSequence factors_from_sequence(std::span<const BigInt> terms) {
    const auto x = strip_leading_ones(terms);
    if (x.empty() || x[0] != 1) throw ValidationError("sequence must start with x_1 = 1");
    if (x.size() < 2) throw ValidationError("sequence needs x_2");
    std::vector<BigInt> z;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const BigInt sq = x[k - 1] * x[k - 1];
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x[k].get_mpz_t(), sq.get_mpz_t());
        if (r != 0) throw DivisibilityViolation(k + 1);
        z.push_back(std::move(q));
    }
    return FactorSequence(std::move(z));
}

EngelSequence engel_from_terms(std::span<const BigInt> terms) { return EngelSequence(strip_leading_ones(terms)); }

Rational partial_sum(const EngelSequence& seq, std::size_t n) {
    if (n < 1 || n > seq.size()) throw ValidationError("partial sum index out of range");
    mpq_class naive = 0;
    for (std::size_t j = 1; j <= n; ++j) naive += mpq_class(1, seq.x(j));
    naive.canonicalize();

    // Closed form: numerator = 1 + sum_{j<n} prod_{k<=j} z_k^{2^{n-k} - 2^{j-k}} prod_{l>j} z_l^{2^{n-l}}.
    std::vector<BigInt> z;
    for (std::size_t k = 2; k <= n; ++k) {
        BigInt q;
        mpz_divexact(q.get_mpz_t(), seq.x(k).get_mpz_t(), BigInt(seq.x(k - 1) * seq.x(k - 1)).get_mpz_t());
        z.push_back(q);
    }
    const auto zk = [&](std::size_t k) -> const BigInt& { return z[k - 2]; };
    BigInt numerator = 1;
    for (std::size_t j = 1; j < n; ++j) {
        BigInt term = 1;
        for (std::size_t k = 2; k <= j; ++k) {
            term *= pow_ui(zk(k), (1UL << (n - k)) - (1UL << (j - k)));
        }
        for (std::size_t l = j + 1; l <= n; ++l) term *= pow_ui(zk(l), 1UL << (n - l));
        numerator += term;
    }
    const Rational closed(numerator, seq.x(n));
    const Rational summed(naive);
    if (!(closed == summed)) throw IdentityViolation("closed-form partial sum disagrees", n);
    if (summed.den() != seq.x(n)) throw IdentityViolation("partial sum denominator differs from x_n", n);
    return summed;
}

FactorSequence shallit_factors(const BigInt& u, std::span<const BigInt> c) {
    if (u < 2) throw ValidationError("u must be >= 2");
    if (c.empty()) throw ValidationError("exponent sequence c is empty");
    for (const auto& ck : c) {
        if (ck < 1) throw ValidationError("exponents c_k must be positive");
        if (!ck.fits_ulong_p()) throw ValidationError("exponent too large");
    }
    std::vector<BigInt> z{pow_ui(u, c[0].get_ui())};
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        const BigInt d = c[k + 1] - 2 * c[k];
        if (d < 0) throw NegativeGap(k);
        z.push_back(pow_ui(u, d.get_ui()));
    }
    return FactorSequence(std::move(z));
}

// ---------------------------------------------------------------- sources

namespace {

class FactorListSource final : public EngelSource {
  public:
    FactorListSource(FactorSequence zs, BitBudget budget) : zs_(std::move(zs)), meter_(budget) {}
    FactorClass classification() const override { return zs_.classification(); }
    std::optional<BigInt> next_term() override {
        if (next_ > zs_.count() + 1) return std::nullopt;
        const BigInt& z = zs_.z(next_);
        meter_.precheck(2 * bit_length(last_) + bit_length(z));
        last_ = z * last_ * last_;
        meter_.charge(last_);
        ++next_;
        return last_;
    }

  private:
    FactorSequence zs_;
    BudgetMeter meter_;
    BigInt last_{1};
    std::size_t next_ = 2;
};

class RecurrenceSource final : public EngelSource {
  public:
    RecurrenceSource(RecurrenceSpec spec, BitBudget budget)
        : class_(classify(spec)), gen_(std::move(spec), budget) {
        // Skip the all-ones prefix; the Engel x_1 is the last initial 1.
        const std::size_t k = order(gen_.spec());
        for (std::size_t i = 0; i < k; ++i) gen_.next();
    }
    FactorClass classification() const override { return class_; }
    std::optional<BigInt> next_term() override { return gen_.next(); }

  private:
    FactorClass class_;
    RecurrenceGenerator gen_;
};

class OnesTailSource final : public EngelSource {
  public:
    OnesTailSource(BigInt u, BitBudget budget) : last_(1), u_(std::move(u)), meter_(budget) {
        if (u_ < 2) throw ValidationError("u must be >= 2");
    }
    FactorClass classification() const override { return FactorClass::OnesTail; }
    std::optional<BigInt> next_term() override {
        if (last_ == 1) {
            last_ = u_;
        } else {
            meter_.precheck(2 * bit_length(last_));
            last_ *= last_;
        }
        meter_.charge(last_);
        return last_;
    }

  private:
    BigInt last_;
    BigInt u_;
    BudgetMeter meter_;
};

}  // namespace

std::unique_ptr<EngelSource> make_factor_source(FactorSequence zs, BitBudget budget) {
    return std::make_unique<FactorListSource>(std::move(zs), budget);
}

std::unique_ptr<EngelSource> make_recurrence_source(RecurrenceSpec spec, BitBudget budget) {
    return std::make_unique<RecurrenceSource>(std::move(spec), budget);
}

std::unique_ptr<EngelSource> make_ones_tail_source(const BigInt& u, BitBudget budget) {
    return std::make_unique<OnesTailSource>(u, budget);
}

EngelCursor::EngelCursor(std::unique_ptr<EngelSource> source) : source_(std::move(source)) {}

bool EngelCursor::ensure(std::size_t n) {
    while (x_.size() < n) {
        auto next = source_->next_term();
        if (!next) return false;
        const BigInt sq = x_.back() * x_.back();
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), next->get_mpz_t(), sq.get_mpz_t());
        if (r != 0) throw DivisibilityViolation(x_.size() + 1);
        if (z_.empty() && q < 2) throw ValidationError("z_2 must be >= 2");
        z_.push_back(std::move(q));
        x_.push_back(std::move(*next));
    }
    return true;
}

}  // namespace engelcf
