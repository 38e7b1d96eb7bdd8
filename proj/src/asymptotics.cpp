#include "engelcf/asymptotics.hpp"

#include <algorithm>
#include <utility>

#include "engelcf/errors.hpp"

namespace engelcf {

Real dominant_root(unsigned d1, unsigned d2, unsigned digits) {
    const long d = static_cast<long>(d1) + static_cast<long>(d2);
    if (d <= 2) throw DegenerateRoot("d1 + d2 must exceed 2");
    const mpfr_prec_t prec = digits_to_bits(digits);
    const Real sum = Real::from_long(d, prec);
    const Real disc = Real::from_long(d * d - 4, prec);
    return (sum + sqrt(disc)) / Real::from_long(2, prec);
}

Real LambdaReconstruction::relative_error() const {
    Real denom = abs(truth);
    const Real one = Real::from_long(1, truth.precision());
    if (denom < one) denom = one;
    return abs(exact - truth) / denom;
}

std::vector<Real> alpha_terms(const SecondOrderSpec& spec, const std::vector<BigInt>& terms, mpfr_prec_t prec) {
    std::vector<Real> alpha;
    alpha.reserve(terms.size());
    alpha.emplace_back(prec);  // alpha_0 is unused
    const BigInt& c = spec.leading();
    const unsigned d2 = spec.d2();
    for (std::size_t k = 1; k < terms.size(); ++k) {
        BigInt lead;
        mpz_pow_ui(lead.get_mpz_t(), terms[k].get_mpz_t(), d2);
        lead *= c;
        const BigInt lower = spec.eval_G(terms[k]) - lead;
        // log(1 + lower/lead) keeps full relative accuracy when alpha is tiny.
        Real ratio = Real::from_int(lower, prec) / Real::from_int(lead, prec);
        alpha.push_back(log1p(ratio));
    }
    return alpha;
}

std::vector<LambdaReconstruction> reconstruct_lambda_range(const SecondOrderSpec& spec, std::size_t n_max,
                                                           unsigned digits, BitBudget budget) {
    spec.validate();
    const mpfr_prec_t prec = digits_to_bits(digits);
    const auto terms = generate_recurrence(spec, n_max + 1, budget);
    const auto alpha = alpha_terms(spec, terms, prec);
    const Real lambda = dominant_root(spec.d1, spec.d2(), digits);
    const Real one = Real::from_long(1, prec);
    const Real inv = one / lambda;
    const Real spread = lambda - inv;
    const long d = static_cast<long>(spec.d1 + spec.d2());
    const Real log_c_scaled = log(Real::from_int(spec.leading(), prec)) / Real::from_long(d - 2, prec);

    std::vector<LambdaReconstruction> out;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const long ln = static_cast<long>(n);
        // F_n solves the homogeneous recurrence with F_0 = F_1 = 1.
        const Real f = ((one - inv) * pow(lambda, ln) - (one - lambda) * pow(lambda, -ln)) / spread;
        Real exact = (f - one) * log_c_scaled;
        for (std::size_t k = 1; k + 1 <= n; ++k) {
            const long gap = static_cast<long>(n - k);
            exact += (pow(lambda, gap) - pow(lambda, -gap)) / spread * alpha[k];
        }
        out.push_back({n, std::move(exact), log_of(terms[n], prec)});
    }
    return out;
}

LambdaReconstruction reconstruct_lambda_n(const SecondOrderSpec& spec, std::size_t n, unsigned digits,
                                          BitBudget budget) {
    auto all = reconstruct_lambda_range(spec, n, digits, budget);
    return std::move(all.back());
}

CEstimate estimate_C(const SecondOrderSpec& spec, unsigned digits, BitBudget budget, std::size_t max_terms) {
    spec.validate();
    const mpfr_prec_t prec = digits_to_bits(digits);
    const Real lambda = dominant_root(spec.d1, spec.d2(), digits);
    const Real one = Real::from_long(1, prec);
    const Real inv = one / lambda;
    const Real spread = lambda - inv;
    const long d = static_cast<long>(spec.d1 + spec.d2());
    const Real tail_factor = lambda / (lambda - one);
    const Real cutoff = Real::from_string("1e-15", prec);

    Real value = log(Real::from_int(spec.leading(), prec)) * (one - inv) / (Real::from_long(d - 2, prec) * spread);

    RecurrenceGenerator gen(spec, budget);
    std::vector<BigInt> window{gen.next()};  // x_0
    CEstimate out{value, Real(prec), 0, lambda};
    for (std::size_t k = 1;; ++k) {
        window.push_back(gen.next());  // x_k
        std::vector<BigInt> pair{BigInt(1), window.back()};
        const Real alpha_k = alpha_terms(spec, pair, prec)[1];
        const Real term = pow(lambda, -static_cast<long>(k)) * alpha_k / spread;
        const bool negligible = abs(term) < cutoff * abs(value);
        if (negligible || (max_terms > 0 && k > max_terms)) {
            out.value = value;
            // alpha_j is non-increasing in j, so the tail is dominated by a
            // geometric series with ratio 1/lambda.
            out.error_bound = abs(term) * tail_factor;
            out.terms = k - 1;
            return out;
        }
        value += term;
        window.erase(window.begin());
    }
}

EmpiricalC estimate_C_lift(const ThirdOrderSpec& spec, std::size_t n_max, unsigned digits, BitBudget budget) {
    spec.validate();
    const auto base = unlift_spec(spec);
    if (!base) throw DegenerateRoot("no dominant root formula for a third-order spec that is not a lift");
    if (n_max < 4) throw ValidationError("n_max must be >= 4");
    const mpfr_prec_t prec = digits_to_bits(digits);
    const Real lambda = dominant_root(base->d1, base->d2(), digits);
    const auto terms = generate_recurrence(spec, n_max + 3, budget);

    const auto estimate = [&](std::size_t n) {
        const Real num = log_of(terms[n + 2], prec) - log_of(terms[n], prec);
        const Real den = pow(lambda, static_cast<long>(n + 2)) - pow(lambda, static_cast<long>(n));
        return num / den;
    };
    EmpiricalC out{estimate(n_max), Real(prec), n_max, lambda};
    out.change = abs(out.value - estimate(n_max - 1));
    return out;
}

Real prefactor_residual(const SecondOrderSpec& spec, const BigInt& x_n, std::size_t n, const CEstimate& c) {
    const mpfr_prec_t prec = c.value.precision();
    const long d = static_cast<long>(spec.d1 + spec.d2());
    return log_of(x_n, prec) + log(Real::from_int(spec.leading(), prec)) / Real::from_long(d - 2, prec) -
           c.value * pow(c.lambda, static_cast<long>(n));
}

GrowthReport growth_report(const EngelSequence& x, const Real& lambda, double epsilon, unsigned digits) {
    const mpfr_prec_t prec = digits_to_bits(digits);
    GrowthReport report{lambda, epsilon, {}, std::nullopt};
    Real eps(prec);
    mpfr_set_d(eps.get(), epsilon, MPFR_RNDN);
    const Real target = lambda - eps;
    for (std::size_t n = 2; n + 1 <= x.size(); ++n) {
        const auto cur = log_bounds(x.x(n), prec);
        const auto nxt = log_bounds(x.x(n + 1), prec);
        GrowthRow row;
        row.n = n;
        row.exponent = log_of(x.x(n + 1), prec) / log_of(x.x(n), prec);
        Real rhs(prec);
        mpfr_mul(rhs.get(), target.get(), cur.upper.get(), MPFR_RNDU);
        row.holds = nxt.lower > rhs;
        report.rows.push_back(std::move(row));
    }
    for (std::size_t i = report.rows.size(); i-- > 0;) {
        if (!report.rows[i].holds) break;
        report.threshold = report.rows[i].n;
    }
    return report;
}

RothReport roth_exponents(const EngelSequence& x, std::size_t depth, unsigned digits) {
    if (depth < 1) throw ValidationError("depth must be >= 1");
    if (x.size() < depth + 2) throw ValidationError("sequence too short for the requested depth");
    const mpfr_prec_t prec = digits_to_bits(digits);
    const auto log2 = log_bounds(BigInt(2), prec);
    RothReport report{{}, Real(prec)};
    for (std::size_t n = 2; n <= depth + 1; ++n) {
        const auto q = log_bounds(x.x(n), prec);
        const auto next = log_bounds(x.x(n + 1), prec);
        RothRecord r{n, bit_length(x.x(n)), Real(prec), Real(prec)};
        Real num(prec);
        mpfr_sub(num.get(), next.lower.get(), log2.upper.get(), MPFR_RNDD);
        mpfr_div(r.lower.get(), num.get(), q.upper.get(), MPFR_RNDD);
        mpfr_div(r.upper.get(), next.upper.get(), q.lower.get(), MPFR_RNDU);
        report.records.push_back(std::move(r));
    }
    report.delta = report.records.back().lower - Real::from_long(2, prec);
    return report;
}

RothReport roth_exponents(std::unique_ptr<EngelSource> source, std::size_t depth, unsigned digits) {
    EngelCursor cursor(std::move(source));
    if (!cursor.ensure(depth + 2)) throw ValidationError("source exhausted before the requested depth");
    return roth_exponents(EngelSequence(cursor.terms()), depth, digits);
}

}  // namespace engelcf
