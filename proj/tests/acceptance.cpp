// One PASS/FAIL line per acceptance criterion.
//
// Usage: acceptance [--expect-fail N,M,...]
// Exit status is 0 when the failing criteria are exactly the expected set.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "engelcf/asymptotics.hpp"
#include "engelcf/engel_cf.hpp"
#include "engelcf/errors.hpp"
#include "engelcf/formats.hpp"
#include "oracles.hpp"

using namespace engelcf;

namespace {

// Tolerances.
constexpr const char* kLambdaTol = "1e-45";
constexpr double kNexC = 0.107812043, kNexCTol = 1e-8;
constexpr double kNexS = 1.3386243, kNexSTol = 5e-8;
constexpr double kLiftC = 0.0227833, kLiftCTol = 1e-5;
constexpr double kLiftS = 1.3492064, kLiftSTol = 5e-8;
constexpr double kMrecC = 0.06224548, kMrecCTol = 1e-7;
constexpr double kMrecS = 1.54167245, kMrecSTol = 5e-9;
constexpr double kReconstructTol = 1e-9;
constexpr double kRothFloor = 2.3;

class Criterion {
  public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void close(double got, double want, double tol, const std::string& what) {
        std::ostringstream s;
        s.precision(12);
        s << what << " got " << got << " want " << want;
        expect(std::fabs(got - want) <= tol, s.str());
    }
    void note(const std::string& s) { notes_.push_back(s); }
    bool passed() const { return failures_.empty(); }
    std::string detail() const {
        std::string out;
        for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
        for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
        return out;
    }

  private:
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

std::vector<BigInt> v(std::initializer_list<const char*> xs) {
    std::vector<BigInt> out;
    for (const char* x : xs) out.emplace_back(x);
    return out;
}

bool is_prefix(const std::vector<BigInt>& p, const std::vector<BigInt>& whole) {
    return p.size() <= whole.size() && std::equal(p.begin(), p.end(), whole.begin());
}

double log_big(const mpz_class& x) {
    long e = 0;
    const double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(d) + static_cast<double>(e) * std::log(2.0);
}

// (log x_{n+1} - log x_n) / (lambda^{n+1} - lambda^n), which cancels the constant term.
double differenced_C(const std::vector<BigInt>& x, std::size_t n, double lambda) {
    return (log_big(x[n + 1]) - log_big(x[n])) / (std::pow(lambda, n + 1) - std::pow(lambda, n));
}

// Sum of the first terms of an Engel series given as x_0 = 1, x_1 = 1, ... recurrence output.
double series_value(const std::vector<BigInt>& rec, std::size_t skip) {
    const std::vector<BigInt> x(rec.begin() + static_cast<std::ptrdiff_t>(skip), rec.end());
    return oracle::direct_sum(x, x.size()).get_d();
}

void criterion1(Criterion& c) {
    const SecondOrderSpec spec{3, v({"3"})};
    const auto x = generate_recurrence(spec, 6);
    c.expect(x == v({"1", "1", "3", "81", "531441", "5559060566555523"}), "sequence");
    c.expect(x == oracle::second_order(3, spec.G, 6), "sequence vs direct recurrence");
    const auto b = stream(make_recurrence_source(spec), 11);
    c.expect(is_prefix(v({"1", "2", "1", "8", "3", "80", "1", "2", "8", "1", "2", "19682"}), b.certified), "stream");
    // s_{n+2} + s_n = 3 s_{n+1} + 1 from x_{n+2} x_n = 3 x_{n+1}^3
    std::vector<unsigned long> s{0, 0};
    while (s.size() < 6) s.push_back(3 * s[s.size() - 1] - s[s.size() - 2] + 1);
    c.expect(s == std::vector<unsigned long>{0, 0, 1, 4, 12, 33}, "exponents 0,0,1,4,12,33");
    for (std::size_t n = 0; n < 6; ++n) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 3, s[n]);
        c.expect(x[n] == p, "x = 3^s at " + std::to_string(n));
    }
}

void criterion2(Criterion& c) {
    const SecondOrderSpec spec{3, v({"1", "2"})};
    const auto x = generate_recurrence(spec, 6);
    c.expect(x == v({"1", "1", "3", "189", "852910317", "5599917937724687764238078261637795"}), "sequence");
    const auto b = stream(make_recurrence_source(spec), 11);
    c.expect(is_prefix(v({"1", "2", "1", "20", "3", "23876", "1", "2", "20", "1", "2", "7697947188058154"}),
                       b.certified),
             "stream");
    const Real lambda = dominant_root(3, 1);
    const mpfr_prec_t p = lambda.precision();
    const Real exact = Real::from_long(2, p) + sqrt(Real::from_long(3, p));
    c.expect(abs(lambda - exact) < Real::from_string(kLambdaTol, p), "lambda = 2 + sqrt 3");
    const double C = estimate_C(spec).value.to_double();
    c.close(C, kNexC, kNexCTol, "C");
    const auto longer = generate_recurrence(spec, 10);
    c.close(differenced_C(longer, 8, 2 + std::sqrt(3.0)), C, 1e-9, "C vs differenced logs");
    const double S = std::stod(certified_series_value(make_recurrence_source(spec), 20));
    c.close(S, kNexS, kNexSTol, "S");
    c.close(series_value(longer, 1), S, 1e-15, "S vs direct sum");
}

void criterion3(Criterion& c) {
    const SecondOrderSpec base{3, v({"1", "2"})};
    const auto lifted = lift_spec(base);
    const auto X = generate_recurrence(lifted, 7);
    c.expect(X == v({"1", "1", "1", "3", "63", "13538259", "413636490314204194515563505"}), "sequence");
    const auto b = stream(make_recurrence_source(lifted), 11);
    c.expect(is_prefix(v({"1", "2", "1", "6", "3", "3410", "1", "2", "6", "1", "2", "2256800700104"}), b.certified),
             "stream");
    c.close(estimate_C_lift(lifted).value.to_double(), kLiftC, kLiftCTol, "C'");
    const double S = std::stod(certified_series_value(make_recurrence_source(lifted), 20));
    c.close(S, kLiftS, kLiftSTol, "S'");
    const auto x = oracle::second_order(3, base.G, 10);
    const auto XX = generate_recurrence(lifted, 11);
    bool ok = true;
    for (std::size_t n = 0; n < x.size(); ++n) ok = ok && XX[n] * XX[n + 1] == x[n];
    c.expect(ok, "X_n X_{n+1} = x_n");
}

void criterion4(Criterion& c) {
    const SecondOrderSpec spec{3, v({"1", "1"})};
    const auto x = generate_recurrence(spec, 6);
    c.expect(x == v({"1", "1", "2", "24", "172800", "37150633525248000000"}), "sequence");
    const auto b = stream(make_recurrence_source(spec), 17);
    c.expect(is_prefix(v({"1", "1", "1", "5", "2", "299", "1", "1", "5", "1", "1", "1244167199", "2", "5", "1", "1",
                          "299"}),
                       b.certified),
             "stream");
    const double C = estimate_C(spec).value.to_double();
    c.close(C, kMrecC, kMrecCTol, "C");
    const auto longer = generate_recurrence(spec, 10);
    c.close(differenced_C(longer, 8, 2 + std::sqrt(3.0)), C, 1e-9, "C vs differenced logs");
    const double S = std::stod(certified_series_value(make_recurrence_source(spec), 20));
    c.close(S, kMrecS, kMrecSTol, "S");
    c.close(series_value(longer, 1), S, 1e-15, "S vs direct sum");
}

void criterion5(Criterion& c) {
    std::mt19937_64 rng(20170101);
    std::uniform_int_distribution<int> z2dist(3, 20), zdist(2, 20);
    std::size_t cases = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<BigInt> f{z2dist(rng)};
        for (int j = 3; j <= 7; ++j) f.emplace_back(zdist(rng));
        const FactorSequence zs(f);
        for (std::size_t n = 3; n <= 7; ++n, ++cases) {
            const auto pcf = generic_partial_cf(zs, n);
            const auto& a = pcf.coefficients.vector();
            const auto x = oracle::terms_from_factors(f, n);
            const std::string at = "generic trial " + std::to_string(t) + " n=" + std::to_string(n);
            c.expect(a == oracle::euclid(oracle::direct_sum(x, n)), at + " expansion");
            c.expect(a.size() == 3 * (std::size_t{1} << (n - 2)) - 1, at + " length");
            const auto table = convergents(pcf.coefficients);
            c.expect(table.back().q == x.back(), at + " denominator");
            for (std::size_t j = 0; j < table.size(); ++j) {
                c.expect(table.matrix(j).determinant() == (j % 2 == 0 ? -1 : 1), at + " determinant");
            }
            for (const auto& coeff : a) {
                bool in = coeff == 1 || coeff == f[0] || coeff == f[0] - 2;
                for (std::size_t j = 0; j + 1 < n && !in; ++j) in = coeff == f[j] - 1;
                c.expect(in, at + " alphabet");
            }
        }
    }
    for (int t = 0; t < 100; ++t) {
        std::vector<BigInt> f{2};
        for (int j = 3; j <= 7; ++j) f.emplace_back(zdist(rng));
        const FactorSequence zs(f);
        for (std::size_t n = 4; n <= 7; ++n, ++cases) {
            const auto pcf = z2eq2_partial_cf(zs, n);
            const auto& a = pcf.coefficients.vector();
            const auto x = oracle::terms_from_factors(f, n);
            const std::string at = "z2 trial " + std::to_string(t) + " n=" + std::to_string(n);
            c.expect(a == oracle::euclid(oracle::direct_sum(x, n)), at + " expansion");
            c.expect(a.size() == 5 * (std::size_t{1} << (n - 3)), at + " length");
            c.expect(a.back() == 2, at + " final 2");
            const auto table = convergents(pcf.coefficients);
            c.expect(table.back().q == x.back(), at + " denominator");
            for (std::size_t j = 0; j < table.size(); ++j) {
                c.expect(table.matrix(j).determinant() == (j % 2 == 0 ? -1 : 1), at + " determinant");
            }
        }
    }
    c.note(std::to_string(cases) + " partial sums");
}

void criterion6(Criterion& c) {
    for (long u = 3; u <= 10; ++u) {
        CoefficientStream s(make_ones_tail_source(BigInt(u)), true);
        s.extend(17);
        const long p[] = {1, u - 1, u + 2, u, u, u - 2, u, u + 2, u, u - 2, u + 2, u, u - 2, u, u, u + 2, u};
        std::vector<BigInt> want;
        for (long x : p) want.emplace_back(x);
        const std::string at = "u=" + std::to_string(u);
        c.expect(is_prefix(want, s.certified()), at + " pattern");
        for (const auto& a : s.certified()) {
            c.expect(a == 1 || a == u - 2 || a == u - 1 || a == u || a == u + 2, at + " alphabet");
        }
        // lengths from the Euclidean expansion of each partial sum
        const auto x = oracle::terms_from_factors({BigInt(u), 1, 1, 1, 1}, 6);
        std::vector<std::size_t> lens;
        for (std::size_t n = 1; n <= 6; ++n) lens.push_back(oracle::euclid(oracle::direct_sum(x, n)).size());
        c.expect(lens == std::vector<std::size_t>{1, 2, 3, 5, 9, 17}, at + " lengths");
    }
    const auto b2 = stream(make_ones_tail_source(BigInt(2)), 19);
    c.expect(is_prefix(v({"1", "1", "4", "2", "4", "4", "6", "4", "2", "4", "6", "2", "4", "6", "4", "4", "2", "4", "6"}),
                       b2.certified),
             "u=2 display");
    const auto x2 = oracle::terms_from_factors({BigInt(2), 1, 1, 1, 1}, 6);
    std::vector<std::size_t> lens;
    std::string shown;
    for (std::size_t n = 1; n <= 6; ++n) {
        lens.push_back(oracle::euclid(oracle::direct_sum(x2, n)).size());
        shown += (n > 1 ? "," : "") + std::to_string(lens.back());
    }
    c.expect(lens == std::vector<std::size_t>{1, 2, 3, 5, 7, 11}, "u=2 lengths are " + shown + ", not 1,2,3,5,7,11");
    EngelCursor cur(make_ones_tail_source(BigInt(2)));
    cur.ensure(10);
    const auto g = growth_report(EngelSequence(cur.terms()), Real::from_long(2, 64));
    bool two = !g.rows.empty();
    for (const auto& row : g.rows) two = two && row.exponent == Real::from_long(2, 64);
    c.expect(two, "u=2 growth exponent 2");
}

void criterion7(Criterion& c) {
    for (const auto& spec : {SecondOrderSpec{3, v({"3"})}, SecondOrderSpec{3, v({"1", "2"})},
                             SecondOrderSpec{3, v({"1", "1"})}}) {
        const auto rows = reconstruct_lambda_range(spec, 12);
        const auto x = oracle::second_order(spec.d1, spec.G, 13);
        std::size_t checked = 0;
        for (const auto& r : rows) {
            if (r.n > 12) continue;
            const double truth = log_big(x[r.n]);
            const double exact = r.exact.to_double();
            const double rel = std::fabs(exact - truth) / std::max(1.0, std::fabs(truth));
            c.expect(rel <= kReconstructTol, format_spec(spec) + " n=" + std::to_string(r.n));
            ++checked;
        }
        c.expect(checked >= 11, "rows up to n = 12");
    }
}

void criterion8(Criterion& c) {
    const auto ex2 = roth_exponents(make_recurrence_source(SecondOrderSpec{3, v({"1", "2"})}), 8);
    for (const auto& r : ex2.records) {
        if (r.n >= 5) c.expect(r.lower.to_double() > kRothFloor, "Example 2 lower bracket at n=" + std::to_string(r.n));
    }
    c.expect(!ex2.records.empty() && ex2.records.back().n >= 9, "Example 2 depth");
    const auto u3 = roth_exponents(make_ones_tail_source(BigInt(3)), 9);
    const Real two = Real::from_long(2, 64);
    for (const auto& r : u3.records) {
        c.expect(r.lower < two && r.upper >= two, "ONES_TAIL(3) straddle at n=" + std::to_string(r.n));
    }
    c.expect(u3.records.size() == 9 && u3.records.back().n == 10, "ONES_TAIL(3) records n = 2..10");
}

void criterion9(Criterion& c) {
    const auto cs = v({"1", "4", "12", "33"});
    const auto zs = shallit_factors(BigInt(3), cs);
    const auto x = from_factors(zs, 5);
    mpq_class want = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 3, cs[n - 2].get_ui());
        want += mpq_class(1, p);
        c.expect(partial_sum(x, n).to_mpq() - 1 == want, "n=" + std::to_string(n));
    }
    bool raised = false;
    try {
        shallit_factors(BigInt(3), v({"1", "3", "5"}));
    } catch (const NegativeGap&) {
        raised = true;
    }
    c.expect(raised, "NegativeGap for c=(1,3,5)");
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
            std::istringstream in(argv[++i]);
            for (std::string item; std::getline(in, item, ',');) expected.insert(std::stoi(item));
        }
    }
    const std::vector<std::pair<const char*, void (*)(Criterion&)>> criteria{
        {"Example 1 reproduction", criterion1},
        {"Example 2 sequence, expansion and constants", criterion2},
        {"third-order lift", criterion3},
        {"z2 = 2 example", criterion4},
        {"recursions agree with Euclidean expansions", criterion5},
        {"u-power series", criterion6},
        {"closed formula for log x_n", criterion7},
        {"irrationality exponent brackets", criterion8},
        {"Shallit mapping", criterion9},
    };
    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const int id = static_cast<int>(i + 1);
        if (!c.passed()) failed.insert(id);
        std::printf("%s %d %s (%.2fs)%s%s\n", c.passed() ? "PASS" : "FAIL", id, criteria[i].first, secs,
                    c.detail().empty() ? "" : "  ", c.detail().c_str());
    }
    std::fflush(stdout);
    return failed == expected ? 0 : 1;
}
