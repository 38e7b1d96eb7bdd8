#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "engelcf/asymptotics.hpp"
#include "engelcf/cf.hpp"
#include "engelcf/engel_cf.hpp"
#include "engelcf/errors.hpp"
#include "engelcf/sequences.hpp"

namespace engelcf::cli {

namespace {

// Counts trials for one property and keeps the first failure.
class Tally {
  public:
    explicit Tally(std::string name) : name_(std::move(name)) {}
    void check(bool ok, const std::function<std::string()>& detail) {
        ++count_;
        if (!ok && first_failure_.empty()) first_failure_ = detail();
    }
    CheckLine line() const {
        return {name_, first_failure_.empty(),
                first_failure_.empty() ? std::to_string(count_) + " cases" : first_failure_};
    }

  private:
    std::string name_;
    std::size_t count_ = 0;
    std::string first_failure_;
};

std::string z_text(const FactorSequence& zs) {
    std::string s = "z=(";
    for (std::size_t i = 0; i < zs.count(); ++i) s += (i ? "," : "") + to_decimal(zs.factors()[i]);
    return s + ")";
}

bool determinants_ok(const ConvergentTable& t) {
    for (std::size_t j = 0; j < t.size(); ++j) {
        const BigInt want = (j % 2 == 0) ? BigInt(-1) : BigInt(1);  // (-1)^{j+1}
        if (t.matrix(j).determinant() != want) return false;
    }
    return true;
}

FactorSequence random_factors(std::mt19937_64& rng, const BigInt& z2, std::size_t maxn) {
    std::uniform_int_distribution<int> dist(2, 20);
    std::vector<BigInt> z{z2};
    for (std::size_t j = 3; j <= maxn; ++j) z.emplace_back(dist(rng));
    return FactorSequence(std::move(z));
}

void generic_suite(const VerifyOptions& v, std::vector<CheckLine>& lines) {
    std::mt19937_64 rng(v.seed);
    std::uniform_int_distribution<int> z2dist(3, 20);
    Tally eq("generic: recursion = Euclidean expansion"), len("generic: length 3*2^(n-2)-1"),
        den("generic: final denominator = x_n"), alpha("generic: alphabet"), det("generic: determinant identity");
    for (std::size_t t = 0; t < v.trials; ++t) {
        const FactorSequence zs = random_factors(rng, z2dist(rng), v.maxn);
        for (std::size_t n = 3; n <= v.maxn; ++n) {
            const auto pcf = generic_partial_cf(zs, n);
            const auto x = from_factors(zs, n);
            const auto oracle = expand_rational(partial_sum(x, n));
            const auto where = [&] { return z_text(zs) + " n=" + std::to_string(n); };
            eq.check(pcf.coefficients == oracle, where);
            len.check(pcf.length() == generic_length(n), where);
            const auto table = convergents(pcf.coefficients);
            den.check(table.back().q == x.x(n), where);
            det.check(determinants_ok(table), where);
            const std::span<const BigInt> used(zs.factors().data(), n - 1);
            bool ok = true;
            for (const auto& a : pcf.coefficients.vector()) ok = ok && in_generic_alphabet(a, used);
            alpha.check(ok, where);
        }
    }
    for (const auto* t : {&eq, &len, &den, &alpha, &det}) lines.push_back(t->line());
}

void z2_suite(const VerifyOptions& v, std::vector<CheckLine>& lines) {
    std::mt19937_64 rng(v.seed + 1);
    Tally eq("z2: recursion = Euclidean expansion"), len("z2: length 5*2^(n-3)"), last("z2: final coefficient 2"),
        raw("z2: zero-normalized generic recursion agrees"), det("z2: determinant identity");
    for (std::size_t t = 0; t < v.trials; ++t) {
        const FactorSequence zs = random_factors(rng, 2, std::max<std::size_t>(v.maxn, 4));
        for (std::size_t n = 4; n <= v.maxn; ++n) {
            const auto pcf = z2eq2_partial_cf(zs, n);
            const auto oracle = expand_rational(partial_sum(from_factors(zs, n), n));
            const auto where = [&] { return z_text(zs) + " n=" + std::to_string(n); };
            eq.check(pcf.coefficients == oracle, where);
            len.check(pcf.length() == z2eq2_length(n), where);
            last.check(pcf.coefficients.back() == 2, where);
            const auto repaired = merge_trailing_one(normalize_zeros(raw_generic_partial_cf(zs.factors(), n)));
            raw.check(repaired == pcf.coefficients, where);
            det.check(determinants_ok(convergents(pcf.coefficients)), where);
        }
    }
    for (const auto* t : {&eq, &len, &last, &raw, &det}) lines.push_back(t->line());
}

void lengths_suite(const VerifyOptions& v, std::vector<CheckLine>& lines) {
    Tally ones("lengths: ONES_TAIL(u) partial sums, u = 2..10");
    for (int u = 2; u <= 10; ++u) {
        CoefficientStream s(make_ones_tail_source(u), true);
        s.extend(std::size_t{1} << (v.maxn - 2));
        for (std::size_t n = 1; n <= s.lengths().size(); ++n) {
            ones.check(s.lengths()[n - 1] == ones_tail_length(n, u),
                       [&] { return "u=" + std::to_string(u) + " n=" + std::to_string(n); });
        }
    }
    lines.push_back(ones.line());
}

void alphabet_suite(const VerifyOptions& v, std::vector<CheckLine>& lines) {
    Tally ones("alphabet: ONES_TAIL(u) stream, u = 3..10"), gen("alphabet: GENERIC stream");
    for (int u = 3; u <= 10; ++u) {
        const auto b = stream(make_ones_tail_source(u), 65);
        for (std::size_t j = 0; j < b.certified.size(); ++j) {
            ones.check(in_ones_tail_alphabet(b.certified[j], u),
                       [&] { return "u=" + std::to_string(u) + " j=" + std::to_string(j); });
        }
    }
    std::mt19937_64 rng(v.seed + 2);
    std::uniform_int_distribution<int> z2dist(3, 20);
    for (std::size_t t = 0; t < v.trials; ++t) {
        const FactorSequence zs = random_factors(rng, z2dist(rng), v.maxn + 1);
        const auto b = stream(make_factor_source(zs), generic_length(v.maxn));
        for (std::size_t j = 0; j < b.certified.size(); ++j) {
            gen.check(in_generic_alphabet(b.certified[j], zs.factors()),
                      [&] { return z_text(zs) + " j=" + std::to_string(j); });
        }
    }
    lines.push_back(ones.line());
    lines.push_back(gen.line());
}

}  // namespace

std::vector<CheckLine> verify_random_suite(const VerifyOptions& v) {
    if (v.maxn < 4 || v.maxn > 12) throw ValidationError("--maxn must lie in [4, 12]");
    const std::string& s = v.suite;
    if (s != "all" && s != "generic" && s != "z2" && s != "lengths" && s != "alphabet") {
        throw ValidationError("unknown suite '" + s + "'");
    }
    std::vector<CheckLine> lines;
    if (s == "all" || s == "generic") generic_suite(v, lines);
    if (s == "all" || s == "z2") z2_suite(v, lines);
    if (s == "all" || s == "lengths") lengths_suite(v, lines);
    if (s == "all" || s == "alphabet") alphabet_suite(v, lines);
    return lines;
}

// ---------------------------------------------------------------- golden values

namespace {

std::vector<BigInt> ints(std::initializer_list<const char*> values) {
    std::vector<BigInt> out;
    for (const char* v : values) out.emplace_back(v);
    return out;
}

bool starts_with(const std::vector<BigInt>& whole, const std::vector<BigInt>& prefix) {
    return whole.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), whole.begin());
}

CheckLine sequence_line(const std::string& name, const RecurrenceSpec& spec, const std::vector<BigInt>& want) {
    const auto got = generate_recurrence(spec, want.size());
    return {name, got == want, format_cf(got)};
}

CheckLine stream_line(const std::string& name, std::unique_ptr<EngelSource> source, const std::vector<BigInt>& want) {
    const auto b = stream(std::move(source), want.size());
    return {name, starts_with(b.certified, want), format_cf(want)};
}

CheckLine close_line(const std::string& name, double got, double want, double tol) {
    std::ostringstream d;
    d.precision(12);
    d << "got " << got << " want " << want << " tol " << tol;
    return {name, std::fabs(got - want) <= tol, d.str()};
}

CheckLine value_line(const std::string& name, std::unique_ptr<EngelSource> source, double want, double tol) {
    const std::string text = certified_series_value(std::move(source), 20);
    return close_line(name + " = " + text.substr(0, 12) + "...", std::stod(text), want, tol);
}

SecondOrderSpec spec2(unsigned d1, std::vector<BigInt> G) { return SecondOrderSpec{d1, std::move(G)}; }

void ex1(std::vector<CheckLine>& lines) {
    const auto spec = spec2(3, ints({"3"}));
    lines.push_back(sequence_line("ex1 sequence", spec, ints({"1", "1", "3", "81", "531441", "5559060566555523"})));
    lines.push_back(stream_line("ex1 continued fraction", make_recurrence_source(spec),
                                ints({"1", "2", "1", "8", "3", "80", "1", "2", "8", "1", "2", "19682"})));
    const auto x = generate_recurrence(spec, 10);
    bool ok = true;
    std::vector<long> tt{1, 1};
    while (tt.size() < x.size()) tt.push_back(3 * tt[tt.size() - 1] - tt[tt.size() - 2]);
    for (std::size_t n = 0; n < x.size(); ++n) {
        BigInt want;
        mpz_ui_pow_ui(want.get_mpz_t(), 3, static_cast<unsigned long>(tt[n] - 1));
        ok = ok && x[n] == want;
    }
    lines.push_back({"ex1 x_n = 3^(t_n - 1), t_{n+2} = 3 t_{n+1} - t_n", ok, "n < 10"});
}

void nex(std::vector<CheckLine>& lines) {
    const auto spec = spec2(3, ints({"1", "2"}));
    lines.push_back(sequence_line(
        "nex sequence", spec,
        ints({"1", "1", "3", "189", "852910317", "5599917937724687764238078261637795"})));
    lines.push_back(stream_line("nex continued fraction", make_recurrence_source(spec),
                                ints({"1", "2", "1", "20", "3", "23876", "1", "2", "20", "1", "2",
                                      "7697947188058154"})));
    const Real lambda = dominant_root(3, 1);
    const Real want = Real::from_long(2, lambda.precision()) + sqrt(Real::from_long(3, lambda.precision()));
    lines.push_back({"nex lambda = 2 + sqrt(3)", abs(lambda - want) < Real::from_string("1e-45", lambda.precision()),
                     lambda.str(20)});
    lines.push_back(close_line("nex C", estimate_C(spec).value.to_double(), 0.107812043, 1e-8));
    lines.push_back(value_line("nex S", make_recurrence_source(spec), 1.3386243, 5e-8));
}

void nexlift(std::vector<CheckLine>& lines) {
    const auto base = spec2(3, ints({"1", "2"}));
    const auto lifted = lift_spec(base);
    lines.push_back(sequence_line(
        "nexlift sequence", lifted,
        ints({"1", "1", "1", "3", "63", "13538259", "413636490314204194515563505"})));
    lines.push_back(stream_line("nexlift continued fraction", make_recurrence_source(lifted),
                                ints({"1", "2", "1", "6", "3", "3410", "1", "2", "6", "1", "2", "2256800700104"})));
    lines.push_back(close_line("nexlift C'", estimate_C_lift(lifted).value.to_double(), 0.0227833, 1e-5));
    lines.push_back(value_line("nexlift S'", make_recurrence_source(lifted), 1.3492064, 5e-8));
    const auto x = generate_recurrence(base, 9);
    const auto X = generate_recurrence(lifted, 10);
    bool ok = true;
    for (std::size_t n = 0; n < x.size(); ++n) ok = ok && X[n] * X[n + 1] == x[n];
    lines.push_back({"nexlift X_n X_{n+1} = x_n", ok, "n < 9"});
}

void mrec(std::vector<CheckLine>& lines) {
    const auto spec = spec2(3, ints({"1", "1"}));
    lines.push_back(sequence_line("mrec sequence", spec,
                                  ints({"1", "1", "2", "24", "172800", "37150633525248000000"})));
    lines.push_back(stream_line("mrec continued fraction", make_recurrence_source(spec),
                                ints({"1", "1", "1", "5", "2", "299", "1", "1", "5", "1", "1", "1244167199", "2",
                                      "5", "1", "1", "299"})));
    lines.push_back(close_line("mrec C", estimate_C(spec).value.to_double(), 0.06224548, 1e-7));
    lines.push_back(value_line("mrec S", make_recurrence_source(spec), 1.54167245, 5e-9));
}

std::vector<BigInt> u_pattern(long u) {
    const long p[] = {1, u - 1, u + 2, u, u, u - 2, u, u + 2, u, u - 2, u + 2, u, u - 2, u, u, u + 2, u};
    std::vector<BigInt> out;
    for (long v : p) out.emplace_back(v);
    return out;
}

void kempner_u(std::vector<CheckLine>& lines) {
    for (long u = 3; u <= 10; ++u) {
        CoefficientStream s(make_ones_tail_source(u));
        s.extend(17);
        const auto& lens = s.lengths();
        bool lens_ok = lens.size() >= 6;
        const std::size_t want_lens[] = {1, 2, 3, 5, 9, 17};
        for (std::size_t i = 0; lens_ok && i < 6; ++i) lens_ok = lens[i] == want_lens[i];
        bool alpha = true;
        for (const auto& a : s.certified()) alpha = alpha && in_ones_tail_alphabet(a, u);
        const std::string tag = "kempner u=" + std::to_string(u);
        lines.push_back({tag + " pattern", starts_with(s.certified(), u_pattern(u)), format_cf(u_pattern(u))});
        lines.push_back({tag + " lengths 1,2,3,5,9,17", lens_ok, ""});
        lines.push_back({tag + " alphabet {1,u-2,u-1,u,u+2}", alpha, ""});
    }
}

void kempner_u2(std::vector<CheckLine>& lines) {
    CoefficientStream s(make_ones_tail_source(2));
    s.extend(19);
    const auto want = ints({"1", "1", "4", "2", "4", "4", "6", "4", "2", "4", "6", "2", "4", "6", "4", "4", "2", "4", "6"});
    lines.push_back({"kempner u=2 pattern", starts_with(s.certified(), want), format_cf(want)});
    const std::size_t want_lens[] = {1, 2, 3, 5, 7, 11};
    bool ok = s.lengths().size() >= 6;
    for (std::size_t i = 0; ok && i < 6; ++i) ok = s.lengths()[i] == want_lens[i];
    std::string got;
    for (std::size_t i = 0; i < std::min<std::size_t>(6, s.lengths().size()); ++i) {
        got += (i ? "," : "") + std::to_string(s.lengths()[i]);
    }
    lines.push_back({"kempner u=2 lengths 1,2,3,5,7,11", ok, "canonical lengths " + got});
    EngelCursor cur(make_ones_tail_source(2));
    cur.ensure(9);
    const auto report = growth_report(EngelSequence(cur.terms()), Real::from_long(2, 64));
    bool two = !report.rows.empty();
    for (const auto& row : report.rows) two = two && row.exponent == Real::from_long(2, 64);
    lines.push_back({"kempner u=2 growth exponent identically 2", two, std::to_string(report.rows.size()) + " rows"});
}

void shallit(std::vector<CheckLine>& lines) {
    const auto c = ints({"1", "4", "12", "33"});
    const auto zs = shallit_factors(3, c);
    lines.push_back({"shallit u=3 factors", zs.factors() == ints({"3", "9", "81", "19683"}), z_text(zs)});
    const auto x = from_factors(zs, 5);
    bool ok = true;
    mpq_class want = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), 3, c[n - 2].get_ui());
        want += mpq_class(1, p);
        ok = ok && partial_sum(x, n) - Rational(BigInt(1)) == Rational(want);
    }
    lines.push_back({"shallit S_n - 1 = sum 3^(-c_k)", ok, "n <= 5"});
}

using Group = std::pair<std::string, void (*)(std::vector<CheckLine>&)>;

const std::vector<Group>& groups() {
    static const std::vector<Group> g{{"ex1", ex1},           {"nex", nex},   {"nexlift", nexlift},
                                      {"mrec", mrec},         {"kempner-u", kempner_u},
                                      {"kempner-u2", kempner_u2}, {"shallit", shallit}};
    return g;
}

}  // namespace

const std::vector<std::string>& paper_example_groups() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& g : groups()) v.push_back(g.first);
        return v;
    }();
    return names;
}

std::vector<CheckLine> paper_examples(const std::string& only) {
    std::vector<CheckLine> lines;
    for (const auto& [name, fn] : groups()) {
        if (only.empty() || only == name) fn(lines);
    }
    return lines;
}

}  // namespace engelcf::cli
