#include "cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "engelcf/asymptotics.hpp"
#include "engelcf/cf.hpp"
#include "engelcf/engel_cf.hpp"
#include "engelcf/errors.hpp"
#include "engelcf/formats.hpp"
#include "engelcf/sequences.hpp"

namespace engelcf::cli {

namespace {

using json = nlohmann::ordered_json;

struct GlobalOptions {
    bool json = false;
    std::size_t bits = std::size_t{1} << 26;
    unsigned digits = kDefaultDigits;
    std::string out_path;

    BitBudget budget() const {
        BitBudget b;
        b.max_total_bits = bits;
        b.max_term_bits = std::min(b.max_term_bits, bits);
        return b;
    }
};

// Exactly one of: --z, --d1/--G, --e1/--e2/--H, --spec, --u (with --pow2 or --c).
struct InputOptions {
    std::string z;
    std::optional<unsigned> d1;
    std::string G;
    std::optional<unsigned> e1, e2;
    std::string H;
    std::string spec;
    bool lift = false;
    std::string u;
    bool pow2 = false;
    std::string c;
};

void add_input_options(CLI::App* app, InputOptions& in) {
    app->add_option("--z", in.z, "factors z_2,z_3,...");
    app->add_option("--d1", in.d1, "second-order exponent d1");
    app->add_option("--G", in.G, "G coefficients, constant term first");
    app->add_option("--e1", in.e1, "third-order exponent e1");
    app->add_option("--e2", in.e2, "third-order exponent e2");
    app->add_option("--H", in.H, "H terms i,j,coeff;...");
    app->add_option("--spec", in.spec, "recurrence spec line, e.g. 'order=2 d1=3 G=1,2'");
    app->add_flag("--lift", in.lift, "use the third-order lift of the second-order spec");
    app->add_option("--u", in.u, "base u of a sum of u^{-c_k}");
    app->add_flag("--pow2", in.pow2, "with --u: c_k = 2^k");
    app->add_option("--c", in.c, "with --u: exponents c_0,c_1,...");
}

struct Input {
    enum class Kind { Factors, Recurrence, OnesTail } kind;
    std::optional<FactorSequence> factors;
    std::optional<RecurrenceSpec> spec;
    BigInt u;
};

Input resolve(const InputOptions& in) {
    int sources = 0;
    sources += !in.z.empty();
    sources += in.d1.has_value() || !in.G.empty();
    sources += in.e1.has_value() || in.e2.has_value() || !in.H.empty();
    sources += !in.spec.empty();
    sources += !in.u.empty();
    if (sources != 1) throw ValidationError("exactly one input source is required");

    Input out{Input::Kind::Factors, std::nullopt, std::nullopt, 0};
    if (!in.z.empty()) {
        out.factors = FactorSequence(parse_integer_list(in.z));
    } else if (!in.u.empty()) {
        const BigInt u = parse_bigint(in.u);
        if (in.pow2 == !in.c.empty()) throw ValidationError("--u needs exactly one of --pow2 or --c");
        if (in.pow2) {
            if (u < 2) throw ValidationError("u must be >= 2");
            out.kind = Input::Kind::OnesTail;
            out.u = u;
        } else {
            out.factors = shallit_factors(u, parse_integer_list(in.c));
        }
    } else {
        RecurrenceSpec spec;
        if (!in.spec.empty()) {
            spec = parse_spec(in.spec);
        } else if (in.d1 || !in.G.empty()) {
            if (!in.d1 || in.G.empty()) throw ValidationError("--d1 and --G go together");
            spec = SecondOrderSpec{*in.d1, parse_integer_list(in.G)};
        } else {
            if (!in.e1 || !in.e2 || in.H.empty()) throw ValidationError("--e1, --e2 and --H go together");
            spec = parse_spec("order=3 e1=" + std::to_string(*in.e1) + " e2=" + std::to_string(*in.e2) +
                              " H=" + in.H);
        }
        if (in.lift) {
            const auto* s2 = std::get_if<SecondOrderSpec>(&spec);
            if (!s2) throw ValidationError("--lift needs a second-order spec");
            spec = lift_spec(*s2);
        }
        validate(spec);
        out.kind = Input::Kind::Recurrence;
        out.spec = std::move(spec);
    }
    if (in.lift && out.kind != Input::Kind::Recurrence) throw ValidationError("--lift needs a recurrence");
    return out;
}

std::unique_ptr<EngelSource> make_source(const Input& in, BitBudget budget) {
    switch (in.kind) {
        case Input::Kind::Factors: return make_factor_source(*in.factors, budget);
        case Input::Kind::Recurrence: return make_recurrence_source(*in.spec, budget);
        case Input::Kind::OnesTail: return make_ones_tail_source(in.u, budget);
    }
    throw ValidationError("unknown input");
}

/// z_2 .. z_n for the first n Engel terms of any input.
FactorSequence factors_for(const Input& in, std::size_t n, BitBudget budget) {
    if (in.kind == Input::Kind::Factors) return *in.factors;
    EngelCursor cursor(make_source(in, budget));
    if (!cursor.ensure(std::max<std::size_t>(n, 2))) throw ValidationError("source exhausted");
    return FactorSequence(cursor.factors());
}

json strings(const std::vector<BigInt>& values) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(to_decimal(v));
    return arr;
}

json real_or_null(const std::optional<Real>& r, unsigned digits) {
    if (!r) return nullptr;
    return r->str(digits);
}

// ---------------------------------------------------------------- commands

int cmd_gen(const GlobalOptions& g, const InputOptions& opts, std::size_t n, std::ostream& out) {
    const Input in = resolve(opts);
    SequenceFile file;
    if (in.kind == Input::Kind::Recurrence) {
        file.terms = generate_recurrence(*in.spec, n, g.budget());
    } else {
        const FactorSequence zs = factors_for(in, n, g.budget());
        file.terms = from_factors(zs, n, g.budget()).terms();
        std::vector<BigInt> used(zs.factors().begin(),
                                 zs.factors().begin() + static_cast<std::ptrdiff_t>(std::min(zs.count(), n - 1)));
        if (!used.empty()) file.factors = used;
    }
    if (g.json) {
        json j;
        j["terms"] = strings(file.terms);
        j["z"] = file.factors ? strings(*file.factors) : json(nullptr);
        out << j.dump() << '\n';
    } else {
        write_sequence_file(out, file);
    }
    return kOk;
}

int cmd_cf(const GlobalOptions& g, const InputOptions& opts, std::size_t n, const std::string& check,
           std::ostream& out, std::ostream& err) {
    if (!check.empty() && check != "oracle") throw ValidationError("--check accepts only 'oracle'");
    const Input in = resolve(opts);
    const FactorSequence zs = factors_for(in, n, g.budget());
    const PartialCF pcf = partial_cf(zs, n);
    const Rational value = partial_sum(from_factors(zs, n, g.budget()), n);
    if (check == "oracle") {
        const CFExpansion oracle = expand_rational(value);
        if (!(oracle == pcf.coefficients)) {
            err << "oracle mismatch: " << format_cf(oracle) << '\n';
            return kInvariant;
        }
    }
    if (g.json) {
        json j;
        j["n"] = n;
        j["class"] = to_string(FactorSequence::classify(std::span<const BigInt>(zs.factors().data(),
                                                                                std::max<std::size_t>(n, 2) - 1)));
        j["length"] = pcf.length();
        j["cf"] = strings(pcf.coefficients.vector());
        j["value"] = value.str();
        out << j.dump() << '\n';
    } else {
        out << format_cf(pcf.coefficients) << '\n';
    }
    return kOk;
}

int cmd_stream(const GlobalOptions& g, const InputOptions& opts, std::size_t k, bool oracle, std::ostream& out) {
    if (k < 1) throw ValidationError("--K must be >= 1");
    const Input in = resolve(opts);
    CoefficientStream s(make_source(in, g.budget()), oracle);
    s.extend(k);
    const StreamBatch b = s.batch();
    if (g.json) {
        json j;
        j["class"] = to_string(b.cls);
        j["n_used"] = b.n_used;
        j["certified"] = strings(b.certified);
        j["lengths"] = b.lengths;
        out << j.dump() << '\n';
    } else {
        out << format_cf(b.certified) << '\n';
    }
    return kOk;
}

int cmd_asymp(const GlobalOptions& g, const InputOptions& opts, std::size_t rows, double epsilon, std::ostream& out) {
    const Input in = resolve(opts);
    if (in.kind != Input::Kind::Recurrence) throw ValidationError("asymp needs a recurrence spec");
    if (rows < 2) throw ValidationError("--n must be >= 2");
    const unsigned digits = g.digits;
    const mpfr_prec_t prec = digits_to_bits(digits);

    Real lambda(prec), C(prec), C_err(prec);
    std::vector<std::optional<Real>> exact(rows + 1);
    if (const auto* s2 = std::get_if<SecondOrderSpec>(&*in.spec)) {
        const CEstimate est = estimate_C(*s2, digits, g.budget());
        lambda = est.lambda;
        C = est.value;
        C_err = est.error_bound;
        auto recon = reconstruct_lambda_range(*s2, rows, digits, g.budget());
        for (std::size_t n = 1; n <= rows; ++n) exact[n] = recon[n].exact;
    } else {
        const EmpiricalC est = estimate_C_lift(std::get<ThirdOrderSpec>(*in.spec), 12, digits, g.budget());
        lambda = est.lambda;
        C = est.value;
        C_err = est.change;
    }

    EngelCursor cursor(make_source(in, g.budget()));
    if (!cursor.ensure(rows + 1)) throw ValidationError("source exhausted");
    const EngelSequence seq(cursor.terms());
    const GrowthReport growth = growth_report(seq, lambda, epsilon, digits);
    const RothReport roth = roth_exponents(seq, rows - 1, digits);

    json j;
    j["lambda"] = lambda.str(digits);
    j["C"] = C.str(digits);
    j["C_err"] = C_err.str(6);
    j["rows"] = json::array();
    for (std::size_t n = 1; n <= rows; ++n) {
        json row;
        row["n"] = n;
        row["log_x"] = log_of(seq.x(n), prec).str(digits);
        row["exact"] = real_or_null(exact[n], digits);
        std::optional<Real> ge, lo, hi;
        if (n >= 2 && n - 2 < growth.rows.size()) ge = growth.rows[n - 2].exponent;
        if (n >= 2 && n - 2 < roth.records.size()) {
            lo = roth.records[n - 2].lower;
            hi = roth.records[n - 2].upper;
        }
        row["growth_exp"] = real_or_null(ge, digits);
        row["roth_lo"] = real_or_null(lo, digits);
        row["roth_hi"] = real_or_null(hi, digits);
        j["rows"].push_back(std::move(row));
    }
    if (g.json) {
        out << j.dump() << '\n';
        return kOk;
    }
    out << "lambda " << j["lambda"].get<std::string>() << '\n';
    out << "C      " << j["C"].get<std::string>() << " (+- " << j["C_err"].get<std::string>() << ")\n";
    out << "growth threshold (eps=" << epsilon << ") "
        << (growth.threshold ? std::to_string(*growth.threshold) : std::string("none")) << '\n';
    for (const auto& row : j["rows"]) {
        out << "n=" << row["n"].get<std::size_t>() << " log_x=" << row["log_x"].get<std::string>();
        for (const char* key : {"exact", "growth_exp", "roth_lo", "roth_hi"}) {
            if (!row[key].is_null()) out << ' ' << key << '=' << row[key].get<std::string>();
        }
        out << '\n';
    }
    return kOk;
}

int report(const std::vector<CheckLine>& lines, std::ostream& out) {
    bool ok = true;
    for (const auto& l : lines) {
        out << (l.pass ? "PASS " : "FAIL ") << l.name;
        if (!l.detail.empty()) out << "  " << l.detail;
        out << '\n';
        ok = ok && l.pass;
    }
    out << (ok ? "all " : "failures among ") << lines.size() << " checks\n";
    return ok ? kOk : kInvariant;
}

int cmd_verify(const GlobalOptions& g, const InputOptions& opts, VerifyOptions v, std::size_t n,
               std::ostream& out) {
    std::vector<CheckLine> lines;
    if (v.suite == "lift") {
        const Input in = resolve(opts);
        const auto* s2 = in.spec ? std::get_if<SecondOrderSpec>(&*in.spec) : nullptr;
        if (!s2) throw ValidationError("lift suite needs --d1/--G");
        const auto x = generate_recurrence(*s2, n, g.budget());
        const auto X = generate_recurrence(lift_spec(*s2), n + 1, g.budget());
        for (std::size_t k = 0; k < n; ++k) {
            lines.push_back({"lift X_" + std::to_string(k) + " X_" + std::to_string(k + 1) + " = x_" +
                                 std::to_string(k),
                             X[k] * X[k + 1] == x[k], ""});
        }
    } else if (v.suite == "identities") {
        const Input in = resolve(opts);
        const FactorSequence zs = factors_for(in, n, g.budget());
        for (std::size_t m = 3; m + 1 <= std::min(n, zs.count() + 1); ++m) {
            try {
                const auto r = verify_step_identities(zs, m);
                lines.push_back({"step identities n=" + std::to_string(m), true,
                                 "l_n=" + std::to_string(r.length_n) + " x_{n+1}=" + to_decimal(r.x_next)});
            } catch (const IdentityViolation& e) {
                lines.push_back({"step identities n=" + std::to_string(m), false, e.what()});
            }
        }
        if (lines.empty()) throw ValidationError("identities need n >= 4 and factors up to z_n");
    } else {
        lines = verify_random_suite(v);
    }
    return report(lines, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Continued fractions of Engel series with square divisibility"};
    app.fallthrough();
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_flag("--json", g.json, "JSON output");
    app.add_option("--bits", g.bits, "maximum total bits across generated terms")->check(CLI::PositiveNumber);
    app.add_option("--digits", g.digits, "decimal precision for real-valued output")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out_path, "write output to a file");

    InputOptions in;
    std::size_t n = 0, k = 0, rows = 8;
    std::string check, only;
    bool oracle = false;
    double epsilon = 0.1;
    VerifyOptions v;

    auto* gen = app.add_subcommand("gen", "generate x_1..x_n (or recurrence terms x_0..x_{n-1})");
    add_input_options(gen, in);
    gen->add_option("--n", n, "number of terms")->required()->check(CLI::PositiveNumber);

    auto* cf = app.add_subcommand("cf", "continued fraction of the partial sum S_n");
    add_input_options(cf, in);
    cf->add_option("--n", n, "partial sum index")->required()->check(CLI::PositiveNumber);
    cf->add_option("--check", check, "'oracle' compares with the Euclidean expansion");

    auto* st = app.add_subcommand("stream", "certified coefficients of the full series");
    add_input_options(st, in);
    st->add_option("--K", k, "minimum number of certified coefficients")->required();
    st->add_flag("--oracle", oracle, "use the interval oracle for every class");

    auto* as = app.add_subcommand("asymp", "growth constants and irrationality-exponent brackets");
    add_input_options(as, in);
    as->add_option("--n", rows, "rows to report");
    as->add_option("--epsilon", epsilon, "margin in x_{n+1} > x_n^{lambda - epsilon}");

    auto* ver = app.add_subcommand("verify", "run invariant suites");
    add_input_options(ver, in);
    ver->add_option("--suite", v.suite, "generic|z2|lengths|alphabet|all|lift|identities");
    ver->add_option("--trials", v.trials, "random trials per suite");
    ver->add_option("--maxn", v.maxn, "largest partial sum index");
    ver->add_option("--seed", v.seed, "random seed");
    ver->add_option("--n", n, "terms (lift) or top index (identities)");

    auto* pe = app.add_subcommand("paper-examples", "reproduce the reference example values");
    pe->add_option("--only", only, "one group")->check(CLI::IsMember(paper_example_groups()));

    std::vector<std::string> argv_store{"engelcf"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kOk : kValidation;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!g.out_path.empty()) {
        file.open(g.out_path);
        if (!file) {
            err << "cannot open " << g.out_path << '\n';
            return kValidation;
        }
        sink = &file;
    }

    try {
        if (*gen) return cmd_gen(g, in, n, *sink);
        if (*cf) return cmd_cf(g, in, n, check, *sink, err);
        if (*st) return cmd_stream(g, in, k, oracle, *sink);
        if (*as) return cmd_asymp(g, in, rows, epsilon, *sink);
        if (*ver) {
            if ((v.suite == "lift" || v.suite == "identities") && n == 0) {
                throw ValidationError("--n is required for the " + v.suite + " suite");
            }
            return cmd_verify(g, in, v, n, *sink);
        }
        if (*pe) return report(paper_examples(only), *sink);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const BudgetExceeded& e) {
        err << "budget: " << e.what() << '\n';
        return kBudget;
    } catch (const InvariantViolation& e) {
        err << "invariant: " << e.what() << '\n';
        return kInvariant;
    }
    return kValidation;
}

}  // namespace engelcf::cli
