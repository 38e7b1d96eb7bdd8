#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "engelcf/asymptotics.hpp"
#include "engelcf/engel_cf.hpp"
#include "engelcf/errors.hpp"

namespace py = pybind11;

// Arbitrary-precision integers cross the boundary as Python ints.
namespace pybind11::detail {

template <>
struct type_caster<mpz_class> {
    PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        const std::string text = py::str(src);
        return value.set_str(text, 10) == 0;
    }

    static handle cast(const mpz_class& v, return_value_policy, handle) {
        return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    }
};

}  // namespace pybind11::detail

namespace {

using namespace engelcf;

using Ints = std::vector<BigInt>;

std::unique_ptr<EngelSource> source_from(const std::optional<Ints>& z, std::optional<unsigned> d1,
                                         const std::optional<Ints>& G, bool lift, const std::optional<BigInt>& u) {
    const int given = int(z.has_value()) + int(d1.has_value() || G.has_value()) + int(u.has_value());
    if (given != 1) throw ValidationError("give exactly one of z, (d1, G) or u");
    if (z) return make_factor_source(FactorSequence(*z));
    if (u) return make_ones_tail_source(*u);
    if (!d1 || !G) throw ValidationError("a recurrence needs both d1 and G");
    const SecondOrderSpec spec{*d1, *G};
    if (lift) return make_recurrence_source(lift_spec(spec));
    return make_recurrence_source(spec);
}

}  // namespace

PYBIND11_MODULE(engelcf, m) {
    m.doc() = "Continued fractions of Engel series with x_n^2 | x_{n+1}";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", base);

    m.def(
        "expand_rational",
        [](const BigInt& num, const BigInt& den) { return expand_rational(Rational(num, den)).vector(); },
        py::arg("num"), py::arg("den") = 1, "Euclidean continued fraction of num/den.");
    m.def(
        "evaluate",
        [](const Ints& a) {
            const Rational r = evaluate(a);
            return py::make_tuple(r.num(), r.den());
        },
        py::arg("coefficients"), "Value of [a0;a1,...] as (num, den).");
    m.def(
        "generate",
        [](unsigned d1, const Ints& G, std::size_t n, bool lift) {
            const SecondOrderSpec spec{d1, G};
            if (lift) return generate_recurrence(lift_spec(spec), n);
            return generate_recurrence(spec, n);
        },
        py::arg("d1"), py::arg("G"), py::arg("n"), py::arg("lift") = false,
        "First n terms of x_{n+2} x_n = x_{n+1}^d1 G(x_{n+1}), or of its third-order lift.");
    m.def(
        "factors_from_sequence", [](const Ints& x) { return factors_from_sequence(x).factors(); }, py::arg("x"),
        "Factors z_2, z_3, ... of an Engel sequence starting at x_1 = 1.");
    m.def(
        "terms_from_factors", [](const Ints& z, std::size_t n) { return from_factors(FactorSequence(z), n).terms(); },
        py::arg("z"), py::arg("n"));
    m.def(
        "partial_sum",
        [](const Ints& z, std::size_t n) {
            const Rational r = partial_sum(from_factors(FactorSequence(z), n), n);
            return py::make_tuple(r.num(), r.den());
        },
        py::arg("z"), py::arg("n"));
    m.def(
        "partial_cf", [](const Ints& z, std::size_t n) { return partial_cf(FactorSequence(z), n).coefficients.vector(); },
        py::arg("z"), py::arg("n"), "Continued fraction of S_n.");
    m.def(
        "stream",
        [](std::size_t K, std::optional<Ints> z, std::optional<unsigned> d1, std::optional<Ints> G, bool lift,
           std::optional<BigInt> u) { return stream(source_from(z, d1, G, lift, u), K).certified; },
        py::arg("K"), py::kw_only(), py::arg("z") = py::none(), py::arg("d1") = py::none(),
        py::arg("G") = py::none(), py::arg("lift") = false, py::arg("u") = py::none(),
        "At least K certified coefficients of the full series.");
    m.def(
        "dominant_root", [](unsigned d1, unsigned d2, unsigned digits) { return dominant_root(d1, d2, digits).str(digits); },
        py::arg("d1"), py::arg("d2"), py::arg("digits") = kDefaultDigits, "Largest root of t^2 - (d1 + d2) t + 1.");
    m.def(
        "estimate_C",
        [](unsigned d1, const Ints& G, unsigned digits) {
            const auto c = estimate_C(SecondOrderSpec{d1, G}, digits);
            return py::make_tuple(c.value.str(digits), c.error_bound.to_double());
        },
        py::arg("d1"), py::arg("G"), py::arg("digits") = kDefaultDigits,
        "Growth constant C in log x_n ~ C lambda^n, with a tail bound.");
}
