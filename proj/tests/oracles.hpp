#pragma once

// Slow reference computations that share no code with the library.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace oracle {

// Value of [a0;a1,...,ak] folded from the right.
inline mpq_class fold_cf(const std::vector<mpz_class>& a) {
    mpq_class v = a.back();
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        v = mpq_class(a[i]) + 1 / v;
        v.canonicalize();
    }
    return v;
}

// Euclidean expansion by repeated floor and reciprocal.
inline std::vector<mpz_class> euclid(mpq_class r) {
    std::vector<mpz_class> out;
    for (;;) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        out.push_back(a);
        r -= a;
        if (r == 0) return out;
        r = 1 / r;
    }
}

// x_1 = 1, x_2 = z_2, x_{j} = x_{j-1}^2 z_j.
inline std::vector<mpz_class> terms_from_factors(const std::vector<mpz_class>& z, std::size_t n) {
    std::vector<mpz_class> x{1};
    for (std::size_t j = 2; j <= n; ++j) {
        const mpz_class& zj = z[j - 2];
        x.push_back(j == 2 ? zj : mpz_class(x.back() * x.back() * zj));
    }
    return x;
}

inline mpq_class direct_sum(const std::vector<mpz_class>& x, std::size_t n) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < n; ++j) s += mpq_class(1, x[j]);
    return s;
}

inline mpz_class eval_poly(const std::vector<mpz_class>& coeffs, const mpz_class& x) {
    mpz_class v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

// x_{n+2} x_n = x_{n+1}^{d1} G(x_{n+1}), x_0 = x_1 = 1, G lowest degree first.
inline std::vector<mpz_class> second_order(unsigned d1, const std::vector<mpz_class>& G, std::size_t count) {
    std::vector<mpz_class> x{1, 1};
    while (x.size() < count) {
        const mpz_class& a = x[x.size() - 2];
        const mpz_class& b = x.back();
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), d1);
        p *= eval_poly(G, b);
        if (!mpz_divisible_p(p.get_mpz_t(), a.get_mpz_t())) return {};
        x.push_back(p / a);
    }
    x.resize(count);
    return x;
}

}  // namespace oracle
