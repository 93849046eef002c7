#pragma once

// Shared generators and independent oracles for the test suites.

#include <cstdint>
#include <random>
#include <vector>

#include "hyperseq/exactpoly.hpp"
#include "hyperseq/ratpoly.hpp"
#include "hyperseq/sequence_spec.hpp"

namespace hyperseq::testing {

inline RatPoly random_int_poly(std::mt19937_64& rng, long max_degree, long height, bool exact_degree = false) {
    std::uniform_int_distribution<long> deg_dist(0, max_degree);
    std::uniform_int_distribution<long> coef(-height, height);
    const long d = exact_degree ? max_degree : deg_dist(rng);
    std::vector<Rat> c(static_cast<std::size_t>(d + 1));
    for (auto& v : c) v = coef(rng);
    while (sgn(c.back()) == 0) c.back() = coef(rng);
    return RatPoly(std::move(c));
}

inline Rat random_rat(std::mt19937_64& rng, long height) {
    std::uniform_int_distribution<long> num(-height, height);
    std::uniform_int_distribution<long> den(1, height);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

/// Determinant by plain Gaussian elimination over Q.
inline Rat determinant(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    Rat det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(m[piv][col]) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(m[r][col]) == 0) continue;
            const Rat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Resultant as the determinant of the Sylvester matrix (rows of P first).
inline Rat sylvester_resultant(const RatPoly& p, const RatPoly& q) {
    const auto m = static_cast<std::size_t>(p.degree());
    const auto n = static_cast<std::size_t>(q.degree());
    if (m + n == 0) return Rat(1);
    std::vector<std::vector<Rat>> s(m + n, std::vector<Rat>(m + n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = p.coeff(m - i);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = q.coeff(n - i);
    return determinant(std::move(s));
}

/// (-1)^{d(d-1)/2} Res(P, P') / lc(P), with the Sylvester determinant.
inline Rat sylvester_discriminant(const RatPoly& p) {
    const long d = p.degree();
    RatPoly dp;
    {
        std::vector<Rat> c;
        for (long i = 1; i <= d; ++i) c.push_back(p.coeff(static_cast<std::size_t>(i)) * i);
        dp = RatPoly(std::move(c));
    }
    Rat r = sylvester_resultant(p, dp) / p.leading();
    if ((d * (d - 1) / 2) % 2 != 0) r = -r;
    return r;
}

/// Valid spec with deg A, deg B <= max_degree and integer coefficients of
/// height <= height.
inline SequenceSpec random_spec(std::mt19937_64& rng, int k, long max_degree = 3, long height = 5) {
    for (;;) {
        RatPoly a = random_int_poly(rng, max_degree, height);
        RatPoly b = random_int_poly(rng, max_degree, height);
        if (gcd(a, b).degree() > 0) continue;
        return SequenceSpec(k, std::move(a), std::move(b));
    }
}

inline RatPoly linear(const Rat& root) { return RatPoly(std::vector<Rat>{-root, Rat(1)}); }

}  // namespace hyperseq::testing
