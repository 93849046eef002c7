#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseq/rational.hpp"

namespace hyperseq {

/// Univariate polynomial over Q, coefficients in ascending degree order.
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// is the empty vector.
class RatPoly {
  public:
    /// Degree reported for the zero polynomial. Compares below every real
    /// degree, so `deg(r) < deg(q)` holds for a zero remainder.
    static constexpr long kZeroDegree = std::numeric_limits<long>::min();

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs);
    RatPoly(std::initializer_list<long> coeffs);

    static RatPoly constant(const Rat& c);
    static RatPoly monomial(const Rat& c, std::size_t degree);
    /// The polynomial z.
    static RatPoly identity();

    [[nodiscard]] long degree() const noexcept {
        return coeffs_.empty() ? kZeroDegree : static_cast<long>(coeffs_.size()) - 1;
    }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    [[nodiscard]] std::span<const Rat> coeffs() const noexcept { return coeffs_; }
    /// Coefficient of z^i; zero past the degree.
    [[nodiscard]] Rat coeff(std::size_t i) const;
    /// Leading coefficient; zero for the zero polynomial.
    [[nodiscard]] Rat leading() const;

    RatPoly& operator+=(const RatPoly& rhs);
    RatPoly& operator-=(const RatPoly& rhs);
    RatPoly& operator*=(const RatPoly& rhs);
    RatPoly& operator*=(const Rat& s);

    friend RatPoly operator+(RatPoly lhs, const RatPoly& rhs) { return lhs += rhs; }
    friend RatPoly operator-(RatPoly lhs, const RatPoly& rhs) { return lhs -= rhs; }
    friend RatPoly operator*(const RatPoly& lhs, const RatPoly& rhs);
    friend RatPoly operator*(RatPoly lhs, const Rat& s) { return lhs *= s; }
    friend RatPoly operator*(const Rat& s, RatPoly rhs) { return rhs *= s; }
    RatPoly operator-() const;

    friend bool operator==(const RatPoly&, const RatPoly&) = default;

  private:
    void trim();

    std::vector<Rat> coeffs_;
};

/// P^e. Throws DomainError for 0^0.
RatPoly pow(const RatPoly& p, unsigned e);
RatPoly derivative(const RatPoly& p);
Rat eval(const RatPoly& p, const Rat& x);
/// Horner on the float-converted coefficients.
std::complex<double> eval(const RatPoly& p, std::complex<double> z);

struct DivRem {
    RatPoly quotient;
    RatPoly remainder;
};

/// Exact Euclidean division. Throws DivisionByZero when q is zero.
DivRem divrem(const RatPoly& p, const RatPoly& q);

/// Leading coefficient scaled to 1; zero stays zero.
RatPoly monic(const RatPoly& p);

/// Integer-coefficient polynomial with unit content and positive leading
/// coefficient, equal to p up to a nonzero rational factor.
RatPoly primitive_part(const RatPoly& p);

/// Parses the list format `[c0, c1, ..., cd]` (integers or p/q entries).
RatPoly parse_poly(std::string_view text);
/// Inverse of parse_poly; the zero polynomial prints as `[]`.
std::string to_list_string(const RatPoly& p);
/// Human-readable form, highest degree first, e.g. "z^2 - z - 6".
std::string to_pretty_string(const RatPoly& p, char var = 'z');

}  // namespace hyperseq
