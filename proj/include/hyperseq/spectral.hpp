#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperseq/numroots.hpp"
#include "hyperseq/ratpoly.hpp"
#include "hyperseq/sequence_spec.hpp"

namespace hyperseq {

/// Double-precision evaluation of A, B and f = B^k/A for one spec.
class SpecEvaluator {
  public:
    explicit SpecEvaluator(const SequenceSpec& spec);

    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] Complex a(Complex z) const { return horner(a_, z); }
    [[nodiscard]] Complex b(Complex z) const { return horner(b_, z); }
    /// Sum |a_i| |z|^i, the scale for deciding |A(z)| ~ 0.
    [[nodiscard]] double a_scale(Complex z) const;
    /// Im(B^k conj A), finite everywhere, same zeros as Im f off A = 0.
    [[nodiscard]] double numerator_im(Complex z) const;

  private:
    static Complex horner(const std::vector<double>& c, Complex z);

    int k_;
    std::vector<double> a_;
    std::vector<double> b_;
};

struct FValue {
    Complex f;  // B^k/A, NaN when pole
    double numerator_im = 0.0;
    bool pole = false;
};

FValue f_eval(const SequenceSpec& spec, Complex z);
FValue f_eval(const SpecEvaluator& ev, Complex z);

struct ExactRoot {
    Complex location;
    unsigned multiplicity = 1;
    bool is_real = false;
};

/// Distinct roots of p, multiplicities from the square-free decomposition.
/// Each factor's Sturm count decides how many roots are real; those are
/// put exactly on the axis. Sorted by (re, im); empty for constants.
std::vector<ExactRoot> exact_roots(const RatPoly& p);

enum class CriticalKind { WronskianZero, Pole };
std::string to_string(CriticalKind kind);

struct CriticalPoint {
    Complex location;
    unsigned multiplicity = 1;
    CriticalKind kind = CriticalKind::WronskianZero;
};

/// B^{k-1} (k A B' - B A'), which equals wronskian(B^k, A).
RatPoly critical_wronskian(const SequenceSpec& spec);

/// Zeros of the Wronskian of (B^k, A) with multiplicities, then the roots of
/// A as poles. Throws DomainError when the Wronskian vanishes identically.
std::vector<CriticalPoint> critical_points(const SequenceSpec& spec);

/// k^k c^{k-1} a^{k-1} + (-1)^{k-1} l^l (k-l)^{k-l} c^{l-1} b^k a^{k-l-1}.
/// Requires 1 <= l < k and gcd(l, k) = 1, else DomainError.
Rat trinomial_disc(int k, int l, const Rat& a, const Rat& b, const Rat& c);

/// A^{k-2} (k^k A + (-1)^{k-1} (k-1)^{k-1} B^k); equals trinomial_disc(k, 1, A, B, 1).
Rat reversed_trinomial_disc(int k, const Rat& a, const Rat& b);

struct EndpointRecord {
    Complex location;
    bool is_real = false;
    Complex f_value;
    double rho = 0.0;
    double check_residual = 0.0;
};

struct EndpointLocus {
    /// k^k A + (-1)^{k-1} (k-1)^{k-1} B^k.
    RatPoly g;
    /// g with every common factor with A removed.
    RatPoly reduced;
    std::vector<EndpointRecord> endpoints;  // sorted by (re, im)
};

/// Roots of G away from A = 0. Real endpoints are counted exactly by Sturm
/// sequences on the square-free factors. Throws DomainError when G = 0.
EndpointLocus endpoint_locus(const SequenceSpec& spec);

enum class CharForm { PaperLiteral, RecurrenceStandard };
std::string to_string(CharForm form);
/// Throws ParseError on anything but "paper-literal" / "recurrence-standard".
CharForm parse_char_form(const std::string& text);

/// Coefficients in lambda (ascending) of the characteristic polynomial with
/// given values of A and B.
std::vector<Rat> char_poly_coeffs(int k, const Rat& a, const Rat& b, CharForm form);

struct CharRootSet {
    Complex z;
    std::vector<Complex> roots;  // k values, with multiplicity
    std::vector<double> moduli_sorted;
    double min_modulus_gap = 0.0;
    bool pole = false;  // |A(z)| negligible
};

/// Roots of lambda^k + B lambda + A (paper-literal) or
/// lambda^k + B lambda^{k-1} + A (recurrence-standard) at z.
CharRootSet char_roots(const SequenceSpec& spec, Complex z, CharForm form);

inline constexpr int kMaxEquimodularK = 6;

/// Res_lambda(P(lambda), P(w lambda)) at rational z, as a polynomial in w, by
/// fraction-free elimination of the Sylvester matrix. Throws
/// PreconditionError for k > kMaxEquimodularK and DomainError when A(z) = 0.
RatPoly equimodular_rho(const SequenceSpec& spec, const Rat& z, CharForm form);

/// rho(w) / (A(z) (w-1)^k); throws DomainError if the division is not exact.
RatPoly equimodular_delta(const SequenceSpec& spec, const Rat& z, CharForm form);

/// +1 or -1 when the coefficient list reads the same reversed up to that
/// sign, 0 otherwise.
int reciprocal_sign(const RatPoly& p);

struct DeltaAtOne {
    Rat delta;
    Rat disc;
    std::optional<Rat> ratio;  // delta / disc when disc != 0
    bool both_zero = false;    // disc = 0 and delta = 0
};

/// Delta(1) against Disc_lambda(P(lambda, z)).
DeltaAtOne delta_at_one(const SequenceSpec& spec, const Rat& z, CharForm form);

}  // namespace hyperseq
