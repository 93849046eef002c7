#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hyperseq/ratpoly.hpp"
#include "hyperseq/sequence_spec.hpp"

namespace hyperseq {

using Complex = std::complex<double>;

/// z^e by repeated squaring (std::pow on complex goes through exp/log).
inline Complex ipow(Complex z, unsigned e) {
    Complex r(1.0);
    while (e > 0) {
        if (e & 1U) r *= z;
        e >>= 1U;
        if (e > 0) z *= z;
    }
    return r;
}

using ComplexExt = std::complex<long double>;

/// Complex polynomial, ascending coefficients, nonzero leading coefficient.
/// May carry an extended-precision copy of the same coefficients, used to
/// polish simple roots after the double-precision iteration.
class CPoly {
  public:
    /// Throws DomainError when every coefficient is zero.
    explicit CPoly(std::vector<Complex> coeffs);
    CPoly(std::vector<Complex> coeffs, std::vector<ComplexExt> extended);

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] const std::vector<ComplexExt>& extended() const noexcept { return extended_; }
    [[nodiscard]] Complex operator()(Complex z) const;

  private:
    std::vector<Complex> coeffs_;
    std::vector<ComplexExt> extended_;
};

/// Float image of p, rescaled by a power of two so the largest coefficient
/// has magnitude in [1, 2). Roots are unchanged; huge exact coefficients do
/// not overflow. The extended copy is rounded from the exact values.
CPoly to_cpoly(const RatPoly& p);

/// Backward-error style residual |P(z)| / sum |c_i| |z|^i, evaluated through
/// the reversed polynomial when |z| > 1.
double scaled_residual(const CPoly& p, Complex z);

/// min(Cauchy, Fujiwara) upper bound on the root moduli.
double root_radius_bound(const CPoly& p);

enum ZeroFlag : unsigned {
    kZeroFlagNone = 0,
    kUnconverged = 1U << 0,
    kPoleAdjacent = 1U << 1,
};

/// "unconverged;pole-adjacent" style rendering; empty when no flag is set.
std::string flags_to_string(unsigned flags);

struct ZeroRecord {
    Complex location;
    double residual = 0.0;
    int cluster_size = 1;
    bool is_real = false;
    double im_f = 0.0;
    double re_f_signed = 0.0;
    unsigned flags = kZeroFlagNone;

    [[nodiscard]] bool converged() const noexcept { return (flags & kUnconverged) == 0; }
};

struct RootOptions {
    int max_iterations = 500;
    /// Per-root stop when |correction| < step_tol * (1 + |z|).
    double step_tol = 1e-13;
    /// Roots closer than cluster_tol * (1 + |z|) merge into one record.
    double cluster_tol = 1e-6;
    /// Angle offset of the initial circle of guesses, radians.
    double angle_offset = 0.4;
};

/// Newton quotient P(z)/P'(z) and whether |P(z)| is already at rounding
/// level (further corrections are noise).
struct NewtonStep {
    Complex quotient;
    bool at_noise_level = false;
};
using NewtonOracle = std::function<NewtonStep(Complex)>;

/// Newton quotient of an explicit coefficient list, overflow-safe for
/// large |z| through the reversed polynomial.
NewtonStep newton_step(const CPoly& p, Complex z);

/// Starting points for simultaneous iteration: one circle per edge of the
/// upper convex hull of (i, log|c_i|), with as many points as the edge is
/// wide, all rotated by `angle_offset`.
std::vector<Complex> initial_guesses(const CPoly& p, double angle_offset);

/// Raw Aberth-Ehrlich iteration from the given starting points.
/// `converged[i]` reports the per-root stop criterion.
std::vector<Complex> aberth(std::vector<Complex> z, const NewtonOracle& oracle, const RootOptions& options,
                            std::vector<bool>& converged);

/// All roots of p, clustered; the cluster sizes add up to deg p. Residuals
/// are filled in, classification fields are left for classify_zeros.
/// Throws PreconditionError when deg p < 1.
std::vector<ZeroRecord> find_roots(const CPoly& p, const RootOptions& options = {});

/// Same, with Newton quotients supplied by `oracle` (a better conditioned
/// evaluation of the same polynomial); `p` provides the degree, the initial
/// radius and the reported residuals.
std::vector<ZeroRecord> find_roots(const CPoly& p, const NewtonOracle& oracle, const RootOptions& options = {});

/// Merge approximations closer than cluster_tol*(1+|z|) (single linkage).
std::vector<ZeroRecord> cluster_roots(const std::vector<Complex>& roots, const std::vector<bool>& converged,
                                      double cluster_tol);

inline constexpr double kDefaultTauReal = 1e-8;

/// Fills is_real (|Im z| <= tau_real (1 + |z|)), im_f = Im(B^k/A) and
/// re_f_signed = (-1)^k Re(B^k/A). Roots with |A(z)| below 1e-12 of the
/// coefficient scale of A at |z| are flagged pole-adjacent.
std::vector<ZeroRecord> classify_zeros(std::vector<ZeroRecord> roots, const SequenceSpec& spec,
                                       double tau_real = kDefaultTauReal);

}  // namespace hyperseq
