#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "hyperseq/numroots.hpp"
#include "hyperseq/ratpoly.hpp"
#include "hyperseq/sequence_spec.hpp"

namespace hyperseq {

/// Walks P_0, P_1, ... keeping only the last k members.
class SequenceGenerator {
  public:
    explicit SequenceGenerator(const SequenceSpec& spec);

    /// Index of current().
    [[nodiscard]] long index() const noexcept { return index_; }
    [[nodiscard]] const RatPoly& current() const noexcept { return window_.back(); }
    /// Advances to P_{index()+1} and returns it.
    const RatPoly& next();

  private:
    SequenceSpec spec_;
    long index_ = 0;
    std::deque<RatPoly> window_;  // P_{index-k+1} .. P_index
};

/// Exact P_n. Throws IndexError for n < -k+1.
RatPoly gen_poly(const SequenceSpec& spec, long n);

/// P_0 .. P_n_last (n_last >= 0).
std::vector<RatPoly> gen_sequence(const SequenceSpec& spec, long n_last);

/// Power-series reciprocal of sum_j denom[j] t^j (coefficients in Q[z]) up to
/// t^n_max by long division. denom[0] must be a nonzero constant.
std::vector<RatPoly> series_inverse(const std::vector<RatPoly>& denom, long n_max);

/// Coefficients of t^0..t^N of 1/(1 + B t + A t^k) through series_inverse;
/// shares no code with SequenceGenerator.
std::vector<RatPoly> gf_oracle(const SequenceSpec& spec, long n_max);

enum class Verdict { Hyperbolic, NonHyperbolic, PrefilterOnly };
enum class Certification { SturmExact, FloatPrefilter };

std::string to_string(Verdict v);
std::string to_string(Certification c);

struct HyperbolicityReport {
    long n = 0;
    Verdict verdict = Verdict::PrefilterOnly;
    long degree = 0;
    /// Distinct real roots (exact when certified, float count otherwise).
    long num_real_distinct = 0;
    /// Distinct roots overall, i.e. the degree of the square-free part.
    long num_distinct = 0;
    Certification certification = Certification::FloatPrefilter;
    std::optional<Complex> witness;
};

/// Exact verdict: hyperbolic iff each square-free factor F has
/// sturm_real_count(F) = deg F. Throws DomainError on zero input.
HyperbolicityReport is_hyperbolic_exact(const RatPoly& p);

/// Newton quotients of P_n evaluated through the recurrence in floating
/// point, which is far better conditioned near the limiting curve than
/// Horner on the expanded coefficients.
NewtonOracle sequence_newton_oracle(const SequenceSpec& spec, long n);

/// Zeros of P_n (n >= 1, deg P_n >= 1): Aberth driven by the recurrence
/// evaluator, clustered and classified.
std::vector<ZeroRecord> sequence_zeros(const SequenceSpec& spec, long n, double tau_real = kDefaultTauReal,
                                       const RootOptions& options = {});
/// Same with P_n already at hand.
std::vector<ZeroRecord> sequence_zeros(const SequenceSpec& spec, long n, const RatPoly& pn,
                                       double tau_real = kDefaultTauReal, const RootOptions& options = {});

struct ScanOptions {
    double tau_real = kDefaultTauReal;
    bool use_prefilter = true;
    RootOptions roots;
};

struct ScanResult {
    std::optional<long> n_star;
    std::vector<HyperbolicityReport> reports;  // indices 1 .. n_star (or n_max)
};

/// Smallest n <= n_max with P_n not hyperbolic, certified exactly. Indices
/// skipped by a clean float verdict are re-certified exactly whenever an n*
/// is reported, so every report below n* is Sturm-certified.
ScanResult first_nonhyperbolic(const SequenceSpec& spec, long n_max, const ScanOptions& options = {});

}  // namespace hyperseq
