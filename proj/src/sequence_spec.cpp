#include "hyperseq/sequence_spec.hpp"

#include <string>

#include "hyperseq/errors.hpp"
#include "hyperseq/exactpoly.hpp"

namespace hyperseq {

SequenceSpec::SequenceSpec(int k, RatPoly a, RatPoly b) : k_(k), a_(std::move(a)), b_(std::move(b)) {
    if (k_ < 3) throw InvalidSpec("recurrence length k must be at least 3, got " + std::to_string(k_));
    if (a_.is_zero()) throw InvalidSpec("A must not be the zero polynomial");
    if (!gcd(a_, b_).is_constant()) {
        throw InvalidSpec("A and B must be coprime; gcd = " + to_pretty_string(gcd(a_, b_)));
    }
}

Rat SequenceSpec::rho_exact() const {
    BigInt num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(k_), static_cast<unsigned long>(k_));
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(k_ - 1), static_cast<unsigned long>(k_ - 1));
    return make_rat(num, den);
}

double SequenceSpec::rho() const { return to_double(rho_exact()); }

}  // namespace hyperseq
