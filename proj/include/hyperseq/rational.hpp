#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hyperseq {

/// Arbitrary-precision rational. GMP keeps results of arithmetic canonical
/// (reduced, positive denominator); every construction path from text or
/// from separate numerator/denominator goes through make_rat/parse_rat.
using Rat = mpq_class;
using BigInt = mpz_class;

Rat make_rat(const BigInt& num, const BigInt& den);

/// Accepts "123", "-7", "p/q". Decimal points and exponents are rejected so
/// that exactness survives parsing.
Rat parse_rat(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& r);

/// Double approximation (GMP truncation).
double to_double(const Rat& r);

/// Exact rational image of a finite double.
Rat rat_from_double(double x);

bool is_canonical(const Rat& r);

inline int sign(const Rat& r) { return sgn(r); }

/// r^e by repeated squaring; pow(0, 0) = 1.
inline Rat pow(Rat r, unsigned e) {
    Rat out(1);
    while (e > 0) {
        if (e & 1U) out *= r;
        e >>= 1U;
        if (e > 0) r *= r;
    }
    return out;
}

}  // namespace hyperseq
