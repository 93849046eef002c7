#pragma once

#include <string>
#include <vector>

#include "hyperseq/ratpoly.hpp"

namespace hyperseq {

/// Monic gcd; gcd(P, 0) = monic(P). Throws DomainError when both are zero.
RatPoly gcd(const RatPoly& p, const RatPoly& q);

/// Number of distinct real roots of p over the whole real line, by an exact
/// Sturm chain. Throws DomainError on the zero polynomial.
unsigned sturm_real_count(const RatPoly& p);

/// Distinct real roots of p in the half-open interval (lo, hi].
unsigned sturm_real_count(const RatPoly& p, const Rat& lo, const Rat& hi);

struct SquareFreeFactor {
    RatPoly factor;  // monic, square-free, nonconstant
    unsigned multiplicity;
};

/// p = constant * prod factor^multiplicity, factors pairwise coprime.
struct SquareFreeDecomposition {
    Rat constant;
    std::vector<SquareFreeFactor> factors;  // increasing multiplicity
};

/// Yun's algorithm. Throws DomainError on the zero polynomial.
SquareFreeDecomposition squarefree_decomposition(const RatPoly& p);

/// Product of the distinct monic square-free factors.
RatPoly squarefree_part(const RatPoly& p);

/// P'Q - Q'P.
RatPoly wronskian(const RatPoly& p, const RatPoly& q);

/// True iff every root of p is real, counted with multiplicity. Constants are
/// hyperbolic. Throws DomainError on the zero polynomial.
bool is_hyperbolic(const RatPoly& p);

struct InterlaceResult {
    bool interlace = false;
    bool degree_ok = false;  // |deg P - deg Q| <= 1
    bool wronskian_one_signed = false;
    std::string diagnostic;
};

/// Interlacing test for two hyperbolic polynomials: the degree gap is at
/// most one and W(P, Q) keeps one sign on the real line (no real root of odd
/// multiplicity, or W identically zero). Throws PreconditionError when either
/// input is zero or not hyperbolic.
InterlaceResult interlace_check(const RatPoly& p, const RatPoly& q);

/// Res(P, Q) = lc(P)^deg Q * prod_{P(a)=0} Q(a), via the subresultant PRS.
/// Throws DomainError when either input is the zero polynomial.
Rat resultant(const RatPoly& p, const RatPoly& q);

/// Disc(P) = (-1)^{d(d-1)/2} Res(P, P') / lc(P) for deg P = d >= 1.
Rat discriminant(const RatPoly& p);

}  // namespace hyperseq
