#include "hyperseq/exactpoly.hpp"

#include <utility>

#include "hyperseq/errors.hpp"

namespace hyperseq {

namespace {

// Integer polynomial, ascending, no trailing zeros. Used for the remainder
// sequences where mpz arithmetic avoids the gcd cost of mpq normalization.
using ZPoly = std::vector<BigInt>;

long zdeg(const ZPoly& p) { return p.empty() ? RatPoly::kZeroDegree : static_cast<long>(p.size()) - 1; }

void ztrim(ZPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

BigInt zcontent(const ZPoly& p) {
    BigInt g(0);
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void zdivexact(ZPoly& p, const BigInt& d) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

// p = scale * result with result integral and primitive, positive leading
// coefficient.
std::pair<ZPoly, Rat> to_primitive(const RatPoly& p) {
    const RatPoly pp = primitive_part(p);
    ZPoly z;
    z.reserve(pp.coeffs().size());
    for (const auto& c : pp.coeffs()) z.push_back(c.get_num());
    Rat scale = p.leading() / pp.leading();
    return {std::move(z), scale};
}

RatPoly from_zpoly(const ZPoly& p) {
    std::vector<Rat> c;
    c.reserve(p.size());
    for (const auto& v : p) c.emplace_back(v);
    return RatPoly(std::move(c));
}

ZPoly zderivative(const ZPoly& p) {
    ZPoly d;
    if (p.size() <= 1) return d;
    d.resize(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<unsigned long>(i);
    ztrim(d);
    return d;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly zprem(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    const long db = zdeg(b);
    long e = zdeg(a) - db + 1;
    if (e <= 0) return r;
    const BigInt& lb = b.back();
    BigInt t;
    while (!r.empty() && zdeg(r) >= db) {
        const long shift = zdeg(r) - db;
        const BigInt lr = r.back();
        for (auto& c : r) c *= lb;
        for (long j = 0; j <= db; ++j) {
            t = lr * b[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(j + shift)] -= t;
        }
        r.pop_back();
        ztrim(r);
        --e;
    }
    if (e > 0 && !r.empty()) {
        BigInt f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : r) c *= f;
    }
    return r;
}

int zsign_at(const ZPoly& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return sgn(acc);
}

// Sturm chain of p with positive-constant normalization at every step.
std::vector<ZPoly> sturm_chain(const RatPoly& p) {
    std::vector<ZPoly> chain;
    chain.push_back(to_primitive(p).first);
    ZPoly d = zderivative(chain.back());
    if (d.empty()) return chain;
    {
        const BigInt c = zcontent(d);
        zdivexact(d, c);
    }
    chain.push_back(std::move(d));
    while (true) {
        const ZPoly& a = chain[chain.size() - 2];
        const ZPoly& b = chain.back();
        ZPoly r = zprem(a, b);
        if (r.empty()) break;
        // prem = lc(b)^(delta+1) * rem; flip so the stored element is a
        // positive multiple of -rem.
        const long delta = zdeg(a) - zdeg(b);
        const bool lc_power_negative = sgn(b.back()) < 0 && ((delta + 1) % 2 != 0);
        BigInt c = zcontent(r);
        if (!lc_power_negative) c = -c;
        zdivexact(r, c);
        chain.push_back(std::move(r));
    }
    return chain;
}

unsigned sign_changes(const std::vector<int>& signs) {
    unsigned changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

unsigned variations_at(const std::vector<ZPoly>& chain, const Rat& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) signs.push_back(zsign_at(q, x));
    return sign_changes(signs);
}

}  // namespace

RatPoly gcd(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() && q.is_zero()) throw DomainError("gcd: both arguments are zero");
    if (p.is_zero()) return monic(q);
    if (q.is_zero()) return monic(p);
    ZPoly a = to_primitive(p).first;
    ZPoly b = to_primitive(q).first;
    if (zdeg(a) < zdeg(b)) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = zprem(a, b);
        if (!r.empty()) zdivexact(r, zcontent(r));
        a = std::move(b);
        b = std::move(r);
    }
    return monic(from_zpoly(a));
}

unsigned sturm_real_count(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("sturm_real_count: zero polynomial");
    if (p.is_constant()) return 0;
    const auto chain = sturm_chain(p);
    std::vector<int> at_pos, at_neg;
    for (const auto& q : chain) {
        const int s = sgn(q.back());
        at_pos.push_back(s);
        at_neg.push_back(zdeg(q) % 2 == 0 ? s : -s);
    }
    return sign_changes(at_neg) - sign_changes(at_pos);
}

unsigned sturm_real_count(const RatPoly& p, const Rat& lo, const Rat& hi) {
    if (p.is_zero()) throw DomainError("sturm_real_count: zero polynomial");
    if (lo >= hi || p.is_constant()) return 0;
    // Strip roots sitting exactly on the interval ends so that the chain is
    // evaluated away from zeros of p.
    RatPoly rest = p;
    bool hi_is_root = false;
    for (const Rat* end : {&lo, &hi}) {
        const RatPoly lin(std::vector<Rat>{-*end, Rat(1)});
        while (sgn(eval(rest, *end)) == 0) {
            rest = divrem(rest, lin).quotient;
            if (end == &hi) hi_is_root = true;
        }
    }
    unsigned count = hi_is_root ? 1U : 0U;
    if (rest.is_constant()) return count;
    const auto chain = sturm_chain(rest);
    return count + variations_at(chain, lo) - variations_at(chain, hi);
}

SquareFreeDecomposition squarefree_decomposition(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("squarefree_decomposition: zero polynomial");
    SquareFreeDecomposition out;
    out.constant = p.leading();
    if (p.is_constant()) return out;
    const RatPoly f = monic(p);
    const RatPoly df = derivative(f);
    const RatPoly a0 = gcd(f, df);
    RatPoly b = divrem(f, a0).quotient;
    RatPoly c = divrem(df, a0).quotient;
    RatPoly d = c - derivative(b);
    unsigned i = 1;
    while (!b.is_constant()) {
        const RatPoly a = d.is_zero() ? monic(b) : gcd(b, d);
        if (!a.is_constant()) out.factors.push_back({a, i});
        b = divrem(b, a).quotient;
        c = divrem(d, a).quotient;
        d = c - derivative(b);
        ++i;
    }
    return out;
}

RatPoly squarefree_part(const RatPoly& p) {
    RatPoly out = RatPoly::constant(Rat(1));
    for (const auto& f : squarefree_decomposition(p).factors) out *= f.factor;
    return out;
}

RatPoly wronskian(const RatPoly& p, const RatPoly& q) { return derivative(p) * q - derivative(q) * p; }

bool is_hyperbolic(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("is_hyperbolic: zero polynomial");
    if (p.is_constant()) return true;
    const RatPoly s = squarefree_part(p);
    return sturm_real_count(s) == static_cast<unsigned>(s.degree());
}

InterlaceResult interlace_check(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() || q.is_zero()) throw PreconditionError("interlace_check: zero polynomial");
    if (!is_hyperbolic(p) || !is_hyperbolic(q)) {
        throw PreconditionError("interlace_check: inputs must be hyperbolic");
    }
    InterlaceResult r;
    const long gap = p.degree() - q.degree();
    r.degree_ok = gap >= -1 && gap <= 1;
    const RatPoly w = wronskian(p, q);
    if (w.is_zero()) {
        r.wronskian_one_signed = true;
    } else {
        r.wronskian_one_signed = true;
        for (const auto& f : squarefree_decomposition(w).factors) {
            if (f.multiplicity % 2 == 1 && sturm_real_count(f.factor) > 0) {
                r.wronskian_one_signed = false;
                break;
            }
        }
    }
    r.interlace = r.degree_ok && r.wronskian_one_signed;
    if (!r.degree_ok) {
        r.diagnostic = "degree gap " + std::to_string(gap) + " exceeds 1";
    } else if (!r.wronskian_one_signed) {
        r.diagnostic = "Wronskian changes sign on the real line";
    } else {
        r.diagnostic = w.is_zero() ? "Wronskian vanishes identically" : "ok";
    }
    return r;
}

Rat resultant(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() || q.is_zero()) throw DomainError("resultant: zero polynomial");
    const long dp = p.degree();
    const long dq = q.degree();
    if (dp == 0 || dq == 0) {
        Rat r(1);
        const Rat& base = dp == 0 ? p.coeffs()[0] : q.coeffs()[0];
        const long e = dp == 0 ? dq : dp;
        for (long i = 0; i < e; ++i) r *= base;
        return r;
    }
    auto [a, ca] = to_primitive(p);
    auto [b, cb] = to_primitive(q);
    Rat t(1);
    for (long i = 0; i < dq; ++i) t *= ca;
    for (long i = 0; i < dp; ++i) t *= cb;
    int s = 1;
    if (zdeg(a) < zdeg(b)) {
        std::swap(a, b);
        if (zdeg(a) % 2 == 1 && zdeg(b) % 2 == 1) s = -1;
    }
    BigInt g(1);
    Rat h(1);
    while (true) {
        const long delta = zdeg(a) - zdeg(b);
        if (zdeg(a) % 2 == 1 && zdeg(b) % 2 == 1) s = -s;
        ZPoly r = zprem(a, b);
        a = std::move(b);
        if (r.empty()) return Rat(0);
        // divisor g * h^delta is integral along the subresultant chain
        Rat div = g;
        for (long i = 0; i < delta; ++i) div *= h;
        const BigInt divisor = div.get_num();
        zdivexact(r, divisor);
        b = std::move(r);
        g = a.back();
        if (delta >= 1) {
            Rat num(1);
            for (long i = 0; i < delta; ++i) num *= g;
            Rat den(1);
            for (long i = 0; i < delta - 1; ++i) den *= h;
            h = num / den;
        }
        if (zdeg(b) <= 0) break;
    }
    const long da = zdeg(a);
    Rat num(1);
    for (long i = 0; i < da; ++i) num *= b.back();
    Rat den(1);
    for (long i = 0; i < da - 1; ++i) den *= h;
    return Rat(s) * t * num / den;
}

Rat discriminant(const RatPoly& p) {
    const long d = p.degree();
    if (d < 1) throw DomainError("discriminant: degree must be at least 1");
    Rat r = resultant(p, derivative(p)) / p.leading();
    if ((d * (d - 1) / 2) % 2 != 0) r = -r;
    return r;
}

}  // namespace hyperseq
