#include "hyperseq/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperseq/errors.hpp"
#include "hyperseq/exactpoly.hpp"

namespace hyperseq {

SequenceGenerator::SequenceGenerator(const SequenceSpec& spec) : spec_(spec) {
    for (int i = 0; i < spec.k() - 1; ++i) window_.emplace_back();
    window_.push_back(RatPoly::constant(Rat(1)));
}

const RatPoly& SequenceGenerator::next() {
    // P_n = -B P_{n-1} - A P_{n-k}; window_.front() is P_{n-k}.
    RatPoly pn = -(spec_.b() * window_.back());
    pn -= spec_.a() * window_.front();
    window_.pop_front();
    window_.push_back(std::move(pn));
    ++index_;
    return window_.back();
}

RatPoly gen_poly(const SequenceSpec& spec, long n) {
    if (n < -spec.k() + 1) {
        throw IndexError("gen_poly: index " + std::to_string(n) + " below -k+1 = " + std::to_string(-spec.k() + 1));
    }
    if (n < 0) return {};
    SequenceGenerator gen(spec);
    while (gen.index() < n) gen.next();
    return gen.current();
}

std::vector<RatPoly> gen_sequence(const SequenceSpec& spec, long n_last) {
    if (n_last < 0) throw IndexError("gen_sequence: negative last index");
    std::vector<RatPoly> out;
    out.reserve(static_cast<std::size_t>(n_last + 1));
    SequenceGenerator gen(spec);
    out.push_back(gen.current());
    while (gen.index() < n_last) out.push_back(gen.next());
    return out;
}

std::vector<RatPoly> series_inverse(const std::vector<RatPoly>& denom, long n_max) {
    if (denom.empty() || !denom[0].is_constant() || denom[0].is_zero()) {
        throw DomainError("series_inverse: constant term must be a nonzero constant");
    }
    const Rat inv0 = 1 / denom[0].leading();
    const auto order = static_cast<std::size_t>(n_max + 1);
    std::vector<RatPoly> s(order);
    s[0] = RatPoly::constant(inv0);
    for (std::size_t n = 1; n < order; ++n) {
        RatPoly acc;
        for (std::size_t j = 1; j < denom.size() && j <= n; ++j) {
            if (denom[j].is_zero() || s[n - j].is_zero()) continue;
            acc += denom[j] * s[n - j];
        }
        s[n] = acc * (-inv0);
    }
    return s;
}

std::vector<RatPoly> gf_oracle(const SequenceSpec& spec, long n_max) {
    if (n_max < 0) throw IndexError("gf_oracle: negative order");
    std::vector<RatPoly> denom(static_cast<std::size_t>(spec.k() + 1));
    denom[0] = RatPoly::constant(Rat(1));
    denom[1] = spec.b();
    denom[static_cast<std::size_t>(spec.k())] = spec.a();
    return series_inverse(denom, n_max);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Hyperbolic: return "hyperbolic";
        case Verdict::NonHyperbolic: return "non-hyperbolic";
        case Verdict::PrefilterOnly: return "prefilter-only";
    }
    return "?";
}

std::string to_string(Certification c) {
    return c == Certification::SturmExact ? "sturm-exact" : "float-prefilter";
}

HyperbolicityReport is_hyperbolic_exact(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("is_hyperbolic_exact: zero polynomial");
    HyperbolicityReport r;
    r.degree = p.degree();
    r.certification = Certification::SturmExact;
    bool all_real = true;
    for (const auto& f : squarefree_decomposition(p).factors) {
        const long real = sturm_real_count(f.factor);
        r.num_real_distinct += real;
        r.num_distinct += f.factor.degree();
        if (real < f.factor.degree()) all_real = false;
    }
    r.verdict = all_real ? Verdict::Hyperbolic : Verdict::NonHyperbolic;
    return r;
}

NewtonOracle sequence_newton_oracle(const SequenceSpec& spec, long n) {
    if (n < 1) throw IndexError("sequence_newton_oracle: n must be positive");
    const CPoly a = to_cpoly(spec.a());
    const double a_unscale = std::abs(to_double(spec.a().leading())) / std::abs(a.coeffs().back());
    std::vector<Complex> b_coeffs{Complex(0.0)};
    double b_unscale = 0.0;
    if (!spec.b().is_zero()) {
        const CPoly b = to_cpoly(spec.b());
        b_coeffs = b.coeffs();
        b_unscale = std::abs(to_double(spec.b().leading())) / std::abs(b.coeffs().back());
    }
    const int k = spec.k();
    return [a = a.coeffs(), a_unscale, b = std::move(b_coeffs), b_unscale, k, n](Complex z) {
        constexpr double u = std::numeric_limits<double>::epsilon() / 2;
        // value, derivative and absolute bound of a polynomial at z
        auto horner = [z](const std::vector<Complex>& c, double scale, Complex& v, Complex& d, double& s) {
            v = 0.0;
            d = 0.0;
            s = 0.0;
            const double az = std::abs(z);
            for (auto it = c.rbegin(); it != c.rend(); ++it) {
                d = d * z + v;
                v = v * z + *it;
                s = s * az + std::abs(*it);
            }
            v *= scale;
            d *= scale;
            s *= scale;
        };
        Complex av, ad, bv, bd;
        double as, bs;
        horner(a, a_unscale, av, ad, as);
        horner(b, b_unscale, bv, bd, bs);

        // Ring buffers over P_{m-k+1..m}: value, derivative, and a propagated
        // rounding-error surrogate. The surrogate obeys the same recurrence,
        // driven by the local rounding magnitude with a deterministic
        // rotating phase, so it grows like the actual error does instead of
        // like a worst-case bound.
        const auto kk = static_cast<std::size_t>(k);
        std::vector<Complex> pv(kk, Complex(0.0)), pd(kk, Complex(0.0)), pe(kk, Complex(0.0));
        std::size_t head = kk - 1;  // slot of P_0
        pv[head] = 1.0;
        const Complex golden = std::polar(1.0, 2.399963229728653);
        Complex phase(1.0);
        for (long m = 1; m <= n; ++m) {
            const std::size_t prev = head;               // P_{m-1}
            const std::size_t oldest = (head + 1) % kk;  // P_{m-k}, overwritten by P_m
            const Complex v = -bv * pv[prev] - av * pv[oldest];
            const Complex d = -bd * pv[prev] - bv * pd[prev] - ad * pv[oldest] - av * pd[oldest];
            phase *= golden;
            const double local = u * (bs * std::abs(pv[prev]) + as * std::abs(pv[oldest]) + 2.0 * std::abs(v));
            const Complex e = -bv * pe[prev] - av * pe[oldest] + local * phase;
            pv[oldest] = v;
            pd[oldest] = d;
            pe[oldest] = e;
            head = oldest;
            const double big = std::max(std::abs(v), std::abs(d));
            if (big > 0x1p+600) {
                for (std::size_t i = 0; i < kk; ++i) {
                    pv[i] *= 0x1p-600;
                    pd[i] *= 0x1p-600;
                    pe[i] *= 0x1p-600;
                }
            }
        }
        NewtonStep step;
        const Complex v = pv[head], d = pd[head];
        step.at_noise_level = std::abs(v) <= 4.0 * std::abs(pe[head]);
        step.quotient = d == Complex(0.0) ? Complex(0.0) : v / d;
        return step;
    };
}

std::vector<ZeroRecord> sequence_zeros(const SequenceSpec& spec, long n, const RatPoly& pn, double tau_real,
                                       const RootOptions& options) {
    if (pn.degree() < 1) throw PreconditionError("sequence_zeros: P_n has no zeros (constant)");
    const CPoly cp = to_cpoly(pn);
    auto records = find_roots(cp, sequence_newton_oracle(spec, n), options);
    return classify_zeros(std::move(records), spec, tau_real);
}

std::vector<ZeroRecord> sequence_zeros(const SequenceSpec& spec, long n, double tau_real,
                                       const RootOptions& options) {
    return sequence_zeros(spec, n, gen_poly(spec, n), tau_real, options);
}

namespace {

enum class FloatVerdict { ClearlyHyperbolic, Marginal, NonReal };

FloatVerdict float_verdict(const std::vector<ZeroRecord>& zeros, double tau_real) {
    FloatVerdict v = FloatVerdict::ClearlyHyperbolic;
    for (const auto& z : zeros) {
        const double rel = std::abs(z.location.imag()) / (1.0 + std::abs(z.location));
        if (rel > 10.0 * tau_real) return FloatVerdict::NonReal;
        if (rel > tau_real || !z.converged()) v = FloatVerdict::Marginal;
    }
    return v;
}

std::optional<Complex> nonreal_witness(const std::vector<ZeroRecord>& zeros) {
    std::optional<Complex> best;
    for (const auto& z : zeros) {
        if (z.location.imag() <= 0.0) continue;
        if (!best || z.location.imag() > best->imag()) best = z.location;
    }
    return best;
}

HyperbolicityReport certify(const SequenceSpec& spec, long n, const RatPoly& pn, const ScanOptions& options) {
    HyperbolicityReport r = is_hyperbolic_exact(pn);
    r.n = n;
    if (r.verdict == Verdict::NonHyperbolic) {
        r.witness = nonreal_witness(sequence_zeros(spec, n, pn, options.tau_real, options.roots));
    }
    return r;
}

}  // namespace

ScanResult first_nonhyperbolic(const SequenceSpec& spec, long n_max, const ScanOptions& options) {
    if (n_max < 1) throw PreconditionError("first_nonhyperbolic: n_max must be at least 1");
    ScanResult result;
    bool any_skipped = false;
    SequenceGenerator gen(spec);
    while (gen.index() < n_max) {
        const RatPoly& pn = gen.next();
        const long n = gen.index();
        if (pn.is_constant()) {
            HyperbolicityReport r = is_hyperbolic_exact(pn);
            r.n = n;
            result.reports.push_back(r);
            continue;
        }
        if (options.use_prefilter) {
            const auto zeros = sequence_zeros(spec, n, pn, options.tau_real, options.roots);
            if (float_verdict(zeros, options.tau_real) == FloatVerdict::ClearlyHyperbolic) {
                HyperbolicityReport r;
                r.n = n;
                r.degree = pn.degree();
                r.verdict = Verdict::PrefilterOnly;
                r.certification = Certification::FloatPrefilter;
                r.num_real_distinct = static_cast<long>(zeros.size());
                r.num_distinct = static_cast<long>(zeros.size());
                result.reports.push_back(r);
                any_skipped = true;
                continue;
            }
        }
        HyperbolicityReport r = certify(spec, n, pn, options);
        result.reports.push_back(r);
        if (r.verdict == Verdict::NonHyperbolic) {
            result.n_star = n;
            break;
        }
    }
    if (!result.n_star || !any_skipped) return result;

    // Every index below n* must carry an exact certificate.
    SequenceGenerator again(spec);
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const RatPoly& pn = again.next();
        auto& rep = result.reports[i];
        if (rep.certification == Certification::SturmExact) continue;
        rep = certify(spec, again.index(), pn, options);
        if (rep.verdict == Verdict::NonHyperbolic) {
            result.n_star = rep.n;
            result.reports.resize(i + 1);
            break;
        }
    }
    return result;
}

}  // namespace hyperseq
