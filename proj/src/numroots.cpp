#include "hyperseq/numroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "hyperseq/errors.hpp"

namespace hyperseq {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

struct Horner {
    Complex value;
    Complex derivative;
    double abs_sum;  // sum |c_i| |x|^i, for the rounding-level test
};

// Evaluates sum c_i x^i with coefficients taken in `order` (ascending, or
// reversed when `reversed`).
Horner horner(const std::vector<Complex>& c, Complex x, bool reversed) {
    const double ax = std::abs(x);
    Complex v(0.0), d(0.0);
    double s = 0.0;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex ci = reversed ? c[i] : c[n - 1 - i];
        d = d * x + v;
        v = v * x + ci;
        s = s * ax + std::abs(ci);
    }
    return {v, d, s};
}

}  // namespace

CPoly::CPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
    if (coeffs_.empty()) throw DomainError("CPoly: zero polynomial");
}

CPoly::CPoly(std::vector<Complex> coeffs, std::vector<ComplexExt> extended)
    : CPoly(std::move(coeffs)) {
    extended.resize(coeffs_.size());
    extended_ = std::move(extended);
}

Complex CPoly::operator()(Complex z) const { return horner(coeffs_, z, false).value; }

namespace {

// x = mantissa * 2^exponent with a 64-bit mantissa in [0.5, 1).
struct WideSplit {
    long double mantissa;
    long exponent;
};

WideSplit wide_split(const mpz_t v) {
    const auto bits = static_cast<long>(mpz_sizeinbase(v, 2));
    BigInt top;
    const long shift = bits > 64 ? bits - 64 : 0;
    mpz_tdiv_q_2exp(top.get_mpz_t(), v, static_cast<mp_bitcnt_t>(shift));
    long double m = static_cast<long double>(mpz_get_ui(top.get_mpz_t()));
    if (mpz_sgn(v) < 0) m = -m;
    // |m| < 2^64: normalise into [0.5, 1)
    int e = 0;
    m = std::frexp(m, &e);
    return {m, shift + e};
}

}  // namespace

CPoly to_cpoly(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("to_cpoly: zero polynomial");
    std::vector<WideSplit> parts;
    parts.reserve(p.coeffs().size());
    long emax = std::numeric_limits<long>::min();
    for (const auto& c : p.coeffs()) {
        if (sgn(c) == 0) {
            parts.push_back({0.0L, 0});
            continue;
        }
        const WideSplit n = wide_split(c.get_num_mpz_t());
        const WideSplit d = wide_split(c.get_den_mpz_t());
        parts.push_back({n.mantissa / d.mantissa, n.exponent - d.exponent});
        emax = std::max(emax, n.exponent - d.exponent);
    }
    std::vector<Complex> out;
    std::vector<ComplexExt> ext;
    out.reserve(parts.size());
    ext.reserve(parts.size());
    for (const auto& s : parts) {
        if (s.mantissa == 0.0L) {
            out.emplace_back(0.0);
            ext.emplace_back(0.0L);
            continue;
        }
        const long shift = std::max<long>(s.exponent - emax, -16000);
        const long double v = std::ldexp(s.mantissa, static_cast<int>(shift)) * 2.0L;
        ext.emplace_back(v);
        out.emplace_back(static_cast<double>(v));
    }
    return CPoly(std::move(out), std::move(ext));
}

double scaled_residual(const CPoly& p, Complex z) {
    const auto& c = p.coeffs();
    const Horner h = std::abs(z) <= 1.0 ? horner(c, z, false) : horner(c, 1.0 / z, true);
    if (h.abs_sum == 0.0) return 0.0;
    return std::abs(h.value) / h.abs_sum;
}

double root_radius_bound(const CPoly& p) {
    const auto& c = p.coeffs();
    const int d = p.degree();
    if (d < 1) return 0.0;
    const double lead = std::abs(c.back());
    double cauchy_max = 0.0, fujiwara = 0.0;
    for (int i = 0; i < d; ++i) {
        const double r = std::abs(c[static_cast<std::size_t>(i)]) / lead;
        cauchy_max = std::max(cauchy_max, r);
        const int j = d - i;  // coefficient of z^{d-j}
        double term = std::pow(r, 1.0 / j);
        if (i == 0) term = std::pow(r / 2.0, 1.0 / j);
        fujiwara = std::max(fujiwara, term);
    }
    return std::min(1.0 + cauchy_max, 2.0 * fujiwara);
}

NewtonStep newton_step(const CPoly& p, Complex z) {
    const auto& c = p.coeffs();
    const int d = p.degree();
    NewtonStep out;
    if (std::abs(z) <= 1.0) {
        const Horner h = horner(c, z, false);
        out.quotient = h.derivative == Complex(0.0) ? Complex(0.0) : h.value / h.derivative;
        out.at_noise_level = std::abs(h.value) <= 2.0 * kUnitRoundoff * h.abs_sum;
        if (h.derivative == Complex(0.0) && !out.at_noise_level) out.quotient = Complex(1e-3 * (1.0 + std::abs(z)));
    } else {
        // p(z) = z^d rev(w), w = 1/z;  p/p' = z rev / (d rev - w rev')
        const Complex w = 1.0 / z;
        const Horner h = horner(c, w, true);
        const Complex den = static_cast<double>(d) * h.value - w * h.derivative;
        out.quotient = den == Complex(0.0) ? Complex(0.0) : z * h.value / den;
        out.at_noise_level = std::abs(h.value) <= 2.0 * kUnitRoundoff * h.abs_sum;
    }
    return out;
}

std::vector<Complex> initial_guesses(const CPoly& p, double angle_offset) {
    const auto& c = p.coeffs();
    const int d = p.degree();
    std::vector<Complex> out;
    if (d < 1) return out;
    out.reserve(static_cast<std::size_t>(d));
    int lowest = 0;
    while (c[static_cast<std::size_t>(lowest)] == Complex(0.0)) ++lowest;
    // upper hull of (i, log|c_i|) over the nonzero coefficients
    std::vector<int> hull;
    for (int i = lowest; i <= d; ++i) {
        if (c[static_cast<std::size_t>(i)] == Complex(0.0)) continue;
        const double yi = std::log(std::abs(c[static_cast<std::size_t>(i)]));
        while (hull.size() >= 2) {
            const int i1 = hull[hull.size() - 2], i2 = hull.back();
            const double y1 = std::log(std::abs(c[static_cast<std::size_t>(i1)]));
            const double y2 = std::log(std::abs(c[static_cast<std::size_t>(i2)]));
            // drop i2 when it lies on or below the chord i1 -> i
            if ((y2 - y1) * (i - i1) <= (yi - y1) * (i2 - i1)) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(i);
    }
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const int i = hull[e], j = hull[e + 1];
        const int width = j - i;
        const double r = std::pow(std::abs(c[static_cast<std::size_t>(i)]) / std::abs(c[static_cast<std::size_t>(j)]),
                                  1.0 / width);
        smallest = std::min(smallest, r);
        for (int m = 0; m < width; ++m) {
            const double theta = 2.0 * std::numbers::pi * m / width + 2.0 * std::numbers::pi * i / d + angle_offset;
            out.push_back(std::polar(r, theta));
        }
    }
    // exact zero roots: a tiny circle well inside every other radius
    const double r0 = std::isfinite(smallest) ? 1e-3 * smallest : 1e-3;
    for (int m = 0; m < lowest; ++m) {
        out.push_back(std::polar(r0, 2.0 * std::numbers::pi * m / lowest + angle_offset));
    }
    return out;
}

std::vector<Complex> aberth(std::vector<Complex> z, const NewtonOracle& oracle, const RootOptions& options,
                            std::vector<bool>& converged) {
    const std::size_t n = z.size();
    converged.assign(n, false);
    std::size_t remaining = n;
    for (int iter = 0; iter < options.max_iterations && remaining > 0; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            if (converged[i]) continue;
            const NewtonStep step = oracle(z[i]);
            if (step.at_noise_level) {
                converged[i] = true;
                --remaining;
                continue;
            }
            Complex sum(0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const Complex diff = z[i] - z[j];
                if (diff != Complex(0.0)) sum += 1.0 / diff;
            }
            const Complex denom = 1.0 - step.quotient * sum;
            const Complex corr = denom == Complex(0.0) ? step.quotient : step.quotient / denom;
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) continue;
            z[i] -= corr;
            if (std::abs(corr) < options.step_tol * (1.0 + std::abs(z[i]))) {
                converged[i] = true;
                --remaining;
            }
        }
    }
    return z;
}

std::vector<ZeroRecord> cluster_roots(const std::vector<Complex>& roots, const std::vector<bool>& converged,
                                      double cluster_tol) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double scale = 1.0 + std::max(std::abs(roots[i]), std::abs(roots[j]));
            if (std::abs(roots[i] - roots[j]) <= cluster_tol * scale) parent[find(i)] = find(j);
        }
    }
    std::vector<ZeroRecord> out;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = out.size();
            out.push_back(ZeroRecord{});
            out.back().location = Complex(0.0);
            out.back().cluster_size = 0;
        }
        ZeroRecord& rec = out[slot[r]];
        rec.location += roots[i];
        rec.cluster_size += 1;
        if (i < converged.size() && !converged[i]) rec.flags |= kUnconverged;
    }
    for (auto& rec : out) rec.location /= static_cast<double>(rec.cluster_size);
    // Deterministic order: by real part, then imaginary part.
    std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

namespace {

// Newton in long double on the extended coefficients, |z| <= 1 directly and
// through the reversed polynomial otherwise.
ComplexExt newton_quotient_ext(const std::vector<ComplexExt>& c, ComplexExt z) {
    const std::size_t n = c.size();
    const long double d = static_cast<long double>(n - 1);
    const bool reversed = std::abs(z) > 1.0L;
    const ComplexExt x = reversed ? 1.0L / z : z;
    ComplexExt v(0.0L), dv(0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexExt ci = reversed ? c[i] : c[n - 1 - i];
        dv = dv * x + v;
        v = v * x + ci;
    }
    if (!reversed) return dv == ComplexExt(0.0L) ? ComplexExt(0.0L) : v / dv;
    const ComplexExt den = d * v - x * dv;
    return den == ComplexExt(0.0L) ? ComplexExt(0.0L) : z * v / den;
}

void polish(const CPoly& p, std::vector<ZeroRecord>& records) {
    const auto& ext = p.extended();
    if (ext.empty()) return;
    for (auto& r : records) {
        if (r.cluster_size != 1) continue;
        ComplexExt z(r.location.real(), r.location.imag());
        const ComplexExt start = z;
        for (int it = 0; it < 3; ++it) z -= newton_quotient_ext(ext, z);
        const Complex polished(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        if (!std::isfinite(polished.real()) || !std::isfinite(polished.imag())) continue;
        // a genuine polish moves by rounding-level amounts only
        if (std::abs(z - start) > 1e-6L * (1.0L + std::abs(start))) continue;
        r.location = polished;
    }
}

}  // namespace

std::vector<ZeroRecord> find_roots(const CPoly& p, const NewtonOracle& oracle, const RootOptions& options) {
    if (p.degree() < 1) throw PreconditionError("find_roots: degree must be at least 1");
    std::vector<bool> converged;
    const auto roots = aberth(initial_guesses(p, options.angle_offset), oracle, options, converged);
    auto records = cluster_roots(roots, converged, options.cluster_tol);
    for (auto& r : records) r.residual = scaled_residual(p, r.location);
    return records;
}

std::vector<ZeroRecord> find_roots(const CPoly& p, const RootOptions& options) {
    auto records = find_roots(p, [&p](Complex z) { return newton_step(p, z); }, options);
    polish(p, records);
    for (auto& r : records) r.residual = scaled_residual(p, r.location);
    return records;
}

std::string flags_to_string(unsigned flags) {
    std::string out;
    auto add = [&out](const char* s) {
        if (!out.empty()) out += ';';
        out += s;
    };
    if (flags & kUnconverged) add("unconverged");
    if (flags & kPoleAdjacent) add("pole-adjacent");
    return out;
}

std::vector<ZeroRecord> classify_zeros(std::vector<ZeroRecord> roots, const SequenceSpec& spec, double tau_real) {
    const CPoly a = to_cpoly(spec.a());
    // B may be the zero polynomial only if A is constant; guard the float image.
    const bool b_zero = spec.b().is_zero();
    const std::vector<Complex> b_coeffs = b_zero ? std::vector<Complex>{} : to_cpoly(spec.b()).coeffs();
    // to_cpoly rescales; undo with the exact ratio of leading magnitudes.
    const double a_unscale = std::abs(to_double(spec.a().leading())) / std::abs(a.coeffs().back());
    const double b_unscale =
        b_zero ? 0.0 : std::abs(to_double(spec.b().leading())) / std::abs(b_coeffs.back());
    for (auto& r : roots) {
        const Complex z = r.location;
        r.is_real = std::abs(z.imag()) <= tau_real * (1.0 + std::abs(z));
        const Horner ha = horner(a.coeffs(), z, false);
        const Complex av = ha.value * a_unscale;
        Complex bv(0.0);
        if (!b_zero) bv = horner(b_coeffs, z, false).value * b_unscale;
        if (std::abs(ha.value) < 1e-12 * ha.abs_sum) r.flags |= kPoleAdjacent;
        const Complex f = ipow(bv, static_cast<unsigned>(spec.k())) / av;
        r.im_f = f.imag();
        r.re_f_signed = spec.parity_sign() * f.real();
    }
    return roots;
}

}  // namespace hyperseq
