#include "hyperseq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hyperseq/errors.hpp"
#include "hyperseq/exactpoly.hpp"

namespace hyperseq {

namespace {

std::vector<double> to_doubles(const RatPoly& p) {
    std::vector<double> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(to_double(c));
    return out;
}

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

Rat rat_of_int(long v) { return Rat(v); }

}  // namespace

std::vector<ExactRoot> exact_roots(const RatPoly& p) {
    std::vector<ExactRoot> out;
    if (p.is_zero()) throw DomainError("exact_roots: zero polynomial");
    if (p.is_constant()) return out;
    for (const auto& f : squarefree_decomposition(p).factors) {
        std::vector<ExactRoot> part;
        for (const auto& r : find_roots(to_cpoly(f.factor))) {
            for (int i = 0; i < r.cluster_size; ++i) part.push_back({r.location, f.multiplicity, false});
        }
        std::stable_sort(part.begin(), part.end(), [](const ExactRoot& x, const ExactRoot& y) {
            return std::abs(x.location.imag()) < std::abs(y.location.imag());
        });
        const unsigned n_real = sturm_real_count(f.factor);
        for (unsigned i = 0; i < n_real && i < part.size(); ++i) {
            part[i].location.imag(0.0);
            part[i].is_real = true;
        }
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end(), [](const ExactRoot& x, const ExactRoot& y) { return lex_less(x.location, y.location); });
    return out;
}

SpecEvaluator::SpecEvaluator(const SequenceSpec& spec)
    : k_(spec.k()), a_(to_doubles(spec.a())), b_(to_doubles(spec.b())) {}

Complex SpecEvaluator::horner(const std::vector<double>& c, Complex z) {
    Complex v(0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

double SpecEvaluator::a_scale(Complex z) const {
    const double r = std::abs(z);
    double s = 0.0;
    for (auto it = a_.rbegin(); it != a_.rend(); ++it) s = s * r + std::abs(*it);
    return s;
}

double SpecEvaluator::numerator_im(Complex z) const {
    return (ipow(b(z), static_cast<unsigned>(k_)) * std::conj(a(z))).imag();
}

FValue f_eval(const SpecEvaluator& ev, Complex z) {
    const Complex a = ev.a(z);
    const Complex bk = ipow(ev.b(z), static_cast<unsigned>(ev.k()));
    FValue out;
    out.numerator_im = (bk * std::conj(a)).imag();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (a == Complex(0.0)) {
        out.pole = true;
        out.f = Complex(nan, nan);
        return out;
    }
    out.f = bk / a;
    if (!std::isfinite(out.f.real()) || !std::isfinite(out.f.imag())) {
        out.pole = true;
        out.f = Complex(nan, nan);
    }
    return out;
}

FValue f_eval(const SequenceSpec& spec, Complex z) { return f_eval(SpecEvaluator(spec), z); }

std::string to_string(CriticalKind kind) { return kind == CriticalKind::Pole ? "pole" : "wronskian-zero"; }

RatPoly critical_wronskian(const SequenceSpec& spec) {
    const auto k = static_cast<unsigned>(spec.k());
    const RatPoly& a = spec.a();
    const RatPoly& b = spec.b();
    RatPoly inner = b * derivative(a);
    inner = a * derivative(b) * Rat(k) - inner;
    return pow(b, k - 1) * inner;
}

std::vector<CriticalPoint> critical_points(const SequenceSpec& spec) {
    const RatPoly w = critical_wronskian(spec);
    if (w != wronskian(pow(spec.b(), static_cast<unsigned>(spec.k())), spec.a())) {
        throw std::logic_error("critical_points: Wronskian identity failed");
    }
    if (w.is_zero()) throw DomainError("critical_points: Wronskian vanishes identically");

    std::vector<CriticalPoint> out;
    for (const auto& r : exact_roots(w)) out.push_back({r.location, r.multiplicity, CriticalKind::WronskianZero});
    for (const auto& r : exact_roots(spec.a())) out.push_back({r.location, r.multiplicity, CriticalKind::Pole});
    return out;
}

Rat trinomial_disc(int k, int l, const Rat& a, const Rat& b, const Rat& c) {
    if (l < 1 || l >= k || std::gcd(l, k) != 1) {
        throw DomainError("trinomial_disc: need 1 <= l < k with gcd(l, k) = 1");
    }
    const auto ku = static_cast<unsigned>(k);
    const auto lu = static_cast<unsigned>(l);
    const Rat first = pow(rat_of_int(k), ku) * pow(c, ku - 1) * pow(a, ku - 1);
    Rat second = pow(rat_of_int(l), lu) * pow(rat_of_int(k - l), ku - lu) * pow(c, lu - 1) * pow(b, ku) *
                 pow(a, ku - lu - 1);
    if ((k - 1) % 2 == 1) second = -second;
    return first + second;
}

Rat reversed_trinomial_disc(int k, const Rat& a, const Rat& b) {
    if (k < 2) throw DomainError("reversed_trinomial_disc: need k >= 2");
    const auto ku = static_cast<unsigned>(k);
    Rat second = pow(rat_of_int(k - 1), ku - 1) * pow(b, ku);
    if ((k - 1) % 2 == 1) second = -second;
    return pow(a, ku - 2) * (pow(rat_of_int(k), ku) * a + second);
}

EndpointLocus endpoint_locus(const SequenceSpec& spec) {
    const auto ku = static_cast<unsigned>(spec.k());
    Rat bk_coef = pow(rat_of_int(spec.k() - 1), ku - 1);
    if ((spec.k() - 1) % 2 == 1) bk_coef = -bk_coef;
    EndpointLocus out;
    out.g = spec.a() * pow(rat_of_int(spec.k()), ku) + pow(spec.b(), ku) * bk_coef;
    if (out.g.is_zero()) throw DomainError("endpoint_locus: G vanishes identically");

    out.reduced = out.g;
    for (;;) {
        const RatPoly h = gcd(out.reduced, spec.a());
        if (h.degree() < 1) break;
        out.reduced = divrem(out.reduced, h).quotient;
    }
    if (out.reduced.degree() < 1) return out;

    const SpecEvaluator ev(spec);
    const double rho = spec.rho();
    for (const auto& r : exact_roots(out.reduced)) {
        EndpointRecord rec;
        rec.location = r.location;
        rec.is_real = r.is_real;
        rec.f_value = f_eval(ev, r.location).f;
        rec.rho = rho;
        rec.check_residual = std::abs(spec.parity_sign() * rec.f_value - rho);
        out.endpoints.push_back(rec);
    }
    return out;
}

std::string to_string(CharForm form) {
    return form == CharForm::PaperLiteral ? "paper-literal" : "recurrence-standard";
}

CharForm parse_char_form(const std::string& text) {
    if (text == "paper-literal") return CharForm::PaperLiteral;
    if (text == "recurrence-standard") return CharForm::RecurrenceStandard;
    throw ParseError("unknown characteristic form '" + text + "' (paper-literal | recurrence-standard)");
}

std::vector<Rat> char_poly_coeffs(int k, const Rat& a, const Rat& b, CharForm form) {
    std::vector<Rat> c(static_cast<std::size_t>(k + 1));
    c[0] = a;
    c[form == CharForm::PaperLiteral ? 1 : static_cast<std::size_t>(k - 1)] += b;
    c[static_cast<std::size_t>(k)] = 1;
    return c;
}

CharRootSet char_roots(const SequenceSpec& spec, Complex z, CharForm form) {
    const SpecEvaluator ev(spec);
    const int k = spec.k();
    const Complex a = ev.a(z);
    std::vector<Complex> c(static_cast<std::size_t>(k + 1), Complex(0.0));
    c[0] = a;
    c[form == CharForm::PaperLiteral ? 1 : static_cast<std::size_t>(k - 1)] += ev.b(z);
    c[static_cast<std::size_t>(k)] = 1.0;

    CharRootSet out;
    out.z = z;
    out.pole = std::abs(a) <= 1e-12 * ev.a_scale(z);
    for (const auto& r : find_roots(CPoly(std::move(c)))) {
        for (int i = 0; i < r.cluster_size; ++i) out.roots.push_back(r.location);
    }
    for (auto r : out.roots) out.moduli_sorted.push_back(std::abs(r));
    std::sort(out.moduli_sorted.begin(), out.moduli_sorted.end());
    out.min_modulus_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < out.moduli_sorted.size(); ++i) {
        out.min_modulus_gap = std::min(out.min_modulus_gap, out.moduli_sorted[i] - out.moduli_sorted[i - 1]);
    }
    return out;
}

namespace {

RatPoly exact_quotient(const RatPoly& num, const RatPoly& den) {
    auto [q, r] = divrem(num, den);
    if (!r.is_zero()) throw std::logic_error("fraction-free elimination: inexact division");
    return q;
}

/// Determinant of a square matrix over Q[w] (Bareiss).
RatPoly bareiss_det(std::vector<std::vector<RatPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return RatPoly::constant(Rat(1));
    RatPoly prev = RatPoly::constant(Rat(1));
    bool negate = false;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        if (m[c][c].is_zero()) {
            std::size_t r = c + 1;
            while (r < n && m[r][c].is_zero()) ++r;
            if (r == n) return {};
            std::swap(m[r], m[c]);
            negate = !negate;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                m[i][j] = exact_quotient(m[c][c] * m[i][j] - m[i][c] * m[c][j], prev);
            }
            m[i][c] = RatPoly();
        }
        prev = m[c][c];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace

RatPoly equimodular_rho(const SequenceSpec& spec, const Rat& z, CharForm form) {
    const int k = spec.k();
    if (k > kMaxEquimodularK) {
        throw PreconditionError("equimodular_rho: k = " + std::to_string(k) + " exceeds the supported maximum " +
                                std::to_string(kMaxEquimodularK));
    }
    const Rat a = eval(spec.a(), z);
    if (sgn(a) == 0) throw DomainError("equimodular_rho: A(z) = 0");
    const auto p = char_poly_coeffs(k, a, eval(spec.b(), z), form);

    // Sylvester matrix of P(lambda) and P(w lambda), descending powers of lambda.
    const auto ks = static_cast<std::size_t>(k);
    const std::size_t n = 2 * ks;
    std::vector<std::vector<RatPoly>> m(n, std::vector<RatPoly>(n));
    for (std::size_t r = 0; r < ks; ++r) {
        for (std::size_t i = 0; i <= ks; ++i) {
            const Rat& c = p[ks - i];
            m[r][r + i] = RatPoly::constant(c);
            m[ks + r][r + i] = RatPoly::monomial(c, ks - i);
        }
    }
    return bareiss_det(std::move(m));
}

RatPoly equimodular_delta(const SequenceSpec& spec, const Rat& z, CharForm form) {
    RatPoly q = equimodular_rho(spec, z, form);
    const RatPoly w_minus_one{-1, 1};
    for (int i = 0; i < spec.k(); ++i) {
        auto [quot, rem] = divrem(q, w_minus_one);
        if (!rem.is_zero()) throw DomainError("equimodular_delta: (w-1)^k does not divide rho");
        q = std::move(quot);
    }
    return q * Rat(1 / eval(spec.a(), z));
}

int reciprocal_sign(const RatPoly& p) {
    if (p.is_zero()) return 0;
    const auto c = p.coeffs();
    bool plus = true;
    bool minus = true;
    for (std::size_t i = 0, j = c.size() - 1; i < c.size(); ++i, --j) {
        if (c[i] != c[j]) plus = false;
        if (c[i] != -c[j]) minus = false;
    }
    return plus ? 1 : (minus ? -1 : 0);
}

DeltaAtOne delta_at_one(const SequenceSpec& spec, const Rat& z, CharForm form) {
    DeltaAtOne out;
    out.delta = eval(equimodular_delta(spec, z, form), Rat(1));
    out.disc = discriminant(RatPoly(char_poly_coeffs(spec.k(), eval(spec.a(), z), eval(spec.b(), z), form)));
    if (sgn(out.disc) != 0) {
        out.ratio = out.delta / out.disc;
    } else {
        out.both_zero = sgn(out.delta) == 0;
    }
    return out;
}

}  // namespace hyperseq
