#include <cstdio>
#include <sstream>

#include "hyperseq/cli.hpp"
#include "hyperseq/errors.hpp"
#include "hyperseq/exactpoly.hpp"

namespace hyperseq::cli {
namespace {

constexpr long kOracleOrder = 40;

const std::vector<Rat>& sample_points() {
    static const std::vector<Rat> pts = {Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(2), Rat(-3, 2), Rat(5, 7)};
    return pts;
}

Rat sign_power(long e) { return e % 2 == 0 ? Rat(1) : Rat(-1); }

VerifyCheck check_prefix(const SequenceSpec& spec) {
    const auto seq = gen_sequence(spec, spec.k());
    const RatPoly minus_b = -spec.b();
    bool ok = seq[0] == RatPoly{1};
    for (int n = 1; n < spec.k(); ++n) ok = ok && seq[static_cast<std::size_t>(n)] == pow(minus_b, n);
    const RatPoly pk = RatPoly::constant(sign_power(spec.k())) * pow(spec.b(), spec.k()) - spec.a();
    ok = ok && seq.back() == pk;
    return {"prefix-identities", ok, "P_0 .. P_" + std::to_string(spec.k())};
}

VerifyCheck check_oracle(const SequenceSpec& spec) {
    const auto seq = gen_sequence(spec, kOracleOrder);
    const auto series = gf_oracle(spec, kOracleOrder);
    long first_bad = -1;
    for (std::size_t n = 0; n < seq.size() && first_bad < 0; ++n)
        if (n >= series.size() || series[n] != seq[n]) first_bad = static_cast<long>(n);
    return {"generating-function", first_bad < 0,
            first_bad < 0 ? "n <= " + std::to_string(kOracleOrder) : "mismatch at n = " + std::to_string(first_bad)};
}

VerifyCheck check_wronskian(const SequenceSpec& spec) {
    const RatPoly w = critical_wronskian(spec);
    const bool ok = w == wronskian(pow(spec.b(), spec.k()), spec.a());
    return {"wronskian-identity", ok, "deg W = " + (w.is_zero() ? std::string("-inf") : std::to_string(w.degree()))};
}

VerifyCheck check_b_zeros_critical(const SequenceSpec& spec) {
    if (spec.b().is_constant()) return {"p1-p2-zeros-critical", true, "B constant, no zeros"};
    const RatPoly w = critical_wronskian(spec);
    const bool ok = divrem(w, pow(spec.b(), static_cast<unsigned>(spec.k() - 1))).remainder.is_zero();
    return {"p1-p2-zeros-critical", ok, "B^(k-1) divides W"};
}

VerifyCheck check_endpoints(const SequenceSpec& spec, const EndpointLocus& locus) {
    const double bound = 1e-9 * (1.0 + spec.rho());
    double worst = 0.0;
    for (const auto& e : locus.endpoints) worst = std::max(worst, e.check_residual);
    std::ostringstream os;
    os << locus.endpoints.size() << " endpoints, worst |(-1)^k f - rho| = " << format_double(worst);
    return {"endpoint-identity", worst <= bound, os.str()};
}

VerifyCheck check_disc_identities(const SequenceSpec& spec) {
    const int k = spec.k();
    const Rat sign = sign_power(static_cast<long>(k) * (k - 1) / 2);
    int tested = 0;
    bool ok = true;
    for (const auto& z : sample_points()) {
        const Rat a = eval(spec.a(), z);
        const Rat b = eval(spec.b(), z);
        if (a == 0) continue;
        ++tested;
        std::vector<Rat> rev(static_cast<std::size_t>(k) + 1, Rat(0));
        rev[0] = 1;
        rev[1] = b;
        rev[static_cast<std::size_t>(k)] = a;
        ok = ok && reversed_trinomial_disc(k, a, b) == sign * discriminant(RatPoly(rev));

        const auto std_coeffs = char_poly_coeffs(k, a, b, CharForm::RecurrenceStandard);
        const Rat g = pow(Rat(k), k) * a + sign_power(k - 1) * pow(Rat(k - 1), k - 1) * pow(b, k);
        ok = ok && discriminant(RatPoly(std_coeffs)) == sign * pow(a, k - 2) * g;
    }
    return {"discriminant-identities", ok && tested > 0, std::to_string(tested) + " sample points"};
}

VerifyCheck check_equimodular(const SequenceSpec& spec, CharForm form, std::vector<VerifyCheck>& extra) {
    const int k = spec.k();
    if (k > kMaxEquimodularK)
        return {"equimodular-factorization", true, "skipped, k > " + std::to_string(kMaxEquimodularK)};
    int tested = 0;
    bool ok = true;
    int global_sign = 0;
    std::optional<Rat> ratio;
    bool ratio_ok = true;
    for (const auto& z : sample_points()) {
        if (eval(spec.a(), z) == 0) continue;
        ++tested;
        const RatPoly rho = equimodular_rho(spec, z, form);
        RatPoly delta;
        try {
            delta = equimodular_delta(spec, z, form);
        } catch (const DomainError&) {
            ok = false;
            continue;
        }
        const int s = reciprocal_sign(delta);
        ok = ok && rho.degree() == static_cast<long>(k) * k && delta.degree() == static_cast<long>(k) * (k - 1) && s != 0;
        if (global_sign == 0) global_sign = s;
        ok = ok && s == global_sign;
        const auto at_one = delta_at_one(spec, z, form);
        if (at_one.ratio) {
            if (!ratio) ratio = *at_one.ratio;
            ratio_ok = ratio_ok && *ratio == *at_one.ratio;
        } else {
            ratio_ok = ratio_ok && at_one.both_zero;
        }
    }
    extra.push_back({"delta-at-one-ratio", ratio_ok,
                     ratio ? "Delta(1)/Disc = " + to_string(*ratio) + " (" + to_string(form) + ")"
                           : std::string("no sample with Disc != 0")});
    return {"equimodular-factorization", ok && tested > 0,
            std::to_string(tested) + " sample points, reciprocal sign " + std::to_string(global_sign)};
}

VerifyCheck check_scan(const SequenceSpec& spec, long n_max, double tau_real) {
    ScanOptions opts;
    opts.tau_real = tau_real;
    const auto res = first_nonhyperbolic(spec, n_max, opts);
    if (!res.n_star) return {"scan-certified", true, "no non-hyperbolic P_n for n <= " + std::to_string(n_max)};
    bool ok = !res.reports.empty() && res.reports.back().verdict == Verdict::NonHyperbolic &&
              res.reports.back().certification == Certification::SturmExact;
    for (const auto& r : res.reports)
        if (r.n < *res.n_star)
            ok = ok && r.verdict == Verdict::Hyperbolic && r.certification == Certification::SturmExact;
    return {"scan-certified", ok, "n* = " + std::to_string(*res.n_star)};
}

VerifyCheck check_zeros(const SequenceSpec& spec, long n, double tau_real) {
    const RatPoly pn = gen_poly(spec, n);
    if (pn.degree() < 1) return {"zeros-accounted", true, "P_n constant"};
    const auto zs = sequence_zeros(spec, n, pn, tau_real);
    long total = 0;
    long converged = 0;
    long eligible = 0;
    long on = 0;
    const double rho = spec.rho();
    for (const auto& z : zs) {
        total += z.cluster_size;
        if (!z.converged()) continue;
        ++converged;
        if ((z.flags & kPoleAdjacent) != 0 || std::abs(eval(spec.b(), z.location)) <= 1e-8) continue;
        ++eligible;
        const double fmag = std::hypot(z.im_f, z.re_f_signed);
        if (std::abs(z.im_f) <= 1e-6 * (1 + fmag) && z.re_f_signed >= -1e-6 && z.re_f_signed <= rho + 1e-6) ++on;
    }
    std::ostringstream os;
    os << total << " of " << pn.degree() << " zeros, " << on << '/' << eligible << " eligible on the curve";
    return {"zeros-accounted", total == pn.degree() && converged == static_cast<long>(zs.size()), os.str()};
}

VerifyCheck check_curve(const SequenceSpec& spec, const RunConfig& config, const EndpointLocus& locus) {
    const auto segs = trace_curve(spec, config.grid, config.tol);
    const double reach = 2.0 * config.grid.cell_diagonal();
    std::size_t inside = 0;
    std::size_t near = 0;
    for (const auto& e : locus.endpoints) {
        if (!config.grid.contains(e.location)) continue;
        ++inside;
        bool found = false;
        for (const auto& s : segs) {
            if (s.points.empty()) continue;
            if (std::abs(s.points.front() - e.location) <= reach || std::abs(s.points.back() - e.location) <= reach)
                found = true;
        }
        if (found) ++near;
    }
    std::ostringstream os;
    os << segs.size() << " segments, " << near << '/' << inside << " endpoints at a segment end";
    return {"curve-endpoints", near == inside, os.str()};
}

}  // namespace

std::vector<VerifyCheck> verify_spec(const RunConfig& config) {
    const SequenceSpec spec = config.spec();
    std::vector<VerifyCheck> checks;
    std::vector<VerifyCheck> extra;
    auto guarded = [&](const std::string& name, auto&& fn) {
        try {
            checks.push_back(fn());
        } catch (const std::exception& e) {
            checks.push_back({name, false, std::string("error: ") + e.what()});
        }
    };
    guarded("prefix-identities", [&] { return check_prefix(spec); });
    guarded("generating-function", [&] { return check_oracle(spec); });
    guarded("wronskian-identity", [&] { return check_wronskian(spec); });
    guarded("p1-p2-zeros-critical", [&] { return check_b_zeros_critical(spec); });
    guarded("discriminant-identities", [&] { return check_disc_identities(spec); });
    std::optional<EndpointLocus> locus;
    guarded("endpoint-identity", [&] {
        locus = endpoint_locus(spec);
        return check_endpoints(spec, *locus);
    });
    guarded("equimodular-factorization", [&] { return check_equimodular(spec, config.form, extra); });
    for (auto& e : extra) checks.push_back(std::move(e));
    guarded("scan-certified", [&] { return check_scan(spec, config.n_max, config.tau_real); });
    if (config.n) guarded("zeros-accounted", [&] { return check_zeros(spec, *config.n, config.tau_real); });
    if (locus) guarded("curve-endpoints", [&] { return check_curve(spec, config, *locus); });
    return checks;
}

std::string verify_table(const std::vector<VerifyCheck>& checks) {
    std::string out;
    for (const auto& c : checks) {
        char head[64];
        std::snprintf(head, sizeof head, "%-4s  %-26s  ", c.passed ? "PASS" : "FAIL", c.name.c_str());
        out += head + c.detail + '\n';
    }
    return out;
}

int verify_exit_status(const std::vector<VerifyCheck>& checks) {
    for (const auto& c : checks)
        if (!c.passed) return kExitVerifyFailed;
    return kExitOk;
}

}  // namespace hyperseq::cli
