#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hyperseq/errors.hpp"
#include "hyperseq/exactpoly.hpp"
#include "hyperseq/recurrence.hpp"
#include "support.hpp"

using namespace hyperseq;
using hyperseq::testing::random_spec;

namespace {

SequenceSpec example_one() { return SequenceSpec(3, RatPoly{7, -5, -1, 1}, RatPoly{-6, -1, 1}); }
SequenceSpec example_two() { return SequenceSpec(5, RatPoly{-4, 1, 1}, RatPoly{-2, 1, 1}); }

bool sturm_deficient(const RatPoly& p) {
    for (const auto& f : squarefree_decomposition(p).factors)
        if (sturm_real_count(f.factor) < f.factor.degree()) return true;
    return false;
}

}  // namespace

TEST_CASE("SequenceSpec validation") {
    CHECK_THROWS_AS(SequenceSpec(2, RatPoly{1}, RatPoly{0, 1}), InvalidSpec);
    CHECK_THROWS_AS(SequenceSpec(3, RatPoly{}, RatPoly{0, 1}), InvalidSpec);
    CHECK_THROWS_AS(SequenceSpec(3, RatPoly{-1, 1}, RatPoly{1, -1}), InvalidSpec);
    CHECK_THROWS_AS(SequenceSpec(3, RatPoly{0, 1}, RatPoly{0, 0, 1}), InvalidSpec);
    CHECK_NOTHROW(SequenceSpec(3, RatPoly{1}, RatPoly{0, 1}));
    CHECK_NOTHROW(SequenceSpec(4, RatPoly{0, 1}, RatPoly{2}));
    const auto s = example_one();
    CHECK(s.rho_exact() == Rat(27, 4));
    CHECK(example_two().rho_exact() == Rat(3125, 256));
    CHECK(s.parity_sign() == -1);
}

TEST_CASE("gen_poly examples") {
    const auto s = example_one();
    const RatPoly& b = s.b();
    CHECK(gen_poly(s, 0) == RatPoly{1});
    CHECK(gen_poly(s, 1) == -b);
    CHECK(gen_poly(s, 2) == b * b);
    CHECK(gen_poly(s, 3) == -pow(b, 3) - s.a());
    CHECK(gen_poly(s, -1).is_zero());
    CHECK(gen_poly(s, -2).is_zero());
    CHECK_THROWS_AS(gen_poly(s, -3), IndexError);

    const auto s5 = example_two();
    CHECK(gen_poly(s5, 5) == -pow(s5.b(), 5) - s5.a());
    CHECK(gen_poly(s5, -4).is_zero());
    CHECK_THROWS_AS(gen_poly(s5, -5), IndexError);

    const SequenceSpec s4(4, RatPoly{3, 1}, RatPoly{-1, 2});
    CHECK(gen_poly(s4, 4) == pow(s4.b(), 4) - s4.a());
}

TEST_CASE("generator window agrees with gen_sequence") {
    const auto s = example_one();
    const auto seq = gen_sequence(s, 30);
    REQUIRE(seq.size() == 31);
    SequenceGenerator g(s);
    CHECK(g.index() == 0);
    CHECK(g.current() == RatPoly{1});
    for (long n = 1; n <= 30; ++n) {
        CHECK(g.next() == seq[static_cast<std::size_t>(n)]);
        CHECK(g.index() == n);
    }
    CHECK(gen_poly(s, 30) == seq[30]);
}

TEST_CASE("gf_oracle examples") {
    const auto s = example_one();
    const auto c = gf_oracle(s, 1);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == RatPoly{1});
    CHECK(c[1] == -s.b());
    CHECK(gf_oracle(s, 0).size() == 1);
    CHECK_THROWS_AS(series_inverse({RatPoly{0, 1}}, 3), DomainError);
    // 1/(1 - t) = sum t^n
    const auto geo = series_inverse({RatPoly{1}, RatPoly{-1}}, 6);
    for (const auto& t : geo) CHECK(t == RatPoly{1});
    // 1/(2 + t) = 1/2 - t/4 + ...
    const auto half = series_inverse({RatPoly{2}, RatPoly{1}}, 2);
    CHECK(half[2] == RatPoly::constant(Rat(1, 8)));
}

TEST_CASE("recurrence and generating function agree to order 40") {
    std::mt19937_64 rng(20261015);
    for (int k : {3, 4, 5}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto s = random_spec(rng, k);
            const auto series = gf_oracle(s, 40);
            const auto seq = gen_sequence(s, 40);
            REQUIRE(series.size() == 41);
            for (std::size_t n = 0; n <= 40; ++n) {
                INFO("k=" << k << " trial=" << trial << " n=" << n);
                CHECK(series[n] == seq[n]);
            }
        }
    }
}

TEST_CASE("prefix law and degree diagnostic") {
    std::mt19937_64 rng(7);
    int degree_drops = 0;
    for (int k : {3, 4, 5, 6}) {
        for (int trial = 0; trial < 15; ++trial) {
            const auto s = random_spec(rng, k);
            const auto seq = gen_sequence(s, 30);
            for (int n = 1; n < k; ++n) CHECK(seq[static_cast<std::size_t>(n)] == pow(-s.b(), n));
            if (s.b().degree() >= 1) {
                for (std::size_t n = 2; n < seq.size(); ++n)
                    if (seq[n].degree() < seq[n - 1].degree()) ++degree_drops;
            }
        }
    }
    if (degree_drops > 0) MESSAGE("degree drops observed: " << degree_drops);
}

TEST_CASE("is_hyperbolic_exact examples") {
    auto r = is_hyperbolic_exact(RatPoly{-6, -1, 1});
    CHECK(r.verdict == Verdict::Hyperbolic);
    CHECK(r.certification == Certification::SturmExact);
    CHECK(r.num_real_distinct == 2);
    CHECK(r.degree == 2);

    r = is_hyperbolic_exact(RatPoly{1, 0, 1});
    CHECK(r.verdict == Verdict::NonHyperbolic);
    CHECK(r.num_real_distinct == 0);

    const RatPoly sq = pow(RatPoly{1, 0, 1}, 2);
    r = is_hyperbolic_exact(sq);
    CHECK(r.verdict == Verdict::NonHyperbolic);
    CHECK(r.degree == 4);
    CHECK(r.num_distinct == 2);
    CHECK(r.num_real_distinct == 0);

    const RatPoly mixed = pow(RatPoly{-1, 1}, 3) * RatPoly{2, 1};
    r = is_hyperbolic_exact(mixed);
    CHECK(r.verdict == Verdict::Hyperbolic);
    CHECK(r.num_distinct == 2);
    CHECK(r.num_real_distinct == 2);

    CHECK(is_hyperbolic_exact(RatPoly{5}).verdict == Verdict::Hyperbolic);
    CHECK_THROWS_AS(is_hyperbolic_exact(RatPoly{}), DomainError);
    CHECK(to_string(Verdict::PrefilterOnly) == "prefilter-only");
    CHECK(to_string(Certification::SturmExact) == "sturm-exact");
}

TEST_CASE("first_nonhyperbolic examples") {
    const SequenceSpec synth(3, RatPoly{1}, RatPoly{0, 1});
    auto res = first_nonhyperbolic(synth, 20);
    REQUIRE(res.n_star.has_value());
    CHECK(*res.n_star == 3);
    REQUIRE(res.reports.size() == 3);
    CHECK(gen_poly(synth, 3) == RatPoly{-1, 0, 0, -1});
    REQUIRE(res.reports.back().witness.has_value());
    CHECK(std::abs(std::abs(res.reports.back().witness->imag()) - std::sqrt(3.0) / 2) < 1e-10);

    const SequenceSpec bad_b(3, RatPoly{0, 1}, RatPoly{1, 0, 1});
    res = first_nonhyperbolic(bad_b, 20);
    REQUIRE(res.n_star.has_value());
    CHECK(*res.n_star == 1);

    res = first_nonhyperbolic(example_one(), 200);
    REQUIRE(res.n_star.has_value());
    CHECK(*res.n_star == 3);

    res = first_nonhyperbolic(example_two(), 200);
    REQUIRE(res.n_star.has_value());
    CHECK(*res.n_star == 5);

    res = first_nonhyperbolic(synth, 2);
    CHECK_FALSE(res.n_star.has_value());
    CHECK(res.reports.size() == 2);
}

TEST_CASE("scan certification is sound") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 3 + trial % 3;
        const auto s = random_spec(rng, k);
        ScanOptions with;
        ScanOptions without;
        without.use_prefilter = false;
        const auto a = first_nonhyperbolic(s, 40, with);
        const auto b = first_nonhyperbolic(s, 40, without);
        INFO("trial " << trial);
        CHECK(a.n_star == b.n_star);
        if (!a.n_star) continue;
        CHECK(sturm_deficient(gen_poly(s, *a.n_star)));
        REQUIRE(a.reports.size() == static_cast<std::size_t>(*a.n_star));
        for (const auto& r : a.reports) {
            if (r.verdict == Verdict::Hyperbolic) CHECK(r.certification == Certification::SturmExact);
            if (r.n < *a.n_star) {
                CHECK(r.verdict == Verdict::Hyperbolic);
                CHECK_FALSE(sturm_deficient(gen_poly(s, r.n)));
            }
        }
        CHECK(a.reports.back().verdict == Verdict::NonHyperbolic);
        CHECK(a.reports.back().certification == Certification::SturmExact);
    }
}

TEST_CASE("sequence_zeros accounts for every zero") {
    const auto s = example_one();
    for (long n : {1L, 2L, 3L, 10L, 30L}) {
        const auto pn = gen_poly(s, n);
        const auto zs = sequence_zeros(s, n, pn);
        int total = 0;
        for (const auto& z : zs) {
            total += z.cluster_size;
            CHECK(z.converged());
        }
        CHECK(total == pn.degree());
    }
    const auto sq = sequence_zeros(s, 2);
    REQUIRE(sq.size() == 2);
    for (const auto& z : sq) {
        CHECK(z.cluster_size == 2);
        CHECK(z.is_real);
    }
    CHECK_THROWS_AS(sequence_zeros(s, 0), PreconditionError);
}

TEST_CASE("zeros of the cubic example lie on the limiting curve") {
    const auto s = example_one();
    const auto zs = sequence_zeros(s, 71);
    int total = 0;
    int on = 0;
    int eligible = 0;
    for (const auto& z : zs) {
        total += z.cluster_size;
        if (!z.converged()) continue;
        if (std::abs(eval(s.a(), z.location)) <= 1e-8 || std::abs(eval(s.b(), z.location)) <= 1e-8) continue;
        ++eligible;
        const double fmag = std::hypot(z.im_f, z.re_f_signed);
        if (std::abs(z.im_f) <= 1e-6 * (1 + fmag) && z.re_f_signed >= -1e-6 && z.re_f_signed <= 6.75 + 1e-6) ++on;
    }
    CHECK(total == 142);
    CHECK(eligible > 0);
    CHECK(on >= 0.99 * eligible);
}
