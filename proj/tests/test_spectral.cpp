#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hyperseq/errors.hpp"
#include "hyperseq/exactpoly.hpp"
#include "hyperseq/recurrence.hpp"
#include "hyperseq/spectral.hpp"
#include "support.hpp"

using namespace hyperseq;
using hyperseq::testing::random_int_poly;
using hyperseq::testing::random_rat;
using hyperseq::testing::random_spec;
using hyperseq::testing::sylvester_discriminant;

namespace {

SequenceSpec synthetic() { return SequenceSpec(3, RatPoly{1}, RatPoly{0, 1}); }
SequenceSpec example_one() { return SequenceSpec(3, RatPoly{7, -5, -1, 1}, RatPoly{-6, -1, 1}); }
SequenceSpec example_two() { return SequenceSpec(5, RatPoly{-4, 1, 1}, RatPoly{-2, 1, 1}); }

RatPoly trinomial(int k, int l, const Rat& a, const Rat& b, const Rat& c) {
    std::vector<Rat> co(static_cast<std::size_t>(k + 1));
    co[0] = c;
    co[static_cast<std::size_t>(l)] = b;
    co[static_cast<std::size_t>(k)] = a;
    return RatPoly(std::move(co));
}

Rat nonzero_rat(std::mt19937_64& rng, long height) {
    for (;;) {
        Rat r = random_rat(rng, height);
        if (sgn(r) != 0) return r;
    }
}

}  // namespace

TEST_CASE("f_eval examples") {
    const auto s = synthetic();
    auto v = f_eval(s, Complex(1, 1));
    CHECK(std::abs(v.f - Complex(-2, 2)) < 1e-14);
    CHECK(v.numerator_im == doctest::Approx(2.0));
    CHECK_FALSE(v.pole);

    v = f_eval(s, std::polar(1.7, std::numbers::pi / 3));
    CHECK(std::abs(v.numerator_im) < 1e-14);

    const auto e1 = example_one();
    for (double x : {-3.5, -1.0, 0.25, 2.0, 3.9}) CHECK(f_eval(e1, Complex(x, 0)).numerator_im == 0.0);

    const SequenceSpec with_pole(3, RatPoly{0, 1}, RatPoly{1, 1});
    v = f_eval(with_pole, Complex(0, 0));
    CHECK(v.pole);
    CHECK(v.numerator_im == 0.0);
    CHECK(std::isfinite(v.numerator_im));
}

TEST_CASE("Wronskian identity on random specs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_spec(rng, 3 + trial % 4);
        CHECK(critical_wronskian(s) == wronskian(pow(s.b(), static_cast<unsigned>(s.k())), s.a()));
    }
}

TEST_CASE("critical_points examples") {
    auto cps = critical_points(synthetic());
    CHECK(critical_wronskian(synthetic()) == RatPoly{0, 0, 3});
    REQUIRE(cps.size() == 1);
    CHECK(cps[0].location == Complex(0, 0));
    CHECK(cps[0].multiplicity == 2);
    CHECK(cps[0].kind == CriticalKind::WronskianZero);

    const auto e1 = example_one();
    cps = critical_points(e1);
    int found = 0;
    int poles = 0;
    for (const auto& c : cps) {
        if (c.kind == CriticalKind::Pole) {
            ++poles;
            CHECK(std::abs(eval(e1.a(), c.location)) < 1e-10);
            continue;
        }
        if (std::abs(c.location - Complex(3, 0)) < 1e-12 || std::abs(c.location - Complex(-2, 0)) < 1e-12) {
            CHECK(c.multiplicity == 2);
            ++found;
        }
    }
    CHECK(found == 2);
    CHECK(poles == 3);
    CHECK(to_string(CriticalKind::Pole) == "pole");

    const SequenceSpec flat(3, RatPoly{2}, RatPoly{5});
    CHECK_THROWS_AS(critical_points(flat), DomainError);
}

TEST_CASE("roots of square-free B are critical points of multiplicity k-1") {
    std::mt19937_64 rng(12);
    int tested = 0;
    while (tested < 30) {
        const auto s = random_spec(rng, 3 + tested % 3);
        if (s.b().degree() < 1 || squarefree_part(s.b()).degree() != s.b().degree()) continue;
        const RatPoly w = critical_wronskian(s);
        const auto km1 = static_cast<unsigned>(s.k() - 1);
        const auto [rest, rem] = divrem(w, pow(s.b(), km1));
        CHECK(rem.is_zero());
        CHECK(gcd(rest, s.b()).degree() == 0);
        ++tested;
    }
    // explicit divisions at the integer roots of B in the cubic example
    const RatPoly w = critical_wronskian(example_one());
    for (long root : {3L, -2L}) {
        RatPoly q = w;
        int order = 0;
        for (;;) {
            auto [quot, rem] = divrem(q, RatPoly{-root, 1});
            if (!rem.is_zero()) break;
            q = std::move(quot);
            ++order;
        }
        CHECK(order == 2);
    }
}

TEST_CASE("zeros of P_1 and P_2 are critical points") {
    for (const auto& s : {example_one(), example_two()}) {
        const auto cps = critical_points(s);
        for (long n : {1L, 2L}) {
            for (const auto& z : find_roots(to_cpoly(gen_poly(s, n)))) {
                bool hit = false;
                for (const auto& c : cps) {
                    if (c.kind == CriticalKind::WronskianZero && std::abs(c.location - z.location) < 1e-8 &&
                        c.multiplicity >= static_cast<unsigned>(s.k() - 1))
                        hit = true;
                }
                CHECK(hit);
            }
        }
    }
}

TEST_CASE("trinomial_disc examples") {
    CHECK(trinomial_disc(3, 1, 1, 0, 1) == 27);
    CHECK(reversed_trinomial_disc(3, 1, 0) == 27);
    // closed form with A = 2, B = 1 against the reversed trinomial 2x^3 + x + 1
    CHECK(reversed_trinomial_disc(3, 2, 1) == 116);
    CHECK(trinomial_disc(3, 1, 2, 1, 1) == 116);
    CHECK(sylvester_discriminant(RatPoly{1, 1, 0, 2}) == -116);
    // the monic trinomial x^3 + x + 2 has a different discriminant
    CHECK(trinomial_disc(3, 1, 1, 1, 2) == 112);
    CHECK(sylvester_discriminant(RatPoly{2, 1, 0, 1}) == -112);

    CHECK_THROWS_AS(trinomial_disc(3, 0, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(trinomial_disc(3, 3, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(trinomial_disc(4, 2, 1, 1, 1), DomainError);
}

TEST_CASE("trinomial_disc matches the Sylvester discriminant") {
    std::mt19937_64 rng(13);
    for (int k : {3, 4, 5}) {
        const Rat sign = (k * (k - 1) / 2) % 2 == 0 ? Rat(1) : Rat(-1);
        for (int trial = 0; trial < 100; ++trial) {
            const Rat a = nonzero_rat(rng, 9);
            const Rat b = random_rat(rng, 9);
            const Rat c = random_rat(rng, 9);
            INFO("k=" << k << " a=" << a << " b=" << b << " c=" << c);
            CHECK(trinomial_disc(k, 1, a, b, c) == sign * sylvester_discriminant(trinomial(k, 1, a, b, c)));
            CHECK(reversed_trinomial_disc(k, a, b) == trinomial_disc(k, 1, a, b, 1));
        }
        for (int l = 2; l < k; ++l) {
            if (std::gcd(l, k) != 1) continue;
            for (int trial = 0; trial < 20; ++trial) {
                const Rat a = nonzero_rat(rng, 9);
                const Rat b = random_rat(rng, 9);
                const Rat c = random_rat(rng, 9);
                CHECK(trinomial_disc(k, l, a, b, c) == sign * sylvester_discriminant(trinomial(k, l, a, b, c)));
            }
        }
    }
}

TEST_CASE("endpoint_locus on the synthetic spec") {
    const auto loc = endpoint_locus(synthetic());
    CHECK(loc.g == RatPoly{27, 0, 0, 4});
    CHECK(loc.reduced == loc.g);
    REQUIRE(loc.endpoints.size() == 3);
    const double radius = std::cbrt(27.0 / 4.0);
    CHECK(radius == doctest::Approx(1.88988).epsilon(1e-5));
    int real = 0;
    for (const auto& e : loc.endpoints) {
        CHECK(std::abs(std::abs(e.location) - radius) < 1e-9);
        const double ang = std::abs(std::arg(e.location));
        CHECK((std::abs(ang - std::numbers::pi / 3) < 1e-9 || std::abs(ang - std::numbers::pi) < 1e-9));
        CHECK(std::abs(std::pow(e.location, 3) + 27.0 / 4.0) < 1e-9);
        CHECK(e.check_residual <= 1e-9 * (1 + e.rho));
        CHECK(e.rho == 6.75);
        if (e.is_real) {
            ++real;
            CHECK(e.location.imag() == 0.0);
        }
    }
    CHECK(real == 1);
}

TEST_CASE("endpoint value identity on a battery") {
    std::mt19937_64 rng(14);
    std::vector<SequenceSpec> battery = {example_one(), example_two()};
    for (int trial = 0; trial < 30; ++trial) battery.push_back(random_spec(rng, 3 + trial % 4));
    for (const auto& s : battery) {
        EndpointLocus loc;
        try {
            loc = endpoint_locus(s);
        } catch (const DomainError&) {
            CHECK(s.a().is_constant());
            continue;
        }
        CHECK(gcd(loc.reduced, s.a()).degree() < 1);
        long count = 0;
        for (const auto& f : squarefree_decomposition(loc.reduced).factors) count += f.factor.degree();
        CHECK(static_cast<long>(loc.endpoints.size()) == count);
        unsigned real = 0;
        for (const auto& e : loc.endpoints) {
            CHECK(e.check_residual <= 1e-9 * (1 + e.rho));
            if (e.is_real) ++real;
        }
        CHECK(real == sturm_real_count(squarefree_part(loc.reduced)));
    }
}

TEST_CASE("endpoint_locus regression values") {
    auto loc = endpoint_locus(example_one());
    CHECK(loc.g == RatPoly{7, -5, -1, 1} * Rat(27) + pow(RatPoly{-6, -1, 1}, 3) * Rat(4));
    CHECK(loc.g.degree() == 6);
    REQUIRE(loc.endpoints.size() == 6);
    std::vector<double> real;
    for (const auto& e : loc.endpoints)
        if (e.is_real) real.push_back(e.location.real());
    REQUIRE(real.size() == 2);
    CHECK(real[0] == doctest::Approx(-0.97603641007151043).epsilon(1e-12));
    CHECK(real[1] == doctest::Approx(2.3825574046146309).epsilon(1e-12));
    // sign change of G brackets each real endpoint exactly
    CHECK(sturm_real_count(loc.reduced, Rat(-1), Rat(-97, 100)) == 1);
    CHECK(sturm_real_count(loc.reduced, Rat(238, 100), Rat(239, 100)) == 1);

    loc = endpoint_locus(example_two());
    CHECK(loc.endpoints.size() == 10);
    int n_real = 0;
    for (const auto& e : loc.endpoints) n_real += e.is_real ? 1 : 0;
    CHECK(n_real == 2);

    const SequenceSpec degenerate(3, RatPoly{-4}, RatPoly{3});
    CHECK_THROWS_AS(endpoint_locus(degenerate), DomainError);
}

TEST_CASE("char_roots examples") {
    for (auto form : {CharForm::PaperLiteral, CharForm::RecurrenceStandard}) {
        const auto cr = char_roots(synthetic(), Complex(0, 0), form);
        REQUIRE(cr.roots.size() == 3);
        for (double m : cr.moduli_sorted) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cr.min_modulus_gap < 1e-12);
        CHECK_FALSE(cr.pole);
    }
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-3, 3);
    for (const auto& s : {example_one(), example_two()}) {
        for (int i = 0; i < 20; ++i) {
            const Complex z(u(rng), u(rng));
            const auto cr = char_roots(s, z, CharForm::PaperLiteral);
            REQUIRE(cr.roots.size() == static_cast<std::size_t>(s.k()));
            Complex prod(1.0);
            for (auto r : cr.roots) prod *= r;
            const Complex expect = (s.k() % 2 == 0 ? 1.0 : -1.0) * eval(s.a(), z);
            CHECK(std::abs(prod - expect) < 1e-10 * (1 + std::abs(expect)));
            for (std::size_t j = 1; j < cr.moduli_sorted.size(); ++j)
                CHECK(cr.moduli_sorted[j] >= cr.moduli_sorted[j - 1]);
        }
    }
    // dominant roots are equimodular on the limiting curve
    const auto on_ray = char_roots(synthetic(), std::polar(1.0, std::numbers::pi / 3), CharForm::RecurrenceStandard);
    CHECK(on_ray.min_modulus_gap < 1e-4);
    const auto on_axis = char_roots(example_one(), Complex(2.9, 0), CharForm::RecurrenceStandard);
    CHECK(-f_eval(example_one(), Complex(2.9, 0)).f.real() < 6.75);
    CHECK(on_axis.min_modulus_gap < 1e-4);

    const SequenceSpec with_pole(3, RatPoly{0, 1}, RatPoly{1, 1});
    CHECK(char_roots(with_pole, Complex(0, 0), CharForm::PaperLiteral).pole);
    CHECK(parse_char_form("paper-literal") == CharForm::PaperLiteral);
    CHECK(to_string(parse_char_form("recurrence-standard")) == "recurrence-standard");
    CHECK_THROWS_AS(parse_char_form("reversed"), ParseError);
}

TEST_CASE("multiple-root loci of the two characteristic forms") {
    std::mt19937_64 rng(16);
    for (int k : {3, 4, 5}) {
        const auto ku = static_cast<unsigned>(k);
        const Rat sign = (k * (k - 1) / 2) % 2 == 0 ? Rat(1) : Rat(-1);
        const Rat bk_coef = pow(Rat(k - 1), ku - 1) * ((k - 1) % 2 == 0 ? 1 : -1);
        for (int trial = 0; trial < 10; ++trial) {
            const auto s = random_spec(rng, k);
            const Rat z = random_rat(rng, 7);
            const Rat a = eval(s.a(), z);
            const Rat b = eval(s.b(), z);
            const Rat g = eval(endpoint_locus(s).g, z);
            const Rat d_std = discriminant(RatPoly(char_poly_coeffs(k, a, b, CharForm::RecurrenceStandard)));
            const Rat d_lit = discriminant(RatPoly(char_poly_coeffs(k, a, b, CharForm::PaperLiteral)));
            CHECK(d_std == sign * pow(a, ku - 2) * g);
            CHECK(d_lit == sign * (pow(Rat(k), ku) * pow(a, ku - 1) + bk_coef * pow(b, ku)));
        }
    }
}

TEST_CASE("equimodular resultant factorization") {
    const auto s = synthetic();
    const RatPoly rho = equimodular_rho(s, Rat(1, 2), CharForm::PaperLiteral);
    CHECK(rho.degree() == 9);
    CHECK(eval(rho, Rat(1)) == 0);
    RatPoly q = rho;
    for (int i = 0; i < 3; ++i) {
        auto [quot, rem] = divrem(q, RatPoly{-1, 1});
        CHECK(rem.is_zero());
        q = std::move(quot);
    }
    CHECK(q * Rat(1) == equimodular_delta(s, Rat(1, 2), CharForm::PaperLiteral) * eval(s.a(), Rat(1, 2)));

    const auto e1 = example_one();
    for (const Rat& z : {Rat(1, 2), Rat(3), Rat(-7, 3), Rat(5, 4), Rat(-1, 9)}) {
        for (auto form : {CharForm::PaperLiteral, CharForm::RecurrenceStandard}) {
            const RatPoly r = equimodular_rho(e1, z, form);
            CHECK(r.degree() == 9);
            const RatPoly d = equimodular_delta(e1, z, form);
            CHECK(d.degree() == 6);
            CHECK(reciprocal_sign(d) == 1);
        }
    }
    const RatPoly d5 = equimodular_delta(example_two(), Rat(1, 3), CharForm::RecurrenceStandard);
    CHECK(d5.degree() == 20);
    CHECK(reciprocal_sign(d5) == 1);

    CHECK_THROWS_AS(equimodular_rho(SequenceSpec(7, RatPoly{1}, RatPoly{0, 1}), Rat(1), CharForm::PaperLiteral),
                    PreconditionError);
    CHECK_THROWS_AS(equimodular_rho(SequenceSpec(3, RatPoly{0, 1}, RatPoly{1, 1}), Rat(0), CharForm::PaperLiteral),
                    DomainError);
    CHECK(reciprocal_sign(RatPoly{1, 2, 1}) == 1);
    CHECK(reciprocal_sign(RatPoly{1, 0, -1}) == -1);
    CHECK(reciprocal_sign(RatPoly{1, 2}) == 0);
}

TEST_CASE("equimodular resultant against the product over root pairs") {
    const auto e1 = example_one();
    for (auto form : {CharForm::PaperLiteral, CharForm::RecurrenceStandard}) {
        for (const Rat& z : {Rat(1, 2), Rat(-7, 3)}) {
            const RatPoly rho = equimodular_rho(e1, z, form);
            const auto lam = char_roots(e1, Complex(to_double(z), 0), form).roots;
            for (Complex w : {Complex(0.7, 0.2), Complex(-1.3, 0.5), Complex(2.0, 0)}) {
                Complex prod(1.0);
                for (auto li : lam)
                    for (auto lj : lam) prod *= w * li - lj;
                const Complex exact = eval(rho, w);
                CHECK(std::abs(prod - exact) < 1e-9 * (1 + std::abs(exact)));
            }
        }
    }
}

TEST_CASE("delta_at_one against the discriminant") {
    const auto s = synthetic();
    auto d = delta_at_one(s, Rat(1, 2), CharForm::PaperLiteral);
    REQUIRE(d.ratio.has_value());
    CHECK(*d.ratio == 1);
    CHECK(sgn(d.disc) != 0);

    std::mt19937_64 rng(17);
    const std::vector<std::pair<SequenceSpec, Rat>> expected = {{example_one(), Rat(1)}, {example_two(), Rat(-1)}};
    for (const auto& [spec, ratio] : expected) {
        for (auto form : {CharForm::PaperLiteral, CharForm::RecurrenceStandard}) {
            for (int i = 0; i < 10; ++i) {
                const Rat z = random_rat(rng, 9);
                if (sgn(eval(spec.a(), z)) == 0) continue;
                const auto r = delta_at_one(spec, z, form);
                REQUIRE(r.ratio.has_value());
                CHECK(*r.ratio == ratio);
            }
        }
    }

    // exact zero: G(3) = 0 for A = -4, B = z
    const SequenceSpec rational_end(3, RatPoly{-4}, RatPoly{0, 1});
    d = delta_at_one(rational_end, Rat(3), CharForm::RecurrenceStandard);
    CHECK(d.disc == 0);
    CHECK_FALSE(d.ratio.has_value());
    CHECK(d.both_zero);

    // co-vanishing along rationals approaching the real endpoint of the synthetic spec
    const double target = -std::cbrt(27.0 / 4.0);
    Rat prev_disc = -1;
    for (int j = 4; j <= 40; j += 4) {
        const Rat z = rat_from_double(target + std::ldexp(1.0, -j));
        const auto r = delta_at_one(s, z, CharForm::RecurrenceStandard);
        if (j > 4) CHECK(abs(r.disc) < abs(prev_disc));
        CHECK(abs(r.delta) == abs(r.disc));
        prev_disc = r.disc;
    }
}
