#include "dagger/derham.hpp"
#include "dagger/error.hpp"
#include "dagger/random_series.hpp"

#include <doctest.h>

using namespace dagger;

namespace {

Context ctx(long p, std::vector<std::string> vars) { return Context{Prime(p), std::move(vars)}; }

DaggerPresentation disc(long p = 5) { return DaggerPresentation::free(ctx(p, {"T"})); }
DaggerPresentation gm(long p = 5) { return DaggerPresentation::torus(ctx(p, {"x", "y"})); }
DaggerPresentation elliptic7() {
    auto Q = OSeries::exact(ctx(7, {"x"}), {{{3}, Rational(1)}, {{0}, Rational(1)}}, Rational(0));
    return DaggerPresentation::hyperelliptic(ctx(7, {"x", "y"}), Q);
}

OSeries laurent_x(long p, OSeries::TermMap t) { return OSeries::exact(ctx(p, {"x"}), std::move(t), Rational(0), true); }

AlgebraElement el(const DaggerPresentation& P, OSeries f) { return reduce(f, P, Rational(40)); }

}  // namespace

TEST_CASE("exterior derivative examples") {
    auto D = disc();
    CHECK(d(function_form(el(D, OSeries::constant(D.context(), Rational(3))))).is_zero());
    auto dx2 = d(function_form(el(D, OSeries::monomial(D.context(), {2}, Rational(1)))));
    CHECK(dx2.coefficient({0}).terms() == OSeries::TermMap{{{1}, Rational(2)}});

    auto H = elliptic7();
    auto dy = d(function_form(el(H, OSeries::variable(H.context(), 1))));
    // d y = Q'/2 dx/y = (3/2) x^2 dx/y
    CHECK(dy.coefficient({0}).terms() == OSeries::TermMap{{{2, 0}, Rational(3, 2)}});
    auto dx = d(function_form(el(H, OSeries::variable(H.context(), 0))));
    CHECK(dx.coefficient({0}).terms() == OSeries::TermMap{{{0, 1}, Rational(1)}});
}

TEST_CASE("d o d = 0") {
    testkit::Rng rng(31);
    auto F3 = DaggerPresentation::free(ctx(5, {"a", "b", "c"}));
    for (int trial = 0; trial < 20; ++trial) {
        auto f = testkit::random_poly(rng, F3.context(), {.max_degree = 4, .terms = 6});
        auto w1 = d(function_form(el(F3, f)));
        CHECK(d(w1).is_zero());
        auto g = testkit::random_poly(rng, F3.context(), {.max_degree = 4, .terms = 6});
        auto w = make_form(F3, {0}, f) + make_form(F3, {2}, g);
        CHECK(d(d(w)).is_zero());
    }
    auto T = gm();
    auto f = testkit::random_laurent(rng, normal_form_context(T), 6, 6, Rational(0), 0);
    CHECK(d(d(function_form(el(T, f)))).is_zero());
}

TEST_CASE("antiderivative loss bound") {
    // p = 5, t = 1, t' = 1/2: j - (1/2)(5^j - 1) < 0 for all j >= 1.
    CHECK(antiderivative_loss(Prime(5), Rational(1), Rational(1, 2)) == 0);
    // p = 2, t = 1, t' = 1/2: j = 1, 2 both give 1/2.
    CHECK(antiderivative_loss(Prime(2), Rational(1), Rational(1, 2)) == Rational(1, 2));
    // brute-force oracle over nu
    for (long p : {2, 3, 5}) {
        for (Rational delta : {Rational(1, 10), Rational(1, 3), Rational(1)}) {
            Rational best(0);
            for (long nu = 0; nu < 20000; ++nu) {
                Rational v = Rational(valuation(Integer(nu + 1), Prime(p))) - delta * nu;
                if (v > best) best = v;
            }
            CHECK(antiderivative_loss(Prime(p), Rational(1), Rational(1) - delta) == best);
        }
    }
}

TEST_CASE("antiderivative examples") {
    auto D = disc();
    auto dT = make_form(D, {0}, OSeries::constant(D.context(), Rational(1), Rational(1)));
    auto T = antiderivative(dT, Slope(Rational(1, 2)));
    CHECK(T.normal_form.terms() == OSeries::TermMap{{{1}, Rational(1)}});

    OSeries::TermMap geo;
    for (long n = 0; n <= 12; ++n) geo[{n}] = pow(Rational(5), static_cast<unsigned long>(n));
    OSeries f(D.context(), geo, GrowthCertificate{Rational(1), Rational(0), ExtRational::infinity()});
    auto F = antiderivative(make_form(D, {0}, f), Slope(Rational(1, 2)));
    CHECK(F.normal_form.certificate().slope == Rational(1, 2));
    CHECK(F.normal_form.certificate().offset == Rational(-1, 2));
    for (long n = 0; n <= 12; ++n)
        CHECK(F.normal_form.coefficient({n + 1}) == pow(Rational(5), static_cast<unsigned long>(n)) / (n + 1));
    CHECK(same_terms(d(function_form(F)), make_form(D, {0}, f)));

    auto t4 = make_form(D, {0}, OSeries::monomial(D.context(), {4}, Rational(1), Rational(1)));
    auto t5 = antiderivative(t4, Slope(Rational(1, 2)));
    CHECK(t5.normal_form.coefficient({5}) == Rational(1, 5));
    CHECK(valuation(t5.normal_form.coefficient({5}), Prime(5)) == ExtRational(-1));

    auto C = complete_presentation(D);
    try {
        antiderivative(make_form(C, {0}, complete(f)), Slope(Rational(1, 2)));
        FAIL("completed form integrated");
    } catch (const DaggerError& e) {
        CHECK(e.kind() == ErrorKind::uncertified_mode);
    }
    CHECK_THROWS_AS(antiderivative(make_form(D, {0}, f), Slope(Rational(1))), DaggerError);
}

TEST_CASE("antiderivative certificates hold on random forms") {
    testkit::Rng rng(32);
    auto D = disc(2);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = testkit::random_poly(rng, D.context(), {.max_degree = 60, .terms = 20, .slope = Rational(1)});
        auto F = antiderivative(make_form(D, {0}, f), Slope(Rational(1, 2)));  // constructor re-checks
        CHECK(same_terms(d(function_form(F)), make_form(D, {0}, f)));
    }
}

TEST_CASE("torus reduction") {
    auto T = gm();
    for (long n : {-5L, -2L, 0L, 3L}) {
        auto w = make_form(T, {0}, laurent_x(5, {{{n}, Rational(1)}}));
        auto r = reduce_in_cohomology(w, Rational(40));
        CHECK(r.representative.is_zero());
        CHECK(r.exact_part.normal_form.terms() == OSeries::TermMap{{{n + 1}, Rational(1) / (n + 1)}});
    }
    auto dxx = make_form(T, {0}, laurent_x(5, {{{-1}, Rational(1)}}));
    auto r = reduce_in_cohomology(dxx, Rational(40));
    CHECK(same_terms(r.representative, dxx));
    CHECK(r.exact_part.normal_form.is_zero());
}

TEST_CASE("hyperelliptic reduction") {
    auto H = elliptic7();
    auto x3 = make_form(H, {0}, OSeries::monomial(H.context(), {3, 0}, Rational(1)));
    auto r = reduce_in_cohomology(x3, Rational(40));
    CHECK(r.representative.coefficient({0}).terms() == OSeries::TermMap{{{0, 0}, Rational(-2, 5)}});
    CHECK(r.exact_part.normal_form.terms() == OSeries::TermMap{{{1, 1}, Rational(2, 5)}});
    CHECK(same_terms(x3, r.representative + d(function_form(r.exact_part))));

    testkit::Rng rng(33);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = el(H, testkit::random_poly(rng, H.context(), {.max_degree = 12, .terms = 6})).normal_form;
        auto g = el(H, testkit::random_poly(rng, H.context(), {.max_degree = 12, .terms = 6})).normal_form;
        auto wf = make_form(H, {0}, f), wg = make_form(H, {0}, g);
        auto rf = reduce_in_cohomology(wf, Rational(40));
        CHECK(same_terms(wf, rf.representative + d(function_form(rf.exact_part))));
        CHECK(rf.representative.coefficient({0}).degree_in(0) <= 1);
        CHECK(rf.representative.coefficient({0}).degree_in(1) <= 0);
        auto again = reduce_in_cohomology(rf.representative, Rational(40));
        CHECK(same_terms(again.representative, rf.representative));
        CHECK(again.exact_part.normal_form.is_zero());
        auto rg = reduce_in_cohomology(wg, Rational(40));
        auto rsum = reduce_in_cohomology(scale(wf, Rational(3)) + scale(wg, Rational(-2, 7)), Rational(40));
        CHECK(same_terms(rsum.representative,
                         scale(rf.representative, Rational(3)) + scale(rg.representative, Rational(-2, 7))));
    }
}

TEST_CASE("cohomology dimensions") {
    CHECK(cohomology(disc(), Rational(40)).dimensions() == std::vector<long>{1, 0});
    auto t = cohomology(gm(), Rational(40));
    CHECK(t.dimensions() == std::vector<long>{1, 1});
    REQUIRE(t.degrees[1].basis.size() == 1);
    CHECK(t.degrees[1].basis[0].coefficient({0}).terms() == OSeries::TermMap{{{-1}, Rational(1)}});
    auto h = cohomology(elliptic7(), Rational(40));
    CHECK(h.dimensions() == std::vector<long>{1, 2});
    CHECK(h.degrees[1].basis.size() == 2);
    CHECK(cohomology(DaggerPresentation::free(ctx(5, {"a", "b"})), Rational(40)).dimensions() ==
          std::vector<long>{1, 0, 0});
    CHECK_THROWS_AS(cohomology(complete_presentation(gm()), Rational(40)), DaggerError);
}

TEST_CASE("kunneth") {
    auto dd = kunneth(disc(), disc(), Rational(40));
    CHECK(dd.computed == std::vector<long>{1, 0, 0});
    CHECK(dd.match);
    auto dt = kunneth(disc(), gm(), Rational(40));
    CHECK(dt.computed == std::vector<long>{1, 1, 0});
    CHECK(dt.match);
    auto tt = kunneth(gm(), gm(), Rational(40));
    CHECK(tt.computed == std::vector<long>{1, 2, 1});
    CHECK(tt.match);
    CHECK(graded_cohomology_dims({true, true, true}, 2) == std::vector<long>{1, 3, 3, 1});
}

TEST_CASE("completed contrast") {
    auto r = completed_contrast(disc(2), 4);
    REQUIRE(r.best_fit.size() == 5);
    for (long k = 0; k <= 4; ++k)
        CHECK(r.best_fit[static_cast<std::size_t>(k)].best_slope == Rational(1, 1L << k));
    CHECK(r.monotone_decreasing);
    for (const auto& [e, v] : r.valuations) CHECK(v == 0);
    CHECK(r.completed_rejection == "uncertified-mode");
    CHECK(r.dagger_integrates);
    REQUIRE(r.dagger_integral);
    CHECK(r.dagger_integral->slope() == Rational(1, 2));

    auto r0 = completed_contrast(disc(2), 0);
    CHECK_FALSE(r0.monotone_decreasing);
    CHECK(r0.dagger_integrates);
}
