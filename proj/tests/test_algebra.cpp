#include "dagger/algebra.hpp"
#include "dagger/error.hpp"
#include "dagger/linalg.hpp"
#include "dagger/random_series.hpp"

#include <doctest.h>

using namespace dagger;

namespace {

Context ctx(long p, std::vector<std::string> vars) { return Context{Prime(p), std::move(vars)}; }

OSeries poly(const Context& c, OSeries::TermMap t) { return OSeries::exact(c, std::move(t), Rational(0)); }

DaggerPresentation y2_minus_5() {
    return DaggerPresentation::principal(poly(ctx(5, {"Y"}), {{{2}, Rational(1)}, {{0}, Rational(-5)}}));
}

DaggerPresentation elliptic7() {
    auto Q = poly(ctx(7, {"x"}), {{{3}, Rational(1)}, {{0}, Rational(1)}});
    return DaggerPresentation::hyperelliptic(ctx(7, {"x", "y"}), Q);
}

}  // namespace

TEST_CASE("exact linear algebra") {
    Matrix m{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(rank(m) == 1);
    CHECK(determinant(m) == 0);
    Matrix a{{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
    CHECK(determinant(a) == 5);
    auto x = solve(a, {Rational(3), Rational(4)});
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    CHECK_FALSE(solve(m, {Rational(1), Rational(1)}));
    CHECK(rank(Matrix{}) == 0);
}

TEST_CASE("presentation validation") {
    CHECK_THROWS_AS(DaggerPresentation::principal(poly(ctx(5, {"Y"}), {{{2}, Rational(5)}, {{0}, Rational(1)}})),
                    DaggerError);
    auto Q3 = poly(ctx(3, {"x"}), {{{3}, Rational(1)}, {{0}, Rational(1)}});
    // x^3 + 1 = (x + 1)^3 mod 3
    CHECK_THROWS_AS(DaggerPresentation::hyperelliptic(ctx(3, {"x", "y"}), Q3), DaggerError);
    auto Q2 = poly(ctx(7, {"x"}), {{{2}, Rational(1)}, {{0}, Rational(1)}});
    CHECK_THROWS_AS(DaggerPresentation::hyperelliptic(ctx(7, {"x", "y"}), Q2), DaggerError);
    CHECK(elliptic7().genus() == 1);
}

TEST_CASE("reduce examples") {
    auto P = y2_minus_5();
    auto zero = reduce(P.generators().front(), P, Rational(40));
    CHECK(zero.normal_form.is_zero());

    auto H = elliptic7();
    auto y3 = reduce(poly(H.context(), {{{0, 3}, Rational(1)}}), H, Rational(40));
    CHECK(y3.normal_form.terms() == OSeries::TermMap{{{3, 1}, Rational(1)}, {{0, 1}, Rational(1)}});

    auto T = DaggerPresentation::torus(ctx(5, {"x", "y"}));
    auto x2 = reduce(poly(T.context(), {{{3, 1}, Rational(1)}}), T, Rational(40));
    CHECK(x2.normal_form.terms() == OSeries::TermMap{{{2}, Rational(1)}});
    auto xinv = reduce(poly(T.context(), {{{0, 2}, Rational(3)}}), T, Rational(40));
    CHECK(xinv.normal_form.terms() == OSeries::TermMap{{{-2}, Rational(3)}});
}

TEST_CASE("quotient norm examples") {
    auto P = y2_minus_5();
    auto y3 = reduce(poly(P.context(), {{{3}, Rational(1)}}), P, Rational(40));
    auto qn = quotient_norm(y3, Slope(Rational(0)));
    CHECK(qn.value == ExtRational(1));
    CHECK(qn.exact);
    auto z = reduce(OSeries::zero(P.context()), P, Rational(40));
    CHECK(quotient_norm(z, Slope(Rational(0))).value.is_infinite());

    auto F = DaggerPresentation::free(ctx(5, {"X"}));
    auto f = poly(F.context(), {{{1}, Rational(5)}, {{3}, Rational(-1)}});
    Slope half(Rational(1, 2));
    CHECK(quotient_norm(reduce(f, F, Rational(40)), half).value == gauss_valuation(f, half));
    CHECK_FALSE(quotient_norm(reduce(OSeries::zero(elliptic7().context()), elliptic7(), Rational(40)),
                              Slope(Rational(0)))
                    .exact);
}

TEST_CASE("localization") {
    auto F = DaggerPresentation::free(ctx(5, {"x"}));
    auto x = reduce(OSeries::variable(F.context(), 0), F, Rational(40));
    auto T = localize(F, x, LocalizationKind::inverse);
    CHECK(T.family() == Family::torus);
    CHECK(T.nvars() == 2);
    auto xt = transport(x, T, Rational(40));
    CHECK(localize(T, xt, LocalizationKind::inverse) == T);

    auto S = localize(F, x, LocalizationKind::sublevel);
    CHECK(S.family() == Family::principal);
    CHECK(S.generators().front().terms() ==
          OSeries::TermMap{{{0, 1}, Rational(1)}, {{1, 0}, Rational(-5)}});
    // x restricted to |x| <= |5| is 5u.
    auto xs = transport(x, S, Rational(40));
    CHECK(xs.normal_form.terms() == OSeries::TermMap{{{1, 0}, Rational(5)}});

    auto x2 = reduce(poly(F.context(), {{{2}, Rational(1)}}), F, Rational(40));
    CHECK_THROWS_AS(localize(F, x2, LocalizationKind::inverse), DaggerError);
}

TEST_CASE("completed presentations") {
    auto T = DaggerPresentation::torus(ctx(5, {"x", "y"}));
    auto C = complete_presentation(T);
    CHECK(C.is_completed());
    CHECK(complete_presentation(C) == C);
    auto e = reduce(poly(T.context(), {{{1, 0}, Rational(1)}}).at_slope(Rational(1)), C, Rational(40));
    CHECK(e.normal_form.is_completed());
    CHECK(e.normal_form.slope() == 0);
}

TEST_CASE("reduce is idempotent and multiplicative modulo the ideal") {
    testkit::Rng rng(11);
    Rational cutoff(30);
    auto P = y2_minus_5();
    auto T = DaggerPresentation::torus(ctx(5, {"x", "y"}));
    auto H = elliptic7();
    testkit::PolyShape shape{.max_degree = 5, .terms = 5};
    for (int trial = 0; trial < 30; ++trial) {
        for (const auto* A : {&P, &T, &H}) {
            auto x = testkit::random_poly(rng, A->context(), shape);
            auto z = testkit::random_poly(rng, A->context(), shape);
            auto rx = reduce(x, *A, cutoff);
            auto rz = reduce(z, *A, cutoff);
            auto again = reduce(rx.normal_form, *A, cutoff);
            auto lhs = reduce(x * z, *A, cutoff);
            auto rhs = reduce(rx.normal_form * rz.normal_form, *A, cutoff);
            if (A->family() == Family::principal) {
                CHECK(gauss_valuation(again.normal_form - rx.normal_form, Slope(Rational(0))) >= ExtRational(cutoff));
                CHECK(gauss_valuation(lhs.normal_form - rhs.normal_form, Slope(Rational(0))) >= ExtRational(cutoff));
            } else {
                CHECK(again.normal_form.terms() == rx.normal_form.terms());
                CHECK(lhs.normal_form.terms() == rhs.normal_form.terms());
            }
        }
    }
}

TEST_CASE("quotient norm ignores multiples of the generator") {
    testkit::Rng rng(12);
    Rational cutoff(30);
    auto P = y2_minus_5();
    const auto& g = P.generators().front();
    Slope t0(Rational(0));
    for (int trial = 0; trial < 40; ++trial) {
        auto x = testkit::random_poly(rng, P.context(), {.max_degree = 6, .terms = 4});
        auto h = testkit::random_poly(rng, P.context(), {.max_degree = 6, .terms = 4});
        auto a = quotient_norm(reduce(x, P, cutoff), t0).value;
        auto b = quotient_norm(reduce(x + g * h, P, cutoff), t0).value;
        CHECK(min(a, ExtRational(cutoff)) == min(b, ExtRational(cutoff)));
    }
}
