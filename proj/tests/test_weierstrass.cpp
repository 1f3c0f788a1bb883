#include "doctest.h"

#include "dagger/error.hpp"
#include "dagger/random_series.hpp"
#include "dagger/weierstrass.hpp"

using namespace dagger;

namespace {

Context ctx_y(long p) { return Context{Prime(p), {"Y"}}; }

OSeries poly1(long p, std::initializer_list<std::pair<long, Rational>> terms) {
    OSeries::TermMap m;
    for (auto& [e, c] : terms) m[{e}] = c;
    return OSeries::exact(ctx_y(p), m, Rational(0));
}

ExtRational w(const OSeries::TermMap& m, const Rational& t, Prime p) { return stored_gauss_valuation(m, t, p); }

OSeries::TermMap diff(const OSeries& a, const OSeries& b) { return (a - b).terms(); }

}  // namespace

TEST_CASE("distinguishedness examples") {
    auto y = is_distinguished(poly1(5, {{1, 1}}), 0, Slope());
    REQUIRE(std::holds_alternative<DistinguishedReport>(y));
    CHECK(std::get<DistinguishedReport>(y).degree == 1);
    CHECK(std::get<DistinguishedReport>(y).margin.is_infinite());

    auto rep = require_distinguished(poly1(5, {{2, 1}, {0, -5}}), 0, Slope());
    CHECK(rep.degree == 2);

    rep = require_distinguished(poly1(5, {{2, 5}, {1, 1}}), 0, Slope());
    CHECK(rep.degree == 1);
    CHECK(rep.margin == ExtRational(1));

    Context two{Prime(5), {"X1", "X2"}};
    OSeries x1x2 = OSeries::monomial(two, {1, 1}, Rational(1));
    auto bad = is_distinguished(x1x2, 1, Slope());
    REQUIRE(std::holds_alternative<NotDistinguished>(bad));
    CHECK(std::get<NotDistinguished>(bad).witness == MultiIndex{1, 1});
    // 1 + X1 is not a unit in W_1, so X2 (1 + X1) is not distinguished either
    OSeries notunit = OSeries::monomial(two, {0, 1}, Rational(1)) + OSeries::monomial(two, {1, 1}, Rational(1));
    CHECK(std::holds_alternative<NotDistinguished>(is_distinguished(notunit, 1, Slope())));
    CHECK_THROWS_AS(require_distinguished(notunit, 1, Slope()), DaggerError);
}

TEST_CASE("distinguishedness respects the truncation level") {
    OSeries g = poly1(5, {{1, 1}}).with_certificate({Rational(0), Rational(0), ExtRational(0)});
    CHECK_THROWS_AS(is_distinguished(g, 0, Slope()), DaggerError);
    OSeries h = poly1(5, {{1, 1}}).with_certificate({Rational(0), Rational(0), ExtRational(2)});
    CHECK(require_distinguished(h, 0, Slope()).margin == ExtRational(2));
}

TEST_CASE("division examples") {
    OSeries g = poly1(5, {{2, 1}, {0, -5}});
    auto res = weierstrass_divide(poly1(5, {{3, 1}}), g, 0, Slope(), Rational(40));
    CHECK(res.quotient.terms() == poly1(5, {{1, 1}}).terms());
    CHECK(res.remainder.terms() == poly1(5, {{1, 5}}).terms());
    CHECK(res.residual_valuation.is_infinite());

    auto same = weierstrass_divide(g, g, 0, Slope(), Rational(40));
    CHECK(same.quotient.terms() == OSeries::constant(ctx_y(5), 1).terms());
    CHECK(same.remainder.is_zero());

    OSeries low = poly1(5, {{1, 3}, {0, 7}});
    auto small = weierstrass_divide(low, g, 0, Slope(), Rational(40));
    CHECK(small.quotient.is_zero());
    CHECK(small.remainder.terms() == low.terms());

    CHECK_THROWS_AS(weierstrass_divide(low, OSeries::zero(ctx_y(5)), 0, Slope(), Rational(10)), DaggerError);
}

TEST_CASE("division by a non-polynomial distinguished series converges") {
    // g = Y + 5 Y^3 at t = 0: infinitely many passes in principle
    OSeries g = poly1(5, {{1, 1}, {3, 5}});
    OSeries f = poly1(5, {{4, 1}, {0, 2}});
    auto res = weierstrass_divide(f, g, 0, Slope(), Rational(20));
    CHECK(res.residual_valuation >= ExtRational(20));
    CHECK(res.remainder.degree_in(0) < 1);
    OSeries::TermMap defect = diff(f, g * res.quotient + res.remainder);
    CHECK(w(defect, 0, Prime(5)) >= ExtRational(20));
    CHECK(res.passes > 1);
}

TEST_CASE("random division: residual, degree, norm-directness, schedule independence") {
    testkit::Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 3;
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < n; ++i) vars.push_back("Y" + std::to_string(i + 1));
        Context ctx{Prime(trial % 2 ? 5 : 3), vars};
        Rational t = (trial % 4 == 0) ? Rational(1, 2) : Rational(0);
        long k = 1 + trial % 3;
        OSeries g = testkit::random_distinguished(rng, ctx, n - 1, k, t, 6, 6, 1 + trial % 3);
        OSeries f = testkit::random_poly(rng, ctx, {6, 6, t, -1, 3});
        Rational cutoff(15);
        auto a = weierstrass_divide(f, g, n - 1, Slope(t), cutoff);
        auto b = weierstrass_divide(f, g, n - 1, Slope(t), cutoff, DivisionSchedule::termwise);
        CHECK(a.residual_valuation >= ExtRational(cutoff));
        CHECK(a.remainder.degree_in(n - 1) < k);
        OSeries::TermMap defect = diff(f, g * a.quotient + a.remainder);
        CHECK(w(defect, t, ctx.prime) >= ExtRational(cutoff));
        ExtRational wf = w(f.terms(), t, ctx.prime);
        CHECK(w(a.remainder.terms(), t, ctx.prime) >= min(wf, ExtRational(cutoff)));
        CHECK(w(a.quotient.terms(), t, ctx.prime) + ExtRational(a.report.norm) >= min(wf, ExtRational(cutoff)));
        // uniqueness: both schedules agree below the cutoff
        CHECK(w(diff(a.remainder, b.remainder), t, ctx.prime) >= ExtRational(cutoff));
        CHECK(w(diff(a.quotient, b.quotient), t, ctx.prime) >= ExtRational(cutoff - a.report.norm));
    }
}

TEST_CASE("preparation examples") {
    OSeries g = poly1(5, {{2, 1}, {0, -5}});
    auto prep = weierstrass_prepare(g, 0, Slope(), Rational(30));
    CHECK(prep.weierstrass_poly.terms() == g.terms());
    CHECK(prep.unit.terms() == OSeries::constant(ctx_y(5), 1).terms());

    OSeries cy = poly1(5, {{1, 3}});
    prep = weierstrass_prepare(cy, 0, Slope(), Rational(30));
    CHECK(prep.weierstrass_poly.terms() == poly1(5, {{1, 1}}).terms());
    CHECK(prep.unit.terms() == OSeries::constant(ctx_y(5), 3).terms());

    OSeries e = poly1(5, {{0, 1}, {1, 5}});
    OSeries omega = poly1(5, {{1, 1}, {0, -5}});
    prep = weierstrass_prepare(e * omega, 0, Slope(), Rational(30));
    Prime five(5);
    CHECK(w(diff(prep.weierstrass_poly, omega), 0, five) >= ExtRational(30));
    CHECK(w(diff(prep.unit, e), 0, five) >= ExtRational(29));
    CHECK(prep.residual_valuation >= ExtRational(30));
}

TEST_CASE("prepare and divide agree on remainders") {
    testkit::Rng rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        Context ctx{Prime(5), {"X", "Y"}};
        OSeries g = testkit::random_distinguished(rng, ctx, 1, 2, Rational(0), 5, 5, 3);
        OSeries f = testkit::random_poly(rng, ctx, {5, 5, Rational(0), 0, 3});
        auto prep = weierstrass_prepare(g, 1, Slope(), Rational(25));
        CHECK(prep.weierstrass_poly.coefficient({0, 2}) == 1);
        CHECK(prep.weierstrass_poly.degree_in(1) == 2);
        auto by_g = weierstrass_divide(f, g, 1, Slope(), Rational(25));
        auto by_omega = weierstrass_divide(f, prep.weierstrass_poly.at_slope(0), 1, Slope(), Rational(25));
        CHECK(w(diff(by_g.remainder, by_omega.remainder), 0, ctx.prime) >= ExtRational(20));
    }
}

TEST_CASE("unit inverse") {
    OSeries u = poly1(5, {{0, 2}, {1, 5}});
    OSeries e = unit_inverse(u, Slope(), Rational(12));
    OSeries::TermMap one = OSeries::constant(ctx_y(5), 1).terms();
    OSeries::TermMap defect = (OSeries::constant(ctx_y(5), 1) - u * e.at_slope(0)).terms();
    CHECK(w(defect, 0, Prime(5)) >= ExtRational(12));
    CHECK_THROWS_AS(unit_inverse(poly1(5, {{0, 1}, {1, 1}}), Slope(), Rational(5)), DaggerError);
}

TEST_CASE("distinguishing automorphism") {
    OSeries y5 = poly1(5, {{0, 5}, {1, 1}});
    auto id = distinguishing_automorphism(y5, Slope());
    CHECK(id.exponents == std::vector<long>{0});
    CHECK(id.report.degree == 1);

    Context two{Prime(5), {"X1", "X2"}};
    OSeries x1x2 = OSeries::monomial(two, {1, 1}, Rational(1));
    auto sig = distinguishing_automorphism(x1x2, Slope());
    CHECK(sig.exponents == std::vector<long>{1, 0});
    CHECK(sig.image.coefficient({1, 1}) == 1);
    CHECK(sig.image.coefficient({0, 2}) == 1);
    CHECK(sig.report.degree == 2);

    testkit::Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        Context three{Prime(3), {"A", "B", "C"}};
        OSeries f = testkit::random_poly(rng, three, {4, 4, Rational(0), 0, 2});
        if (f.is_zero()) continue;
        auto d = distinguishing_automorphism(f, Slope());
        CHECK(std::holds_alternative<DistinguishedReport>(is_distinguished(d.image, 2, Slope())));
        CHECK(apply_distinguishing(f, d.exponents) == d.image);
    }
}
