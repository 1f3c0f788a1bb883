#include "dagger/cech.hpp"
#include "dagger/error.hpp"
#include "dagger/random_series.hpp"

#include <doctest.h>

using namespace dagger;

namespace {

const Context kX{Prime(5), {"x"}};

OSeries laurent(OSeries::TermMap t) { return OSeries::exact(kX, std::move(t), Rational(0), true); }

}  // namespace

TEST_CASE("split examples") {
    DiscCover cover(Prime(5), Rational(1));
    auto one = circle_section(cover, laurent({{{0}, Rational(1)}}), Rational(1));
    auto s1 = mittag_leffler_split(one, cover, Rational(40));
    CHECK(s1.on_disc.terms == OSeries::TermMap{{{0}, Rational(1)}});
    CHECK(s1.on_annulus.terms.empty());

    auto h = circle_section(cover, laurent({{{-1}, Rational(1)}, {{1}, Rational(1)}}), Rational(1));
    auto s2 = mittag_leffler_split(h, cover, Rational(40));
    CHECK(s2.on_disc.terms == OSeries::TermMap{{{1}, Rational(1)}});
    CHECK(s2.on_annulus.terms == OSeries::TermMap{{{-1}, Rational(-1)}});
    CHECK(restriction_difference(s2.on_disc, s2.on_annulus).terms == h.terms);
}

TEST_CASE("certificate scan on a two-sided geometric series") {
    // sum_{|n| <= N} 5^|n| x^n on the circle v(x) = 1/2: weights |n| + n/2.
    DiscCover cover(Prime(5), Rational(1, 2));
    OSeries::TermMap t;
    for (long n = -6; n <= 6; ++n) t[{n}] = pow(Rational(5), static_cast<unsigned long>(std::labs(n)));
    auto h = circle_section(cover, laurent(t), Rational(1, 2));
    CHECK(h.cert.offset == 0);
    auto split = mittag_leffler_split(h, cover, Rational(40));
    CHECK(*best_slope(cover, split.on_disc.terms, Rational(0)) == Rational(3, 2));
    CHECK(*best_slope(cover, split.on_annulus.terms, Rational(0)) == Rational(1, 2));
    CHECK(split.on_disc.cert.slope == Rational(1, 2));
    CHECK(split.on_annulus.cert.slope == Rational(1, 2));
    // slope 1 does not hold on the negative side
    CHECK_THROWS_AS(check_section(cover, CoverSection{Chart::circle, t, {Rational(1), Rational(0)}, false}),
                    DaggerError);
}

TEST_CASE("random cocycles split and recombine exactly") {
    testkit::Rng rng(21);
    DiscCover cover(Prime(5), Rational(1));
    std::vector<CoverSection> samples;
    for (int i = 0; i < 40; ++i) {
        // v(a_n) >= 2|n| keeps v(a_n) + n - |n| >= 0 on both sides.
        auto h = testkit::random_laurent(rng, kX, 12, 8, Rational(2), 0);
        samples.push_back(circle_section(cover, h, Rational(1)));
    }
    auto report = cech_cohomology(cover, samples, Rational(40));
    CHECK(report.h1_vanishes);
    for (const auto& s : report.samples) {
        CHECK(s.recombines);
        CHECK(sgn(s.preimage.on_disc.cert.slope) > 0);
        CHECK(sgn(s.preimage.on_annulus.cert.slope) > 0);
        // Another preimage differs from the canonical one by a global section.
        CoverSection a = s.preimage.on_disc, b = s.preimage.on_annulus;
        a.terms[{0}] += 7;
        b.terms[{0}] += 7;
        CHECK(restriction_difference(a, b).terms == s.cocycle.terms);
        CoverSection da = a, db = b;
        for (const auto& [nu, c] : s.preimage.on_disc.terms) da.terms[nu] -= c;
        for (const auto& [nu, c] : s.preimage.on_annulus.terms) db.terms[nu] -= c;
        std::erase_if(da.terms, [](const auto& kv) { return sgn(kv.second) == 0; });
        std::erase_if(db.terms, [](const auto& kv) { return sgn(kv.second) == 0; });
        CHECK(equalizer(cover, da, db).has_value());
    }
}

TEST_CASE("zero cocycle and global sections") {
    DiscCover cover(Prime(5), Rational(1));
    auto zero = circle_section(cover, OSeries::zero(kX), Rational(1));
    auto r = cech_cohomology(cover, {zero}, Rational(40));
    CHECK(r.samples.front().preimage.on_disc.terms.empty());
    CHECK(r.samples.front().preimage.on_annulus.terms.empty());

    OSeries::TermMap f{{{0}, Rational(2)}, {{3}, Rational(1)}};
    CoverSection f1{Chart::disc, f, {}, false}, f2{Chart::annulus, f, {}, false};
    auto g = equalizer(cover, f1, f2);
    REQUIRE(g);
    CHECK(g->terms() == f);
    f2.terms[{-1}] = 1;
    CHECK_FALSE(equalizer(cover, f1, f2));
}

TEST_CASE("completed mode and precision") {
    DiscCover tate(Prime(5), Rational(1), CoverMode::completed);
    auto h = circle_section(tate, laurent({{{-2}, Rational(25)}, {{1}, Rational(1)}}), Rational(1));
    CHECK(h.cert.slope == 0);
    auto split = mittag_leffler_split(h, tate, Rational(40));
    CHECK(split.on_disc.completed);
    CHECK(restriction_difference(split.on_disc, split.on_annulus).terms == h.terms);

    DiscCover cover(Prime(5), Rational(1));
    CoverSection coarse{Chart::circle, {{{1}, Rational(1)}}, {Rational(1), Rational(0), ExtRational(10)}, false};
    CHECK_THROWS_AS(mittag_leffler_split(coarse, cover, Rational(40)), DaggerError);
    CHECK_NOTHROW(mittag_leffler_split(coarse, cover, Rational(5)));
    CHECK_THROWS_AS(DiscCover(Prime(5), Rational(0)), DaggerError);
}
