#include "dagger/duality.hpp"
#include "dagger/error.hpp"
#include "dagger/random_series.hpp"

#include <doctest.h>

using namespace dagger;

namespace {

const Context kT{Prime(5), {"T"}};

OSeries mono(long e) { return OSeries::monomial(kT, {e}, Rational(1)); }
LaurentTail tail(long e) { return LaurentTail::exact(kT, {{{e}, Rational(1)}}, Rational(1)); }

// Independent oracle: the Gram matrix must be the identity of size K^m.
bool is_identity(const Matrix& m, std::size_t n) {
    if (m.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) return false;
        for (std::size_t j = 0; j < n; ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("residue pairing examples") {
    CHECK(residue_pair(mono(3), tail(-4)).value == 1);
    CHECK(residue_pair(mono(3), tail(-1)).value == 0);
    CHECK(residue_pair(OSeries::constant(kT, Rational(1)), tail(-1)).value == 1);
    CHECK(residue_pair(mono(3), tail(-4)).omitted_bound.is_infinite());
    CHECK_THROWS_AS(LaurentTail::exact(kT, {{{0}, Rational(1)}}, Rational(1)), DaggerError);
    CHECK_THROWS_AS(residue_pair(OSeries::monomial(Context{Prime(7), {"T"}}, {1}, Rational(1)), tail(-2)),
                    DaggerError);
}

TEST_CASE("omitted-tail bound") {
    OSeries b(kT, {{{0}, Rational(1)}}, GrowthCertificate{Rational(1), Rational(0), ExtRational(10)});
    LaurentTail a(kT, {{{-1}, Rational(1)}}, DecayCertificate{Rational(2), Rational(-2), ExtRational(8)});
    // min(10 + (-2), 0 + 8) + 2 * 1
    CHECK(residue_pair(b, a).omitted_bound == ExtRational(10));
}

TEST_CASE("pairing gram is the identity") {
    for (auto [K, m] : {std::pair{1L, 1L}, {3L, 1L}, {2L, 2L}, {4L, 1L}, {2L, 3L}}) {
        auto g = pairing_gram(K, m);
        std::size_t n = 1;
        for (long i = 0; i < m; ++i) n *= static_cast<std::size_t>(K);
        CHECK(is_identity(g.entries, n));
        CHECK(g.rows.size() == n);
    }
    CHECK(pairing_gram(1, 1).cols.front() == "T1^-1 dT");
}

TEST_CASE("bilinearity, exactness annihilation and integration by parts") {
    testkit::Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        auto b1 = testkit::random_poly(rng, kT, {.max_degree = 8, .terms = 5});
        auto b2 = testkit::random_poly(rng, kT, {.max_degree = 8, .terms = 5});
        auto l = testkit::random_laurent(rng, kT, 9, 6, Rational(1), 0);
        OSeries::TermMap neg;
        for (const auto& [mu, a] : l.terms())
            if (mu[0] <= -1) neg[mu] = a;
        auto a = LaurentTail::exact(kT, neg, Rational(1));
        Rational x(3, 7), y(-2);
        CHECK(residue_pair(scale(b1, x) + scale(b2, y), a).value ==
              x * residue_pair(b1, a).value + y * residue_pair(b2, a).value);

        auto da = exact_tail(a);
        Rational c = testkit::random_scalar(rng, Prime(5), 0, 3);
        CHECK(residue_pair(OSeries::constant(kT, c), da).value == 0);

        // <b, d phi> = -<b', phi> with phi read as a tail
        auto db = OSeries::exact(kT, partial_derivative(b1.terms(), 0), Rational(0));
        CHECK(residue_pair(b1, da).value == -residue_pair(db, a).value);
    }
}

TEST_CASE("poincare check on the torus") {
    auto T = DaggerPresentation::torus(Context{Prime(5), {"x", "y"}});
    auto r = poincare_check(T, Rational(40));
    CHECK(r.h1_pairing == 1);
    CHECK(r.h0_pairing == 1);
    CHECK(r.exact_pairing == 0);
    CHECK(r.nondegenerate);
    CHECK_THROWS_AS(poincare_check(DaggerPresentation::free(kT), Rational(40)), DaggerError);

    testkit::Rng rng(42);
    auto nctx = normal_form_context(T);
    auto one = reduce(OSeries::constant(nctx, Rational(1)).as_laurent(), T, Rational(40));
    for (int trial = 0; trial < 20; ++trial) {
        auto F = reduce(testkit::random_laurent(rng, nctx, 8, 6, Rational(0), 0), T, Rational(40));
        CHECK(torus_pairing(one, d(function_form(F))) == 0);
    }
}
