#include "dagger/error.hpp"
#include "dagger/json_io.hpp"
#include "dagger/random_series.hpp"

#include <doctest.h>

using namespace dagger;
using io::json;

TEST_CASE("series round trip") {
    testkit::Rng rng(41);
    Context ctx{Prime(7), {"a", "b"}};
    for (int trial = 0; trial < 40; ++trial) {
        auto f = testkit::random_poly(rng, ctx, {.max_degree = 5, .terms = 6, .slope = Rational(1, 3), .offset = -2});
        auto text = io::to_json(f).dump();
        auto back = io::series_from_json(json::parse(text));
        CHECK(back == f);
        CHECK(io::to_json(back).dump() == text);
    }
    auto lau = testkit::random_laurent(rng, Context{Prime(5), {"x"}}, 6, 5, Rational(1), 0);
    CHECK(io::series_from_json(io::to_json(lau)) == lau);
    auto c = complete(OSeries::variable(ctx, 1));
    CHECK(io::series_from_json(io::to_json(c)) == c);
}

TEST_CASE("canonical term order and rational strings") {
    Context ctx{Prime(5), {"X", "Y"}};
    auto f = OSeries::exact(ctx, {{{1, 0}, Rational(-3, 25)}, {{0, 2}, Rational(7)}}, Rational(0));
    auto j = io::to_json(f);
    CHECK(j["terms"][0]["e"] == json::array({0, 2}));
    CHECK(j["terms"][1]["c"] == "-3/25");
    CHECK(j["cert"]["M"] == "inf");
    CHECK(j.dump().find("\"p\":5,\"vars\"") != std::string::npos);
}

TEST_CASE("presentation round trip") {
    Context cx{Prime(7), {"x"}};
    auto Q = OSeries::exact(cx, {{{3}, Rational(1)}, {{0}, Rational(1)}}, Rational(0));
    auto g = OSeries::exact(Context{Prime(5), {"Y"}}, {{{2}, Rational(1)}, {{0}, Rational(-5)}}, Rational(0));
    std::vector<DaggerPresentation> all{
        DaggerPresentation::free(Context{Prime(5), {"T"}}),
        DaggerPresentation::torus(Context{Prime(5), {"x", "y"}}),
        DaggerPresentation::principal(g),
        DaggerPresentation::hyperelliptic(Context{Prime(7), {"x", "y"}}, Q),
        complete_presentation(DaggerPresentation::free(Context{Prime(3), {"T"}})),
    };
    for (const auto& P : all) CHECK(io::presentation_from_json(json::parse(io::to_json(P).dump())) == P);
}

TEST_CASE("tail round trip") {
    LaurentTail a(Context{Prime(5), {"x"}}, {{{-1}, Rational(1)}, {{-3}, Rational(25)}},
                  DecayCertificate{Rational(1), Rational(-1), ExtRational(Rational(9))});
    CHECK(io::tail_from_json(io::to_json(a)) == a);
}

TEST_CASE("schema violations are parse errors") {
    auto bad = [](const char* text) {
        try {
            io::series_from_json(json::parse(text));
        } catch (const DaggerError& e) {
            return e.kind() == ErrorKind::parse_error;
        }
        return false;
    };
    CHECK(bad(R"({"p": 5, "vars": ["X"], "terms": []})"));
    CHECK(bad(R"({"p": 5, "vars": ["X"], "terms": [{"e": [1, 2], "c": "1"}], "cert": {"t": "0", "c": "0", "M": "inf"}})"));
    CHECK(bad(R"({"p": 5, "vars": ["X"], "terms": [{"e": [1], "c": 1.5}], "cert": {"t": "0", "c": "0", "M": "inf"}})"));
    try {
        io::series_from_json(json::parse(R"({"p": 5, "vars": ["X"], "terms": [{"e": [1], "c": "1/0"}], "cert": {"t": "0", "c": "0", "M": "inf"}})"));
        FAIL("zero denominator accepted");
    } catch (const DaggerError& e) {
        CHECK(e.kind() == ErrorKind::division_by_zero);
    }
    CHECK_THROWS_AS(io::presentation_from_json(json::parse(R"({"family": "cone", "p": 5, "vars": ["x"]})")), DaggerError);
}

TEST_CASE("error objects") {
    DaggerError e(ErrorKind::not_distinguished, "no dominant monomial");
    auto j = io::error_json(e, "g.json");
    CHECK(j["error"]["kind"] == "not-distinguished");
    CHECK(j["error"]["input"] == "g.json");
}
