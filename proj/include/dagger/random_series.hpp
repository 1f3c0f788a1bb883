#pragma once

#include "dagger/oseries.hpp"

#include <random>

namespace dagger::testkit {

using Rng = std::mt19937_64;

/// p^e * u / w with u, w random units, e uniform in [min_val, max_val].
Rational random_scalar(Rng& rng, Prime p, long min_val, long max_val);

struct PolyShape {
    long max_degree = 4;
    int terms = 5;
    Rational slope{0};
    long offset = 0;     // coefficients get v >= offset + ceil(slope |nu|)
    long spread = 3;     // extra valuation drawn uniformly from [0, spread]
};

/// Random exact polynomial satisfying the requested certificate.
OSeries random_poly(Rng& rng, const Context& ctx, const PolyShape& shape);

/// Random exact Laurent polynomial in the given context, exponents in [-max, max].
OSeries random_laurent(Rng& rng, const Context& ctx, long max_exponent, int terms,
                       const Rational& slope, long offset);

/// Random exact g distinguished of degree k in `var` at slope t: a unit
/// coefficient at Y^k realizing the norm, arbitrary terms of norm >= w_t(g)
/// below, terms at least `gap` smaller above and inside the leading coefficient.
OSeries random_distinguished(Rng& rng, const Context& ctx, std::size_t var, long k, const Rational& t,
                             long max_degree, int extra_terms, long gap = 1);

}  // namespace dagger::testkit
