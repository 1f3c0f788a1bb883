#include "dagger/random_series.hpp"

namespace dagger::testkit {

namespace {

Rational unit(Rng& rng, Prime p) {
    std::uniform_int_distribution<long> d(1, 60);
    long a, b;
    (void)d;
    do { a = d(rng); } while (a % p.value() == 0);
    b = 1;
    if (rng() & 1) a = -a;
    Rational r(a, b);
    r.canonicalize();
    return r;
}

Rational p_power(Prime p, long e) {
    Rational r(1);
    Rational base = e >= 0 ? Rational(p.value()) : Rational(1, p.value());
    for (long i = 0; i < std::labs(e); ++i) r *= base;
    return r;
}

}  // namespace

Rational random_scalar(Rng& rng, Prime p, long min_val, long max_val) {
    std::uniform_int_distribution<long> e(min_val, max_val);
    return unit(rng, p) * p_power(p, e(rng));
}

OSeries random_poly(Rng& rng, const Context& ctx, const PolyShape& shape) {
    std::uniform_int_distribution<long> deg(0, shape.max_degree);
    OSeries::TermMap terms;
    for (int k = 0; k < shape.terms; ++k) {
        MultiIndex nu(ctx.nvars(), 0);
        long budget = deg(rng);
        for (long step = 0; step < budget && !nu.empty(); ++step) {
            nu[std::uniform_int_distribution<std::size_t>(0, nu.size() - 1)(rng)] += 1;
        }
        long floor_v = shape.offset + ceil(shape.slope * total_degree(nu)).get_si();
        terms[nu] = random_scalar(rng, ctx.prime, floor_v, floor_v + shape.spread);
    }
    return OSeries::exact(ctx, std::move(terms), shape.slope);
}

OSeries random_laurent(Rng& rng, const Context& ctx, long max_exponent, int terms,
                       const Rational& slope, long offset) {
    std::uniform_int_distribution<long> ex(-max_exponent, max_exponent);
    OSeries::TermMap map;
    for (int k = 0; k < terms; ++k) {
        MultiIndex nu(ctx.nvars());
        for (auto& e : nu) e = ex(rng);
        long floor_v = offset + ceil(slope * total_degree(nu)).get_si();
        map[nu] = random_scalar(rng, ctx.prime, floor_v, floor_v + 3);
    }
    return OSeries::exact(ctx, std::move(map), slope, true);
}

OSeries random_distinguished(Rng& rng, const Context& ctx, std::size_t var, long k, const Rational& t,
                             long max_degree, int extra_terms, long gap) {
    const Prime p = ctx.prime;
    std::uniform_int_distribution<long> lead_val(-1, 1), spread(0, 2);
    long v0 = lead_val(rng);
    Rational norm = Rational(v0) - t * k;
    OSeries::TermMap terms;
    MultiIndex lead(ctx.nvars(), 0);
    lead[var] = k;
    terms[lead] = random_scalar(rng, p, v0, v0);

    std::uniform_int_distribution<long> ydeg(0, std::max(k + 2, max_degree));
    for (int i = 0; i < extra_terms; ++i) {
        MultiIndex nu(ctx.nvars(), 0);
        nu[var] = ydeg(rng);
        long others = ctx.nvars() > 1 ? std::uniform_int_distribution<long>(0, 2)(rng) : 0;
        for (long s = 0; s < others; ++s) {
            std::size_t j = std::uniform_int_distribution<std::size_t>(0, ctx.nvars() - 1)(rng);
            if (j != var) nu[j] += 1;
        }
        if (total_degree(nu) > max_degree || nu == lead) continue;
        bool strict = nu[var] > k || (nu[var] == k);
        // v - t|nu| >= norm (strictly above k and inside the leading coefficient)
        Rational floor_w = norm + t * total_degree(nu);
        long v = strict ? ceil(floor_w + gap).get_si() : ceil(floor_w).get_si();
        terms[nu] = random_scalar(rng, p, v, v + spread(rng));
    }
    return OSeries::exact(ctx, std::move(terms), t);
}

}  // namespace dagger::testkit
