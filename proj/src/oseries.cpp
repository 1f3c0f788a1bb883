#include "dagger/oseries.hpp"

#include "dagger/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace dagger {

long total_degree(const MultiIndex& nu) {
    long d = 0;
    for (long e : nu) d += std::labs(e);
    return d;
}

namespace {

void check_same_context(const OSeries& f, const OSeries& g) {
    if (!(f.context() == g.context()))
        fail(ErrorKind::context_mismatch, "series live in different contexts");
}

// Largest offset the stored terms and truncation level jointly justify.
Rational tightened_offset(const OSeries::TermMap& terms, const Rational& t,
                          const ExtRational& truncation, Prime p, const Rational& formula) {
    ExtRational best = min(stored_gauss_valuation(terms, t, p), truncation);
    if (best.is_infinite()) return formula;
    return best.value() > formula ? best.value() : formula;
}

OSeries rebuild(const OSeries& like, OSeries::TermMap terms, Rational slope, Rational offset,
                ExtRational truncation, bool completed, bool laurent) {
    Rational c = tightened_offset(terms, slope, truncation, like.prime(), offset);
    GrowthCertificate cert{std::move(slope), std::move(c), std::move(truncation)};
    return OSeries(like.context(), std::move(terms), std::move(cert), completed, laurent);
}

}  // namespace

OSeries::OSeries(Context ctx, TermMap terms, GrowthCertificate cert, bool completed, bool laurent)
    : ctx_(std::move(ctx)), cert_(std::move(cert)), completed_(completed), laurent_(laurent) {
    if (sgn(cert_.slope) < 0) fail(ErrorKind::invalid_argument, "negative certificate slope");
    if (completed_ && sgn(cert_.slope) != 0)
        fail(ErrorKind::invalid_argument, "completed series must carry slope 0");
    if (cert_.truncation < ExtRational(cert_.offset))
        fail(ErrorKind::invalid_argument, "truncation level below offset");
    for (auto& [nu, a] : terms) {
        if (nu.size() != ctx_.nvars())
            fail(ErrorKind::invalid_argument, "exponent vector has wrong length");
        if (!laurent_ && std::any_of(nu.begin(), nu.end(), [](long e) { return e < 0; }))
            fail(ErrorKind::invalid_argument, "negative exponent in a power series");
        if (sgn(a) == 0) continue;
        Rational bound = cert_.offset + cert_.slope * dagger::total_degree(nu);
        if (Rational(valuation_nonzero(a, ctx_.prime)) < bound)
            fail(ErrorKind::invalid_argument,
                 "coefficient " + to_string(a) + " violates the growth certificate");
        terms_.emplace(nu, a);
    }
}

OSeries OSeries::exact(Context ctx, TermMap terms, Rational slope, bool laurent) {
    Prime p = ctx.prime;
    ExtRational w = stored_gauss_valuation(terms, slope, p);
    Rational c = w.is_finite() ? w.value() : Rational(0);
    return OSeries(std::move(ctx), std::move(terms),
                   GrowthCertificate{std::move(slope), std::move(c), ExtRational::infinity()}, false,
                   laurent);
}

OSeries OSeries::zero(Context ctx, Rational slope) { return exact(std::move(ctx), {}, std::move(slope)); }

OSeries OSeries::constant(Context ctx, const Rational& value, Rational slope) {
    MultiIndex nu(ctx.nvars(), 0);
    return exact(std::move(ctx), {{nu, value}}, std::move(slope));
}

OSeries OSeries::variable(Context ctx, std::size_t index, Rational slope) {
    if (index >= ctx.nvars()) fail(ErrorKind::invalid_argument, "variable index out of range");
    MultiIndex nu(ctx.nvars(), 0);
    nu[index] = 1;
    return exact(std::move(ctx), {{nu, Rational(1)}}, std::move(slope));
}

OSeries OSeries::monomial(Context ctx, MultiIndex nu, const Rational& coeff, Rational slope,
                          bool laurent) {
    return exact(std::move(ctx), {{std::move(nu), coeff}}, std::move(slope), laurent);
}

Rational OSeries::coefficient(const MultiIndex& nu) const {
    auto it = terms_.find(nu);
    return it == terms_.end() ? Rational(0) : it->second;
}

long OSeries::degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [nu, a] : terms_) d = std::max(d, nu.at(var));
    return d;
}

long OSeries::total_degree() const {
    long d = -1;
    for (const auto& [nu, a] : terms_) d = std::max(d, dagger::total_degree(nu));
    return d;
}

OSeries OSeries::with_certificate(GrowthCertificate cert) const {
    return OSeries(ctx_, terms_, std::move(cert), completed_, laurent_);
}

OSeries OSeries::at_slope(const Rational& t) const {
    if (is_exact() && !completed_) return exact(ctx_, terms_, t, laurent_);
    if (t > cert_.slope)
        fail(ErrorKind::uncertified_radius,
             "slope " + to_string(t) + " exceeds certified slope " + to_string(cert_.slope));
    // weakening the slope keeps both the offset and the truncation bound valid
    return rebuild(*this, terms_, t, cert_.offset, cert_.truncation, completed_, laurent_);
}

OSeries OSeries::relabel(Context ctx) const {
    if (ctx.nvars() != nvars()) fail(ErrorKind::context_mismatch, "relabel changes variable count");
    return OSeries(std::move(ctx), terms_, cert_, completed_, laurent_);
}

OSeries OSeries::as_laurent() const { return OSeries(ctx_, terms_, cert_, completed_, true); }

ExtRational stored_gauss_valuation(const OSeries::TermMap& terms, const Rational& t, Prime p) {
    ExtRational w = ExtRational::infinity();
    for (const auto& [nu, a] : terms) {
        if (sgn(a) == 0) continue;
        Rational v = Rational(valuation_nonzero(a, p)) - t * dagger::total_degree(nu);
        w = min(w, ExtRational(v));
    }
    return w;
}

ExtRational gauss_valuation(const OSeries& f, const Slope& t) {
    if (!(f.is_exact() && !f.is_completed()) && t.value() > f.slope())
        fail(ErrorKind::uncertified_radius, "slope " + to_string(t.value()) +
                                                " exceeds certified slope " + to_string(f.slope()));
    return stored_gauss_valuation(f.terms(), t.value(), f.prime());
}

bool gauss_valuation_certified(const OSeries& f, const Slope& t) {
    ExtRational w = gauss_valuation(f, t);
    return f.is_exact() || w < f.certificate().truncation;
}

OSeries operator+(const OSeries& f, const OSeries& g) {
    check_same_context(f, g);
    OSeries::TermMap terms = f.terms();
    for (const auto& [nu, b] : g.terms()) {
        Rational s = terms[nu] + b;
        if (sgn(s) == 0) terms.erase(nu); else terms[nu] = s;
    }
    const auto& cf = f.certificate();
    const auto& cg = g.certificate();
    Rational t = std::min(cf.slope, cg.slope);
    Rational c = std::min(cf.offset, cg.offset);
    return rebuild(f, std::move(terms), t, c, min(cf.truncation, cg.truncation),
                   f.is_completed() || g.is_completed(), f.is_laurent() || g.is_laurent());
}

OSeries operator-(const OSeries& f) { return scale(f, Rational(-1)); }

OSeries operator-(const OSeries& f, const OSeries& g) { return f + (-g); }

OSeries operator*(const OSeries& f, const OSeries& g) {
    check_same_context(f, g);
    OSeries::TermMap terms;
    MultiIndex nu(f.nvars());
    for (const auto& [a_nu, a] : f.terms()) {
        for (const auto& [b_nu, b] : g.terms()) {
            for (std::size_t i = 0; i < nu.size(); ++i) nu[i] = a_nu[i] + b_nu[i];
            auto [it, inserted] = terms.try_emplace(nu, a * b);
            if (!inserted) it->second += a * b;
        }
    }
    std::erase_if(terms, [](const auto& kv) { return sgn(kv.second) == 0; });
    const auto& cf = f.certificate();
    const auto& cg = g.certificate();
    Rational t = std::min(cf.slope, cg.slope);
    Rational c = cf.offset + cg.offset;
    ExtRational m = min(cf.truncation + ExtRational(cg.offset), cg.truncation + ExtRational(cf.offset));
    return rebuild(f, std::move(terms), t, c, m, f.is_completed() || g.is_completed(),
                   f.is_laurent() || g.is_laurent());
}

OSeries scale(const OSeries& f, const Rational& a) {
    if (sgn(a) == 0)
        return OSeries(f.context(), {}, GrowthCertificate{f.slope(), Rational(0), ExtRational::infinity()},
                       f.is_completed(), f.is_laurent());
    OSeries::TermMap terms;
    for (const auto& [nu, b] : f.terms()) terms.emplace(nu, a * b);
    Rational va(valuation_nonzero(a, f.prime()));
    const auto& cf = f.certificate();
    return rebuild(f, std::move(terms), cf.slope, cf.offset + va, cf.truncation + ExtRational(va),
                   f.is_completed(), f.is_laurent());
}

OSeries shift(const OSeries& f, const MultiIndex& by) {
    if (by.size() != f.nvars()) fail(ErrorKind::invalid_argument, "shift has wrong length");
    OSeries::TermMap terms;
    bool negative = false;
    for (const auto& [nu, a] : f.terms()) {
        MultiIndex mu = nu;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            mu[i] += by[i];
            negative = negative || mu[i] < 0;
        }
        terms.emplace(std::move(mu), a);
    }
    // |nu + b| <= |nu| + |b|, so the bounds lose at most t|b|
    const auto& cf = f.certificate();
    Rational loss = cf.slope * total_degree(by);
    return rebuild(f, std::move(terms), cf.slope, cf.offset - loss, cf.truncation - loss,
                   f.is_completed(), f.is_laurent() || negative);
}

OSeries truncate(const OSeries& f, long degree_cap) {
    OSeries::TermMap kept, dropped;
    for (const auto& [nu, a] : f.terms()) {
        (total_degree(nu) <= degree_cap ? kept : dropped).emplace(nu, a);
    }
    if (dropped.empty()) return f;
    const auto& cf = f.certificate();
    ExtRational m = min(cf.truncation, stored_gauss_valuation(dropped, cf.slope, f.prime()));
    return rebuild(f, std::move(kept), cf.slope, cf.offset, m, f.is_completed(), f.is_laurent());
}

OSeries prune_below(const OSeries& f, const Rational& level) {
    OSeries::TermMap kept, dropped;
    const auto& cf = f.certificate();
    for (const auto& [nu, a] : f.terms()) {
        Rational w = Rational(valuation_nonzero(a, f.prime())) - cf.slope * total_degree(nu);
        (w >= level ? dropped : kept).emplace(nu, a);
    }
    if (dropped.empty()) return f;
    ExtRational m = min(cf.truncation, stored_gauss_valuation(dropped, cf.slope, f.prime()));
    return rebuild(f, std::move(kept), cf.slope, cf.offset, m, f.is_completed(), f.is_laurent());
}

OSeries substitute(const OSeries& f, const std::vector<OSeries>& images, long degree_cap) {
    if (f.is_laurent()) fail(ErrorKind::invalid_argument, "substitute needs a power series");
    if (images.size() != f.nvars())
        fail(ErrorKind::invalid_argument, "need one image per variable");
    if (images.empty()) return f;
    const Context& out_ctx = images.front().context();
    bool completed = f.is_completed();
    const Rational& tf = f.slope();

    // Output slope: largest s with w_s(g_i) >= -t_f, capped by non-exact certificates.
    ExtRational slope_bound = ExtRational::infinity();
    ExtRational image_truncation = ExtRational::infinity();
    for (const auto& g : images) {
        if (!(g.context() == out_ctx)) fail(ErrorKind::context_mismatch, "images in different contexts");
        if (g.is_laurent()) fail(ErrorKind::invalid_argument, "image must be a power series");
        completed = completed || g.is_completed();
        if (g.is_exact() && !g.is_completed()) {
            // exact images are judged on the unit polydisc
            if (stored_gauss_valuation(g.terms(), Rational(0), g.prime()) < ExtRational(0))
                fail(ErrorKind::non_power_bounded, "image is not power-bounded on the unit polydisc");
            for (const auto& [mu, b] : g.terms()) {
                long d = total_degree(mu);
                if (d == 0) continue;
                Rational s = (Rational(valuation_nonzero(b, g.prime())) + tf) / d;
                slope_bound = min(slope_bound, ExtRational(s));
            }
        } else {
            if (sgn(g.certificate().offset) < 0)
                fail(ErrorKind::non_power_bounded, "image has negative offset " +
                                                       to_string(g.certificate().offset) + " at its slope");
            slope_bound = min(slope_bound, ExtRational(g.slope()));
            image_truncation = min(image_truncation, g.certificate().truncation);
        }
    }
    Rational t_out = completed ? Rational(0) : (slope_bound.is_infinite() ? tf : slope_bound.value());

    // exact composite of the stored parts
    std::vector<std::vector<OSeries>> powers(images.size());
    auto power = [&](std::size_t i, long e) -> const OSeries& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(OSeries::constant(out_ctx, Rational(1)));
        while (static_cast<long>(cache.size()) <= e) {
            OSeries next = cache.back() * images[i].at_slope(Rational(0));
            cache.push_back(OSeries::exact(out_ctx, next.terms(), Rational(0)));
        }
        return cache[static_cast<std::size_t>(e)];
    };
    OSeries::TermMap acc;
    for (const auto& [nu, a] : f.terms()) {
        OSeries term = OSeries::constant(out_ctx, a);
        for (std::size_t i = 0; i < nu.size(); ++i) {
            if (nu[i] == 0) continue;
            term = term * power(i, nu[i]);
            term = OSeries::exact(out_ctx, term.terms(), Rational(0));
        }
        for (const auto& [mu, b] : term.terms()) {
            Rational s = acc[mu] + b;
            if (sgn(s) == 0) acc.erase(mu); else acc[mu] = s;
        }
    }
    OSeries::TermMap kept, dropped;
    for (auto& [mu, b] : acc) (total_degree(mu) <= degree_cap ? kept : dropped).emplace(mu, b);

    const auto& cf = f.certificate();
    ExtRational m = cf.truncation;
    m = min(m, stored_gauss_valuation(dropped, t_out, f.prime()));
    if (image_truncation.is_finite()) m = min(m, ExtRational(Rational(cf.offset + tf)) + image_truncation);
    Rational c = tightened_offset(kept, t_out, m, f.prime(), cf.offset);
    return OSeries(out_ctx, std::move(kept), GrowthCertificate{t_out, c, m}, completed, false);
}

OSeries complete(const OSeries& f) {
    const auto& cf = f.certificate();
    Rational c = tightened_offset(f.terms(), Rational(0), cf.truncation, f.prime(), cf.offset);
    return OSeries(f.context(), f.terms(), GrowthCertificate{Rational(0), c, cf.truncation}, true,
                   f.is_laurent());
}

OSeries::TermMap partial_derivative(const OSeries::TermMap& terms, std::size_t var) {
    OSeries::TermMap out;
    for (const auto& [nu, a] : terms) {
        if (nu.at(var) == 0) continue;
        MultiIndex mu = nu;
        mu[var] -= 1;
        Rational b = a * nu[var];
        auto [it, inserted] = out.try_emplace(mu, b);
        if (!inserted) it->second += b;
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

}  // namespace dagger
