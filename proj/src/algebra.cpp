#include "dagger/algebra.hpp"

#include "dagger/error.hpp"
#include "dagger/linalg.hpp"
#include "dagger/weierstrass.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace dagger {

std::string_view to_string(Family f) {
    switch (f) {
        case Family::free: return "free";
        case Family::principal: return "principal-distinguished";
        case Family::torus: return "torus";
        case Family::hyperelliptic: return "hyperelliptic";
    }
    return "?";
}

DaggerPresentation::DaggerPresentation(Context ctx, Family family, std::vector<OSeries> gens,
                                       std::optional<OSeries> q)
    : ctx_(std::move(ctx)), family_(family), generators_(std::move(gens)), q_(std::move(q)) {}

DaggerPresentation DaggerPresentation::free(Context ctx) {
    return DaggerPresentation(std::move(ctx), Family::free, {});
}

DaggerPresentation DaggerPresentation::principal(OSeries g) {
    if (!g.is_exact() || g.is_laurent() || g.nvars() == 0)
        fail(ErrorKind::invalid_argument, "principal generator must be an exact power-series polynomial");
    std::size_t y = g.nvars() - 1;
    long k = g.degree_in(y);
    if (k < 1) fail(ErrorKind::not_distinguished, "generator has degree 0 in the last variable");
    MultiIndex lead(g.nvars(), 0);
    lead[y] = k;
    for (const auto& [nu, a] : g.terms())
        if (nu[y] == k && (nu != lead || a != 1))
            fail(ErrorKind::not_distinguished, "generator is not monic in the last variable");
    OSeries g0 = g.at_slope(Rational(0));
    require_distinguished(g0, y, Slope(Rational(0)));
    return DaggerPresentation(g.context(), Family::principal, {g0});
}

DaggerPresentation DaggerPresentation::torus(Context ctx) {
    std::size_t n = ctx.nvars();
    if (n < 2) fail(ErrorKind::invalid_argument, "torus presentation needs at least two variables");
    MultiIndex xy(n, 0);
    xy[n - 2] = 1;
    xy[n - 1] = 1;
    OSeries rel = OSeries::monomial(ctx, xy, Rational(1)) - OSeries::constant(ctx, Rational(1));
    return DaggerPresentation(std::move(ctx), Family::torus, {rel});
}

namespace {

// Sylvester resultant of two univariate coefficient lists (index = degree).
Rational resultant(const std::vector<Rational>& f, const std::vector<Rational>& g) {
    std::size_t m = f.size() - 1, n = g.size() - 1, size = m + n;
    Matrix s(size, std::vector<Rational>(size, Rational(0)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
    return determinant(std::move(s));
}

std::vector<Rational> dense_univariate(const OSeries& q) {
    std::vector<Rational> c(static_cast<std::size_t>(q.degree_in(0) + 1), Rational(0));
    for (const auto& [nu, a] : q.terms()) c[static_cast<std::size_t>(nu[0])] = a;
    return c;
}

}  // namespace

DaggerPresentation DaggerPresentation::hyperelliptic(Context ctx, OSeries Q) {
    if (ctx.nvars() != 2) fail(ErrorKind::invalid_argument, "hyperelliptic presentation needs variables (x, y)");
    if (ctx.prime.value() == 2) fail(ErrorKind::unsupported_family, "hyperelliptic family needs p odd");
    if (Q.nvars() != 1 || !Q.is_exact() || Q.is_laurent())
        fail(ErrorKind::invalid_argument, "Q must be an exact univariate polynomial");
    if (!(Q.prime() == ctx.prime)) fail(ErrorKind::context_mismatch, "Q has a different prime");
    auto q = dense_univariate(Q);
    long deg = static_cast<long>(q.size()) - 1;
    if (deg < 1 || deg % 2 == 0 || q.back() != 1)
        fail(ErrorKind::invalid_argument, "Q must be monic of odd degree");
    for (const auto& a : q)
        if (valuation(a, ctx.prime) < ExtRational(0))
            fail(ErrorKind::invalid_argument, "Q must have p-integral coefficients");
    std::vector<Rational> dq;
    for (std::size_t i = 1; i < q.size(); ++i) dq.emplace_back(q[i] * static_cast<long>(i));
    if (deg > 1 && valuation(resultant(q, dq), ctx.prime) != ExtRational(0))
        fail(ErrorKind::invalid_argument, "Q is not squarefree mod p");
    OSeries::TermMap rel{{{0, 2}, Rational(1)}};
    for (const auto& [nu, a] : Q.terms()) rel[{nu[0], 0}] -= a;
    OSeries gen = OSeries::exact(ctx, std::move(rel), Rational(0));
    OSeries q1 = Q.relabel(Context{ctx.prime, {ctx.vars[0]}}).at_slope(Rational(0));
    return DaggerPresentation(std::move(ctx), Family::hyperelliptic, {gen}, q1);
}

const OSeries& DaggerPresentation::hyperelliptic_q() const {
    if (!q_) fail(ErrorKind::unsupported_family, "not a hyperelliptic presentation");
    return *q_;
}

long DaggerPresentation::genus() const { return (hyperelliptic_q().degree_in(0) - 1) / 2; }

DaggerPresentation DaggerPresentation::completed() const {
    DaggerPresentation out = *this;
    for (auto& g : out.generators_) g = complete(g);
    if (out.q_) out.q_ = complete(*out.q_);
    out.completed_ = true;
    return out;
}

DaggerPresentation complete_presentation(const DaggerPresentation& P) {
    return P.is_completed() ? P : P.completed();
}

Context normal_form_context(const DaggerPresentation& P) {
    if (P.family() != Family::torus) return P.context();
    Context c = P.context();
    c.vars.pop_back();
    return c;
}

namespace {

AlgebraElement finish(const DaggerPresentation& P, OSeries nf, ExtRational residual, const Rational& cutoff) {
    if (residual < ExtRational(cutoff))
        fail(ErrorKind::uncertified_precision,
             "normal form only certified to " + residual.to_string() + " < cutoff " + to_string(cutoff));
    if (P.is_completed() && !nf.is_completed()) nf = complete(nf);
    return AlgebraElement{P, std::move(nf), residual};
}

AlgebraElement reduce_torus(const OSeries& x, const DaggerPresentation& P, const Rational& cutoff) {
    Context nctx = normal_form_context(P);
    if (x.context() == nctx) {
        OSeries nf = x.is_laurent() ? x : x.as_laurent();
        return finish(P, nf, x.certificate().truncation, cutoff);
    }
    std::size_t n = P.nvars();
    OSeries::TermMap out;
    for (const auto& [nu, a] : x.terms()) {
        MultiIndex mu(nu.begin(), nu.end() - 1);
        mu[n - 2] = nu[n - 2] - nu[n - 1];
        out[mu] += a;
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    // |mu| <= |nu| termwise, so the certificate of x carries over unchanged.
    OSeries nf(nctx, std::move(out), x.certificate(), x.is_completed(), true);
    return finish(P, nf, x.certificate().truncation, cutoff);
}

AlgebraElement reduce_hyperelliptic(const OSeries& x, const DaggerPresentation& P, const Rational& cutoff) {
    const OSeries& Q = P.hyperelliptic_q();
    long dq = Q.degree_in(0);
    // Replacing y^2 by Q trades weight 2 for weight <= deg Q, so slopes shrink by 2/deg Q.
    Rational t = x.slope();
    Rational s = dq > 2 ? Rational(t * 2 / dq) : t;
    std::vector<OSeries::TermMap> qpow{{{{0}, Rational(1)}}};
    OSeries::TermMap out;
    for (const auto& [nu, a] : x.terms()) {
        long j = nu[1] / 2;
        while (static_cast<long>(qpow.size()) <= j) {
            OSeries prev = OSeries::exact(Q.context(), qpow.back(), Rational(0));
            qpow.push_back((prev * Q).terms());
        }
        for (const auto& [mu, b] : qpow[static_cast<std::size_t>(j)]) out[{nu[0] + mu[0], nu[1] % 2}] += a * b;
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    OSeries nf = x.is_exact() && !x.is_completed()
                     ? OSeries::exact(P.context(), std::move(out), s)
                     : OSeries(P.context(), std::move(out),
                               GrowthCertificate{s, x.certificate().offset, x.certificate().truncation},
                               x.is_completed());
    return finish(P, nf, x.certificate().truncation, cutoff);
}

AlgebraElement reduce_principal(const OSeries& x, const DaggerPresentation& P, const Rational& cutoff) {
    const OSeries& g = P.generators().front();
    std::size_t y = P.nvars() - 1;
    Slope t(x.slope());
    if (std::holds_alternative<NotDistinguished>(is_distinguished(g, y, t)))
        fail(ErrorKind::inadmissible_slope, "generator is not distinguished at slope " + to_string(t.value()));
    auto div = weierstrass_divide(x, g, y, t, cutoff);
    return finish(P, div.remainder, div.residual_valuation, cutoff);
}

}  // namespace

AlgebraElement reduce(const OSeries& x, const DaggerPresentation& P, const Rational& cutoff) {
    bool normal_ctx = P.family() == Family::torus && x.context() == normal_form_context(P);
    if (!(x.context() == P.context()) && !normal_ctx)
        fail(ErrorKind::context_mismatch, "series and presentation use different contexts");
    OSeries in = P.is_completed() ? complete(x) : x;
    switch (P.family()) {
        case Family::free:
            return finish(P, in, in.certificate().truncation, cutoff);
        case Family::principal:
            return reduce_principal(in, P, cutoff);
        case Family::torus:
            return reduce_torus(in, P, cutoff);
        case Family::hyperelliptic:
            return reduce_hyperelliptic(in, P, cutoff);
    }
    fail(ErrorKind::unsupported_family, "unknown family");
}

QuotientNorm quotient_norm(const AlgebraElement& x, const Slope& t) {
    // The torus ideal is homogeneous for the grading deg x = 1, deg x^-1 = -1,
    // and each graded lift (xy)^j x^n weighs at least |n|, so the Laurent
    // normal form realizes the quotient norm there as well.
    bool exact = x.presentation.family() != Family::hyperelliptic;
    return QuotientNorm{gauss_valuation(x.normal_form, t), exact};
}

namespace {

bool is_variable(const OSeries& f, std::size_t i) {
    MultiIndex e(f.nvars(), 0);
    e[i] = 1;
    return f.terms().size() == 1 && f.terms().begin()->first == e && f.terms().begin()->second == 1;
}

std::string fresh_name(const Context& ctx, std::string base) {
    while (std::find(ctx.vars.begin(), ctx.vars.end(), base) != ctx.vars.end()) base += "'";
    return base;
}

}  // namespace

DaggerPresentation localize(const DaggerPresentation& P, const AlgebraElement& f, LocalizationKind kind) {
    if (!(f.presentation == P)) fail(ErrorKind::context_mismatch, "element belongs to another presentation");
    const Context& ctx = P.context();
    if (P.family() == Family::free && P.nvars() == 1 && is_variable(f.normal_form, 0)) {
        Context out{ctx.prime, {ctx.vars[0], fresh_name(ctx, ctx.vars[0] + "_inv")}};
        if (kind == LocalizationKind::inverse) {
            auto T = DaggerPresentation::torus(out);
            return P.is_completed() ? T.completed() : T;
        }
        // |x| <= |p|: adjoin u with x = p u; x is the distinguished variable.
        out.vars = {fresh_name(ctx, "u"), ctx.vars[0]};
        OSeries::TermMap rel{{{0, 1}, Rational(1)}, {{1, 0}, Rational(-ctx.prime.value())}};
        auto S = DaggerPresentation::principal(OSeries::exact(out, std::move(rel), Rational(0)));
        return P.is_completed() ? S.completed() : S;
    }
    if (P.family() == Family::torus && kind == LocalizationKind::inverse && P.nvars() == 2) {
        const auto& terms = f.normal_form.terms();
        if (terms.size() == 1 && std::abs(terms.begin()->first[0]) == 1 && terms.begin()->second == 1) return P;
    }
    fail(ErrorKind::unsupported_localization,
         "localization of a " + std::string(to_string(P.family())) + " presentation at this element is not supported");
}

AlgebraElement transport(const AlgebraElement& x, const DaggerPresentation& target, const Rational& cutoff) {
    const OSeries& f = x.normal_form;
    const Context& src = f.context();
    const Context& dst = target.context();
    std::vector<std::size_t> where;
    for (const auto& name : src.vars) {
        auto it = std::find(dst.vars.begin(), dst.vars.end(), name);
        if (it == dst.vars.end()) fail(ErrorKind::context_mismatch, "variable " + name + " missing in target");
        where.push_back(static_cast<std::size_t>(it - dst.vars.begin()));
    }
    OSeries::TermMap out;
    for (const auto& [nu, a] : f.terms()) {
        MultiIndex mu(dst.nvars(), 0);
        for (std::size_t i = 0; i < nu.size(); ++i) mu[where[i]] = nu[i];
        out[mu] = a;
    }
    OSeries lifted(dst, std::move(out), f.certificate(), f.is_completed(), f.is_laurent());
    return reduce(lifted, target, cutoff);
}

}  // namespace dagger
