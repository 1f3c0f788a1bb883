#include "dagger/duality.hpp"

#include "dagger/error.hpp"

#include <utility>

namespace dagger {

LaurentTail::LaurentTail(Context ctx, OSeries::TermMap terms, DecayCertificate decay)
    : ctx_(std::move(ctx)), terms_(std::move(terms)), decay_(std::move(decay)) {
    if (sgn(decay_.slope) <= 0) fail(ErrorKind::invalid_argument, "decay rate must be positive");
    if (decay_.truncation < ExtRational(decay_.offset))
        fail(ErrorKind::invalid_argument, "truncation level below offset");
    std::erase_if(terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
    for (const auto& [mu, a] : terms_) {
        if (mu.size() != ctx_.nvars()) fail(ErrorKind::invalid_argument, "exponent length mismatch");
        for (long e : mu)
            if (e > -1) fail(ErrorKind::invalid_argument, "tail exponents must all be <= -1");
        if (valuation(a, ctx_.prime) < ExtRational(decay_.offset + decay_.slope * total_degree(mu)))
            fail(ErrorKind::uncertified_radius, "tail coefficient violates its decay certificate");
    }
}

LaurentTail LaurentTail::exact(Context ctx, OSeries::TermMap terms, const Rational& rate) {
    Rational c(0);
    bool first = true;
    for (const auto& [mu, a] : terms) {
        if (sgn(a) == 0) continue;
        Rational w = Rational(valuation_nonzero(a, ctx.prime)) - rate * total_degree(mu);
        if (first || w < c) c = w;
        first = false;
    }
    return LaurentTail(std::move(ctx), std::move(terms), DecayCertificate{rate, c, ExtRational::infinity()});
}

Rational LaurentTail::coefficient(const MultiIndex& mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? Rational(0) : it->second;
}

PairingValue residue_pair(const OSeries& b, const LaurentTail& a) {
    if (!(b.context() == a.context())) fail(ErrorKind::context_mismatch, "series and tail in different contexts");
    if (b.is_laurent()) fail(ErrorKind::invalid_argument, "the function side must be a power series");
    PairingValue out{Rational(0), ExtRational::infinity()};
    for (const auto& [alpha, coeff] : b.terms()) {
        MultiIndex mu(alpha.size());
        for (std::size_t i = 0; i < alpha.size(); ++i) mu[i] = -alpha[i] - 1;
        auto it = a.terms().find(mu);
        if (it != a.terms().end()) out.value += coeff * it->second;
    }
    // Pairs touching an omitted term: v >= min(M_b + c_a, c_b + M_a) + (t + u)|alpha| + u m.
    const auto& cb = b.certificate();
    const auto& ca = a.decay();
    ExtRational worst = min(cb.truncation + ExtRational(ca.offset), ExtRational(cb.offset) + ca.truncation);
    out.omitted_bound = worst + ExtRational(ca.slope * static_cast<long>(b.nvars()));
    return out;
}

LaurentTail exact_tail(const LaurentTail& potential) {
    if (potential.context().nvars() != 1) fail(ErrorKind::invalid_argument, "exact_tail is one-variable");
    OSeries::TermMap out;
    for (const auto& [mu, c] : potential.terms()) out[{mu[0] - 1}] = c * mu[0];
    const auto& dc = potential.decay();
    // |mu - 1| = |mu| + 1 while v(mu c) >= v(c).
    return LaurentTail(potential.context(), std::move(out),
                       DecayCertificate{dc.slope, dc.offset - dc.slope, dc.truncation - dc.slope});
}

namespace {

std::string monomial_label(const MultiIndex& e, bool form) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!s.empty()) s += "*";
        s += "T" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
    }
    if (form) s += " dT";
    return s.empty() ? "1" : s;
}

}  // namespace

PairingMatrix pairing_gram(long K, long m, Prime p) {
    if (K < 1 || m < 1) fail(ErrorKind::invalid_argument, "pairing_gram needs K >= 1 and m >= 1");
    std::vector<std::string> vars;
    for (long i = 1; i <= m; ++i) vars.push_back("T" + std::to_string(i));
    Context ctx{p, vars};
    std::vector<MultiIndex> alphas{MultiIndex(static_cast<std::size_t>(m), 0)};
    while (true) {
        MultiIndex next = alphas.back();
        std::size_t i = next.size();
        while (i > 0 && next[i - 1] == K - 1) next[--i] = 0;
        if (i == 0) break;
        ++next[i - 1];
        alphas.push_back(next);
    }
    PairingMatrix out;
    for (const auto& alpha : alphas) {
        MultiIndex mu(alpha.size());
        for (std::size_t i = 0; i < alpha.size(); ++i) mu[i] = -alpha[i] - 1;
        out.rows.push_back(monomial_label(alpha, false));
        out.cols.push_back(monomial_label(mu, true));
    }
    for (const auto& alpha : alphas) {
        auto b = OSeries::monomial(ctx, alpha, Rational(1));
        std::vector<Rational> row;
        for (const auto& beta : alphas) {
            MultiIndex mu(beta.size());
            for (std::size_t i = 0; i < beta.size(); ++i) mu[i] = -beta[i] - 1;
            row.push_back(residue_pair(b, LaurentTail::exact(ctx, {{mu, Rational(1)}}, Rational(1))).value);
        }
        out.entries.push_back(std::move(row));
    }
    return out;
}

Rational torus_pairing(const AlgebraElement& g, const DifferentialForm& w) {
    const auto& P = w.presentation;
    if (P.family() != Family::torus || P.nvars() != 2)
        fail(ErrorKind::unsupported_family, "the torus pairing needs the G_m presentation");
    if (!(g.presentation == P) || w.degree != 1) fail(ErrorKind::context_mismatch, "pairing arguments");
    Rational res(0);
    OSeries f = w.coefficient({0});
    for (const auto& [n, a] : g.normal_form.terms()) {
        auto it = f.terms().find({-1 - n[0]});
        if (it != f.terms().end()) res += a * it->second;
    }
    return res;
}

PoincareReport poincare_check(const DaggerPresentation& P, const Rational& cutoff) {
    if (P.family() != Family::torus || P.nvars() != 2)
        fail(ErrorKind::unsupported_family, "poincare_check is implemented for the torus G_m");
    Context nctx = normal_form_context(P);
    auto one = reduce(OSeries::constant(nctx, Rational(1)).as_laurent(), P, cutoff);
    auto dx_over_x = make_form(P, {0}, OSeries::monomial(nctx, {-1}, Rational(1), Rational(0), true));
    auto F = reduce(OSeries::exact(nctx, {{{2}, Rational(1)}, {{-3}, Rational(1)}}, Rational(0), true), P, cutoff);
    PoincareReport r;
    // The H^1_c generator is represented by the constant 1 on G_m and the top
    // compactly supported class by dx/x, so both pairings read the residue of dx/x.
    r.h1_pairing = torus_pairing(one, dx_over_x);
    r.h0_pairing = torus_pairing(one, dx_over_x);
    r.exact_pairing = torus_pairing(one, d(function_form(F)));
    r.nondegenerate = sgn(r.h1_pairing) != 0 && sgn(r.h0_pairing) != 0 && sgn(r.exact_pairing) == 0;
    r.normalization = "res(dx/x) = 1; H^1_c generator represented by 1, top class by dx/x";
    return r;
}

}  // namespace dagger
