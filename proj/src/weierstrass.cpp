#include "dagger/weierstrass.hpp"

#include "dagger/error.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace dagger {

namespace {

constexpr long kMaxPasses = 20000;

Rational term_weight(const MultiIndex& nu, const Rational& a, const Rational& t, Prime p) {
    return Rational(valuation_nonzero(a, p)) - t * total_degree(nu);
}

void check_radius(const OSeries& f, const Slope& t) {
    if (!(f.is_exact() && !f.is_completed()) && t.value() > f.slope())
        fail(ErrorKind::uncertified_radius, "slope " + to_string(t.value()) +
                                                " exceeds certified slope " + to_string(f.slope()));
}

std::string index_string(const MultiIndex& nu) {
    std::string s = "[";
    for (std::size_t i = 0; i < nu.size(); ++i) s += (i ? "," : "") + std::to_string(nu[i]);
    return s + "]";
}

// Exact polynomial whose certificate says: the true element differs from the
// stored terms by something of w_t >= truncation.
OSeries certified(const Context& ctx, OSeries::TermMap terms, const Rational& t,
                  const ExtRational& truncation, bool completed) {
    ExtRational w = min(stored_gauss_valuation(terms, t, ctx.prime), truncation);
    Rational c = w.is_finite() ? w.value() : Rational(0);
    return OSeries(ctx, std::move(terms), GrowthCertificate{t, c, truncation}, completed);
}

OSeries exact_at(const Context& ctx, OSeries::TermMap terms, const Rational& t) {
    return certified(ctx, std::move(terms), t, ExtRational::infinity(), false);
}

void accumulate(OSeries::TermMap& into, const OSeries::TermMap& from, const Rational& factor = Rational(1)) {
    for (const auto& [nu, a] : from) {
        Rational s = into[nu] + factor * a;
        if (sgn(s) == 0) into.erase(nu); else into[nu] = s;
    }
}

OSeries::TermMap product(const OSeries::TermMap& a, const OSeries::TermMap& b) {
    OSeries::TermMap out;
    MultiIndex nu;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            nu = ea;
            for (std::size_t i = 0; i < nu.size(); ++i) nu[i] += eb[i];
            auto [it, inserted] = out.try_emplace(nu, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

// Moves every term with w_t >= level out of `terms`; returns the minimum weight moved.
ExtRational prune(OSeries::TermMap& terms, const Rational& t, const Rational& level, Prime p) {
    ExtRational dropped = ExtRational::infinity();
    for (auto it = terms.begin(); it != terms.end();) {
        Rational w = term_weight(it->first, it->second, t, p);
        if (w >= level) {
            dropped = min(dropped, ExtRational(w));
            it = terms.erase(it);
        } else {
            ++it;
        }
    }
    return dropped;
}

}  // namespace

DistinguishedCheck is_distinguished(const OSeries& g, std::size_t var, const Slope& t) {
    if (var >= g.nvars()) fail(ErrorKind::invalid_argument, "variable index out of range");
    if (g.is_zero()) return NotDistinguished{var, MultiIndex(g.nvars(), 0), "zero series"};
    check_radius(g, t);
    const Prime p = g.prime();
    const Rational& s = t.value();

    std::map<long, Rational> by_degree;  // m -> w_t(g_m Y^m)
    for (const auto& [nu, a] : g.terms()) {
        Rational w = term_weight(nu, a, s, p);
        auto [it, inserted] = by_degree.try_emplace(nu[var], w);
        if (!inserted && w < it->second) it->second = w;
    }
    Rational norm = by_degree.begin()->second;
    for (const auto& [m, w] : by_degree) norm = std::min(norm, w);
    long k = -1;
    for (const auto& [m, w] : by_degree)
        if (w == norm) k = m;

    const ExtRational& trunc = g.certificate().truncation;
    if (trunc <= ExtRational(norm))
        fail(ErrorKind::uncertified_precision,
             "truncation level " + trunc.to_string() + " does not exceed w_t(g) = " + to_string(norm));

    ExtRational margin = ExtRational::infinity();
    for (const auto& [m, w] : by_degree)
        if (m > k) margin = min(margin, ExtRational(Rational(w - norm)));
    margin = min(margin, trunc - norm);

    // g_k must be a unit: its constant term alone realizes the norm
    MultiIndex lead(g.nvars(), 0);
    lead[var] = k;
    Rational a0 = g.coefficient(lead);
    if (sgn(a0) == 0) {
        for (const auto& [nu, a] : g.terms()) {
            if (nu[var] == k && term_weight(nu, a, s, p) == norm)
                return NotDistinguished{var, nu, "Y^" + std::to_string(k) + " coefficient has no constant term"};
        }
    }
    if (term_weight(lead, a0, s, p) != norm)
        return NotDistinguished{var, lead, "constant term of the leading coefficient does not realize the norm"};
    ExtRational unit_margin = trunc - norm;
    for (const auto& [nu, a] : g.terms()) {
        if (nu[var] != k || nu == lead) continue;
        Rational gap = term_weight(nu, a, s, p) - norm;
        if (sgn(gap) <= 0)
            return NotDistinguished{var, nu, "Y^" + std::to_string(k) + " coefficient is not a unit"};
        unit_margin = min(unit_margin, ExtRational(gap));
    }
    return DistinguishedReport{var, k, margin, norm, unit_margin};
}

DistinguishedReport require_distinguished(const OSeries& g, std::size_t var, const Slope& t) {
    auto check = is_distinguished(g, var, t);
    if (auto* bad = std::get_if<NotDistinguished>(&check))
        fail(ErrorKind::not_distinguished, bad->reason + " (witness " + index_string(bad->witness) + ")");
    return std::get<DistinguishedReport>(check);
}

OSeries unit_inverse(const OSeries& u, const Slope& t, const Rational& cutoff) {
    check_radius(u, t);
    const Prime p = u.prime();
    const Rational& s = t.value();
    MultiIndex zero(u.nvars(), 0);
    Rational a0 = u.coefficient(zero);
    if (sgn(a0) == 0) fail(ErrorKind::not_distinguished, "unit_inverse: zero constant term");
    Rational v0(valuation_nonzero(a0, p));

    OSeries::TermMap h;  // u / a0 - 1
    for (const auto& [nu, a] : u.terms())
        if (nu != zero) h.emplace(nu, a / a0);
    ExtRational eta = min(stored_gauss_valuation(h, s, p), u.certificate().truncation - v0);
    if (eta <= ExtRational(0)) fail(ErrorKind::not_distinguished, "series is not a unit at this slope");

    // a0^{-1} sum_j (-h)^j, dropping terms below the requested accuracy
    OSeries::TermMap minus_h;
    accumulate(minus_h, h, Rational(-1));
    OSeries::TermMap sum{{zero, Rational(1)}};
    OSeries::TermMap power{{zero, Rational(1)}};
    for (long j = 1; !power.empty() && j <= kMaxPasses; ++j) {
        power = product(power, minus_h);
        prune(power, s, cutoff, p);
        for (auto& [nu, a] : power) a = compress_to_precision(a, ceil(cutoff + s * total_degree(nu)).get_si(), p);
        std::erase_if(power, [](const auto& kv) { return sgn(kv.second) == 0; });
        accumulate(sum, power);
    }
    OSeries::TermMap e;
    for (auto& [nu, a] : sum) e.emplace(nu, a / a0);

    // measured accuracy: w_t(1 - u e) on stored terms, plus the tail of u
    OSeries::TermMap defect{{zero, Rational(1)}};
    accumulate(defect, product(u.terms(), e), Rational(-1));
    ExtRational accuracy = min(stored_gauss_valuation(defect, s, p), u.certificate().truncation - v0);
    // u^{-1} - e = u^{-1} (1 - u e)
    return certified(u.context(), std::move(e), s, accuracy - v0, u.is_completed());
}

namespace {

DivisionResult divide_whole(const OSeries& f, const OSeries& g, std::size_t var, const Slope& t,
                            const Rational& cutoff, const DistinguishedReport& report) {
    const Prime p = g.prime();
    const Rational& s = t.value();
    const long k = report.degree;
    const Context& ctx = g.context();

    // g = P + H with P = sum_{m<=k} g_m Y^m and u = g_k
    OSeries::TermMap lower, higher, lead;
    for (const auto& [nu, a] : g.terms()) {
        (nu[var] <= k ? lower : higher).emplace(nu, a);
        if (nu[var] == k) {
            MultiIndex mu = nu;
            mu[var] = 0;
            lead.emplace(mu, a);
        }
    }
    ExtRational wf = stored_gauss_valuation(f.terms(), s, p);
    Rational accuracy = wf.is_finite() ? Rational(cutoff - wf.value() + 1) : Rational(1);
    if (accuracy < 1) accuracy = 1;
    OSeries u_inv = unit_inverse(exact_at(ctx, lead, s), t, accuracy);

    OSeries::TermMap q, r, defect = f.terms();
    ExtRational residual = prune(defect, s, cutoff, p);
    long passes = 0;
    while (!defect.empty()) {
        if (++passes > kMaxPasses)
            fail(ErrorKind::non_convergence, "Weierstrass division did not reach the cutoff");
        OSeries::TermMap work = std::move(defect);
        OSeries::TermMap q_pass;
        long top = -1;
        for (const auto& [nu, a] : work) top = std::max(top, nu[var]);
        for (long d = top; d >= k; --d) {
            OSeries::TermMap coeff;
            for (const auto& [nu, a] : work) {
                if (nu[var] != d) continue;
                MultiIndex mu = nu;
                mu[var] = 0;
                coeff.emplace(mu, a);
            }
            if (coeff.empty()) continue;
            OSeries::TermMap c = product(u_inv.terms(), coeff);
            // quotient terms with w_t >= cutoff - w_t(g) only move g q past the cutoff;
            // the slack they leave at Y^d is measured below with the leftover
            // coefficients are only needed modulo that level, so round them to keep heights small
            for (auto it = c.begin(); it != c.end();) {
                long level = ceil(cutoff - report.norm + s * (total_degree(it->first) + d - k)).get_si();
                it->second = compress_to_precision(it->second, level, p);
                if (sgn(it->second) == 0) it = c.erase(it); else ++it;
            }
            for (auto& [nu, a] : c) {
                MultiIndex mu = nu;
                mu[var] = d - k;
                auto [it, inserted] = q_pass.try_emplace(mu, a);
                if (!inserted) it->second += a;
            }
            OSeries::TermMap step;
            for (auto& [nu, a] : c) {
                MultiIndex mu = nu;
                mu[var] = d - k;
                step.emplace(mu, a);
            }
            accumulate(work, product(step, lower), Rational(-1));
            residual = min(residual, prune(work, s, cutoff, p));
            // what survives at Y^d is (1 - u u_inv) times the old coefficient
            for (auto it = work.begin(); it != work.end();) {
                if (it->first[var] == d) {
                    residual = min(residual, ExtRational(term_weight(it->first, it->second, s, p)));
                    it = work.erase(it);
                } else {
                    ++it;
                }
            }
        }
        std::erase_if(q_pass, [](const auto& kv) { return sgn(kv.second) == 0; });
        for (auto& [nu, a] : work) {
            if (nu[var] < k) {
                Rational sum = r[nu] + a;
                if (sgn(sum) == 0) r.erase(nu); else r[nu] = sum;
            }
        }
        accumulate(q, q_pass);
        defect.clear();
        accumulate(defect, product(higher, q_pass), Rational(-1));
        residual = min(residual, prune(defect, s, cutoff, p));
    }
    if (residual < ExtRational(cutoff))
        fail(ErrorKind::non_convergence, "internal inverse too coarse for the cutoff");

    // tails of the inputs
    ExtRational wq = stored_gauss_valuation(q, s, p);
    residual = min(residual, f.certificate().truncation);
    residual = min(residual, g.certificate().truncation + wq);

    bool completed = f.is_completed() || g.is_completed();
    DivisionResult out{certified(ctx, std::move(q), s, residual - report.norm, completed),
                       certified(ctx, std::move(r), s, residual, completed), residual, passes, report};
    return out;
}

}  // namespace

DivisionResult weierstrass_divide(const OSeries& f, const OSeries& g, std::size_t var, const Slope& t,
                                  const Rational& cutoff, DivisionSchedule schedule) {
    if (!(f.context() == g.context())) fail(ErrorKind::context_mismatch, "f and g in different contexts");
    if (f.is_laurent() || g.is_laurent()) fail(ErrorKind::invalid_argument, "division needs power series");
    DistinguishedReport report = require_distinguished(g, var, t);
    check_radius(f, t);

    DivisionResult result = [&] {
        if (schedule == DivisionSchedule::whole) return divide_whole(f, g, var, t, cutoff, report);
        OSeries::TermMap q, r;
        ExtRational residual = f.certificate().truncation;
        long passes = 0;
        for (const auto& [nu, a] : f.terms()) {
            OSeries piece = OSeries::monomial(f.context(), nu, a, t.value());
            DivisionResult part = divide_whole(piece, g, var, t, cutoff, report);
            accumulate(q, part.quotient.terms());
            accumulate(r, part.remainder.terms());
            residual = min(residual, part.residual_valuation);
            passes = std::max(passes, part.passes);
        }
        bool completed = f.is_completed() || g.is_completed();
        return DivisionResult{certified(f.context(), std::move(q), t.value(), residual - report.norm, completed),
                              certified(f.context(), std::move(r), t.value(), residual, completed), residual,
                              passes, report};
    }();
    if (result.residual_valuation < ExtRational(cutoff))
        fail(ErrorKind::uncertified_precision, "input tails limit the residual to " +
                                                   result.residual_valuation.to_string());
    return result;
}

PreparationResult weierstrass_prepare(const OSeries& g, std::size_t var, const Slope& t, const Rational& cutoff) {
    DistinguishedReport report = require_distinguished(g, var, t);
    const Prime p = g.prime();
    const Rational& s = t.value();
    const long k = report.degree;
    MultiIndex yk(g.nvars(), 0);
    yk[var] = k;
    OSeries y_pow = OSeries::monomial(g.context(), yk, Rational(1), s);

    Rational extra = abs(report.norm) + s * k + 1;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Rational inner = cutoff + extra;
        DivisionResult div = weierstrass_divide(y_pow, g, var, t, inner);
        OSeries::TermMap omega = y_pow.terms();
        accumulate(omega, div.remainder.terms(), Rational(-1));
        OSeries e = unit_inverse(exact_at(g.context(), div.quotient.terms(), s), t, inner);

        OSeries::TermMap check = g.terms();
        accumulate(check, product(e.terms(), omega), Rational(-1));
        ExtRational residual = min(stored_gauss_valuation(check, s, p), g.certificate().truncation);
        if (residual >= ExtRational(cutoff)) {
            ExtRational w_omega = stored_gauss_valuation(omega, s, p);
            ExtRational w_e = stored_gauss_valuation(e.terms(), s, p);
            // omega* - omega = r - r*; g - e omega* = (e* - e) omega*, norms multiply
            ExtRational omega_trunc = div.residual_valuation;
            ExtRational e_trunc = min(residual, w_e + omega_trunc) - w_omega.value();
            bool completed = g.is_completed();
            return PreparationResult{certified(g.context(), std::move(omega), s, omega_trunc, completed),
                                     certified(g.context(), e.terms(), s, e_trunc, completed), residual,
                                     report};
        }
        if (g.certificate().truncation < ExtRational(cutoff))
            fail(ErrorKind::uncertified_precision, "truncation of g is below the cutoff");
        extra += cutoff - residual.value() + 1;
    }
    fail(ErrorKind::non_convergence, "preparation did not reach the cutoff");
}

OSeries apply_distinguishing(const OSeries& f, const std::vector<long>& exponents) {
    const std::size_t n = f.nvars();
    if (exponents.size() != n) fail(ErrorKind::invalid_argument, "need one exponent per variable");
    std::vector<OSeries> images;
    long cmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        OSeries img = OSeries::variable(f.context(), i);
        if (i + 1 < n && exponents[i] > 0) {
            MultiIndex nu(n, 0);
            nu[n - 1] = exponents[i];
            img = img + OSeries::monomial(f.context(), nu, Rational(1));
            cmax = std::max(cmax, exponents[i]);
        }
        images.push_back(img);
    }
    long cap = std::max(1L, f.total_degree()) * std::max(1L, cmax);
    return substitute(f, images, cap);
}

Distinguishing distinguishing_automorphism(const OSeries& f, const Slope& t) {
    if (f.is_zero()) fail(ErrorKind::invalid_argument, "zero series cannot be made distinguished");
    const std::size_t n = f.nvars();
    const long d = f.total_degree();
    auto attempt = [&](const std::vector<long>& c) -> std::optional<Distinguishing> {
        OSeries image = apply_distinguishing(f, c);
        try {
            auto check = is_distinguished(image, n - 1, t);
            if (auto* rep = std::get_if<DistinguishedReport>(&check)) return Distinguishing{c, image, *rep};
        } catch (const DaggerError& e) {
            if (e.kind() != ErrorKind::uncertified_radius) throw;
        }
        return std::nullopt;
    };
    if (auto found = attempt(std::vector<long>(n, 0))) return *found;
    for (long base = 1; base <= d + 1; ++base) {
        std::vector<long> c(n, 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            long e = 1;
            for (std::size_t j = i + 1; j < n; ++j) e *= base;
            c[i] = e;
        }
        if (auto found = attempt(c)) return *found;
    }
    fail(ErrorKind::not_distinguished, "no distinguishing substitution found in the search schedule");
}

}  // namespace dagger
