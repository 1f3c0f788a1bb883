#include "dagger/derham.hpp"

#include "dagger/error.hpp"
#include "dagger/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <utility>

namespace dagger {

namespace {

void require_same(const DifferentialForm& a, const DifferentialForm& b) {
    if (!(a.presentation == b.presentation) || a.degree != b.degree)
        fail(ErrorKind::context_mismatch, "forms live on different presentations or degrees");
}

std::size_t form_rank(const DaggerPresentation& P) {
    switch (P.family()) {
        case Family::free: return P.nvars();
        case Family::torus: return P.nvars() - 1;
        case Family::hyperelliptic: return 1;
        case Family::principal: break;
    }
    fail(ErrorKind::unsupported_family, "de Rham complex of a principal-distinguished presentation");
}

// d/dx_var of a certified series: weights move by t in either direction
// (down for non-negative exponents, up for the Laurent side).
OSeries derivative(const OSeries& f, std::size_t var) {
    auto terms = partial_derivative(f.terms(), var);
    if (f.is_exact() && !f.is_completed()) return OSeries::exact(f.context(), std::move(terms), f.slope(), f.is_laurent());
    const auto& c = f.certificate();
    Rational shift = f.is_laurent() ? Rational(-c.slope) : c.slope;
    return OSeries(f.context(), std::move(terms),
                   GrowthCertificate{c.slope, c.offset + shift, c.truncation + ExtRational(shift)}, f.is_completed(),
                   f.is_laurent());
}

// Q(x) as a series in the (x, y) context at slope t.
OSeries lift_q(const DaggerPresentation& P, const OSeries& Q, const Rational& t) {
    OSeries::TermMap out;
    for (const auto& [nu, a] : Q.terms()) out[{nu[0], 0}] = a;
    return OSeries::exact(P.context(), std::move(out), t);
}

Rational integer_power(long p, long e) { return pow(Rational(p), static_cast<unsigned long>(e)); }

}  // namespace

OSeries DifferentialForm::coefficient(const FormBasis& b) const {
    auto it = components.find(b);
    if (it != components.end()) return it->second;
    return OSeries::zero(normal_form_context(presentation)).as_laurent();
}

DifferentialForm zero_form(const DaggerPresentation& P, int degree) {
    if (degree < 0 || static_cast<std::size_t>(degree) > form_rank(P))
        fail(ErrorKind::invalid_argument, "form degree out of range");
    return DifferentialForm{P, degree, {}};
}

DifferentialForm function_form(const AlgebraElement& f) {
    DifferentialForm w = zero_form(f.presentation, 0);
    if (!f.normal_form.is_zero()) w.components.emplace(FormBasis{}, f.normal_form);
    return w;
}

DifferentialForm make_form(const DaggerPresentation& P, FormBasis basis, OSeries f) {
    DifferentialForm w = zero_form(P, static_cast<int>(basis.size()));
    if (!std::is_sorted(basis.begin(), basis.end()) ||
        std::adjacent_find(basis.begin(), basis.end()) != basis.end())
        fail(ErrorKind::invalid_argument, "basis indices must be strictly increasing");
    for (auto i : basis)
        if (i >= form_rank(P)) fail(ErrorKind::invalid_argument, "basis index out of range");
    if (!(f.context() == normal_form_context(P))) fail(ErrorKind::context_mismatch, "coefficient context");
    if (!f.is_zero()) w.components.emplace(std::move(basis), std::move(f));
    return w;
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
    require_same(a, b);
    DifferentialForm out = a;
    for (const auto& [basis, f] : b.components) {
        auto it = out.components.find(basis);
        if (it == out.components.end())
            out.components.emplace(basis, f);
        else
            it->second = it->second + f;
    }
    std::erase_if(out.components, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

DifferentialForm scale(const DifferentialForm& a, const Rational& c) {
    DifferentialForm out = a;
    for (auto& [basis, f] : out.components) f = dagger::scale(f, c);
    std::erase_if(out.components, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return a + scale(b, Rational(-1)); }

bool same_terms(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.degree != b.degree || a.components.size() != b.components.size()) return false;
    for (const auto& [basis, f] : a.components) {
        auto it = b.components.find(basis);
        if (it == b.components.end() || it->second.terms() != f.terms()) return false;
    }
    return true;
}

DifferentialForm d(const DifferentialForm& w) {
    const auto& P = w.presentation;
    std::size_t n = form_rank(P);
    DifferentialForm out = zero_form(P, std::min<int>(w.degree + 1, static_cast<int>(n)));
    if (static_cast<std::size_t>(w.degree) >= n) return zero_form(P, w.degree);
    if (P.family() == Family::hyperelliptic) {
        // d(a + b y) = (a' y + b' Q + b Q'/2) dx/y
        const auto& f = w.coefficient({});
        OSeries::TermMap a, b;
        for (const auto& [nu, c] : f.terms()) (nu[1] == 0 ? a : b)[{nu[0], 0}] = c;
        Rational t = f.slope();
        OSeries A = f.is_exact() ? OSeries::exact(P.context(), a, t) : OSeries(P.context(), a, f.certificate(), f.is_completed());
        OSeries Bs = f.is_exact() ? OSeries::exact(P.context(), b, t) : OSeries(P.context(), b, f.certificate(), f.is_completed());
        OSeries Q = lift_q(P, P.hyperelliptic_q(), t);
        OSeries y = OSeries::variable(P.context(), 1, t);
        OSeries g = derivative(A, 0) * y + derivative(Bs, 0) * Q + scale(Bs * derivative(Q, 0), Rational(1, 2));
        if (!g.is_zero()) out.components.emplace(FormBasis{0}, g);
        return out;
    }
    for (const auto& [basis, f] : w.components) {
        for (std::size_t j = 0; j < n; ++j) {
            if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
            OSeries df = derivative(f, j);
            if (df.is_zero()) continue;
            long before = std::count_if(basis.begin(), basis.end(), [j](std::size_t i) { return i < j; });
            FormBasis nb = basis;
            nb.insert(nb.begin() + before, j);
            if (before % 2) df = -df;
            auto it = out.components.find(nb);
            if (it == out.components.end())
                out.components.emplace(nb, df);
            else
                it->second = it->second + df;
        }
    }
    std::erase_if(out.components, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

Rational antiderivative_loss(Prime p, const Rational& t, const Rational& t_target) {
    Rational delta = t - t_target;
    if (sgn(delta) <= 0) fail(ErrorKind::inadmissible_slope, "target slope must be below the input slope");
    // The maximum sits at nu + 1 = p^j. f(j) = j - delta (p^j - 1) has
    // increments 1 - delta p^j (p - 1), which only shrink once non-positive.
    Rational best(0);
    Integer pj = p.as_integer();
    for (long j = 1;; ++j, pj *= p.value()) {
        Rational f = Rational(j) - delta * Rational(pj - 1);
        if (f > best) best = f;
        if (sgn(f) < 0 && delta * Rational(pj * (p.value() - 1)) >= 1) break;
    }
    return best;
}

AlgebraElement antiderivative(const DifferentialForm& w, const Slope& t_target) {
    const auto& P = w.presentation;
    if (P.family() != Family::free || P.nvars() != 1 || w.degree != 1)
        fail(ErrorKind::unsupported_family, "antiderivative expects a 1-form on the one-variable disc");
    OSeries f = w.coefficient({0});
    if (P.is_completed() || f.is_completed())
        fail(ErrorKind::uncertified_mode,
             "completed (slope 0) forms carry no overconvergence to integrate against");
    const Rational& t = f.slope();
    const Rational& s = t_target.value();
    if (sgn(s) <= 0 || s >= t)
        fail(ErrorKind::inadmissible_slope, "need 0 < target slope < input slope " + to_string(t));
    Rational B = antiderivative_loss(P.prime(), t, s);
    OSeries::TermMap F;
    for (const auto& [nu, a] : f.terms()) F[{nu[0] + 1}] = a / (nu[0] + 1);
    const auto& c = f.certificate();
    Rational shift = -s - B;
    OSeries out(P.context(), std::move(F),
                GrowthCertificate{s, c.offset + shift, c.truncation + ExtRational(shift)});
    return AlgebraElement{P, out, ExtRational::infinity()};
}

namespace {

CohomologyReduction reduce_disc(const DifferentialForm& w, const Rational& cutoff) {
    const auto& P = w.presentation;
    if (P.nvars() != 1) fail(ErrorKind::unsupported_family, "disc reduction is implemented in one variable");
    OSeries f = w.coefficient({0});
    if (f.is_exact() && !f.is_completed()) {
        OSeries::TermMap F;
        for (const auto& [nu, a] : f.terms()) F[{nu[0] + 1}] = a / (nu[0] + 1);
        return {zero_form(P, 1), AlgebraElement{P, OSeries::exact(P.context(), std::move(F), f.slope()),
                                                ExtRational::infinity()}};
    }
    auto F = antiderivative(w, Slope(f.slope() / 2));
    if (F.normal_form.certificate().truncation < ExtRational(cutoff))
        fail(ErrorKind::uncertified_precision, "antiderivative tail only certified to " +
                                                   F.normal_form.certificate().truncation.to_string());
    return {zero_form(P, 1), F};
}

CohomologyReduction reduce_torus(const DifferentialForm& w, const Rational& cutoff) {
    const auto& P = w.presentation;
    if (P.nvars() != 2) fail(ErrorKind::unsupported_family, "torus reduction is implemented for G_m only");
    OSeries f = w.coefficient({0});
    OSeries::TermMap F, rep;
    for (const auto& [nu, a] : f.terms()) {
        if (nu[0] == -1)
            rep[nu] = a;
        else
            F[{nu[0] + 1}] = a / (nu[0] + 1);
    }
    Context nctx = normal_form_context(P);
    auto finish = [&](OSeries Fs, OSeries reps) {
        return CohomologyReduction{make_form(P, {0}, std::move(reps)),
                                   AlgebraElement{P, std::move(Fs), ExtRational::infinity()}};
    };
    if (f.is_exact() && !f.is_completed())
        return finish(OSeries::exact(nctx, std::move(F), f.slope(), true),
                      OSeries::exact(nctx, std::move(rep), f.slope(), true));
    if (f.is_completed())
        fail(ErrorKind::uncertified_mode, "completed torus forms carry no certificate for the exact part");
    // |n + 1| <= |n| + 1 on both sides, so the disc loss bound covers the Laurent side too.
    Rational s = f.slope() / 2;
    Rational shift = -s - antiderivative_loss(P.prime(), f.slope(), s);
    const auto& c = f.certificate();
    ExtRational M = c.truncation + ExtRational(shift);
    if (M < ExtRational(cutoff)) fail(ErrorKind::uncertified_precision, "exact part only certified to " + M.to_string());
    return finish(OSeries(nctx, std::move(F), GrowthCertificate{s, c.offset + shift, M}, false, true),
                  OSeries(nctx, std::move(rep), c, false, true));
}

CohomologyReduction reduce_hyperelliptic(const DifferentialForm& w, const Rational& cutoff) {
    const auto& P = w.presentation;
    OSeries f = w.coefficient({0});
    if (f.certificate().truncation < ExtRational(cutoff))
        fail(ErrorKind::uncertified_precision, "form only known to " + f.certificate().truncation.to_string());
    const OSeries& Q = P.hyperelliptic_q();
    long dq = Q.degree_in(0);
    std::vector<Rational> q(static_cast<std::size_t>(dq + 1), Rational(0));
    for (const auto& [nu, a] : Q.terms()) q[static_cast<std::size_t>(nu[0])] = a;
    long top = std::max<long>(f.degree_in(0), 0);
    std::vector<Rational> a(static_cast<std::size_t>(top + 1), Rational(0));
    OSeries::TermMap G;
    for (const auto& [nu, c] : f.terms()) {
        if (nu[1] == 0)
            a[static_cast<std::size_t>(nu[0])] += c;
        else
            G[{nu[0] + 1, 0}] += c / (nu[0] + 1);  // b(x) y dx/y = b(x) dx is exact
    }
    // d(x^s y) = (s x^{s-1} Q + x^s Q'/2) dx/y has leading term (2s + deg Q)/2 x^{s + deg Q - 1}.
    for (long m = top; m >= dq - 1; --m) {
        Rational c = a[static_cast<std::size_t>(m)];
        if (sgn(c) == 0) continue;
        long s = m - dq + 1;
        Rational lambda = c * 2 / (2 * s + dq);
        G[{s, 1}] += lambda;
        for (long i = 0; i <= dq; ++i) {
            if (s > 0) a[static_cast<std::size_t>(s - 1 + i)] -= lambda * s * q[static_cast<std::size_t>(i)];
            if (i > 0) a[static_cast<std::size_t>(s + i - 1)] -= lambda * i * q[static_cast<std::size_t>(i)] / 2;
        }
    }
    OSeries::TermMap rep;
    for (long i = 0; i <= top && i < dq - 1; ++i)
        if (sgn(a[static_cast<std::size_t>(i)]) != 0) rep[{i, 0}] = a[static_cast<std::size_t>(i)];
    std::erase_if(G, [](const auto& kv) { return sgn(kv.second) == 0; });
    Rational t = f.slope();
    OSeries repf = OSeries::exact(P.context(), std::move(rep), t);
    OSeries Gs = OSeries::exact(P.context(), std::move(G), t);
    if (f.is_completed()) {
        repf = complete(repf);
        Gs = complete(Gs);
    }
    return {make_form(P, {0}, repf), AlgebraElement{P, Gs, f.certificate().truncation}};
}

}  // namespace

CohomologyReduction reduce_in_cohomology(const DifferentialForm& w, const Rational& cutoff) {
    if (w.degree != 1) fail(ErrorKind::invalid_argument, "reduction expects a 1-form");
    switch (w.presentation.family()) {
        case Family::free: return reduce_disc(w, cutoff);
        case Family::torus: return reduce_torus(w, cutoff);
        case Family::hyperelliptic: return reduce_hyperelliptic(w, cutoff);
        case Family::principal: break;
    }
    fail(ErrorKind::unsupported_family, "no cohomology reduction for principal-distinguished presentations");
}

std::vector<long> CohomologyReport::dimensions() const {
    std::vector<long> out;
    for (const auto& d : degrees) out.push_back(d.dimension);
    return out;
}

std::vector<long> graded_cohomology_dims(const std::vector<bool>& torus_factors, long box) {
    std::size_t m = torus_factors.size();
    std::vector<long> dims(m + 1, 0);
    std::vector<std::vector<unsigned>> by_size(m + 1);
    for (unsigned mask = 0; mask < (1u << m); ++mask) by_size[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);
    std::vector<long> delta(m);
    for (std::size_t i = 0; i < m; ++i) delta[i] = torus_factors[i] ? -box : 0;
    while (true) {
        // Basis of C^k in degree delta: x^{delta - 1_I} dx_I with admissible exponents.
        auto admissible = [&](unsigned mask) {
            for (std::size_t i = 0; i < m; ++i)
                if (!torus_factors[i] && delta[i] - static_cast<long>((mask >> i) & 1u) < 0) return false;
            return true;
        };
        std::vector<std::vector<unsigned>> basis(m + 1);
        for (std::size_t k = 0; k <= m; ++k)
            for (unsigned mask : by_size[k])
                if (admissible(mask)) basis[k].push_back(mask);
        std::vector<long> ranks(m + 1, 0);
        for (std::size_t k = 0; k < m; ++k) {
            if (basis[k].empty() || basis[k + 1].empty()) continue;
            Matrix mat(basis[k + 1].size(), std::vector<Rational>(basis[k].size(), Rational(0)));
            for (std::size_t col = 0; col < basis[k].size(); ++col) {
                unsigned I = basis[k][col];
                for (std::size_t j = 0; j < m; ++j) {
                    if ((I >> j) & 1u) continue;
                    long a_j = delta[j];
                    if (a_j == 0) continue;
                    unsigned J = I | (1u << j);
                    int sign = (__builtin_popcount(I & ((1u << j) - 1)) % 2) ? -1 : 1;
                    auto row = std::find(basis[k + 1].begin(), basis[k + 1].end(), J) - basis[k + 1].begin();
                    mat[static_cast<std::size_t>(row)][col] += sign * a_j;
                }
            }
            ranks[k] = rank(std::move(mat));
        }
        for (std::size_t k = 0; k <= m; ++k)
            dims[k] += static_cast<long>(basis[k].size()) - ranks[k] - (k ? ranks[k - 1] : 0);
        std::size_t i = 0;
        for (; i < m; ++i) {
            if (delta[i] < box) {
                ++delta[i];
                break;
            }
            delta[i] = torus_factors[i] ? -box : 0;
        }
        if (i == m) break;
    }
    return dims;
}

namespace {

std::vector<bool> factor_shape(const DaggerPresentation& P) {
    switch (P.family()) {
        case Family::free: return std::vector<bool>(P.nvars(), false);
        case Family::torus: {
            std::vector<bool> f(P.nvars() - 1, false);
            f.back() = true;
            return f;
        }
        default: break;
    }
    fail(ErrorKind::unsupported_family,
         std::string("graded complex not available for the ") + std::string(to_string(P.family())) + " family");
}

constexpr long kBox = 4;

CohomologyReport hyperelliptic_cohomology(const DaggerPresentation& P, const Rational& cutoff) {
    // Weight grading w(x) = 2, w(y) = deg Q, w(dx/y) = 2 - deg Q; d does not raise
    // weight, so weight-truncations are subcomplexes with the same cohomology.
    const OSeries& Q = P.hyperelliptic_q();
    long dq = Q.degree_in(0);
    long W = 4 * dq + 20;
    std::vector<MultiIndex> c0, c1;
    for (long e = 0; e <= 1; ++e)
        for (long i = 0; 2 * i + dq * e <= W; ++i) c0.push_back({i, e});
    for (long e = 0; e <= 1; ++e)
        for (long j = 0; 2 * j + dq * e + 2 - dq <= W; ++j) c1.push_back({j, e});
    Matrix mat(c1.size(), std::vector<Rational>(c0.size(), Rational(0)));
    for (std::size_t col = 0; col < c0.size(); ++col) {
        auto w = d(function_form(AlgebraElement{P, OSeries::monomial(P.context(), c0[col], Rational(1)), {}}));
        OSeries image = w.coefficient({0});
        for (const auto& [nu, a] : image.terms()) {
            auto row = std::find(c1.begin(), c1.end(), nu) - c1.begin();
            if (static_cast<std::size_t>(row) == c1.size())
                fail(ErrorKind::non_convergence, "d left the weight truncation");
            mat[static_cast<std::size_t>(row)][col] = a;
        }
    }
    long r = rank(std::move(mat));
    CohomologyReport report;
    CohomologyDegree h0{0, static_cast<long>(c0.size()) - r, {}};
    h0.basis.push_back(function_form(reduce(OSeries::constant(P.context(), Rational(1)), P, cutoff)));
    CohomologyDegree h1{1, static_cast<long>(c1.size()) - r, {}};
    for (long i = 0; i < dq - 1; ++i)
        h1.basis.push_back(make_form(P, {0}, OSeries::monomial(P.context(), {i, 0}, Rational(1))));
    report.degrees = {h0, h1};
    report.notes.push_back("rank computed on the weight <= " + std::to_string(W) + " subcomplex");
    report.notes.push_back(
        "1-forms are written f dx/y; the basis is x^i dx/y, 0 <= i <= 2g-1. The plus part b(x) y dx/y = b(x) dx "
        "is exact on the affine curve (y not inverted), so its basis is empty");
    return report;
}

}  // namespace

CohomologyReport cohomology(const DaggerPresentation& P, const Rational& cutoff) {
    if (P.is_completed())
        fail(ErrorKind::uncertified_mode, "completed presentations have no dimension report; use the contrast report");
    if (P.family() == Family::hyperelliptic) return hyperelliptic_cohomology(P, cutoff);
    auto shape = factor_shape(P);
    auto dims = graded_cohomology_dims(shape, kBox);
    CohomologyReport report;
    Context nctx = normal_form_context(P);
    for (std::size_t k = 0; k < dims.size(); ++k) {
        CohomologyDegree deg{static_cast<int>(k), dims[k], {}};
        if (k == 0) deg.basis.push_back(function_form(reduce(OSeries::constant(nctx, Rational(1)), P, cutoff)));
        if (k == 1 && P.family() == Family::torus) {
            MultiIndex inv(nctx.nvars(), 0);
            inv.back() = -1;
            deg.basis.push_back(
                make_form(P, {nctx.nvars() - 1}, OSeries::monomial(nctx, inv, Rational(1), Rational(0), true)));
        }
        report.degrees.push_back(std::move(deg));
    }
    report.notes.push_back("ranks of the multigraded pieces with |exponent| <= " + std::to_string(kBox));
    return report;
}

KunnethReport kunneth(const DaggerPresentation& A, const DaggerPresentation& B, const Rational& cutoff) {
    KunnethReport r;
    r.factor_a = cohomology(A, cutoff).dimensions();
    r.factor_b = cohomology(B, cutoff).dimensions();
    r.predicted.assign(r.factor_a.size() + r.factor_b.size() - 1, 0);
    for (std::size_t i = 0; i < r.factor_a.size(); ++i)
        for (std::size_t j = 0; j < r.factor_b.size(); ++j) r.predicted[i + j] += r.factor_a[i] * r.factor_b[j];
    auto shape = factor_shape(A);
    auto sb = factor_shape(B);
    shape.insert(shape.end(), sb.begin(), sb.end());
    r.computed = graded_cohomology_dims(shape, kBox);
    r.match = r.computed == r.predicted;
    return r;
}

ContrastReport completed_contrast(const DaggerPresentation& P, long depth) {
    if (P.family() != Family::free || P.nvars() != 1)
        fail(ErrorKind::unsupported_family, "contrast is defined on the one-variable disc");
    if (depth < 0) fail(ErrorKind::invalid_argument, "depth must be non-negative");
    long p = P.prime().value();
    DaggerPresentation dagger = DaggerPresentation::free(P.context());
    DaggerPresentation tate = complete_presentation(dagger);
    ContrastReport r;
    r.p = p;
    r.depth = depth;
    // omega_K = sum_k p^k T^{p^k - 1} dT; formal antiderivative sum_k T^{p^k}.
    std::vector<long> pk{1};
    for (long k = 1; k <= depth; ++k) {
        if (pk.back() > (1L << 40) / p) fail(ErrorKind::invalid_argument, "witness depth too large");
        pk.push_back(pk.back() * p);
    }
    OSeries::TermMap omega, formal;
    for (long k = 0; k <= depth; ++k) {
        long e = pk[static_cast<std::size_t>(k)];
        omega[{e - 1}] = integer_power(p, k);
        formal[{e}] = Rational(1);
        r.valuations.emplace_back(e, Rational(0));
    }
    OSeries w = complete(OSeries::exact(P.context(), omega, Rational(0)));
    Rational c_omega = 0;  // w_0(omega_K): the dT term has valuation 0
    for (long K = 0; K <= depth; ++K) {
        // Largest t with v(b_n) >= (c_omega - 1) + t n on the terms T^{p^k}, k <= K.
        Rational best;
        for (long k = 0; k <= K; ++k) {
            Rational n = integer_power(p, k);
            Rational s = (Rational(0) - (c_omega - 1)) / n;
            if (k == 0 || s < best) best = s;
        }
        r.best_fit.push_back({K, best});
    }
    r.monotone_decreasing = depth >= 1;
    for (std::size_t i = 1; i < r.best_fit.size(); ++i)
        r.monotone_decreasing = r.monotone_decreasing && r.best_fit[i].best_slope < r.best_fit[i - 1].best_slope;
    try {
        antiderivative(make_form(tate, {0}, w), Slope(Rational(1, 2)));
        r.completed_rejection = "none";
    } catch (const DaggerError& e) {
        r.completed_rejection = std::string(to_string(e.kind()));
    }
    // Admissible witness at slope t = 1: coefficients p^{ceil(t (p^k - 1)) + k}.
    OSeries::TermMap witness;
    for (long k = 0; k <= depth; ++k) {
        long e = pk[static_cast<std::size_t>(k)];
        witness[{e - 1}] = integer_power(p, (e - 1) + k);
    }
    OSeries wd(P.context(), witness, GrowthCertificate{Rational(1), Rational(0), ExtRational::infinity()});
    r.dagger_witness = wd;
    try {
        auto F = antiderivative(make_form(dagger, {0}, wd), Slope(Rational(1, 2)));
        r.dagger_integral = F.normal_form;
        r.dagger_integrates = same_terms(d(function_form(F)), make_form(dagger, {0}, wd));
    } catch (const DaggerError&) {
        r.dagger_integrates = false;
    }
    return r;
}

}  // namespace dagger
