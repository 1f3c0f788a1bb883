#include "dagger/cech.hpp"

#include "dagger/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace dagger {

DiscCover::DiscCover(Prime p_, Rational split_, CoverMode mode_) : p(p_), split(std::move(split_)), mode(mode_) {
    if (sgn(split) <= 0) fail(ErrorKind::invalid_argument, "split valuation must be positive");
}

namespace {

Rational weight(const DiscCover& cover, long n, const Rational& a) {
    return Rational(valuation_nonzero(a, cover.p)) + cover.split * n;
}

}  // namespace

void check_section(const DiscCover& cover, const CoverSection& h) {
    const auto& cert = h.cert;
    if (sgn(cert.slope) < 0) fail(ErrorKind::invalid_argument, "negative certificate slope");
    if (cert.truncation < ExtRational(cert.offset))
        fail(ErrorKind::invalid_argument, "truncation level below offset");
    if (cover.mode == CoverMode::dagger && sgn(cert.slope) == 0 && !cert.truncation.is_infinite())
        fail(ErrorKind::uncertified_mode, "dagger cover needs a strictly positive slope for non-exact sections");
    for (const auto& [nu, a] : h.terms) {
        if (nu.size() != 1) fail(ErrorKind::invalid_argument, "cover sections are univariate");
        if (sgn(a) == 0) fail(ErrorKind::invalid_argument, "stored zero coefficient");
        if (h.chart == Chart::disc && nu[0] < 0) fail(ErrorKind::invalid_argument, "negative exponent on U1");
        if (weight(cover, nu[0], a) < cert.offset + cert.slope * std::labs(nu[0]))
            fail(ErrorKind::uncertified_radius, "coefficient of x^" + std::to_string(nu[0]) +
                                                    " violates the circle certificate");
    }
}

CoverSection circle_section(const DiscCover& cover, const OSeries& h, const Rational& t) {
    if (h.nvars() != 1 || !(h.prime() == cover.p)) fail(ErrorKind::context_mismatch, "need a series in x over p");
    if (!h.is_exact()) fail(ErrorKind::uncertified_precision, "circle_section wraps exact polynomials only");
    Rational c(0);
    bool first = true;
    for (const auto& [nu, a] : h.terms()) {
        Rational w = weight(cover, nu[0], a) - t * std::labs(nu[0]);
        if (first || w < c) c = w;
        first = false;
    }
    CoverSection out{Chart::circle, h.terms(), GrowthCertificate{t, c, ExtRational::infinity()}, false};
    if (cover.mode == CoverMode::completed) {
        out.cert.slope = 0;
        out.cert.offset = 0;
        for (const auto& [nu, a] : h.terms())
            if (auto w = weight(cover, nu[0], a); w < out.cert.offset) out.cert.offset = w;
        out.completed = true;
    }
    check_section(cover, out);
    return out;
}

std::optional<Rational> best_slope(const DiscCover& cover, const OSeries::TermMap& terms, const Rational& c) {
    std::optional<Rational> best;
    for (const auto& [nu, a] : terms) {
        if (nu[0] == 0) continue;
        Rational s = (weight(cover, nu[0], a) - c) / std::labs(nu[0]);
        if (!best || s < *best) best = s;
    }
    return best;
}

SplitResult mittag_leffler_split(const CoverSection& h, const DiscCover& cover, const Rational& cutoff) {
    if (h.chart != Chart::circle) fail(ErrorKind::invalid_argument, "split expects a section on the circle");
    check_section(cover, h);
    if (h.cert.truncation < ExtRational(cutoff))
        fail(ErrorKind::uncertified_precision,
             "cocycle only known to " + h.cert.truncation.to_string() + " < cutoff " + to_string(cutoff));
    GrowthCertificate cert = h.cert;
    bool completed = h.completed;
    if (cover.mode == CoverMode::completed) {
        // Completed mode keeps only the Tate (slope 0) information.
        cert.slope = 0;
        completed = true;
    }
    SplitResult out{CoverSection{Chart::disc, {}, cert, completed}, CoverSection{Chart::annulus, {}, cert, completed}};
    for (const auto& [nu, a] : h.terms) {
        if (nu[0] >= 0)
            out.on_disc.terms.emplace(nu, a);
        else
            out.on_annulus.terms.emplace(nu, -a);
    }
    // Each half inherits the bound termwise; the omitted tail splits the same way.
    check_section(cover, out.on_disc);
    check_section(cover, out.on_annulus);
    return out;
}

CoverSection restriction_difference(const CoverSection& h1, const CoverSection& h2) {
    if (h1.completed != h2.completed) fail(ErrorKind::context_mismatch, "mixing completed and dagger sections");
    OSeries::TermMap terms = h1.terms;
    for (const auto& [nu, a] : h2.terms) terms[nu] -= a;
    std::erase_if(terms, [](const auto& kv) { return sgn(kv.second) == 0; });
    GrowthCertificate cert{std::min<Rational>(h1.cert.slope, h2.cert.slope),
                           std::min<Rational>(h1.cert.offset, h2.cert.offset),
                           min(h1.cert.truncation, h2.cert.truncation)};
    return CoverSection{Chart::circle, std::move(terms), cert, h1.completed};
}

std::optional<OSeries> equalizer(const DiscCover& cover, const CoverSection& f1, const CoverSection& f2,
                                 const std::string& var) {
    if (f1.terms != f2.terms) return std::nullopt;
    for (const auto& [nu, a] : f1.terms)
        if (nu[0] < 0) return std::nullopt;
    OSeries f = OSeries::exact(Context{cover.p, {var}}, f1.terms, Rational(0));
    return f1.completed ? complete(f) : f;
}

CechReport cech_cohomology(const DiscCover& cover, const std::vector<CoverSection>& samples,
                           const Rational& cutoff) {
    CechReport report{cover,
                      "H^0 = global sections of the disc: pairs (f|U1, f|U2) agreeing on the circle, "
                      "f a series on the whole disc",
                      true,
                      {}};
    for (const auto& h : samples) {
        auto split = mittag_leffler_split(h, cover, cutoff);
        bool ok = restriction_difference(split.on_disc, split.on_annulus).terms == h.terms;
        report.h1_vanishes = report.h1_vanishes && ok;
        report.samples.push_back(CechSample{h, std::move(split), ok});
    }
    return report;
}

}  // namespace dagger
