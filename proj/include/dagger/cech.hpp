#pragma once

#include "dagger/oseries.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dagger {

enum class CoverMode { dagger, completed };

/// The closed unit disc {v(x) >= 0} split along the circle v(x) = s into
///   U1 = {v(x) >= s}        (a smaller disc)
///   U2 = {0 <= v(x) <= s}   (an annulus)
/// with U1 ∩ U2 the circle {v(x) = s}.
struct DiscCover {
    Prime p;
    Rational split;
    CoverMode mode = CoverMode::dagger;

    DiscCover(Prime p, Rational split, CoverMode mode = CoverMode::dagger);
};

enum class Chart { disc, annulus, circle };

/// A section on one of the charts as a one-variable Laurent series in x.
/// The certificate is taken relative to the split circle:
///   v(a_n) + s n >= c + t |n|     for every coefficient, and
///   the omitted tail satisfies the same weighting with offset >= M.
/// With t > 0 the series converges on a strict neighbourhood of the circle.
struct CoverSection {
    Chart chart = Chart::circle;
    OSeries::TermMap terms;
    GrowthCertificate cert;
    bool completed = false;

    friend bool operator==(const CoverSection&, const CoverSection&) = default;
};

/// Throws unless the stored terms satisfy the circle-relative certificate
/// (and, for dagger covers, the slope is strictly positive).
void check_section(const DiscCover& cover, const CoverSection& h);

/// Wraps an exact Laurent polynomial as a section on the circle at slope t,
/// with the best offset for that slope.
CoverSection circle_section(const DiscCover& cover, const OSeries& h, const Rational& t);

/// Largest slope t with v(a_n) + s n >= c + t|n| on the stored terms (terms
/// with n = 0 only constrain c); +inf (nullopt) when no n != 0 is stored.
std::optional<Rational> best_slope(const DiscCover& cover, const OSeries::TermMap& terms, const Rational& c);

struct SplitResult {
    CoverSection on_disc;     // h1 on U1: the part with n >= 0
    CoverSection on_annulus;  // h2 on U2: minus the part with n < 0
};

/// h = h1|circle - h2|circle with the canonical exponent-sign split.
SplitResult mittag_leffler_split(const CoverSection& h, const DiscCover& cover, const Rational& cutoff);

/// Restriction difference h1|circle - h2|circle (the Čech differential).
CoverSection restriction_difference(const CoverSection& h1, const CoverSection& h2);

/// If (f1 on U1, f2 on U2) agree on the circle and come from the whole disc,
/// the global series f (exact, in variable named `var`).
std::optional<OSeries> equalizer(const DiscCover& cover, const CoverSection& f1, const CoverSection& f2,
                                 const std::string& var = "x");

struct CechSample {
    CoverSection cocycle;
    SplitResult preimage;
    bool recombines = false;
};

struct CechReport {
    DiscCover cover;
    std::string h0;
    /// Every sample cocycle came back with an exact coboundary preimage.
    bool h1_vanishes = true;
    std::vector<CechSample> samples;
};

CechReport cech_cohomology(const DiscCover& cover, const std::vector<CoverSection>& samples,
                           const Rational& cutoff);

}  // namespace dagger
