#pragma once

#include "dagger/oseries.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace dagger {

enum class Family {
    free,           ///< W_n itself
    principal,      ///< W_n / (g), g monic Weierstrass polynomial in the last variable
    torus,          ///< W_n / (x_{n-1} x_n - 1); the last two variables are x and its inverse
    hyperelliptic,  ///< W_2 / (y^2 - Q(x)), Q monic of odd degree, squarefree mod p, p odd
};

std::string_view to_string(Family f);

/// A dagger algebra W_n / I for one of the supported ideal families.
class DaggerPresentation {
public:
    static DaggerPresentation free(Context ctx);
    /// g must be a polynomial in the last variable, monic of degree k >= 1,
    /// and distinguished of degree k at slope 0.
    static DaggerPresentation principal(OSeries g);
    static DaggerPresentation torus(Context ctx);
    /// Q is an exact univariate series; ctx has two variables (x, y).
    static DaggerPresentation hyperelliptic(Context ctx, OSeries Q);

    const Context& context() const { return ctx_; }
    Prime prime() const { return ctx_.prime; }
    std::size_t nvars() const { return ctx_.nvars(); }
    Family family() const { return family_; }
    bool is_completed() const { return completed_; }
    /// The ideal generators as series in the presentation's context.
    const std::vector<OSeries>& generators() const { return generators_; }
    /// Hyperelliptic only: Q as a univariate series.
    const OSeries& hyperelliptic_q() const;
    long genus() const;

    DaggerPresentation completed() const;

    friend bool operator==(const DaggerPresentation&, const DaggerPresentation&) = default;

private:
    DaggerPresentation(Context ctx, Family family, std::vector<OSeries> gens,
                       std::optional<OSeries> q = std::nullopt);

    Context ctx_;
    Family family_;
    std::vector<OSeries> generators_;
    std::optional<OSeries> q_;
    bool completed_ = false;
};

/// An element of A in normal form:
///   free          the series itself
///   principal     Weierstrass remainder, deg in last variable < k
///   torus         Laurent series in the first n-1 variables (negative exponents
///                 only in the x slot); the inverse variable never occurs
///   hyperelliptic a(x) + b(x) y
struct AlgebraElement {
    DaggerPresentation presentation;
    OSeries normal_form;
    /// Certified lower bound for w_t(x - normal form mod I).
    ExtRational residual = ExtRational::infinity();
};

/// Normal form of x modulo the presentation's ideal, certified to `cutoff`.
AlgebraElement reduce(const OSeries& x, const DaggerPresentation& P, const Rational& cutoff);

/// The context in which normal forms of P live (torus drops the inverse variable).
Context normal_form_context(const DaggerPresentation& P);

struct QuotientNorm {
    ExtRational value;
    /// true: the quotient (residue) norm itself; false: an upper bound for the
    /// norm, i.e. a lower bound for its log-valuation, realized by the normal form.
    bool exact = false;
};

QuotientNorm quotient_norm(const AlgebraElement& x, const Slope& t);

enum class LocalizationKind { sublevel, inverse };

/// A<f>^dagger (sub-level, |f| <= |p|) or A<1/f>^dagger (inverse). Supported:
///   free W_1, inverse at x        -> torus K<x, x^-1>
///   free W_1, sub-level at x      -> K<u, x>^dagger / (x - p u)
///   torus, inverse at x or x^-1   -> the same torus
DaggerPresentation localize(const DaggerPresentation& P, const AlgebraElement& f, LocalizationKind kind);

/// Image of x under the restriction map to `target`, matching variables by name.
AlgebraElement transport(const AlgebraElement& x, const DaggerPresentation& target, const Rational& cutoff);

/// Tate-mode twin: slope-0 generators, every reduced element tainted as completed.
DaggerPresentation complete_presentation(const DaggerPresentation& P);

}  // namespace dagger
