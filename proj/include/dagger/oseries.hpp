#pragma once

#include "dagger/padic.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dagger {

/// Exponent vector. Power series use non-negative entries only; Laurent
/// series (annuli, tori, compact-support tails) may use negative ones.
using MultiIndex = std::vector<long>;

/// |nu| = sum of |nu_i|.
long total_degree(const MultiIndex& nu);

/// Ambient prime and variable names shared by every series in a computation.
struct Context {
    Prime prime;
    std::vector<std::string> vars;

    std::size_t nvars() const { return vars.size(); }
    friend bool operator==(const Context& a, const Context& b) {
        return a.prime == b.prime && a.vars == b.vars;
    }
};

/// Witness that the represented element f satisfies
///   v(a_nu) >= offset + slope * |nu|     for every coefficient, and
///   w_slope(f - stored part) >= truncation.
/// truncation == +inf means the stored polynomial is the element itself.
struct GrowthCertificate {
    Rational slope{0};
    Rational offset{0};
    ExtRational truncation = ExtRational::infinity();

    friend bool operator==(const GrowthCertificate&, const GrowthCertificate&) = default;
};

/// A multivariate series known through a finite set of terms plus a growth
/// certificate. Immutable; every constructor checks the certificate against
/// the stored coefficients.
class OSeries {
public:
    using TermMap = std::map<MultiIndex, Rational>;

    OSeries(Context ctx, TermMap terms, GrowthCertificate cert, bool completed = false,
            bool laurent = false);

    /// Exact polynomial advertised at the given slope; offset is w_slope of the terms.
    static OSeries exact(Context ctx, TermMap terms, Rational slope, bool laurent = false);
    static OSeries zero(Context ctx, Rational slope = Rational(0));
    static OSeries constant(Context ctx, const Rational& value, Rational slope = Rational(0));
    static OSeries variable(Context ctx, std::size_t index, Rational slope = Rational(0));
    static OSeries monomial(Context ctx, MultiIndex nu, const Rational& coeff,
                            Rational slope = Rational(0), bool laurent = false);

    const Context& context() const { return ctx_; }
    Prime prime() const { return ctx_.prime; }
    std::size_t nvars() const { return ctx_.nvars(); }
    const TermMap& terms() const { return terms_; }
    const GrowthCertificate& certificate() const { return cert_; }
    const Rational& slope() const { return cert_.slope; }
    bool is_exact() const { return cert_.truncation.is_infinite(); }
    bool is_completed() const { return completed_; }
    bool is_laurent() const { return laurent_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const MultiIndex& nu) const;
    /// Highest exponent of variable `var` among stored terms (-1 when zero).
    long degree_in(std::size_t var) const;
    long total_degree() const;

    /// Same value with a different (re-validated) certificate.
    OSeries with_certificate(GrowthCertificate cert) const;
    /// Exact series can be re-advertised at any slope; others only weakened.
    OSeries at_slope(const Rational& t) const;
    /// Same terms in a different context with the same number of variables.
    OSeries relabel(Context ctx) const;
    OSeries as_laurent() const;

    friend bool operator==(const OSeries&, const OSeries&) = default;

private:
    Context ctx_;
    TermMap terms_;
    GrowthCertificate cert_;
    bool completed_ = false;
    bool laurent_ = false;
};

/// min over terms of v(a) - t|nu|; +inf for an empty map.
ExtRational stored_gauss_valuation(const OSeries::TermMap& terms, const Rational& t, Prime p);

/// Log-form Gauss norm w_t(f) = min_nu (v(a_nu) - t|nu|), i.e. |f|_rho = p^{-w_t}
/// with rho = p^t. Throws uncertified_radius when t exceeds the certified slope
/// (exact polynomials that were never completed are accepted at every t).
ExtRational gauss_valuation(const OSeries& f, const Slope& t);

/// True when the stored minimum lies strictly below the truncation level, so
/// gauss_valuation returned the value of the represented element.
bool gauss_valuation_certified(const OSeries& f, const Slope& t);

OSeries operator+(const OSeries& f, const OSeries& g);
OSeries operator-(const OSeries& f, const OSeries& g);
OSeries operator*(const OSeries& f, const OSeries& g);
OSeries operator-(const OSeries& f);
OSeries scale(const OSeries& f, const Rational& a);
/// f * X^shift (shift may be negative for Laurent series).
OSeries shift(const OSeries& f, const MultiIndex& by);

/// Drops stored terms of total degree > cap, folding them into the truncation level.
OSeries truncate(const OSeries& f, long degree_cap);
/// Drops stored terms with w_t(term) >= level, folding them into the truncation level.
OSeries prune_below(const OSeries& f, const Rational& level);

/// f(images[0], ..., images[n-1]) truncated at total degree <= degree_cap.
/// Output slope is the largest s (capped by non-exact image certificates) with
/// w_s(image_i) >= -slope(f) for all i; the offset of f carries over.
OSeries substitute(const OSeries& f, const std::vector<OSeries>& images, long degree_cap);

/// Forget overconvergence: slope 0, tainted as completed.
OSeries complete(const OSeries& f);

/// d/dX_var of the stored terms; certificate is not tracked (exact, slope 0).
OSeries::TermMap partial_derivative(const OSeries::TermMap& terms, std::size_t var);

}  // namespace dagger
