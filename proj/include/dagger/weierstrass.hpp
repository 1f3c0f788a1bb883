#pragma once

#include "dagger/oseries.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace dagger {

// All norms below are taken at a fixed slope t, i.e. in T_n(p^t). The
// Y-coefficient g_m of g = sum_m g_m Y^m is compared through the norm of the
// whole term g_m Y^m, which reduces to the plain coefficient norm at t = 0.

struct DistinguishedReport {
    std::size_t variable = 0;
    long degree = 0;
    /// min over m > k of w_t(g_m Y^m) - w_t(g); +inf when nothing sits above degree k.
    ExtRational margin;
    /// w_t(g) = w_t(g_k Y^k).
    Rational norm;
    /// How far the non-constant part of g_k sits above its constant term.
    ExtRational unit_margin;
};

struct NotDistinguished {
    std::size_t variable = 0;
    /// Offending term of g (or the candidate degree position).
    MultiIndex witness;
    std::string reason;
};

using DistinguishedCheck = std::variant<DistinguishedReport, NotDistinguished>;

DistinguishedCheck is_distinguished(const OSeries& g, std::size_t var, const Slope& t);
/// Throws not_distinguished with the witness in the message.
DistinguishedReport require_distinguished(const OSeries& g, std::size_t var, const Slope& t);

struct DivisionResult {
    OSeries quotient;
    OSeries remainder;
    /// Certified lower bound for w_t(f - g q - r).
    ExtRational residual_valuation;
    long passes = 0;
    DistinguishedReport report;
};

enum class DivisionSchedule {
    whole,     ///< divide f in one defect iteration
    termwise,  ///< divide every stored term separately and sum the results
};

/// f = g q + r with deg_var r < k, certified to `cutoff` at slope t.
DivisionResult weierstrass_divide(const OSeries& f, const OSeries& g, std::size_t var, const Slope& t,
                                  const Rational& cutoff,
                                  DivisionSchedule schedule = DivisionSchedule::whole);

struct PreparationResult {
    OSeries weierstrass_poly;
    OSeries unit;
    ExtRational residual_valuation;
    DistinguishedReport report;
};

/// g = e * omega with omega monic of degree k in `var` and e a unit.
PreparationResult weierstrass_prepare(const OSeries& g, std::size_t var, const Slope& t,
                                      const Rational& cutoff);

/// Geometric-series inverse of a unit u = u_0 (1 + h), w_t(h) > 0, accurate to
/// w_t(1 - u e) >= cutoff. Throws when u is not a unit at slope t.
OSeries unit_inverse(const OSeries& u, const Slope& t, const Rational& cutoff);

struct Distinguishing {
    /// c_i of X_i -> X_i + X_n^{c_i} for i < n (last entry is always 0).
    std::vector<long> exponents;
    OSeries image;
    DistinguishedReport report;
};

/// Finds sigma making f distinguished in the last variable. Candidates are the
/// identity, then c_i = b^(n-1-i) for b = 1, 2, ..., d+1 (d = total degree).
Distinguishing distinguishing_automorphism(const OSeries& f, const Slope& t);

/// sigma(f) for explicit exponents.
OSeries apply_distinguishing(const OSeries& f, const std::vector<long>& exponents);

}  // namespace dagger
