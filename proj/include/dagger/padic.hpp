#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace dagger {

/// Exact rational scalar. Always kept canonical (lowest terms, positive
/// denominator); the prime is supplied by the caller's context.
using Rational = mpq_class;
using Integer = mpz_class;

/// A rational number or +infinity. Used for valuations, Gauss valuations and
/// truncation levels.
class ExtRational {
public:
    ExtRational() : inf_(true) {}
    ExtRational(Rational v) : inf_(false), v_(std::move(v)) {}  // NOLINT
    ExtRational(long v) : inf_(false), v_(v) {}                 // NOLINT

    static ExtRational infinity() { return {}; }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    /// Precondition: finite.
    const Rational& value() const;

    std::string to_string() const;
    static ExtRational parse(const std::string& s);

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator-(const ExtRational& a, const Rational& b);

private:
    bool inf_;
    Rational v_;
};

ExtRational min(const ExtRational& a, const ExtRational& b);
ExtRational max(const ExtRational& a, const ExtRational& b);

/// Validated prime modulus.
class Prime {
public:
    explicit Prime(long p);
    long value() const { return p_; }
    Integer as_integer() const { return Integer(p_); }
    friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }

private:
    long p_;
};

/// v_p of a nonzero integer.
long valuation(const Integer& n, Prime p);
/// v_p(num) - v_p(den); +infinity for zero.
ExtRational valuation(const Rational& x, Prime p);
/// Finite valuation of a nonzero rational.
long valuation_nonzero(const Rational& x, Prime p);

Rational add(const Rational& x, const Rational& y);
Rational sub(const Rational& x, const Rational& y);
Rational mul(const Rational& x, const Rational& y);
/// Throws division_by_zero when y == 0.
Rational div(const Rational& x, const Rational& y);

/// "num/den", denominator omitted when it is 1.
std::string to_string(const Rational& x);
/// Inverse of to_string; rejects zero denominators and junk.
Rational parse_rational(const std::string& s);

/// Small-height a' with v_p(a - a') >= level: p^v times an integer residue
/// mod p^(level - v). Returns 0 when v_p(a) >= level already.
Rational round_to_precision(const Rational& a, long level, Prime p);
/// Like round_to_precision, but leaves a untouched while its height is still
/// comparable to p^(level - v) (so small exact values stay exact).
Rational compress_to_precision(const Rational& a, long level, Prime p);

Rational pow(const Rational& x, unsigned long e);
Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Radii are stored in log form: rho = p^t with t a non-negative rational.
class Slope {
public:
    Slope() = default;
    explicit Slope(Rational t);
    const Rational& value() const { return t_; }
    bool strict() const { return sgn(t_) > 0; }
    friend bool operator==(const Slope& a, const Slope& b) { return a.t_ == b.t_; }
    friend bool operator<(const Slope& a, const Slope& b) { return a.t_ < b.t_; }
    friend bool operator<=(const Slope& a, const Slope& b) { return a.t_ <= b.t_; }

private:
    Rational t_{0};
};

}  // namespace dagger
