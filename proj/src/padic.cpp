#include "dagger/padic.hpp"

#include "dagger/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace dagger {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::division_by_zero: return "division-by-zero";
        case ErrorKind::context_mismatch: return "context-mismatch";
        case ErrorKind::uncertified_radius: return "uncertified-radius";
        case ErrorKind::uncertified_precision: return "uncertified-precision";
        case ErrorKind::uncertified_mode: return "uncertified-mode";
        case ErrorKind::not_distinguished: return "not-distinguished";
        case ErrorKind::non_convergence: return "non-convergence";
        case ErrorKind::non_power_bounded: return "non-power-bounded";
        case ErrorKind::inadmissible_slope: return "inadmissible-slope";
        case ErrorKind::unsupported_family: return "unsupported-family";
        case ErrorKind::unsupported_localization: return "unsupported-localization";
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::parse_error: return "parse-error";
    }
    return "unknown";
}

const Rational& ExtRational::value() const {
    if (inf_) fail(ErrorKind::invalid_argument, "value() of +infinity");
    return v_;
}

std::string ExtRational::to_string() const {
    return inf_ ? std::string("inf") : dagger::to_string(v_);
}

ExtRational ExtRational::parse(const std::string& s) {
    if (s == "inf") return infinity();
    return ExtRational(parse_rational(s));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.v_ == b.v_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) return ExtRational::infinity();
    return ExtRational(Rational(a.v_ + b.v_));
}

ExtRational operator-(const ExtRational& a, const Rational& b) {
    if (a.inf_) return a;
    return ExtRational(Rational(a.v_ - b));
}

ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

Prime::Prime(long p) : p_(p) {
    if (p < 2 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) == 0)
        fail(ErrorKind::invalid_argument, "not a prime: " + std::to_string(p));
}

long valuation(const Integer& n, Prime p) {
    if (sgn(n) == 0) fail(ErrorKind::invalid_argument, "valuation of integer zero");
    Integer q = abs(n);
    const Integer pz = p.as_integer();
    // mpz_remove strips every factor p and returns the count
    return static_cast<long>(mpz_remove(q.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t()));
}

ExtRational valuation(const Rational& x, Prime p) {
    if (sgn(x) == 0) return ExtRational::infinity();
    return ExtRational(valuation_nonzero(x, p));
}

long valuation_nonzero(const Rational& x, Prime p) {
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Rational add(const Rational& x, const Rational& y) { return x + y; }
Rational sub(const Rational& x, const Rational& y) { return x - y; }
Rational mul(const Rational& x, const Rational& y) { return x * y; }

Rational div(const Rational& x, const Rational& y) {
    if (sgn(y) == 0) fail(ErrorKind::division_by_zero, "division by zero");
    return x / y;
}

std::string to_string(const Rational& x) { return x.get_str(10); }

Rational parse_rational(const std::string& s) {
    // accept [-]digits[/digits]
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = 0, slash = 0;
    for (std::size_t j = i; j < s.size(); ++j) {
        if (std::isdigit(static_cast<unsigned char>(s[j]))) {
            ++digits;
        } else if (s[j] == '/' && slash == 0 && j > i && j + 1 < s.size()) {
            slash = j;
        } else {
            fail(ErrorKind::parse_error, "malformed rational: '" + s + "'");
        }
    }
    if (digits == 0) fail(ErrorKind::parse_error, "malformed rational: '" + s + "'");
    std::string text = s[0] == '+' ? s.substr(1) : s;
    Rational r;
    if (slash != 0) {
        Integer den(s.substr(slash + 1), 10);
        if (sgn(den) == 0) fail(ErrorKind::division_by_zero, "zero denominator in '" + s + "'");
    }
    if (r.set_str(text, 10) != 0) fail(ErrorKind::parse_error, "malformed rational: '" + s + "'");
    r.canonicalize();
    return r;
}

Rational round_to_precision(const Rational& a, long level, Prime p) {
    if (sgn(a) == 0) return a;
    long v = valuation_nonzero(a, p);
    if (v >= level) return Rational(0);
    Integer pz = p.as_integer();
    Integer modulus;
    mpz_pow_ui(modulus.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(level - v));
    Rational unit = a;
    Integer pv;
    mpz_pow_ui(pv.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(std::labs(v)));
    if (v > 0) unit /= pv; else unit *= pv;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), unit.get_den_mpz_t(), modulus.get_mpz_t());
    Integer residue = unit.get_num() * inv;
    mpz_mod(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
    // symmetric representative keeps small negative values small
    if (2 * residue > modulus) residue -= modulus;
    Rational out(residue);
    if (v > 0) out *= pv; else out /= pv;
    return out;
}

Rational compress_to_precision(const Rational& a, long level, Prime p) {
    if (sgn(a) == 0) return a;
    long v = valuation_nonzero(a, p);
    if (v >= level) return Rational(0);
    std::size_t height = mpz_sizeinbase(a.get_num_mpz_t(), 2) + mpz_sizeinbase(a.get_den_mpz_t(), 2);
    std::size_t budget = 2 * static_cast<std::size_t>((level - v) * std::log2(static_cast<double>(p.value())) + 1) + 64;
    return height <= budget ? a : round_to_precision(a, level, p);
}

Rational pow(const Rational& x, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

Integer floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Slope::Slope(Rational t) : t_(std::move(t)) {
    if (sgn(t_) < 0) fail(ErrorKind::invalid_argument, "negative slope " + to_string(t_));
}

}  // namespace dagger
