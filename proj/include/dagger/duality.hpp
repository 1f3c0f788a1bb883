#pragma once

#include "dagger/derham.hpp"
#include "dagger/linalg.hpp"

#include <string>
#include <vector>

namespace dagger {

/// v(a_mu) >= offset + slope |mu| on every coefficient, and the omitted tail
/// obeys the same bound with offset >= truncation.
struct DecayCertificate {
    Rational slope{1};
    Rational offset{0};
    ExtRational truncation = ExtRational::infinity();

    friend bool operator==(const DecayCertificate&, const DecayCertificate&) = default;
};

/// sum_{mu < 0} a_mu T^mu dT_1 ^ ... ^ dT_m with rapid decay: a compactly
/// supported top form on the polydisc, known at one certified rate u > 0.
class LaurentTail {
public:
    LaurentTail(Context ctx, OSeries::TermMap terms, DecayCertificate decay);
    /// Exact tail with the best offset for the given rate.
    static LaurentTail exact(Context ctx, OSeries::TermMap terms, const Rational& rate);

    const Context& context() const { return ctx_; }
    const OSeries::TermMap& terms() const { return terms_; }
    const DecayCertificate& decay() const { return decay_; }
    Rational coefficient(const MultiIndex& mu) const;

    friend bool operator==(const LaurentTail&, const LaurentTail&) = default;

private:
    Context ctx_;
    OSeries::TermMap terms_;
    DecayCertificate decay_;
};

struct PairingValue {
    Rational value;
    /// Lower bound for the valuation of everything the stored terms leave out.
    ExtRational omitted_bound = ExtRational::infinity();
};

/// res(b a) = sum_alpha b_alpha a_{-alpha-1}.
PairingValue residue_pair(const OSeries& b, const LaurentTail& a);

/// d of a one-variable tail potential phi = sum c_mu T^mu (mu <= -1), as a tail.
LaurentTail exact_tail(const LaurentTail& potential);

struct PairingMatrix {
    std::vector<std::string> rows;
    std::vector<std::string> cols;
    Matrix entries;
};

/// Rows T^alpha (0 <= alpha_i < K), columns T^{-alpha-1} dT, entries res(row * col).
PairingMatrix pairing_gram(long K, long m, Prime p = Prime(2));

/// Pairing on G_m: a compactly supported class g (a Laurent function) against
/// the 1-form w = f dx gives the coefficient of x^{-1} in g f. With this
/// normalization res(dx/x) = 1.
Rational torus_pairing(const AlgebraElement& g, const DifferentialForm& w);

struct PoincareReport {
    /// <dx/x, 1>: the H^1_dR basis against the H^1_c generator.
    Rational h1_pairing;
    /// <1, dx/x>: H^0 against the top compactly supported class.
    Rational h0_pairing;
    /// <1, d(x^2 + x^-3)>, which must vanish.
    Rational exact_pairing;
    bool nondegenerate = false;
    std::string normalization;
};

PoincareReport poincare_check(const DaggerPresentation& P, const Rational& cutoff);

}  // namespace dagger
