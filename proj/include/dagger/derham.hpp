#pragma once

#include "dagger/algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dagger {

/// Basis differential dx_{i1} ^ ... ^ dx_{id}, indices strictly increasing and
/// counted in the normal-form context of the presentation. For the
/// hyperelliptic family the single 1-form basis element {0} stands for dx/y,
/// which generates the module of 1-forms (2y dy = Q'(x) dx, Q squarefree).
using FormBasis = std::vector<std::size_t>;

struct DifferentialForm {
    DaggerPresentation presentation;
    int degree = 0;
    /// Normal-form coefficients; zero components are omitted.
    std::map<FormBasis, OSeries> components;

    /// Coefficient of a basis element (zero series when absent).
    OSeries coefficient(const FormBasis& b) const;
    bool is_zero() const { return components.empty(); }
};

DifferentialForm zero_form(const DaggerPresentation& P, int degree);
/// f as a 0-form (f already in normal form).
DifferentialForm function_form(const AlgebraElement& f);
/// f dx_{i1} ^ ... (f in normal-form context).
DifferentialForm make_form(const DaggerPresentation& P, FormBasis basis, OSeries f);

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm scale(const DifferentialForm& a, const Rational& c);
bool same_terms(const DifferentialForm& a, const DifferentialForm& b);

/// Exterior derivative on free, torus and hyperelliptic presentations.
DifferentialForm d(const DifferentialForm& w);

/// B = max(0, max_nu (v_p(nu + 1) - (t - t') nu)), the valuation lost when
/// integrating a slope-t series down to slope t'. Computed exactly.
Rational antiderivative_loss(Prime p, const Rational& t, const Rational& t_target);

/// F with dF = f dT on the one-variable disc, certified at slope t' with
/// offset c - t' - B and truncation M - t' - B. Completed inputs are rejected.
AlgebraElement antiderivative(const DifferentialForm& w, const Slope& t_target);

struct CohomologyReduction {
    DifferentialForm representative;
    AlgebraElement exact_part;
};

/// w = representative + d(exact_part) with the representative in the
/// family's candidate span:
///   disc           0
///   torus          k dx/x
///   hyperelliptic  span{x^i dx/y : 0 <= i <= 2g - 1}
CohomologyReduction reduce_in_cohomology(const DifferentialForm& w, const Rational& cutoff);

struct CohomologyDegree {
    int degree = 0;
    long dimension = 0;
    std::vector<DifferentialForm> basis;
};

struct CohomologyReport {
    std::vector<CohomologyDegree> degrees;
    /// Truncation used for the rank computation and conventions in force.
    std::vector<std::string> notes;

    std::vector<long> dimensions() const;
};

CohomologyReport cohomology(const DaggerPresentation& P, const Rational& cutoff);

/// Dimensions of H^* of a product of one-dimensional factors (false = disc
/// coordinate, true = torus coordinate), computed from the multigraded pieces
/// of the de Rham complex inside the box |exponent| <= box.
std::vector<long> graded_cohomology_dims(const std::vector<bool>& torus_factors, long box);

struct KunnethReport {
    std::vector<long> factor_a;
    std::vector<long> factor_b;
    std::vector<long> predicted;
    std::vector<long> computed;
    bool match = false;
};

KunnethReport kunneth(const DaggerPresentation& A, const DaggerPresentation& B, const Rational& cutoff);

struct ContrastRow {
    long depth = 0;
    Rational best_slope;
};

struct ContrastReport {
    long p = 0;
    long depth = 0;
    /// (exponent p^k, valuation of the antiderivative coefficient) for k <= depth.
    std::vector<std::pair<long, Rational>> valuations;
    /// Best slope a certificate with offset c_omega - 1 could claim, per depth.
    std::vector<ContrastRow> best_fit;
    bool monotone_decreasing = false;
    /// Error kind raised by antiderivative on the completed form.
    std::string completed_rejection;
    /// The admissible dagger witness and its certified integral.
    std::optional<OSeries> dagger_witness;
    std::optional<OSeries> dagger_integral;
    bool dagger_integrates = false;
};

ContrastReport completed_contrast(const DaggerPresentation& P, long depth);

}  // namespace dagger
