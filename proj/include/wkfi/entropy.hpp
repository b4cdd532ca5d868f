#pragma once

#include "wkfi/spd.hpp"

namespace wkfi {

// Mixture instance (C1, C2, lambda1, lambda2) with the cached combination
// C = lambda1*C1 + lambda2*C2.
struct Scenario {
    Scenario(SpdMatrix c1_in, SpdMatrix c2_in, double lambda1_in);

    int dim() const { return c1.dim(); }

    SpdMatrix c1;
    SpdMatrix c2;
    double lambda1;
    double lambda2;
    SpdMatrix c;
};

// Which closed form of the weighted second-moment matrix Phi_C to use for the
// exponential weight exp(t'x): the simplified C*exp(t'Ct/2), or the full moment
// identity (C + C t t' C)*exp(t'Ct/2).  The quadrature oracle arbitrates.
enum class PhiVariant { paper, full_moment };

// alpha(C) and Phi_C for one covariance under a fixed weight function.
struct WeightFunctional {
    double alpha = 1.0;
    SymMatrix phi;
};

// Both sufficient-condition values of the weighted KFI theorem, plus Psi.
struct ConditionReport {
    double alpha_excess = 0.0;      // lambda1*a1 + lambda2*a2 - a
    double second_condition = 0.0;  // alpha_excess * ln((2pi)^d det C) + tr(C^{-1} Psi)
    SymMatrix psi;
    bool satisfied = false;
};

double gaussian_pdf(const SpdMatrix& c, const Vec& x);
double shannon_entropy_gaussian(const SpdMatrix& c);
double kfi_gap(const Scenario& s);

double alpha_exp(const SpdMatrix& c, const Vec& t);
WeightFunctional phi_matrix_exp(const SpdMatrix& c, const Vec& t,
                                PhiVariant variant = PhiVariant::paper);

// Weighted differential entropy of N(0, C): (alpha/2) ln((2pi)^d det C) + tr(C^{-1} Phi)/2.
double sigma_weighted(const SpdMatrix& c, const WeightFunctional& w);

// The constant-weight functional (alpha = 1, Phi = C), for reduction tests.
WeightFunctional unit_weight(const SpdMatrix& c);

ConditionReport wkfi_conditions(const Scenario& s, const WeightFunctional& w1,
                                const WeightFunctional& w2, const WeightFunctional& w);

// sigma(C) - lambda1 sigma(C1) - lambda2 sigma(C2) with the exponential closed
// forms.  Note: the weighted gap Sigma(t) of the ekfi module carries the log in
// the doubled convention ln((2pi e)^d det C) = 2h(C); hence sigma_big = 2 * wkfi_gap
// identically for the paper-form Phi.
double wkfi_gap(const Scenario& s, const Vec& t,
                PhiVariant variant = PhiVariant::paper);

} // namespace wkfi
