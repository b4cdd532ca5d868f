#pragma once

#include "wkfi/entropy.hpp"
#include "wkfi/spd.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wkfi {

// Constant inside F2: ln((2pi)^d det C) as printed, or ln((2pie)^d det C) for
// sensitivity analysis.
enum class F2Constant { two_pi, two_pi_e };

struct RegionVerdict {
    double f1 = 0.0;
    double f2 = 0.0;
    bool in_s = false;
};

enum class CriticalKind { local_minimum, local_maximum, saddle, degenerate };
std::string to_string(CriticalKind kind);

struct OriginReport {
    SymMatrix hessian;               // Hessian of the definitional Lambda at 0
    SymMatrix paper_sign_hessian;    // the printed t=0 second gradient (opposite sign)
    std::vector<double> eigenvalues; // of hessian, ascending
    CriticalKind classification = CriticalKind::degenerate;
};

// Sigma(t) = ln((2pie)^d det C) e^{t'Ct/2} - sum_a lambda_a ln((2pie)^d det C_a) e^{t'C_a t/2}.
double sigma_big(const Scenario& s, const Vec& t);

// Lambda(t) = Sigma(t) - Sigma(0), computed as the literal difference.
double lambda_gap(const Scenario& s, const Vec& t);

// The expanded three-term form, used only as an algebraic cross-check.
double lambda_gap_expanded(const Scenario& s, const Vec& t);

RegionVerdict region_membership(const Scenario& s, const Vec& t,
                                F2Constant constant = F2Constant::two_pi);

Vec grad_lambda(const Scenario& s, const Vec& t);
SymMatrix hess_lambda(const Scenario& s, const Vec& t);

CriticalKind classify_eigenvalues(const std::vector<double>& eigenvalues);
OriginReport origin_report(const Scenario& s);

// Residual of the stationary-point fixed-point equation at t (zero iff
// grad_lambda is zero); used as a cross-check at converged points.
double fixed_point_residual(const Scenario& s, const Vec& t);

// 1-D specialization with the common factor e^{c t^2 / 2} divided out.
RegionVerdict scalar_region_1d(double c1, double c2, double lambda1, double t);

// lambda1 c1 ln c1 + lambda2 c2 ln c2 - c ln c  (>= 0 by convexity of x ln x).
double scalar_second_derivative_origin(double c1, double c2, double lambda1);

struct ConvexityCounterexample {
    double lambda = 0.0;
    double min_eigenvalue = 0.0;
};

// Samples lambda on a uniform grid and tests positive semidefiniteness of the
// matrix second differences of G(lambda) = M ln det M, M = lambda C1 + (1-lambda) C2.
bool reduced_convexity_probe(const SpdMatrix& c1, const SpdMatrix& c2, int n_lambda,
                             std::optional<ConvexityCounterexample>* counterexample = nullptr);

} // namespace wkfi
