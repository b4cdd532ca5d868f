#include "wkfi/ekfi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wkfi {

namespace {

constexpr double kLnTwoPi = 1.8378770664093454836;  // ln(2 pi)

double ln_form_2pie(const SpdMatrix& c) {
    return c.dim() * (kLnTwoPi + 1.0) + c.log_det();
}

double ln_form_2pi(const SpdMatrix& c) {
    return c.dim() * kLnTwoPi + c.log_det();
}

} // namespace

std::string to_string(CriticalKind kind) {
    switch (kind) {
        case CriticalKind::local_minimum: return "local-minimum";
        case CriticalKind::local_maximum: return "local-maximum";
        case CriticalKind::saddle: return "saddle";
        case CriticalKind::degenerate: return "degenerate";
    }
    return "degenerate";
}

double sigma_big(const Scenario& s, const Vec& t) {
    const double ec = std::exp(0.5 * quad_form(s.c, t));
    const double e1 = std::exp(0.5 * quad_form(s.c1, t));
    const double e2 = std::exp(0.5 * quad_form(s.c2, t));
    return ln_form_2pie(s.c) * ec - s.lambda1 * ln_form_2pie(s.c1) * e1 -
           s.lambda2 * ln_form_2pie(s.c2) * e2;
}

double lambda_gap(const Scenario& s, const Vec& t) {
    return sigma_big(s, t) - sigma_big(s, Vec::zero(t.dim()));
}

double lambda_gap_expanded(const Scenario& s, const Vec& t) {
    const double ec = std::exp(0.5 * quad_form(s.c, t));
    const double e1 = std::exp(0.5 * quad_form(s.c1, t));
    const double e2 = std::exp(0.5 * quad_form(s.c2, t));
    return ln_form_2pie(s.c) * (ec - 1.0) -
           s.lambda1 * ln_form_2pie(s.c1) * (e1 - 1.0) -
           s.lambda2 * ln_form_2pie(s.c2) * (e2 - 1.0);
}

RegionVerdict region_membership(const Scenario& s, const Vec& t, F2Constant constant) {
    const double ec = std::exp(0.5 * quad_form(s.c, t));
    const double e1 = std::exp(0.5 * quad_form(s.c1, t));
    const double e2 = std::exp(0.5 * quad_form(s.c2, t));
    const double tr1 = trace_inverse_product(s.c, s.c1);
    const double tr2 = trace_inverse_product(s.c, s.c2);
    const double ln_det_term =
        constant == F2Constant::two_pi ? ln_form_2pi(s.c) : ln_form_2pie(s.c);
    const int d = s.dim();

    RegionVerdict v;
    v.f1 = s.lambda1 * e1 + s.lambda2 * e2 - ec;
    const double trace_part =
        s.lambda1 * e1 * tr1 + s.lambda2 * e2 * tr2 - d * ec;
    v.f2 = v.f1 * ln_det_term + trace_part;
    // One-sided, scaled tolerance: exact equalities (t = 0) count as members.
    const double scale1 = std::max(1.0, s.lambda1 * e1 + s.lambda2 * e2 + ec);
    const double scale2 = std::max(
        1.0, std::abs(v.f1 * ln_det_term) + s.lambda1 * e1 * tr1 +
                 s.lambda2 * e2 * tr2 + d * ec);
    v.in_s = (v.f1 >= -1e-10 * scale1) && (v.f2 <= 1e-10 * scale2);
    return v;
}

Vec grad_lambda(const Scenario& s, const Vec& t) {
    const double ec = std::exp(0.5 * quad_form(s.c, t));
    const double e1 = std::exp(0.5 * quad_form(s.c1, t));
    const double e2 = std::exp(0.5 * quad_form(s.c2, t));
    const Vec ct = s.c.mul(t);
    const Vec c1t = s.c1.mul(t);
    const Vec c2t = s.c2.mul(t);
    Vec g(t.dim());
    for (int i = 0; i < t.dim(); ++i) {
        g[i] = ln_form_2pie(s.c) * ct[i] * ec -
               s.lambda1 * ln_form_2pie(s.c1) * c1t[i] * e1 -
               s.lambda2 * ln_form_2pie(s.c2) * c2t[i] * e2;
    }
    return g;
}

namespace {

// grad^2 of exp(t'At/2) = (A + A t t' A) exp(t'At/2), weighted by coeff.
SymMatrix hess_term(const SpdMatrix& a, const Vec& t, double coeff) {
    const double ea = std::exp(0.5 * quad_form(a, t));
    const Vec at = a.mul(t);
    SymMatrix h(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j <= i; ++j)
            h.set(i, j, coeff * (a(i, j) + at[i] * at[j]) * ea);
    return h;
}

} // namespace

SymMatrix hess_lambda(const Scenario& s, const Vec& t) {
    return hess_term(s.c, t, ln_form_2pie(s.c)) -
           hess_term(s.c1, t, s.lambda1 * ln_form_2pie(s.c1)) -
           hess_term(s.c2, t, s.lambda2 * ln_form_2pie(s.c2));
}

CriticalKind classify_eigenvalues(const std::vector<double>& eigenvalues) {
    double max_abs = 0.0;
    for (double ev : eigenvalues) max_abs = std::max(max_abs, std::abs(ev));
    if (max_abs <= 1e-12) return CriticalKind::degenerate;
    const double tol = 1e-8 * max_abs;
    bool has_pos = false, has_neg = false, has_zero = false;
    for (double ev : eigenvalues) {
        if (ev > tol) has_pos = true;
        else if (ev < -tol) has_neg = true;
        else has_zero = true;
    }
    if (has_pos && has_neg) return CriticalKind::saddle;
    if (has_zero) return CriticalKind::degenerate;
    return has_pos ? CriticalKind::local_minimum : CriticalKind::local_maximum;
}

OriginReport origin_report(const Scenario& s) {
    OriginReport r;
    r.hessian = hess_lambda(s, Vec::zero(s.dim()));
    SymMatrix paper(s.dim());
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j <= i; ++j)
            paper.set(i, j, s.lambda1 * s.c1.log_det() * s.c1(i, j) +
                                s.lambda2 * s.c2.log_det() * s.c2(i, j) -
                                s.c.log_det() * s.c(i, j));
    r.paper_sign_hessian = paper;
    r.eigenvalues = r.hessian.eigenvalues();
    r.classification = classify_eigenvalues(r.eigenvalues);
    return r;
}

double fixed_point_residual(const Scenario& s, const Vec& t) {
    const double hc = ln_form_2pie(s.c);
    if (std::abs(hc) < 1e-12) return grad_lambda(s, t).norm();
    const double qc = 0.5 * quad_form(s.c, t);
    const double w1 = s.lambda1 * ln_form_2pie(s.c1) / hc *
                      std::exp(0.5 * quad_form(s.c1, t) - qc);
    const double w2 = s.lambda2 * ln_form_2pie(s.c2) / hc *
                      std::exp(0.5 * quad_form(s.c2, t) - qc);
    const Vec rhs_pre = s.c1.mul(t) * w1 + s.c2.mul(t) * w2;
    return (t - s.c.solve(rhs_pre)).norm();
}

RegionVerdict scalar_region_1d(double c1, double c2, double lambda1, double t) {
    if (!(c1 > 0.0 && c2 > 0.0)) throw std::domain_error("c1, c2 must be > 0");
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
        throw std::domain_error("lambda1 must be in [0, 1]");
    }
    const double lambda2 = 1.0 - lambda1;
    const double c = lambda1 * c1 + lambda2 * c2;
    // Both printed conditions with the common factor e^{c t^2 / 2} divided out.
    const double g1 = std::exp(0.5 * (c1 - c) * t * t);
    const double g2 = std::exp(0.5 * (c2 - c) * t * t);
    const double r1 = c1 / c;
    const double r2 = c2 / c;
    const double ln_det_term = kLnTwoPi + std::log(c);

    RegionVerdict v;
    v.f1 = lambda1 * g1 + lambda2 * g2 - 1.0;
    v.f2 = v.f1 * ln_det_term + lambda1 * g1 * r1 + lambda2 * g2 * r2 - 1.0;
    const double scale1 = std::max(1.0, lambda1 * g1 + lambda2 * g2 + 1.0);
    const double scale2 = std::max(
        1.0, std::abs(v.f1 * ln_det_term) + lambda1 * g1 * r1 + lambda2 * g2 * r2 + 1.0);
    v.in_s = (v.f1 >= -1e-10 * scale1) && (v.f2 <= 1e-10 * scale2);
    return v;
}

double scalar_second_derivative_origin(double c1, double c2, double lambda1) {
    if (!(c1 > 0.0 && c2 > 0.0)) throw std::domain_error("c1, c2 must be > 0");
    const double lambda2 = 1.0 - lambda1;
    const double c = lambda1 * c1 + lambda2 * c2;
    return lambda1 * c1 * std::log(c1) + lambda2 * c2 * std::log(c2) -
           c * std::log(c);
}

bool reduced_convexity_probe(const SpdMatrix& c1, const SpdMatrix& c2, int n_lambda,
                             std::optional<ConvexityCounterexample>* counterexample) {
    if (n_lambda < 3) throw std::domain_error("n_lambda must be >= 3");
    if (counterexample) counterexample->reset();
    const auto n = static_cast<std::size_t>(n_lambda);

    std::vector<SymMatrix> g(n);
    double max_g = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lambda =
            static_cast<double>(i) / static_cast<double>(n_lambda - 1);
        const SpdMatrix m = convex_combine(c1, c2, lambda);
        g[i] = m.to_sym() * m.log_det();
        max_g = std::max(max_g, g[i].max_abs());
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const SymMatrix second_diff = g[i - 1] - g[i] * 2.0 + g[i + 1];
        const double scale = second_diff.max_abs();
        if (scale <= 1e-12 * std::max(1.0, max_g)) continue;  // numerically flat
        const std::vector<double> ev = second_diff.eigenvalues();
        if (ev.front() < -1e-9 * scale) {
            if (counterexample) {
                ConvexityCounterexample ce;
                ce.lambda = static_cast<double>(i) / static_cast<double>(n_lambda - 1);
                ce.min_eigenvalue = ev.front();
                *counterexample = ce;
            }
            return false;
        }
    }
    return true;
}

} // namespace wkfi
