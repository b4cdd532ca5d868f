#include "wkfi/entropy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wkfi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double ln_two_pi_det(const SpdMatrix& c) {
    return c.dim() * std::log(kTwoPi) + c.log_det();
}

} // namespace

Scenario::Scenario(SpdMatrix c1_in, SpdMatrix c2_in, double lambda1_in)
    : c1(std::move(c1_in)),
      c2(std::move(c2_in)),
      lambda1(lambda1_in),
      lambda2(1.0 - lambda1_in),
      c(convex_combine(c1, c2, lambda1_in)) {
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
        throw std::domain_error("lambda1 must be in [0, 1]");
    }
}

double gaussian_pdf(const SpdMatrix& c, const Vec& x) {
    const int d = c.dim();
    const double log_norm = -0.5 * (d * std::log(kTwoPi) + c.log_det());
    return std::exp(log_norm - 0.5 * c.inv_quad_form(x));
}

double shannon_entropy_gaussian(const SpdMatrix& c) {
    return 0.5 * (ln_two_pi_det(c) + c.dim());
}

double kfi_gap(const Scenario& s) {
    return s.c.log_det() - s.lambda1 * s.c1.log_det() - s.lambda2 * s.c2.log_det();
}

double alpha_exp(const SpdMatrix& c, const Vec& t) {
    return std::exp(0.5 * quad_form(c, t));
}

WeightFunctional phi_matrix_exp(const SpdMatrix& c, const Vec& t, PhiVariant variant) {
    WeightFunctional w;
    w.alpha = alpha_exp(c, t);
    SymMatrix phi = c.to_sym();
    if (variant == PhiVariant::full_moment) {
        const Vec ct = c.mul(t);
        SymMatrix outer(c.dim());
        for (int i = 0; i < c.dim(); ++i)
            for (int j = 0; j <= i; ++j) outer.set(i, j, ct[i] * ct[j]);
        phi = phi + outer;
    }
    w.phi = phi * w.alpha;
    return w;
}

double sigma_weighted(const SpdMatrix& c, const WeightFunctional& w) {
    double tr = 0.0;
    for (int j = 0; j < c.dim(); ++j) {
        Vec col(c.dim());
        for (int i = 0; i < c.dim(); ++i) col[i] = w.phi(i, j);
        tr += c.solve(col)[j];
    }
    return 0.5 * (w.alpha * ln_two_pi_det(c) + tr);
}

WeightFunctional unit_weight(const SpdMatrix& c) {
    WeightFunctional w;
    w.alpha = 1.0;
    w.phi = c.to_sym();
    return w;
}

ConditionReport wkfi_conditions(const Scenario& s, const WeightFunctional& w1,
                                const WeightFunctional& w2, const WeightFunctional& w) {
    ConditionReport r;
    r.alpha_excess = s.lambda1 * w1.alpha + s.lambda2 * w2.alpha - w.alpha;
    r.psi = w1.phi * s.lambda1 + w2.phi * s.lambda2 - w.phi;
    double tr_psi = 0.0;
    for (int j = 0; j < s.dim(); ++j) {
        Vec col(s.dim());
        for (int i = 0; i < s.dim(); ++i) col[i] = r.psi(i, j);
        tr_psi += s.c.solve(col)[j];
    }
    const double ln_det_term = ln_two_pi_det(s.c);
    r.second_condition = r.alpha_excess * ln_det_term + tr_psi;
    // Relative tolerance scaled by the magnitudes of the compared terms, so the
    // exact-equality boundary (t = 0) classifies as satisfied.
    const double scale1 = std::max(
        1.0, s.lambda1 * w1.alpha + s.lambda2 * w2.alpha + w.alpha);
    const double scale2 = std::max(
        1.0, std::abs(r.alpha_excess * ln_det_term) + std::abs(tr_psi));
    r.satisfied = (r.alpha_excess >= -1e-10 * scale1) &&
                  (r.second_condition <= 1e-10 * scale2);
    return r;
}

double wkfi_gap(const Scenario& s, const Vec& t, PhiVariant variant) {
    const WeightFunctional w1 = phi_matrix_exp(s.c1, t, variant);
    const WeightFunctional w2 = phi_matrix_exp(s.c2, t, variant);
    const WeightFunctional w = phi_matrix_exp(s.c, t, variant);
    return sigma_weighted(s.c, w) - s.lambda1 * sigma_weighted(s.c1, w1) -
           s.lambda2 * sigma_weighted(s.c2, w2);
}

} // namespace wkfi
