#pragma once

#include "wkfi/spd.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace wkfi {

// Probabilists' convention: integrates against the standard normal density,
// exact for polynomials up to degree 2n-1.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Non-finite integrand value at a quadrature node.
struct EvaluationError : std::runtime_error {
    EvaluationError(const std::string& message, Vec node_in)
        : std::runtime_error(message), node(node_in) {}
    Vec node;
};

// Golub-Welsch on the symmetric tridiagonal Jacobi matrix (off-diagonals sqrt(k)).
QuadratureRule gauss_hermite(int order);

// Whitens via x = L z and accumulates the tensor-product sum.
double gaussian_expectation(const SpdMatrix& c,
                            const std::function<double(const Vec&)>& g, int order);

double alpha_numeric(const SpdMatrix& c, const Vec& t, int order);
SymMatrix phi_numeric(const SpdMatrix& c, const Vec& t, int order);
double wde_numeric(const SpdMatrix& c, const Vec& t, int order);

// Two-order convergence certificate: value at order_hi with the relative
// change from order_lo.  converged <=> rel_change <= tol.
struct CertifiedValue {
    double value = 0.0;
    double rel_change = 0.0;
    bool converged = false;
};

CertifiedValue certify_expectation(const SpdMatrix& c,
                                   const std::function<double(const Vec&)>& g,
                                   int order_lo = 40, int order_hi = 48,
                                   double tol = 1e-9);

} // namespace wkfi
