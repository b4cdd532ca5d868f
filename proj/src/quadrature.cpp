#include "wkfi/quadrature.hpp"

#include "wkfi/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace wkfi {

namespace {

// Implicit-shift QL on a symmetric tridiagonal matrix, updating the first-row
// eigenvector components z alongside (the Golub-Welsch weight vector).
void imtqlx(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    const double prec = std::numeric_limits<double>::epsilon();
    e[static_cast<std::size_t>(n - 1)] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1) {
                const double dd = std::abs(d[static_cast<std::size_t>(m)]) +
                                  std::abs(d[static_cast<std::size_t>(m + 1)]);
                if (std::abs(e[static_cast<std::size_t>(m)]) <= prec * dd) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > 50) {
                throw std::runtime_error("gauss_hermite: QL iteration failed to converge");
            }
            double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) /
                       (2.0 * e[static_cast<std::size_t>(l)]);
            double r = std::hypot(g, 1.0);
            g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
                e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[static_cast<std::size_t>(i)];
                const double b = c * e[static_cast<std::size_t>(i)];
                r = std::hypot(f, g);
                e[static_cast<std::size_t>(i + 1)] = r;
                if (r == 0.0) {
                    d[static_cast<std::size_t>(i + 1)] -= p;
                    e[static_cast<std::size_t>(m)] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[static_cast<std::size_t>(i + 1)] - p;
                r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
                p = s * r;
                d[static_cast<std::size_t>(i + 1)] = g + p;
                g = c * r - b;
                f = z[static_cast<std::size_t>(i + 1)];
                z[static_cast<std::size_t>(i + 1)] = s * z[static_cast<std::size_t>(i)] + c * f;
                z[static_cast<std::size_t>(i)] = c * z[static_cast<std::size_t>(i)] - s * f;
            }
            d[static_cast<std::size_t>(l)] -= p;
            e[static_cast<std::size_t>(l)] = g;
            e[static_cast<std::size_t>(m)] = 0.0;
        }
    }
}

} // namespace

QuadratureRule gauss_hermite(int order) {
    if (order < 2 || order > 64) {
        throw std::domain_error("gauss_hermite order must be in [2, 64]");
    }
    const auto n = static_cast<std::size_t>(order);
    std::vector<double> diag(n, 0.0);
    std::vector<double> sub(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;  // mu0 = 1 for the standard normal measure
    imtqlx(diag, sub, z);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = diag[perm[i]];
        rule.weights[i] = z[perm[i]] * z[perm[i]];
    }
    // Enforce the exact node/weight symmetry about 0.
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t j = n - 1 - i;
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

double gaussian_expectation(const SpdMatrix& c,
                            const std::function<double(const Vec&)>& g, int order) {
    const QuadratureRule rule = gauss_hermite(order);
    const int d = c.dim();
    std::array<int, kMaxDim> idx{};
    double sum = 0.0, comp = 0.0;  // Kahan compensation
    for (;;) {
        Vec z(d);
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            z[k] = rule.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            w *= rule.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
        }
        const Vec x = c.chol_mul(z);
        const double value = g(x);
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << "integrand not finite at node (";
            for (int k = 0; k < d; ++k) msg << (k ? ", " : "") << x[k];
            msg << ")";
            throw EvaluationError(msg.str(), x);
        }
        const double term = w * value;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        int k = 0;
        while (k < d && ++idx[static_cast<std::size_t>(k)] == order) {
            idx[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == d) break;
    }
    return sum;
}

double alpha_numeric(const SpdMatrix& c, const Vec& t, int order) {
    return gaussian_expectation(
        c, [&](const Vec& x) { return std::exp(t.dot(x)); }, order);
}

SymMatrix phi_numeric(const SpdMatrix& c, const Vec& t, int order) {
    SymMatrix phi(c.dim());
    for (int i = 0; i < c.dim(); ++i) {
        for (int j = 0; j <= i; ++j) {
            const double value = gaussian_expectation(
                c, [&](const Vec& x) { return x[i] * x[j] * std::exp(t.dot(x)); },
                order);
            phi.set(i, j, value);
        }
    }
    return phi;
}

double wde_numeric(const SpdMatrix& c, const Vec& t, int order) {
    return gaussian_expectation(
        c,
        [&](const Vec& x) {
            return -std::exp(t.dot(x)) * std::log(gaussian_pdf(c, x));
        },
        order);
}

CertifiedValue certify_expectation(const SpdMatrix& c,
                                   const std::function<double(const Vec&)>& g,
                                   int order_lo, int order_hi, double tol) {
    CertifiedValue r;
    const double lo = gaussian_expectation(c, g, order_lo);
    const double hi = gaussian_expectation(c, g, order_hi);
    r.value = hi;
    const double denom = std::max(std::abs(hi), 1e-300);
    r.rel_change = std::abs(lo - hi) / denom;
    r.converged = r.rel_change <= tol;
    return r;
}

} // namespace wkfi
