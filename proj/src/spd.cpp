#include "wkfi/spd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wkfi {

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw std::domain_error("dimension must be in [1, " +
                                std::to_string(kMaxDim) + "], got " +
                                std::to_string(dim));
    }
}

void check_same_dim(int a, int b) {
    if (a != b) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                    " vs " + std::to_string(b));
    }
}

} // namespace

Vec::Vec(int dim) : dim_(dim) {
    check_dim(dim);
}

Vec::Vec(std::initializer_list<double> values)
    : dim_(static_cast<int>(values.size())) {
    check_dim(dim_);
    std::copy(values.begin(), values.end(), e_.begin());
}

double Vec::dot(const Vec& other) const {
    check_same_dim(dim_, other.dim_);
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += e_[static_cast<std::size_t>(i)] * other[i];
    return s;
}

double Vec::norm() const {
    return std::sqrt(dot(*this));
}

Vec Vec::operator+(const Vec& other) const {
    check_same_dim(dim_, other.dim_);
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = (*this)[i] + other[i];
    return r;
}

Vec Vec::operator-(const Vec& other) const {
    check_same_dim(dim_, other.dim_);
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = (*this)[i] - other[i];
    return r;
}

Vec Vec::operator*(double scalar) const {
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = (*this)[i] * scalar;
    return r;
}

SymMatrix::SymMatrix(int dim) : dim_(dim) {
    check_dim(dim);
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
    check_same_dim(dim_, other.dim_);
    SymMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.a_[r.idx(i, j)] = (*this)(i, j) + other(i, j);
    return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
    check_same_dim(dim_, other.dim_);
    SymMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.a_[r.idx(i, j)] = (*this)(i, j) - other(i, j);
    return r;
}

SymMatrix SymMatrix::operator*(double scalar) const {
    SymMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.a_[r.idx(i, j)] = (*this)(i, j) * scalar;
    return r;
}

Vec SymMatrix::apply(const Vec& t) const {
    check_same_dim(dim_, t.dim());
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * t[j];
        r[i] = s;
    }
    return r;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

double SymMatrix::frobenius_distance(const SymMatrix& other) const {
    check_same_dim(dim_, other.dim_);
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            const double d = (*this)(i, j) - other(i, j);
            s += d * d;
        }
    return std::sqrt(s);
}

std::vector<double> SymMatrix::eigenvalues() const {
    if (dim_ == 1) return {(*this)(0, 0)};
    if (dim_ == 2) {
        const double a = (*this)(0, 0), b = (*this)(0, 1), c = (*this)(1, 1);
        const double mean = 0.5 * (a + c);
        const double r = std::hypot(0.5 * (a - c), b);
        return {mean - r, mean + r};
    }
    // Cyclic Jacobi sweeps for d = 3.
    std::array<std::array<double, 3>, 3> m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) off += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (off < 1e-30 * (1.0 + max_abs() * max_abs())) break;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                auto& mp = m;
                const double apq = mp[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                if (apq == 0.0) continue;
                const double app = mp[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)];
                const double aqq = mp[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)];
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = mp[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
                    const double mkq = mp[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)];
                    mp[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] = c * mkp - s * mkq;
                    mp[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = mp[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)];
                    const double mqk = mp[static_cast<std::size_t>(q)][static_cast<std::size_t>(k)];
                    mp[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] = c * mpk - s * mqk;
                    mp[static_cast<std::size_t>(q)][static_cast<std::size_t>(k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev = {m[0][0], m[1][1], m[2][2]};
    std::sort(ev.begin(), ev.end());
    return ev;
}

SpdMatrix::SpdMatrix(int dim, const std::vector<double>& row_major) : dim_(dim) {
    check_dim(dim);
    if (row_major.size() != static_cast<std::size_t>(dim * dim)) {
        throw std::invalid_argument("expected " + std::to_string(dim * dim) +
                                    " entries, got " + std::to_string(row_major.size()));
    }
    // Mirror the lower triangle so the stored matrix is exactly symmetric.
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double v = row_major[idx(i, j)];
            a_[idx(i, j)] = v;
            a_[idx(j, i)] = v;
        }
    }
    factorize();
}

SpdMatrix SpdMatrix::identity(int dim) {
    check_dim(dim);
    std::vector<double> entries(static_cast<std::size_t>(dim * dim), 0.0);
    for (int i = 0; i < dim; ++i) entries[static_cast<std::size_t>(i * dim + i)] = 1.0;
    return SpdMatrix(dim, entries);
}

SpdMatrix SpdMatrix::scalar(double c) {
    return SpdMatrix(1, {c});
}

void SpdMatrix::factorize() {
    double max_diag = 0.0;
    for (int i = 0; i < dim_; ++i) max_diag = std::max(max_diag, a_[idx(i, i)]);
    if (!(max_diag > 0.0)) {
        throw std::domain_error("matrix is not positive definite (non-positive diagonal)");
    }
    const double pivot_floor = 1e-10 * max_diag;
    double ld = 0.0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a_[idx(i, j)];
            for (int k = 0; k < j; ++k) s -= l_[idx(i, k)] * l_[idx(j, k)];
            if (i == j) {
                if (s < pivot_floor) {
                    throw std::domain_error(
                        "matrix is not (strictly) positive definite: Cholesky pivot " +
                        std::to_string(s) + " below threshold");
                }
                l_[idx(i, i)] = std::sqrt(s);
                ld += std::log(l_[idx(i, i)]);
            } else {
                l_[idx(i, j)] = s / l_[idx(j, j)];
            }
        }
    }
    log_det_ = 2.0 * ld;
}

double SpdMatrix::det() const {
    double p = 1.0;
    for (int i = 0; i < dim_; ++i) p *= l_[idx(i, i)] * l_[idx(i, i)];
    return p;
}

Vec SpdMatrix::mul(const Vec& t) const {
    check_same_dim(dim_, t.dim());
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += a_[idx(i, j)] * t[j];
        r[i] = s;
    }
    return r;
}

Vec SpdMatrix::chol_mul(const Vec& z) const {
    check_same_dim(dim_, z.dim());
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) s += l_[idx(i, j)] * z[j];
        r[i] = s;
    }
    return r;
}

Vec SpdMatrix::solve(const Vec& b) const {
    check_same_dim(dim_, b.dim());
    Vec y(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = b[i];
        for (int j = 0; j < i; ++j) s -= l_[idx(i, j)] * y[j];
        y[i] = s / l_[idx(i, i)];
    }
    Vec x(dim_);
    for (int i = dim_ - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < dim_; ++j) s -= l_[idx(j, i)] * x[j];
        x[i] = s / l_[idx(i, i)];
    }
    return x;
}

double SpdMatrix::inv_quad_form(const Vec& x) const {
    check_same_dim(dim_, x.dim());
    // x' C^{-1} x = ||L^{-1} x||^2 via one forward solve.
    Vec y(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= l_[idx(i, j)] * y[j];
        y[i] = s / l_[idx(i, i)];
    }
    return y.dot(y);
}

SymMatrix SpdMatrix::to_sym() const {
    SymMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j <= i; ++j) r.set(i, j, a_[idx(i, j)]);
    return r;
}

SpdMatrix spd_from_sigma_rho(double sigma, double rho) {
    if (!(sigma > 0.0)) throw std::domain_error("sigma must be > 0");
    if (!(std::abs(rho) < 1.0)) throw std::domain_error("|rho| must be < 1");
    const double s2 = sigma * sigma;
    return SpdMatrix(2, {s2, rho * s2, rho * s2, s2});
}

SpdMatrix convex_combine(const SpdMatrix& c1, const SpdMatrix& c2, double lambda1) {
    check_same_dim(c1.dim(), c2.dim());
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
        throw std::domain_error("lambda1 must be in [0, 1]");
    }
    const double lambda2 = 1.0 - lambda1;
    const int d = c1.dim();
    std::vector<double> entries(static_cast<std::size_t>(d * d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            entries[static_cast<std::size_t>(i * d + j)] =
                lambda1 * c1(i, j) + lambda2 * c2(i, j);
    return SpdMatrix(d, entries);
}

double log_det(const SpdMatrix& c) {
    return c.log_det();
}

double quad_form(const SpdMatrix& c, const Vec& t) {
    check_same_dim(c.dim(), t.dim());
    double s = 0.0;
    for (int i = 0; i < c.dim(); ++i)
        for (int j = 0; j < c.dim(); ++j) s += t[i] * c(i, j) * t[j];
    return s;
}

double trace_inverse_product(const SpdMatrix& c, const SpdMatrix& a) {
    check_same_dim(c.dim(), a.dim());
    double tr = 0.0;
    for (int j = 0; j < a.dim(); ++j) {
        Vec col(a.dim());
        for (int i = 0; i < a.dim(); ++i) col[i] = a(i, j);
        tr += c.solve(col)[j];
    }
    return tr;
}

} // namespace wkfi
