#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace wkfi {

inline constexpr int kMaxDim = 3;

// Small fixed-capacity real vector, dimensions 1..3.
class Vec {
  public:
    Vec() = default;
    explicit Vec(int dim);
    Vec(std::initializer_list<double> values);
    static Vec zero(int dim) { return Vec(dim); }

    int dim() const { return dim_; }
    double operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }

    double dot(const Vec& other) const;
    double norm() const;

    Vec operator+(const Vec& other) const;
    Vec operator-(const Vec& other) const;
    Vec operator*(double scalar) const;

  private:
    int dim_ = 0;
    std::array<double, kMaxDim> e_{};
};

// General symmetric matrix (no definiteness requirement), dimensions 1..3.
class SymMatrix {
  public:
    SymMatrix() = default;
    explicit SymMatrix(int dim);
    static SymMatrix zero(int dim) { return SymMatrix(dim); }

    int dim() const { return dim_; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, double value) {
        a_[idx(i, j)] = value;
        a_[idx(j, i)] = value;
    }

    SymMatrix operator+(const SymMatrix& other) const;
    SymMatrix operator-(const SymMatrix& other) const;
    SymMatrix operator*(double scalar) const;

    Vec apply(const Vec& t) const;
    double max_abs() const;
    double frobenius_distance(const SymMatrix& other) const;

    // Eigenvalues sorted ascending: closed form for d<=2, cyclic Jacobi for d=3.
    std::vector<double> eigenvalues() const;

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i * dim_ + j);
    }
    int dim_ = 0;
    std::array<double, kMaxDim * kMaxDim> a_{};
};

// Symmetric positive-definite matrix with a cached lower Cholesky factor.
// Construction symmetrizes by mirroring the lower triangle and rejects
// near-singular input (pivot < 1e-10 * max diagonal).
class SpdMatrix {
  public:
    SpdMatrix(int dim, const std::vector<double>& row_major);
    static SpdMatrix identity(int dim);
    static SpdMatrix scalar(double c);  // d = 1

    int dim() const { return dim_; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }
    double chol(int i, int j) const { return l_[idx(i, j)]; }

    double log_det() const { return log_det_; }
    double det() const;

    Vec mul(const Vec& t) const;            // C t
    Vec chol_mul(const Vec& z) const;       // L z
    Vec solve(const Vec& b) const;          // C^{-1} b via the factor
    double inv_quad_form(const Vec& x) const;  // x' C^{-1} x

    SymMatrix to_sym() const;

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i * dim_ + j);
    }
    void factorize();

    int dim_ = 0;
    std::array<double, kMaxDim * kMaxDim> a_{};
    std::array<double, kMaxDim * kMaxDim> l_{};
    double log_det_ = 0.0;
};

SpdMatrix spd_from_sigma_rho(double sigma, double rho);
SpdMatrix convex_combine(const SpdMatrix& c1, const SpdMatrix& c2, double lambda1);
double log_det(const SpdMatrix& c);
double quad_form(const SpdMatrix& c, const Vec& t);
double trace_inverse_product(const SpdMatrix& c, const SpdMatrix& a);

} // namespace wkfi
