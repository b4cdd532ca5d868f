#include "wkfi/quadrature.hpp"

#include "wkfi/entropy.hpp"

#include "test_util.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <doctest.h>

using namespace wkfi;

TEST_CASE("gauss_hermite small orders match hand values") {
    SUBCASE("order 2") {
        const QuadratureRule rule = gauss_hermite(2);
        CHECK(rule.nodes[0] == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(rule.nodes[1] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(rule.weights[1] == doctest::Approx(0.5).epsilon(1e-13));
    }
    SUBCASE("order 3") {
        const QuadratureRule rule = gauss_hermite(3);
        CHECK(rule.nodes[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-13));
        CHECK(rule.nodes[1] == 0.0);
        CHECK(rule.nodes[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
        CHECK(rule.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
        CHECK(rule.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
        CHECK(rule.weights[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    }
}

TEST_CASE("gauss_hermite rejects out-of-range orders") {
    CHECK_THROWS_AS(gauss_hermite(1), std::domain_error);
    CHECK_THROWS_AS(gauss_hermite(65), std::domain_error);
}

TEST_CASE("gauss_hermite moment invariants across orders") {
    for (int order : {2, 3, 5, 16, 40, 48, 64}) {
        const QuadratureRule rule = gauss_hermite(order);
        double w_sum = 0.0, wx_sum = 0.0, wxx_sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            w_sum += rule.weights[i];
            wx_sum += rule.weights[i] * rule.nodes[i];
            wxx_sum += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
        }
        CHECK(std::abs(w_sum - 1.0) <= 1e-12);
        CHECK(std::abs(wx_sum) <= 1e-12);
        CHECK(std::abs(wxx_sum - 1.0) <= 1e-10);
        // Node symmetry about 0.
        for (std::size_t i = 0; i < rule.nodes.size() / 2; ++i) {
            CHECK(rule.nodes[i] == -rule.nodes[rule.nodes.size() - 1 - i]);
        }
    }
}

TEST_CASE("gaussian_expectation basics") {
    CHECK(gaussian_expectation(SpdMatrix::identity(2),
                               [](const Vec&) { return 1.0; }, 8) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gaussian_expectation(SpdMatrix::identity(2),
                               [](const Vec& x) { return x.dot(x); }, 8) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gaussian_expectation(
              SpdMatrix::scalar(1.0),
              [](const Vec& x) { return std::exp(x[0]); }, 40) ==
          doctest::Approx(std::exp(0.5)).epsilon(1e-10));
}

TEST_CASE("gaussian_expectation reports non-finite integrand with the node") {
    bool thrown = false;
    try {
        gaussian_expectation(
            SpdMatrix::identity(2),
            [](const Vec& x) {
                return x[0] > 1.0 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
            },
            12);
    } catch (const EvaluationError& e) {
        thrown = true;
        CHECK(e.node.dim() == 2);
        CHECK(e.node[0] > 1.0);
    }
    CHECK(thrown);
}

TEST_CASE("alpha_numeric agrees with the closed form") {
    CHECK(alpha_numeric(spd_from_sigma_rho(1.2, 0.4), Vec::zero(2), 12) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(alpha_numeric(SpdMatrix::identity(2), Vec{1.0, 1.0}, 40) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-8));
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const SpdMatrix c = testing::random_spd(rng, d);
        const Vec t = testing::random_vec(rng, d, 1.1);
        const double oracle = alpha_numeric(c, t, 40);
        CHECK(std::abs(alpha_exp(c, t) - oracle) <=
              1e-8 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("phi_numeric values") {
    SUBCASE("t = 0 recovers the covariance") {
        const SpdMatrix c = spd_from_sigma_rho(1.3, -0.45);
        const SymMatrix phi = phi_numeric(c, Vec::zero(2), 20);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(phi(i, j) == doctest::Approx(c(i, j)).epsilon(1e-8));
    }
    SUBCASE("d=1, c=1, t=1 gives the full-moment value 2 sqrt(e)") {
        const SymMatrix phi = phi_numeric(SpdMatrix::scalar(1.0), Vec{1.0}, 40);
        CHECK(phi(0, 0) == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-10));
    }
    SUBCASE("identity, t = (1,0): diagonal pattern {2 sqrt(e), sqrt(e)}") {
        const SymMatrix phi = phi_numeric(SpdMatrix::identity(2), Vec{1.0, 0.0}, 40);
        CHECK(phi(0, 0) == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-9));
        CHECK(phi(1, 1) == doctest::Approx(std::exp(0.5)).epsilon(1e-9));
        CHECK(std::abs(phi(0, 1)) <= 1e-10);
    }
}

TEST_CASE("wde_numeric values") {
    SUBCASE("t = 0 reduces to Shannon entropy") {
        std::mt19937_64 rng(59);
        for (int trial = 0; trial < 10; ++trial) {
            const int d = 1 + static_cast<int>(rng() % 3);
            const SpdMatrix c = testing::random_spd(rng, d);
            CHECK(wde_numeric(c, Vec::zero(d), 20) ==
                  doctest::Approx(shannon_entropy_gaussian(c)).epsilon(1e-8));
        }
    }
    SUBCASE("identity at t = 0") {
        CHECK(wde_numeric(SpdMatrix::identity(2), Vec::zero(2), 20) ==
              doctest::Approx(std::log(2.0 * std::numbers::pi) + 1.0).epsilon(1e-10));
    }
    SUBCASE("d=1, c=1, t=1 arbitration value") {
        const double expected =
            std::exp(0.5) * (0.5 * std::log(2.0 * std::numbers::pi) + 1.0);
        CHECK(wde_numeric(SpdMatrix::scalar(1.0), Vec{1.0}, 40) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("order convergence certificate") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const SpdMatrix c = testing::random_spd(rng, d);
        const Vec t = testing::random_vec(rng, d, 1.1);
        const CertifiedValue cert = certify_expectation(
            c, [&](const Vec& x) { return std::exp(t.dot(x)); });
        CHECK(cert.converged);
        CHECK(cert.rel_change <= 1e-9);
    }
}

TEST_CASE("whitening invariance under an orthogonal change of variables") {
    // E_C[g] computed directly must agree with the expectation under a rotated
    // factor L*Q, applied here by pre-rotating the integrand over the identity.
    const SpdMatrix c = spd_from_sigma_rho(1.4, 0.55);
    const Vec t{0.8, -0.3};
    const auto g = [&](const Vec& x) { return std::exp(t.dot(x)) + x.dot(x); };
    const double direct = gaussian_expectation(c, g, 40);

    const double angle = 0.7;
    const double q00 = std::cos(angle), q01 = -std::sin(angle);
    const double q10 = std::sin(angle), q11 = std::cos(angle);
    const double rotated = gaussian_expectation(
        SpdMatrix::identity(2),
        [&](const Vec& z) {
            // x = L (Q z) for the Cholesky factor L of C.
            Vec qz{q00 * z[0] + q01 * z[1], q10 * z[0] + q11 * z[1]};
            return g(c.chol_mul(qz));
        },
        40);
    CHECK(std::abs(direct - rotated) <= 1e-10 * std::max(1.0, std::abs(direct)));
}
