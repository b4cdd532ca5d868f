#include "wkfi/spd.hpp"

#include "test_util.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

using namespace wkfi;

TEST_CASE("spd_from_sigma_rho basic forms") {
    const SpdMatrix id = spd_from_sigma_rho(1.0, 0.0);
    CHECK(id(0, 0) == doctest::Approx(1.0));
    CHECK(id(0, 1) == doctest::Approx(0.0));
    CHECK(id(1, 1) == doctest::Approx(1.0));

    const SpdMatrix diag = spd_from_sigma_rho(2.0, 0.0);
    CHECK(diag(0, 0) == doctest::Approx(4.0));
    CHECK(diag(1, 1) == doctest::Approx(4.0));
    CHECK(diag(0, 1) == doctest::Approx(0.0));

    const SpdMatrix corr = spd_from_sigma_rho(1.0, 0.5);
    CHECK(corr(0, 0) == doctest::Approx(1.0));
    CHECK(corr(0, 1) == doctest::Approx(0.5));
    CHECK(corr.det() == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("spd_from_sigma_rho rejects bad parameters") {
    CHECK_THROWS_AS(spd_from_sigma_rho(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(spd_from_sigma_rho(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(spd_from_sigma_rho(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(spd_from_sigma_rho(1.0, -1.5), std::domain_error);
}

TEST_CASE("construction rejects invalid matrices") {
    CHECK_THROWS_AS(SpdMatrix(2, {1.0, 1.0, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(SpdMatrix(2, {1.0, 0.0, 0.0, -1.0}), std::domain_error);
    CHECK_THROWS_AS(SpdMatrix(2, {1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SpdMatrix(4, std::vector<double>(16, 1.0)), std::domain_error);
    // Near-singular: pivot below 1e-10 * max diagonal.
    CHECK_THROWS_AS(SpdMatrix(2, {1.0, 1.0 - 1e-12, 1.0 - 1e-12, 1.0}),
                    std::domain_error);
}

TEST_CASE("construction symmetrizes from the lower triangle") {
    const SpdMatrix m(2, {2.0, 99.0, 0.5, 1.0});
    CHECK(m(0, 1) == 0.5);
    CHECK(m(1, 0) == 0.5);
}

TEST_CASE("convex_combine") {
    const SpdMatrix c1 = spd_from_sigma_rho(1.0, 0.5);
    const SpdMatrix c2 = spd_from_sigma_rho(2.0, -0.3);
    SUBCASE("equal arguments") {
        const SpdMatrix r = convex_combine(c1, c1, 0.3);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(r(i, j) == doctest::Approx(c1(i, j)));
    }
    SUBCASE("endpoint") {
        const SpdMatrix r = convex_combine(c1, c2, 1.0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(r(i, j) == doctest::Approx(c1(i, j)));
    }
    SUBCASE("scalar average") {
        const SpdMatrix r =
            convex_combine(SpdMatrix::scalar(1.0), SpdMatrix::scalar(3.0), 0.5);
        CHECK(r(0, 0) == doctest::Approx(2.0));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(convex_combine(c1, SpdMatrix::scalar(1.0), 0.5),
                        std::invalid_argument);
    }
    SUBCASE("lambda out of range") {
        CHECK_THROWS_AS(convex_combine(c1, c2, 1.5), std::domain_error);
    }
}

TEST_CASE("log_det") {
    CHECK(log_det(SpdMatrix::identity(3)) == doctest::Approx(0.0));
    CHECK(log_det(spd_from_sigma_rho(1.0, 0.5)) ==
          doctest::Approx(-0.2876820724517809).epsilon(1e-14));
    CHECK(log_det(SpdMatrix::scalar(std::exp(1.0))) == doctest::Approx(1.0));
}

TEST_CASE("quad_form") {
    const SpdMatrix c = spd_from_sigma_rho(1.0, 0.5);
    CHECK(quad_form(c, Vec::zero(2)) == 0.0);
    CHECK(quad_form(SpdMatrix::identity(2), Vec{1.0, 1.0}) == doctest::Approx(2.0));
    CHECK(quad_form(c, Vec{1.0, -1.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(quad_form(c, Vec{1.0}), std::invalid_argument);
}

TEST_CASE("trace_inverse_product") {
    const SpdMatrix c = spd_from_sigma_rho(1.3, 0.4);
    CHECK(trace_inverse_product(c, c) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(trace_inverse_product(SpdMatrix::identity(2),
                                spd_from_sigma_rho(2.0, 0.0)) ==
          doctest::Approx(8.0));
    CHECK(trace_inverse_product(SpdMatrix::scalar(2.0), SpdMatrix::scalar(3.0)) ==
          doctest::Approx(1.5));
}

TEST_CASE("Ky Fan concavity property on random SPD inputs") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const SpdMatrix c1 = testing::random_spd(rng, d);
        const SpdMatrix c2 = testing::random_spd(rng, d);
        const double lambda = uniform(rng);
        const SpdMatrix mix = convex_combine(c1, c2, lambda);
        CHECK(log_det(mix) >=
              lambda * log_det(c1) + (1.0 - lambda) * log_det(c2) - 1e-12);
    }
}

TEST_CASE("quad_form positive definiteness on random directions") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const SpdMatrix c = testing::random_spd(rng, d);
        Vec t = testing::random_vec(rng, d, 2.0);
        if (t.norm() == 0.0) t[0] = 0.5;
        CHECK(quad_form(c, t) > 0.0);
    }
}

TEST_CASE("Cholesky factor reconstructs the matrix") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const SpdMatrix c = testing::random_spd(rng, d);
        double max_entry = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                max_entry = std::max(max_entry, std::abs(c(i, j)));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                double recon = 0.0;
                for (int k = 0; k < d; ++k) recon += c.chol(i, k) * c.chol(j, k);
                CHECK(std::abs(recon - c(i, j)) <= 1e-12 * max_entry);
            }
        }
    }
}

TEST_CASE("log_det equals twice the log of the factor diagonal") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const SpdMatrix c = testing::random_spd(rng, d);
        double ld = 0.0;
        for (int i = 0; i < d; ++i) ld += 2.0 * std::log(c.chol(i, i));
        CHECK(c.log_det() == doctest::Approx(ld).epsilon(1e-14));
    }
}

TEST_CASE("SymMatrix eigenvalues") {
    SUBCASE("closed form d=2") {
        SymMatrix m(2);
        m.set(0, 0, 2.0);
        m.set(1, 1, 2.0);
        m.set(0, 1, 1.0);
        const auto ev = m.eigenvalues();
        CHECK(ev[0] == doctest::Approx(1.0));
        CHECK(ev[1] == doctest::Approx(3.0));
    }
    SUBCASE("Jacobi d=3 recovers rotated eigenvalues") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            const SpdMatrix c = testing::random_spd(rng, 3, 0.5, 2.5);
            const auto ev = c.to_sym().eigenvalues();
            double trace = 0.0, det_from_ev = 1.0;
            for (double e : ev) {
                CHECK(e > 0.0);
                trace += e;
                det_from_ev *= e;
            }
            CHECK(trace == doctest::Approx(c(0, 0) + c(1, 1) + c(2, 2)).epsilon(1e-10));
            CHECK(det_from_ev == doctest::Approx(c.det()).epsilon(1e-9));
            CHECK(ev[0] <= ev[1]);
            CHECK(ev[1] <= ev[2]);
        }
    }
}

TEST_CASE("solve and inverse quadratic form") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const SpdMatrix c = testing::random_spd(rng, d);
        const Vec b = testing::random_vec(rng, d, 1.5);
        const Vec x = c.solve(b);
        const Vec back = c.mul(x);
        for (int i = 0; i < d; ++i) CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-10));
        CHECK(c.inv_quad_form(b) == doctest::Approx(b.dot(x)).epsilon(1e-10));
    }
}
