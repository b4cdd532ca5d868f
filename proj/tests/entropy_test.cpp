#include "wkfi/entropy.hpp"

#include "wkfi/ekfi.hpp"
#include "wkfi/quadrature.hpp"

#include "test_util.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

using namespace wkfi;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("gaussian_pdf reference values") {
    CHECK(gaussian_pdf(SpdMatrix::scalar(1.0), Vec{0.0}) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-12));
    CHECK(gaussian_pdf(SpdMatrix::identity(2), Vec{0.0, 0.0}) ==
          doctest::Approx(0.15915494309189535).epsilon(1e-12));
    CHECK(gaussian_pdf(SpdMatrix::scalar(1.0), Vec{1.0}) ==
          doctest::Approx(0.24197072451914337).epsilon(1e-12));
}

TEST_CASE("shannon_entropy_gaussian reference values") {
    CHECK(shannon_entropy_gaussian(SpdMatrix::scalar(1.0 / (kTwoPi * std::exp(1.0)))) ==
          doctest::Approx(0.0));
    CHECK(shannon_entropy_gaussian(SpdMatrix::identity(2)) ==
          doctest::Approx(std::log(kTwoPi) + 1.0).epsilon(1e-12));
    CHECK(shannon_entropy_gaussian(SpdMatrix::scalar(1.0)) ==
          doctest::Approx(0.5 * (std::log(kTwoPi) + 1.0)).epsilon(1e-12));
}

TEST_CASE("kfi_gap examples") {
    const SpdMatrix c = spd_from_sigma_rho(1.2, 0.3);
    CHECK(kfi_gap(Scenario(c, c, 0.4)) == doctest::Approx(0.0));
    CHECK(kfi_gap(Scenario(c, spd_from_sigma_rho(0.7, -0.2), 1.0)) ==
          doctest::Approx(0.0));
    CHECK(kfi_gap(Scenario(SpdMatrix::scalar(1.0), SpdMatrix::scalar(3.0), 0.5)) ==
          doctest::Approx(0.1438410362258904).epsilon(1e-13));
}

TEST_CASE("alpha_exp examples") {
    const SpdMatrix c = spd_from_sigma_rho(1.0, 0.5);
    CHECK(alpha_exp(c, Vec::zero(2)) == 1.0);
    CHECK(alpha_exp(SpdMatrix::identity(2), Vec{1.0, 1.0}) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-13));
    CHECK(alpha_exp(SpdMatrix::scalar(2.0), Vec{1.0}) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-13));
}

TEST_CASE("phi_matrix_exp variants") {
    SUBCASE("variants agree at t = 0") {
        const SpdMatrix c = spd_from_sigma_rho(1.4, 0.25);
        const auto paper = phi_matrix_exp(c, Vec::zero(2), PhiVariant::paper);
        const auto full = phi_matrix_exp(c, Vec::zero(2), PhiVariant::full_moment);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                CHECK(paper.phi(i, j) == doctest::Approx(c(i, j)));
                CHECK(full.phi(i, j) == doctest::Approx(c(i, j)));
            }
    }
    SUBCASE("d=1, c=1, t=1") {
        const double root_e = std::exp(0.5);
        const auto paper =
            phi_matrix_exp(SpdMatrix::scalar(1.0), Vec{1.0}, PhiVariant::paper);
        const auto full =
            phi_matrix_exp(SpdMatrix::scalar(1.0), Vec{1.0}, PhiVariant::full_moment);
        CHECK(paper.phi(0, 0) == doctest::Approx(root_e).epsilon(1e-13));
        CHECK(full.phi(0, 0) == doctest::Approx(2.0 * root_e).epsilon(1e-13));
    }
    SUBCASE("identity, t = (1, 0)") {
        const auto paper =
            phi_matrix_exp(SpdMatrix::identity(2), Vec{1.0, 0.0}, PhiVariant::paper);
        const double root_e = std::exp(0.5);
        CHECK(paper.phi(0, 0) == doctest::Approx(root_e).epsilon(1e-13));
        CHECK(paper.phi(1, 1) == doctest::Approx(root_e).epsilon(1e-13));
        CHECK(paper.phi(0, 1) == doctest::Approx(0.0));
    }
}

TEST_CASE("sigma_weighted reductions") {
    const SpdMatrix c = spd_from_sigma_rho(1.1, -0.35);
    SUBCASE("constant weight reduces to Shannon entropy") {
        CHECK(sigma_weighted(c, unit_weight(c)) ==
              doctest::Approx(shannon_entropy_gaussian(c)).epsilon(1e-13));
    }
    SUBCASE("paper-form exponential weight is Shannon times alpha") {
        const Vec t{0.7, -0.4};
        CHECK(sigma_weighted(c, phi_matrix_exp(c, t, PhiVariant::paper)) ==
              doctest::Approx(shannon_entropy_gaussian(c) * alpha_exp(c, t))
                  .epsilon(1e-12));
    }
    SUBCASE("d=1, c=1, t=0") {
        const SpdMatrix one = SpdMatrix::scalar(1.0);
        CHECK(sigma_weighted(one, phi_matrix_exp(one, Vec{0.0})) ==
              doctest::Approx(0.5 * (std::log(kTwoPi) + 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("wkfi_conditions equality cases") {
    std::mt19937_64 rng(23);
    SUBCASE("constant weight gives exact equalities") {
        for (int trial = 0; trial < 50; ++trial) {
            const int d = 1 + static_cast<int>(rng() % 3);
            const Scenario s = testing::random_scenario(rng, d);
            const auto report = wkfi_conditions(s, unit_weight(s.c1), unit_weight(s.c2),
                                                unit_weight(s.c));
            CHECK(std::abs(report.alpha_excess) <= 1e-12);
            CHECK(std::abs(report.second_condition) <= 1e-10);
            CHECK(report.satisfied);
        }
    }
    SUBCASE("exponential weight at t = 0") {
        const Scenario s = testing::random_scenario(rng, 2);
        const Vec t = Vec::zero(2);
        const auto report =
            wkfi_conditions(s, phi_matrix_exp(s.c1, t), phi_matrix_exp(s.c2, t),
                            phi_matrix_exp(s.c, t));
        CHECK(std::abs(report.alpha_excess) <= 1e-12);
        CHECK(std::abs(report.second_condition) <= 1e-10);
        CHECK(report.satisfied);
    }
    SUBCASE("coinciding covariances") {
        const SpdMatrix c = spd_from_sigma_rho(0.9, 0.6);
        const Scenario s(c, c, 0.37);
        const Vec t{0.8, 0.1};
        const auto report =
            wkfi_conditions(s, phi_matrix_exp(s.c1, t), phi_matrix_exp(s.c2, t),
                            phi_matrix_exp(s.c, t));
        CHECK(std::abs(report.alpha_excess) <= 1e-10);
        CHECK(std::abs(report.second_condition) <= 1e-9);
        CHECK(report.satisfied);
    }
}

TEST_CASE("wkfi_conditions with exponential paper-form weights equals the F1/F2 pair") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const Scenario s = testing::random_scenario(rng, d);
        const Vec t = testing::random_vec(rng, d, 1.5);
        const auto report =
            wkfi_conditions(s, phi_matrix_exp(s.c1, t), phi_matrix_exp(s.c2, t),
                            phi_matrix_exp(s.c, t));
        const RegionVerdict v = region_membership(s, t);
        const double scale = std::max({1.0, std::abs(v.f1), std::abs(v.f2)});
        CHECK(std::abs(report.alpha_excess - v.f1) <= 1e-10 * scale);
        CHECK(std::abs(report.second_condition - v.f2) <= 1e-9 * scale);
    }
}

TEST_CASE("wkfi_gap trivial cases") {
    const SpdMatrix c = spd_from_sigma_rho(1.5, 0.2);
    const SpdMatrix other = spd_from_sigma_rho(0.8, -0.5);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec t = testing::random_vec(rng, 2, 2.0);
        CHECK(std::abs(wkfi_gap(Scenario(c, c, 0.42), t)) <= 1e-10);
        CHECK(std::abs(wkfi_gap(Scenario(c, other, 0.0), t)) <= 1e-10);
        CHECK(std::abs(wkfi_gap(Scenario(c, other, 1.0), t)) <= 1e-10);
    }
}

TEST_CASE("constant-weight gap reduces to the entropy-form gap") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const Scenario s = testing::random_scenario(rng, d);
        const double entropy_gap = shannon_entropy_gaussian(s.c) -
                                   s.lambda1 * shannon_entropy_gaussian(s.c1) -
                                   s.lambda2 * shannon_entropy_gaussian(s.c2);
        const double weighted_gap =
            sigma_weighted(s.c, unit_weight(s.c)) -
            s.lambda1 * sigma_weighted(s.c1, unit_weight(s.c1)) -
            s.lambda2 * sigma_weighted(s.c2, unit_weight(s.c2));
        CHECK(weighted_gap ==
              doctest::Approx(entropy_gap).epsilon(1e-12).scale(1.0));
        CHECK(entropy_gap == doctest::Approx(0.5 * kfi_gap(s)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("weighted gap carries half the doubled-log convention of Sigma") {
    // Sigma(t) uses ln((2 pi e)^d det C) = 2 h(C), so Sigma = 2 * wkfi_gap for
    // the paper-form Phi.  Recorded as an identity, not reconciled silently.
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const Scenario s = testing::random_scenario(rng, d);
        const Vec t = testing::random_vec(rng, d, 1.5);
        const double sigma = sigma_big(s, t);
        const double gap = wkfi_gap(s, t, PhiVariant::paper);
        CHECK(std::abs(sigma - 2.0 * gap) <= 1e-12 * std::max(1.0, std::abs(sigma)));
    }
}

TEST_CASE("positivity of the weighted gap on S") {
    std::mt19937_64 rng(43);
    int members = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const Scenario s = testing::random_scenario(rng, d);
        const Vec t = testing::random_vec(rng, d, 1.5);
        if (!region_membership(s, t).in_s) continue;
        ++members;
        CHECK(wkfi_gap(s, t) >= -1e-10);
    }
    CHECK(members > 0);
}

TEST_CASE("oracle agreement for the uncontested closed forms") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 2);
        const SpdMatrix c = testing::random_spd(rng, d);
        Vec t = testing::random_vec(rng, d, 1.0);
        const double alpha_oracle = alpha_numeric(c, t, 40);
        CHECK(std::abs(alpha_exp(c, t) - alpha_oracle) <=
              1e-8 * std::max(1.0, std::abs(alpha_oracle)));
        const double wde_oracle = wde_numeric(c, t, 40);
        const double sigma_full =
            sigma_weighted(c, phi_matrix_exp(c, t, PhiVariant::full_moment));
        CHECK(std::abs(sigma_full - wde_oracle) <=
              1e-8 * std::max(1.0, std::abs(wde_oracle)));
    }
}
