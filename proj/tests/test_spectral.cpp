#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fade/spectral.hpp"
#include "oracle_common.hpp"

using namespace fade;

TEST_CASE("subcritical closed form") {
    // exact rational arithmetic: 8 * (1/5)(4/5) / [3 (1/5 - 1/3)]^2 = 8
    Exponents e = derive_exponents(0.2, 5);
    CHECK(exact_gap_subcritical(e) == doctest::Approx(8.0).epsilon(1e-13));
    // blows up toward m_star
    Exponents near = derive_exponents(1.0 / 3.0 - 1e-6, 5);
    CHECK(exact_gap_subcritical(near) > 1e9);
    // d = 4 has no subcritical branch
    CHECK_THROWS_AS(exact_gap_subcritical(derive_exponents(0.2, 4)), regime_error);
    CHECK_THROWS_AS(exact_gap_subcritical(derive_exponents(0.5, 5)), regime_error);
}

TEST_CASE("weighted Hardy constant") {
    CHECK(hardy_constant(0.0, 3) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(hardy_constant(-2.0, 5) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(hardy_constant(1.0 - 2.5, 5), regime_error);  // alpha_star = 1 - d/2
    // consistency: (2m/(1-m)) kappa_{1/(m-1)} equals the subcritical constant
    Exponents e = derive_exponents(0.2, 5);
    double lhs = 2.0 * e.m / (1.0 - e.m) * hardy_constant(1.0 / (e.m - 1.0), 5);
    CHECK(lhs == doctest::Approx(exact_gap_subcritical(e)).epsilon(1e-13));
}

TEST_CASE("Hardy optimality witnesses approach 1/kappa from above") {
    // closed-form cross-check for the growing family at (alpha, d) = (-2, 5):
    // Q(eps) = ((1/2+eps)^2/(2 eps) + 1) / (1/(2 eps) + 3 - 4 log 2)
    double eps = 1e-2;
    double qexp = (std::pow(0.5 + eps, 2) / (2 * eps) + 1.0) /
                  (1.0 / (2 * eps) + 3.0 - 4.0 * std::log(2.0));
    CHECK(hardy_rayleigh_quotient(-2.0, 5, eps) == doctest::Approx(qexp).epsilon(1e-9));

    for (auto [alpha, d] : std::vector<std::pair<double, int>>{{0.0, 3}, {-2.0, 5}}) {
        double target = 1.0 / hardy_constant(alpha, d);
        double prev = 1e300;
        for (double e2 : {1e-1, 1e-2, 1e-3}) {
            double q = hardy_rayleigh_quotient(alpha, d, e2);
            CHECK(q > target);
            CHECK(q < prev);
            prev = q;
        }
        // capped family converges logarithmically: drive eps far down
        double eps_small = (alpha > 1.0 - 0.5 * d) ? 1e-22 : 1e-4;
        double q = hardy_rayleigh_quotient(alpha, d, eps_small);
        CHECK(q == doctest::Approx(target).epsilon(0.02));
    }
}

TEST_CASE("median of mu") {
    // at m = (d-2)/(d-1) the weight is symmetric under r -> 1/r: eta = 1
    SpectralWeights w{0.5, 3};
    double eta = median_eta(w);
    CHECK(eta == doctest::Approx(1.0).epsilon(1e-8));
    // defining property at another point
    SpectralWeights w2{0.55, 5};
    double eta2 = median_eta(w2);
    double half = w2.integral_mu(0.0, eta2);
    double total = w2.integral_mu(0.0, 10.0) + w2.integral_mu_tail(10.0);
    CHECK(half == doctest::Approx(0.5 * total).epsilon(1e-9));
    // not defined below m_star
    SpectralWeights bad{0.2, 5};
    CHECK_THROWS_AS(median_eta(bad), regime_error);
}

TEST_CASE("Muckenhoupt constant at the median") {
    SpectralWeights w{0.5, 3};
    double eta = median_eta(w);
    // frozen dense-scan + golden oracle (25-digit quadrature): K*(0.5, 3)
    const double K_oracle = 0.277244830444;
    double K = muckenhoupt_K(eta, w);
    CHECK(K == doctest::Approx(K_oracle).epsilon(1e-6));
    // K(0) is a d = 1 convention; for d >= 2 the inner integral diverges
    CHECK_THROWS_AS(muckenhoupt_K(0.0, w), regime_error);
    // finiteness range in m
    CHECK_THROWS_AS(muckenhoupt_K(1.0, SpectralWeights{0.2, 5}), regime_error);
    CHECK_THROWS_AS(muckenhoupt_K(1.0, SpectralWeights{0.9, 3}), regime_error);
}

TEST_CASE("displayed K(eta) bound holds with positive slack") {
    for (auto [m, d] : std::vector<std::pair<double, int>>{
             {0.5, 3}, {0.45, 4}, {0.55, 5}, {0.6, 5}}) {
        SpectralWeights w{m, d};
        double K = muckenhoupt_K(median_eta(w), w);
        double bound = m * (2.0 - m) * std::pow(2.0, (3.0 - 2.0 * m) / (1.0 - m)) *
                       (1.0 + std::pow(2.0, (2.0 - m) / (1.0 - m))) /
                       (d * std::pow(d - 4.0 - m * (d - 2.0), 2));
        CHECK(K < bound);
    }
}

TEST_CASE("gap envelope") {
    // subcritical: the lower bound coincides with the exact constant since
    // d - 4 - m(d-2) = -(d-2)(m - m_star)
    Exponents e = derive_exponents(0.2, 5);
    GapEnvelope env = gap_envelope(e);
    CHECK(env.lower == doctest::Approx(exact_gap_subcritical(e)).epsilon(1e-13));
    CHECK(!env.upper.has_value());  // m below the K-finite range

    // m = m_c, d = 5: both bounds finite and ordered
    Exponents ec = derive_exponents(0.6, 5);
    GapEnvelope envc = gap_envelope(ec);
    REQUIRE(envc.upper.has_value());
    CHECK(envc.lower > 0.0);
    CHECK(envc.lower <= *envc.upper);

    // m = m_star excluded
    CHECK_THROWS_AS(gap_envelope(derive_exponents(1.0 / 3.0, 5)), regime_error);
}

TEST_CASE("rayleigh gap reproduces the exact subcritical constant") {
    Exponents e = derive_exponents(0.2, 5);
    SpectralResult s = rayleigh_gap(e, 1.0, spectral_grid(e, 1));
    REQUIRE(s.C_exact.has_value());
    CHECK(std::fabs(s.C_est - *s.C_exact) / *s.C_exact < 0.05);
    CHECK(s.D_spread < 0.01);
}

TEST_CASE("rayleigh gap at (0.5, 3): frozen eigen-oracle and envelope") {
    Exponents e = derive_exponents(0.5, 3);
    SpectralResult s = rayleigh_gap(e, 1.0, spectral_grid(e, 1));
    // independently implemented pencil eigensolver at doubled resolution
    const double lambda_oracle = 0.5650871611;
    CHECK(std::fabs(s.lambda_est - lambda_oracle) / lambda_oracle < 1e-3);
    REQUIRE(s.lower_bound.has_value());
    REQUIRE(s.upper_bound.has_value());
    CHECK(*s.lower_bound <= s.C_est + s.C_err);
    CHECK(s.C_est - s.C_err <= *s.upper_bound);
    // radial two-sidedness in the classical Muckenhoupt direction
    REQUIRE(s.K_eta.has_value());
    CHECK(*s.K_eta <= s.C_est + s.C_err);
    CHECK(s.C_est <= 4.0 * *s.K_eta * 1.02);
    CHECK(s.D_spread < 0.01);
}

TEST_CASE("predicted lambda dispatch") {
    Exponents e = derive_exponents(0.2, 5);
    SpectralResult s = predicted_lambda(e);
    CHECK(s.lambda_est == doctest::Approx(0.025).epsilon(1e-13));
    CHECK(s.method_tags == "closed-form");
    CHECK_THROWS_AS(predicted_lambda(derive_exponents(1.0 / 3.0, 5)), regime_error);
    for (auto [m, d] : std::vector<std::pair<double, int>>{{0.45, 4}, {0.7, 3}}) {
        SpectralResult p = predicted_lambda(derive_exponents(m, d));
        CHECK(p.lambda_est > 0.0);
    }
}

TEST_CASE("weights bookkeeping") {
    SpectralWeights w{0.55, 5};
    CHECK(w.mu_integrable());
    CHECK(!SpectralWeights{0.2, 5}.mu_integrable());
    // tail series against the decade-split Simpson oracle
    double direct = oracle::quad_decades([&](double r) { return w.mu(r); }, 10.0, 1e6) +
                    w.integral_mu_tail(1e6);
    CHECK(w.integral_mu_tail(10.0) == doctest::Approx(direct).epsilon(1e-9));
}
