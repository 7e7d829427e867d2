#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fade/experiments.hpp"
#include "fade/functionals.hpp"
#include "fade/profiles.hpp"
#include "oracle_common.hpp"

using namespace fade;

namespace {
const Exponents kE = derive_exponents(0.5, 3);
GridPtr grid3() { return RadialGrid::graded(3, 1e3, 2048); }
}  // namespace

TEST_CASE("sandwich bounds formulas") {
    SandwichBounds b = SandwichBounds::make(2.0, 0.5, 1.0, kE);
    CHECK(b.W0 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(b.W1 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(SandwichBounds::make(0.5, 2.0, 1.0, kE), std::domain_error);
}

TEST_CASE("entropy and fisher vanish exactly at w = 1") {
    auto g = grid3();
    SandwichBounds b = SandwichBounds::make(2.0, 0.5, 1.0, kE);
    RadialField one(g, 1.0);
    CHECK(std::fabs(relative_entropy(one, b, kE).value) < 1e-14);
    CHECK(std::fabs(relative_fisher(one, b, kE).value) < 1e-14);
}

TEST_CASE("frozen oracle: entropy of the V_2 / V_1 quotient") {
    // adaptive-quadrature oracle value (independent of the grid module):
    // F[V_{D0}/V_{D*}] for (m, d, D*, D0) = (0.5, 3, 1, 2)
    const double F0_oracle = 6.7734256188502309;
    auto g = grid3();
    SandwichBounds b = SandwichBounds::make(2.0, 0.5, 1.0, kE);
    RadialField w = quotient_field(barenblatt_field(g, 2.0, kE), 1.0, kE);
    Measured F = relative_entropy(w, b, kE);
    CHECK(F.value == doctest::Approx(F0_oracle).epsilon(2e-5));
    CHECK(std::fabs(F.value - F0_oracle) <= 3.0 * F.error + 1e-6);
    // Fisher information of any Barenblatt quotient vanishes (stationary state)
    Measured I = relative_fisher(w, b, kE);
    CHECK(std::fabs(I.value) < 1e-10);
}

TEST_CASE("frozen oracle: nonstationary pair at Dstar = 1") {
    // v = (V_2 + V_{1/2})/2; adaptive-quadrature oracle values
    const double F_oracle = 0.54699637262175078;
    const double I_oracle = 0.83844228084241008;
    auto g = grid3();
    SandwichBounds b = SandwichBounds::make(2.0, 0.5, 1.0, kE);
    RadialField v = averaged_initial_data(g, 2.0, 0.5, kE);
    RadialField w = quotient_field(v, 1.0, kE);
    CHECK(relative_entropy(w, b, kE).value == doctest::Approx(F_oracle).epsilon(2e-5));
    CHECK(relative_fisher(w, b, kE).value == doctest::Approx(I_oracle).epsilon(2e-4));
}

TEST_CASE("relative Fisher does not depend on the reference scale D*") {
    // grad V_D^{m-1} = 2 b r for every D, so the integrand is D-free
    auto g = grid3();
    RadialField v = averaged_initial_data(g, 2.0, 0.5, kE);
    double ref = 0.0;
    for (double Ds : {0.5, 8.0 / 9.0, 2.0}) {
        SandwichBounds b = SandwichBounds::make(2.0, 0.5, Ds, kE);
        RadialField w = quotient_field(v, Ds, kE);
        Measured I = relative_fisher(w, b, kE);
        if (ref == 0.0) ref = I.value;
        CHECK(I.value == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("linearized functionals: closed forms and homogeneity") {
    auto g = grid3();
    // E_lin[1] = 1/2 int V^{3/2} dx with V = (1 + r^2/2)^{-2}
    double El_exact = 0.5 * oracle::omega_d(3) * oracle::power_profile_moment(2.0, 1.0, 0.5, 3.0);
    RadialField one(g, 1.0);
    CHECK(linearized_entropy(one, 1.0, kE).value == doctest::Approx(El_exact).epsilon(1e-6));
    // I_lin[r] = m int V dx
    double Il_exact = 0.5 * oracle::omega_d(3) * oracle::power_profile_moment(2.0, 1.0, 0.5, 2.0);
    RadialField lin = RadialField::sample(g, [](double r) { return r; });
    CHECK(linearized_fisher(lin, 1.0, kE).value == doctest::Approx(Il_exact).epsilon(1e-5));
    // quadratic homogeneity with c = 3
    RadialField bump = RadialField::sample(g, [](double r) { return std::exp(-0.5 * r * r); });
    RadialField bump3(g);
    for (int i = 0; i < bump.size(); ++i) bump3[i] = 3.0 * bump[i];
    CHECK(linearized_entropy(bump3, 1.0, kE).value ==
          doctest::Approx(9.0 * linearized_entropy(bump, 1.0, kE).value).epsilon(1e-12));
    CHECK(linearized_fisher(bump3, 1.0, kE).value ==
          doctest::Approx(9.0 * linearized_fisher(bump, 1.0, kE).value).epsilon(1e-12));
    CHECK(linearized_entropy(RadialField(g, 0.0), 1.0, kE).value == 0.0);
}

TEST_CASE("quadratic limit of the nonlinear functionals") {
    auto g = grid3();
    SandwichBounds b = SandwichBounds::make(2.0, 0.5, 1.0, kE);
    RadialField w = RadialField::sample(
        g, [](double r) { return 1.0 + 0.4 / (1.0 + r * r) * std::exp(-0.1 * (r - 1) * (r - 1)); });
    RadialField gv = linearization_variable(w, 1.0, kE);
    double El = linearized_entropy(gv, 1.0, kE).value;
    double Il = linearized_fisher(gv, 1.0, kE).value;
    double prevF = 1e300, prevI = 1e300;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        RadialField we(g);
        for (int i = 0; i < w.size(); ++i) we[i] = 1.0 + eps * (w[i] - 1.0);
        double devF = std::fabs(relative_entropy(we, b, kE).value / (eps * eps) - El) / El;
        double devI = std::fabs(relative_fisher(we, b, kE).value / (eps * eps) - Il) / Il;
        CHECK(devF < 0.6 * prevF);
        CHECK(devI < 0.6 * prevI);
        prevF = devF;
        prevI = devI;
    }
    CHECK(prevF < 2e-3);
    CHECK(prevI < 2e-3);
}

TEST_CASE("entropy equivalence bounds") {
    auto g = grid3();
    SandwichBounds b = SandwichBounds::make(2.0, 0.5, 1.0, kE);
    RadialField one(g, 1.0);
    EquivalenceBounds eq = entropy_equivalence_bounds(one, b, kE);
    CHECK(std::fabs(eq.lower.value) < 1e-14);
    CHECK(std::fabs(eq.upper.value) < 1e-14);

    RadialField w = quotient_field(barenblatt_field(g, 2.0, kE), 1.0, kE);
    Measured F = relative_entropy(w, b, kE);
    EquivalenceBounds eb = entropy_equivalence_bounds(w, b, kE);
    CHECK(eb.lower.value <= F.value + F.error + eb.lower.error);
    CHECK(F.value <= eb.upper.value + F.error + eb.upper.error);

    // degenerate sandwich W0 = W1 = 1 admits only w = 1
    SandwichBounds tight = SandwichBounds::make(1.0, 1.0, 1.0, kE);
    EquivalenceBounds ez = entropy_equivalence_bounds(one, tight, kE);
    CHECK(ez.lower.value == 0.0);
    CHECK(ez.upper.value == 0.0);
    CHECK_THROWS_AS(entropy_equivalence_bounds(w, tight, kE), sandwich_error);
}

TEST_CASE("beta constants") {
    SandwichBounds unit = SandwichBounds::make(1.0, 1.0, 1.0, kE);
    BetaConstants c0 = beta_constants(unit, kE);
    CHECK(c0.beta1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c0.beta2 == doctest::Approx(0.0).epsilon(1e-15));

    // direct arithmetic at W0 = 0.9, W1 = 1.1 (m = 0.5, d = 3)
    SandwichBounds b;
    b.W0 = 0.9;
    b.W1 = 1.1;
    b.Dstar = 1.0;
    BetaConstants c = beta_constants(b, kE);
    CHECK(c.beta1 == doctest::Approx(std::pow(1.1, 3) / 0.9).epsilon(1e-14));
    CHECK(c.beta2 == doctest::Approx(3.0 * (std::pow(1.1 / 0.9, 3) - 1.0)).epsilon(1e-14));

    // widening never decreases either constant
    SandwichBounds wider = b;
    wider.W0 = 0.8;
    BetaConstants cw = beta_constants(wider, kE);
    CHECK(cw.beta1 >= c.beta1);
    CHECK(cw.beta2 >= c.beta2);
}

TEST_CASE("gamma rate certificate") {
    double C = 2.0;  // some Hardy-Poincare constant
    SandwichBounds unit = SandwichBounds::make(1.0, 1.0, 1.0, kE);
    auto g0 = gamma_rate(unit, kE, C);
    REQUIRE(g0.has_value());
    CHECK(*g0 == doctest::Approx(2.0 * kE.m / C).epsilon(1e-14));  // = 2 lambda

    // exactly at the admissibility threshold the estimate vanishes
    double thr = gamma_admissible_ratio(kE, C);
    SandwichBounds at;
    at.W0 = 1.0;
    at.W1 = thr * (1.0 - 1e-12);
    at.Dstar = 1.0;
    auto gt = gamma_rate(at, kE, C);
    REQUIRE(gt.has_value());
    CHECK(*gt < 1e-9);
    at.W1 = thr * (1.0 + 1e-9);
    CHECK(!gamma_rate(at, kE, C).has_value());

    // narrow sandwich: positive and below 2 lambda
    SandwichBounds nb;
    nb.W0 = 0.99;
    nb.W1 = 1.01;
    nb.Dstar = 1.0;
    auto gn = gamma_rate(nb, kE, C);
    REQUIRE(gn.has_value());
    CHECK(*gn > 0.0);
    CHECK(*gn < 2.0 * kE.m / C);
}

TEST_CASE("relative mass") {
    auto g = grid3();
    RadialField vstar = barenblatt_field(g, 1.0, kE);
    CHECK(std::fabs(relative_mass(vstar, 1.0, kE).value) < 1e-12);

    // closed form: int (V_{1/2} - V_1) dx = 2 pi^2 (2 - sqrt(2)) for m=1/2, d=3
    RadialField v1 = barenblatt_field(g, 0.5, kE);
    double M1 = 2.0 * M_PI * M_PI * (2.0 - std::sqrt(2.0));
    Measured got = relative_mass(v1, 1.0, kE);
    CHECK(got.value == doctest::Approx(M1).epsilon(1e-6));
    CHECK(got.value > 0.0);

    // m <= m_star and D != D*: differences of profiles are not integrable
    Exponents e25 = derive_exponents(0.2, 5);
    auto g5 = RadialGrid::graded(5, 1e3, 1024);
    RadialField v5 = barenblatt_field(g5, 0.5, e25);
    CHECK_THROWS_AS(relative_mass(v5, 1.0, e25), divergent_tail_error);
}

TEST_CASE("entropy report carries consistent snapshot") {
    auto g = grid3();
    SandwichBounds b = SandwichBounds::make(2.0, 0.5, 8.0 / 9.0, kE);
    RadialField v = averaged_initial_data(g, 2.0, 0.5, kE);
    RadialField w = quotient_field(v, b.Dstar, kE);
    EntropyReport r = entropy_report(0.0, w, b, kE);
    CHECK(r.F > 0.0);
    CHECK(r.I > 0.0);
    CHECK(r.E_lin > 0.0);
    CHECK(r.I_lin > 0.0);
    CHECK(r.w_min >= b.W0 - 1e-12);
    CHECK(r.w_max <= b.W1 + 1e-12);
    CHECK(std::fabs(r.rel_mass) < 1e-4);
}
