#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "otap/psi.hpp"

using namespace otap;

namespace {
std::vector<double> int_grid(int lo, int hi) {
    std::vector<double> g;
    for (int t = lo; t <= hi; ++t) g.push_back(t);
    return g;
}

std::vector<PsiSpec> catalog() {
    return {PsiSpec::exp_power(1.0, 1.0),   PsiSpec::exp_power(1.0, 0.5),
            PsiSpec::exp_power(2.0, 0.5),   PsiSpec::exp_power(1.0, 0.75, 1.0),
            PsiSpec::exp_power_log(1.0, 0.5, 2.0), PsiSpec::power_law(1.5),
            PsiSpec::power_law(3.0)};
}
}  // namespace

TEST_CASE("psi_eval closed forms") {
    CHECK(psi_eval(PsiSpec::exp_power(1.0, 1.0), 1.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(psi_eval(PsiSpec::exp_power(1.0, 1.0), 2.0) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(psi_eval(PsiSpec::exp_power(2.0, 0.5), 4.0) ==
          doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
    CHECK(psi_eval(PsiSpec::power_law(2.0), 3.0) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    // psi(0) := psi(1) convention, and clamping below 1.
    CHECK(psi_eval(PsiSpec::exp_power(1.0, 1.0), 0.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("eta closed forms") {
    CHECK(eta(PsiSpec::exp_power(1.0, 1.0), 2.0) ==
          doctest::Approx(2.0 + std::log(2.0)).epsilon(1e-10));
    double root = eta(PsiSpec::exp_power(2.0, 0.5), 4.0);
    double closed = std::pow(2.0 + std::log(2.0) / 2.0, 2.0);
    CHECK(root == doctest::Approx(closed).epsilon(1e-10));
    CHECK(closed == doctest::Approx(5.50641).epsilon(1e-5));
    CHECK(eta(PsiSpec::power_law(1.0), 3.0) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("eta halving residual across the catalog") {
    for (const PsiSpec& spec : catalog()) {
        for (double t = 1.0; t <= 256.0; t *= 2.0) {
            double x = eta(spec, t);
            CHECK(x > t);
            CHECK(std::abs(psi_eval(spec, x) - psi_eval(spec, t) / 2.0) <=
                  1e-10 * psi_eval(spec, t));
        }
    }
}

TEST_CASE("closed-form eta matches the root finder") {
    for (const PsiSpec& spec :
         {PsiSpec::exp_power(1.0, 1.0), PsiSpec::exp_power(2.0, 0.5),
          PsiSpec::power_law(2.0)}) {
        for (double t = 1.0; t <= 256.0; t *= 2.0) {
            auto cf = eta_closed_form(spec, t);
            REQUIRE(cf.has_value());
            CHECK(eta(spec, t) == doctest::Approx(*cf).epsilon(1e-8));
        }
    }
}

TEST_CASE("mu characteristics") {
    PsiCharacteristics c = mu(PsiSpec::exp_power(1.0, 1.0), 2.0);
    CHECK(c.mu == doctest::Approx(2.0 / std::log(2.0)).epsilon(1e-9));
    CHECK(c.mu == doctest::Approx(2.885390).epsilon(1e-6));
    CHECK(c.eta_gap == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(c.mu == c.t / c.eta_gap);

    c = mu(PsiSpec::exp_power(2.0, 0.5), 4.0);
    CHECK(c.mu == doctest::Approx(4.0 / 1.50641).epsilon(1e-5));

    c = mu(PsiSpec::power_law(1.0), 3.0);
    CHECK(c.mu == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mu monotone for sub-exponential exp_power") {
    PsiSpec spec = PsiSpec::exp_power(1.0, 0.5);
    for (double t = 1.0; t <= 128.0; t *= 2.0)
        CHECK(mu(spec, 2.0 * t).mu > mu(spec, t).mu);
}

TEST_CASE("classify flags") {
    auto grid = int_grid(1, 64);
    ClassifyFlags f = classify(PsiSpec::exp_power(1.0, 0.5), grid, 0.5);
    CHECK(f.in_M_plus_inf);
    CHECK(f.in_M_dprime_inf);
    CHECK(f.psi_over_dpsi_increasing);

    f = classify(PsiSpec::exp_power(1.0, 1.0), grid, 0.5);
    CHECK(f.in_M_plus_inf);
    CHECK(f.in_M_dprime_inf);
    CHECK_FALSE(f.psi_over_dpsi_increasing);  // psi/|psi'| is constant

    f = classify(PsiSpec::power_law(1.0), grid, 0.5);
    CHECK_FALSE(f.in_M_plus_inf);  // mu is identically 1
}

TEST_CASE("tail bound check") {
    TailBound c = tail_bound_check(PsiSpec::exp_power(1.0, 1.0), 3);
    CHECK(c.lhs == doctest::Approx(std::exp(-3.0)).epsilon(1e-9));
    CHECK(c.lhs == doctest::Approx(0.049787).epsilon(1e-4));
    CHECK(c.rhs == doctest::Approx(0.128320).epsilon(1e-4));
    CHECK(c.holds);

    c = tail_bound_check(PsiSpec::exp_power(1.0, 1.0), 2);
    CHECK(c.lhs == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
    CHECK(c.rhs == doctest::Approx(0.611400).epsilon(1e-4));
    CHECK(c.holds);

    CHECK_THROWS_AS(tail_bound_check(PsiSpec::exp_power(1.0, 1.0), 1),
                    std::invalid_argument);
}

TEST_CASE("tail bound holds across the catalog where mu > 2") {
    for (const PsiSpec& spec : catalog()) {
        for (int m = 1; m <= 64; m *= 2) {
            if (mu(spec, m).mu <= 2.0) continue;
            CHECK(tail_bound_check(spec, m).holds);
        }
    }
}

TEST_CASE("tag round trip") {
    for (const PsiSpec& spec : catalog()) {
        PsiSpec back = PsiSpec::from_tag(spec.tag(), spec.alpha, spec.r,
                                         spec.family == PsiFamily::ExpPowerLog
                                             ? spec.log_shift
                                             : spec.gamma);
        CHECK(psi_eval(back, 7.0) == psi_eval(spec, 7.0));
    }
}

TEST_CASE("psi_eval rejects invalid input") {
    CHECK_THROWS(psi_eval(PsiSpec::exp_power(1.0, 1.0), -1.0));
}
