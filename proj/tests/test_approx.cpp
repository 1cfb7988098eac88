#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "otap/approx.hpp"
#include "otap/kernels.hpp"

using namespace otap;
using std::numbers::pi;

namespace {

TrigPoly two_tone() {
    return TrigPoly::from_cosine(0.0, {{1, 1.0}, {2, 0.5}});
}

TrigPoly random_real_poly(std::mt19937& rng, int degree) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    TrigPoly f;
    f.set_coeff(0, dist(rng));
    for (int k = 1; k <= degree; ++k) {
        Complex c(dist(rng), dist(rng));
        f.set_coeff(k, c);
        f.set_coeff(-k, std::conj(c));
    }
    return f;
}

}  // namespace

TEST_CASE("best_orthogonal_exact examples") {
    QuadratureSpec quad;
    ApproxResult r = best_orthogonal_exact(two_tone(), 2, 2.0, quad);
    CHECK(r.value == doctest::Approx(std::sqrt(2 * pi * 0.125)).epsilon(1e-10));
    CHECK(r.value == doctest::Approx(0.886227).epsilon(1e-5));
    CHECK(r.gamma == IndexSet{-1, 1});

    ApproxResult whole = best_orthogonal_exact(two_tone(), 0, 2.0, quad);
    CHECK(whole.value == doctest::Approx(lp_norm(two_tone(), 2.0, quad)));
    CHECK(whole.gamma.empty());

    TrigPoly f3 = TrigPoly::from_cosine(0.0, {{1, 1.0}, {2, 0.5}, {3, 0.25}});
    CHECK(best_orthogonal_exact(f3, 6, ClassSpec::infinity(), quad).value ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("best_orthogonal_greedy examples") {
    QuadratureSpec quad;
    ApproxResult r = best_orthogonal_greedy(two_tone(), 2, 2.0, quad);
    CHECK(r.value == doctest::Approx(0.886227).epsilon(1e-5));

    TrigPoly f = TrigPoly::from_cosine(0.0, {{1, 1.0}, {2, 1.0}});
    ApproxResult rs = best_orthogonal_greedy(f, 2, ClassSpec::infinity(), quad);
    CHECK(rs.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("greedy matches exact in L2 on random polys") {
    std::mt19937 rng(101);
    QuadratureSpec quad;
    for (int trial = 0; trial < 20; ++trial) {
        TrigPoly f = random_real_poly(rng, 8);
        int m = int(rng() % 8);
        ApproxResult ex = best_orthogonal_exact(f, m, 2.0, quad);
        ApproxResult gr = best_orthogonal_greedy(f, m, 2.0, quad);
        CHECK(gr.value == doctest::Approx(ex.value).epsilon(1e-12));
    }
}

TEST_CASE("exact engine monotone in m and never above greedy") {
    std::mt19937 rng(211);
    QuadratureSpec quad;
    for (double s : {1.0, 2.0, ClassSpec::infinity()}) {
        TrigPoly f = random_real_poly(rng, 5);
        double prev = best_orthogonal_exact(f, 0, s, quad).value;
        for (int m = 1; m <= 6; ++m) {
            double cur = best_orthogonal_exact(f, m, s, quad).value;
            CHECK(cur <= prev + 1e-12);
            CHECK(cur <=
                  best_orthogonal_greedy(f, m, s, quad).value + 1e-9);
            prev = cur;
        }
    }
}

TEST_CASE("chain against rho_n") {
    std::mt19937 rng(307);
    QuadratureSpec quad;
    for (double s : {1.0, 2.0, ClassSpec::infinity()}) {
        TrigPoly f = random_real_poly(rng, 5);
        for (int n = 1; n <= 4; ++n) {
            double e2n = best_orthogonal_exact(f, 2 * n, s, quad).value;
            double e2n1 = best_orthogonal_exact(f, 2 * n - 1, s, quad).value;
            CHECK(e2n <= e2n1 + 1e-9);
            CHECK(e2n1 <= rho_n(f, n, s, quad) + 1e-9);
        }
    }
}

TEST_CASE("capacity guard") {
    std::mt19937 rng(401);
    QuadratureSpec quad;
    TrigPoly f = random_real_poly(rng, 13);  // support 27 > 24
    CHECK_THROWS_AS(best_orthogonal_exact(f, 3, 1.0, quad), CapacityError);
}

TEST_CASE("pairing_inf examples") {
    TrigPoly f = two_tone();
    TrigPoly g = TrigPoly::from_cosine(0.0, {{1, 1.0}, {2, 1.0}});
    // Terms w_{+-1} = pi/2, w_{+-2} = pi/4; removing the two largest leaves pi/2.
    CHECK(pairing_inf(f, g, 2) == doctest::Approx(pi / 2).epsilon(1e-12));

    TrigPoly h = TrigPoly::from_cosine(0.0, {{5, 1.0}});
    CHECK(pairing_inf(f, h, 1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(pairing_inf(f, g, 10) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("pairing_inf equals brute force on mixed signs") {
    std::mt19937 rng(509);
    QuadratureSpec quad;
    for (int trial = 0; trial < 10; ++trial) {
        TrigPoly f = random_real_poly(rng, 4);
        TrigPoly g = random_real_poly(rng, 4);
        for (int m : {0, 1, 3}) {
            double fast = pairing_inf(f, g, m);
            // Independent brute force over removal subsets.
            std::vector<Complex> w;
            for (const auto& [k, c] : f.coeffs())
                w.push_back(2.0 * pi * c * g.coeff(-k));
            int nw = int(w.size());
            double best = 1e300;
            for (unsigned mask = 0; mask < (1u << nw); ++mask) {
                if (__builtin_popcount(mask) > m) continue;
                Complex total{0, 0};
                for (int i = 0; i < nw; ++i)
                    if (!(mask & (1u << i))) total += w[i];
                best = std::min(best, std::abs(total));
            }
            CHECK(fast == doctest::Approx(best).epsilon(1e-10));
        }
    }
}

TEST_CASE("lower_bound_via_pairing self-duality") {
    QuadratureSpec quad;
    TrigPoly f = TrigPoly::from_cosine(0.0, {{1, 1.0}});
    CHECK(lower_bound_via_pairing(f, f, 0, 2.0, quad) ==
          doctest::Approx(std::sqrt(pi)).epsilon(1e-9));
}

TEST_CASE("certified bound soundness on small instances") {
    std::mt19937 rng(601);
    QuadratureSpec quad;
    for (double s : {1.0, 2.0, ClassSpec::infinity()}) {
        TrigPoly f = random_real_poly(rng, 4);
        TrigPoly g = random_real_poly(rng, 4);
        for (int m : {0, 2, 4}) {
            double lb = lower_bound_via_pairing(f, g, m, s, quad);
            double ex = best_orthogonal_exact(f, m, s, quad).value;
            CHECK(lb <= ex + 1e-9);
        }
    }
}

TEST_CASE("i1 closed form matches the pairing engine") {
    ClassSpec cls{PsiSpec::exp_power(2.0, 0.5), 0.0, 2.0};
    BoundConstants c = build_constants(cls, 9);
    for (int n : {9, 12}) {
        TrigPoly f = build_fstar_pn(cls, n, c);
        TrigPoly v = vallee_poussin(2 * n).poly;
        ClosedFormPairing cf = i1_closed_form(cls, n, c);
        CHECK(cf.monotone_profile);
        double engine = pairing_inf(f, v, 2 * n);
        CHECK(std::abs(engine - cf.value) <= 1e-10 * cf.value);
    }
    // lambda_p enters linearly.
    BoundConstants scaled = c;
    scaled.lambda_p *= 2.0;
    CHECK(i1_closed_form(cls, 9, scaled).value ==
          doctest::Approx(2.0 * i1_closed_form(cls, 9, c).value).epsilon(1e-12));
}

TEST_CASE("i2 closed form matches the pairing engine") {
    PsiSpec psi = PsiSpec::exp_power(2.0, 0.5);
    for (int n : {5, 9}) {
        ClassSpec cls{psi, 0.0, 1.0};
        TrigPoly f = build_fstar_m(cls, 2 * n);
        TrigPoly v = vallee_poussin(2 * n).poly;
        ClosedFormPairing cf = i2_closed_form(psi, n);
        double engine = pairing_inf(f, v, 2 * n);
        CHECK(std::abs(engine - cf.value) <= 1e-10 * cf.value);
        // The taper-free main term is a lower bound on the full pairing.
        CHECK(i2_main_term(psi, n) <= cf.value * (1.0 + 1e-12));
    }
}

TEST_CASE("i3 closed form matches the pairing engine") {
    ClassSpec cls{PsiSpec::exp_power(2.0, 0.5), 0.0, 2.0};  // s' = 2
    BoundConstants c = build_constants(cls, 9);
    for (int n : {9, 11}) {
        TrigPoly f = build_fdoublestar_m(2 * n);
        TrigPoly g = build_fstar_pn(cls, n, c);
        ClosedFormPairing cf = i3_closed_form(cls, n, c);
        double engine = pairing_inf(f, g, 2 * n);
        CHECK(std::abs(engine - cf.value) <= 1e-10 * cf.value);
    }
}
