#pragma once

#include <optional>
#include <set>

#include "otap/extremal.hpp"
#include "otap/trigpoly.hpp"

namespace otap {

using IndexSet = std::set<int>;

enum class ApproxMethod { Exact, Greedy, GreedyPlusSwaps };

struct ApproxResult {
    double value = 0;  // deviation norm ||f - S_gamma f||_s
    IndexSet gamma;
    ApproxMethod method = ApproxMethod::Exact;
    std::optional<double> certified_lower;
};

// Thrown when an exhaustive search would exceed the instance guard.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive minimum over index sets of size m. The search runs over
// subsets of support(f) of size <= m: a gamma entry outside the support
// removes nothing, so padding makes any smaller removal set admissible and
// nothing outside the support ever helps. Ties go to the lexicographically
// smallest gamma. Guard: support <= 24 and <= 5e6 subsets.
ApproxResult best_orthogonal_exact(const TrigPoly& f, int m, double s,
                                   const QuadratureSpec& quad);

// Upper bound: keep the m largest |f_hat(k)| (ties: smaller |k|, then
// positive k), then best-improvement single-element swaps. For s = 2 the
// greedy selection is already exact (Parseval) and swaps are skipped.
// swaps < 0 selects the default of 2m rounds.
ApproxResult best_orthogonal_greedy(const TrigPoly& f, int m, double s,
                                    const QuadratureSpec& quad, int swaps = -1);

// inf over gamma_m of |sum_{k not in gamma} 2 pi f_hat(k) g_hat(-k)|.
// With real non-negative terms this is (total - sum of the m largest),
// computed exactly; otherwise an exhaustive search under the same guard.
double pairing_inf(const TrigPoly& f, const TrigPoly& g, int m);

// pairing_inf(f, g, m) / ||g||_{s'}: a certified lower bound for
// e_perp_m(f)_s by Hoelder duality.
double lower_bound_via_pairing(const TrigPoly& f, const TrigPoly& g, int m,
                               double s, const QuadratureSpec& quad);

struct ClosedFormPairing {
    double value = 0;
    // False when the coefficient profile is not monotone enough for the
    // closed form's removal pattern to be provably optimal.
    bool monotone_profile = true;
};

// I1 = (pi lambda_p / (2 psi(n) gap^{1/p'})) (psi^2(n) + 2 sum_{n+1}^{2n} psi^2(k));
// must match pairing_inf(f*_{p,n}, V_{2n}, 2n).
ClosedFormPairing i1_closed_form(const ClassSpec& cls, int n,
                                 const BoundConstants& consts);

// Exact coefficient-space evaluation of the pairing of f*_{2n} with V_{2n},
// including the taper terms the inequality chain discards; must match
// pairing_inf(f*_{2n}, V_{2n}, 2n).
ClosedFormPairing i2_closed_form(const PsiSpec& psi, int n);

// Dominant (taper-free) part of I2, the quantity the chain bounds below:
// (1/(20n)) (n psi(n) + 2 sum_{n+1}^{2n} k psi(k)).
double i2_main_term(const PsiSpec& psi, int n);

// I3 with g = f*_{s',n}: (c/6)(psi^2(n) + 2 sum psi^2(k)),
// c = lambda_{s'} / (psi(n) gap^{1/s}).
ClosedFormPairing i3_closed_form(const ClassSpec& cls_sprime, int n,
                                 const BoundConstants& consts);

}  // namespace otap
