#pragma once

#include "otap/trigpoly.hpp"

namespace otap {

// Normalization constants for the lower/upper sandwich, bound to the
// smallest n of a sweep so one set of floors serves the whole range.
struct BoundConstants {
    double a = 0;        // floor for eta(n) - n, must exceed 2
    double b = 0;        // floor for mu(n), must exceed 2
    double p = 2;        // exponent the constants were built for
    double p_prime = 2;  // conjugate exponent
    double lambda_p = 0; // 1 / (2 (p')^{1/p} max{5b/(b-2), 4pi})
    double k_ab = 0;     // (1/pi) max{2b/(b-2) + 1/a, 2pi}
    double k_abp = 0;    // k_ab * (2p)^{1/p'}
    double k_bp = 0;     // 1 / (48 max{5b/(b-2), 4pi} (p')^{1/p}) = lambda_p/24
};

double conjugate_exponent(double p);

// Fails (with the offending floor and the smallest admissible n named) when
// eta(n_min) - n_min <= 2 or mu(n_min) <= 2.
BoundConstants build_constants(const ClassSpec& cls, int n_min);

// Degree-2n extremal member of the class: constant term
// lambda_p psi(1) psi(2n) / (2 psi(n) (eta(n)-n)^{1/p'}), cosine profile
// psi(k) psi(2n-k) on [1, n-1] and psi^2(k) on [n, 2n].
TrigPoly build_fstar_pn(const ClassSpec& cls, int n, const BoundConstants& consts);

// Degree-2m member for the p = 1 theory:
// (1/(5 pi m)) (psi(1)/2 + sum k psi(k) cos kt + sum (2m+1-k) psi(k) cos kt).
TrigPoly build_fstar_m(const ClassSpec& cls, int m);

// V_m / (3 pi).
TrigPoly build_fdoublestar_m(int m);

}  // namespace otap
