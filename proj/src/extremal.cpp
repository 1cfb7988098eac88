#include "otap/extremal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "otap/kernels.hpp"

namespace otap {

namespace {
constexpr double kPi = std::numbers::pi;
}

double conjugate_exponent(double p) {
    if (p < 1) throw std::invalid_argument("conjugate_exponent: p must be >= 1");
    if (p == 1) return std::numeric_limits<double>::infinity();
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

BoundConstants build_constants(const ClassSpec& cls, int n_min) {
    PsiCharacteristics c = mu(cls.psi, static_cast<double>(n_min));
    if (!(c.eta_gap > 2.0) || !(c.mu > 2.0)) {
        // Find the smallest n at which both floors clear 2, if one exists
        // within a reasonable horizon.
        int n_ok = -1;
        for (int n = std::max(2, n_min); n <= 1 << 20; n = n < 64 ? n + 1 : n * 2) {
            PsiCharacteristics cn;
            try {
                cn = mu(cls.psi, static_cast<double>(n));
            } catch (const std::exception&) {
                break;  // psi underflowed before the floors cleared
            }
            if (cn.eta_gap > 2.0 && cn.mu > 2.0) {
                n_ok = n;
                break;
            }
        }
        std::string which = !(c.eta_gap > 2.0)
                                ? "a = eta(n)-n = " + std::to_string(c.eta_gap)
                                : "b = mu(n) = " + std::to_string(c.mu);
        throw std::invalid_argument(
            "build_constants: " + which + " <= 2 at n = " + std::to_string(n_min) +
            (n_ok > 0 ? "; smallest admissible n is " + std::to_string(n_ok)
                      : "; no admissible n found"));
    }
    BoundConstants k;
    k.a = c.eta_gap;
    k.b = c.mu;
    k.p = cls.p;
    k.p_prime = conjugate_exponent(cls.p);
    double m1 = std::max(5.0 * k.b / (k.b - 2.0), 4.0 * kPi);
    k.lambda_p = 1.0 / (2.0 * std::pow(k.p_prime, 1.0 / k.p) * m1);
    k.k_ab = (1.0 / kPi) * std::max(2.0 * k.b / (k.b - 2.0) + 1.0 / k.a, 2.0 * kPi);
    k.k_abp = k.k_ab * std::pow(2.0 * k.p, 1.0 / k.p_prime);
    k.k_bp = 1.0 / (48.0 * m1 * std::pow(k.p_prime, 1.0 / k.p));
    return k;
}

TrigPoly build_fstar_pn(const ClassSpec& cls, int n, const BoundConstants& consts) {
    if (n < 2) throw std::invalid_argument("build_fstar_pn: n must be >= 2");
    const PsiSpec& psi = cls.psi;
    PsiCharacteristics c = mu(psi, static_cast<double>(n));
    double scale = consts.lambda_p /
                   (psi_eval(psi, n) * std::pow(c.eta_gap, 1.0 / consts.p_prime));
    double constant = scale * 0.5 * psi_eval(psi, 1) * psi_eval(psi, 2.0 * n);
    std::vector<std::pair<int, double>> cosines;
    for (int k = 1; k <= n - 1; ++k)
        cosines.emplace_back(k, scale * psi_eval(psi, k) * psi_eval(psi, 2.0 * n - k));
    for (int k = n; k <= 2 * n; ++k) {
        double pk = psi_eval(psi, k);
        cosines.emplace_back(k, scale * pk * pk);
    }
    return TrigPoly::from_cosine(constant, cosines);
}

TrigPoly build_fstar_m(const ClassSpec& cls, int m) {
    if (m < 1) throw std::invalid_argument("build_fstar_m: m must be >= 1");
    const PsiSpec& psi = cls.psi;
    double scale = 1.0 / (5.0 * kPi * m);
    double constant = scale * 0.5 * psi_eval(psi, 1);
    std::vector<std::pair<int, double>> cosines;
    for (int k = 1; k <= m; ++k)
        cosines.emplace_back(k, scale * k * psi_eval(psi, k));
    for (int k = m + 1; k <= 2 * m; ++k)
        cosines.emplace_back(k, scale * (2 * m + 1 - k) * psi_eval(psi, k));
    return TrigPoly::from_cosine(constant, cosines);
}

TrigPoly build_fdoublestar_m(int m) {
    return vallee_poussin(m).poly.scaled(1.0 / (3.0 * kPi));
}

}  // namespace otap
