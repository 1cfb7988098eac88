#pragma once

#include <complex>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "otap/psi.hpp"

namespace otap {

using Complex = std::complex<double>;

// Finite sparse spectrum k -> f_hat(k). Zero coefficients are never stored.
// This is the universal function representation: partial sums, kernels and
// extremal functions are all TrigPolys.
class TrigPoly {
  public:
    TrigPoly() = default;
    explicit TrigPoly(std::map<int, Complex> coeffs);

    // Convenience: sum of a_k * cos(k t) terms, emitted as conjugate pairs.
    static TrigPoly from_cosine(double constant,
                                const std::vector<std::pair<int, double>>& cosines);

    const std::map<int, Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int k) const;
    void set_coeff(int k, Complex value);

    int degree() const;  // max |k| over stored coefficients, 0 when empty
    std::size_t support_size() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }

    // True when f_hat(-k) == conj(f_hat(k)) for every k (within 1e-14 of the
    // coefficient scale), i.e. the poly is real-valued on the line.
    bool is_real_valued() const;

    // Sum_k f_hat(k) e^{ikt}, accumulated over increasing |k| with
    // compensated (Kahan) summation.
    Complex evaluate(double t) const;

    TrigPoly operator+(const TrigPoly& other) const;
    TrigPoly operator-(const TrigPoly& other) const;
    TrigPoly scaled(Complex factor) const;

    std::string to_json() const;
    static TrigPoly from_json(const std::string& text);

  private:
    std::map<int, Complex> coeffs_;
};

// Restriction of the spectrum to |k| <= n-1.
TrigPoly partial_sum(const TrigPoly& f, int n);

// Restriction of the spectrum to k in gamma.
TrigPoly gamma_sum(const TrigPoly& f, const std::set<int>& gamma);

struct QuadratureSpec {
    int base_points = 0;          // 0 -> max(1024, 8*(degree+1))
    double rel_tol = 1e-8;        // doubling-refinement stop for Lp norms
    double sup_refine_tol = 1e-6; // local refinement target for the sup norm

    int resolve_base(int degree) const;
};

struct ClassSpec {
    PsiSpec psi;
    double beta = 0.0;
    double p = 2.0;  // 1 <= p <= inf (use infinity() for p = inf)

    static constexpr double infinity() {
        return std::numeric_limits<double>::infinity();
    }
};

// Fourier-multiplier derivative: coefficient k != 0 becomes
// f_hat(k)/psi(|k|) * e^{i beta pi/2 sign k}; the mean is dropped.
TrigPoly psi_beta_derivative(const TrigPoly& f, const ClassSpec& cls);

// Inverse multiplier: reproduces f minus its mean.
TrigPoly psi_beta_antiderivative(const TrigPoly& f, const ClassSpec& cls);

// Un-normalized period norms, matching (integral over [0,2pi] |f|^p)^(1/p).
// p = inf: refined grid max plus local ternary search (a lower estimate of
// the true sup at documented grid density).
double lp_norm(const TrigPoly& f, double p, const QuadratureSpec& quad);

// ||f - S_{n-1} f||_s.
double rho_n(const TrigPoly& f, int n, double s, const QuadratureSpec& quad);

struct MembershipReport {
    double deriv_norm = 0;  // ||f^psi_beta||_p
    bool zero_mean = true;  // derivative has no k=0 term (by construction)
    bool in_class = false;  // deriv_norm <= 1 + quad.rel_tol
};

MembershipReport membership_report(const TrigPoly& f, const ClassSpec& cls,
                                   const QuadratureSpec& quad);

namespace detail {
// Shared fast-evaluation plumbing for the norm and subset-search engines.
std::vector<std::pair<int, Complex>> sorted_terms(const TrigPoly& f);
Complex eval_terms(const std::vector<std::pair<int, Complex>>& terms, double t);

// Dense coefficient table for Horner-style evaluation on grids.
struct DenseEval {
    int degree = 0;
    std::vector<Complex> coeffs;  // index k + degree
    explicit DenseEval(const TrigPoly& f);
    Complex eval(double t) const;
};
}  // namespace detail

}  // namespace otap
