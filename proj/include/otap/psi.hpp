#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace otap {

// Decay-generator families for the smoothness classes. All are positive,
// strictly decreasing and vanishing at infinity on [1, inf) for the
// admissible parameter ranges.
enum class PsiFamily {
    ExpPower,     // exp(-alpha * t^r) * t^gamma
    ExpPowerLog,  // exp(-alpha * t^r) * ln(t + K)
    PowerLaw,     // t^(-r), cross-check family
};

struct PsiSpec {
    PsiFamily family = PsiFamily::ExpPower;
    double alpha = 1.0;  // ExpPower / ExpPowerLog
    double r = 1.0;      // all families
    double gamma = 0.0;  // ExpPower power factor
    double log_shift = 2.0;  // ExpPowerLog: K > e-1
    static constexpr double domain_start = 1.0;

    static PsiSpec exp_power(double alpha, double r, double gamma = 0.0);
    static PsiSpec exp_power_log(double alpha, double r, double log_shift);
    static PsiSpec power_law(double r);
    static PsiSpec from_tag(const std::string& tag, double alpha, double r,
                            double extra);

    std::string tag() const;
};

// psi(t); convention psi(0) := psi(1), arguments in [0,1) are clamped up.
double psi_eval(const PsiSpec& spec, double t);

// d/dt psi(t), t >= 1.
double psi_derivative(const PsiSpec& spec, double t);

// Half-decay abscissa eta(t): the unique x > t with psi(x) = psi(t)/2.
// Bracketed bisection refined by secant steps; residual
// |psi(x) - psi(t)/2| <= 1e-10 * psi(t).
double eta(const PsiSpec& spec, double t);

// Closed-form eta where one exists (ExpPower with gamma=0, PowerLaw).
std::optional<double> eta_closed_form(const PsiSpec& spec, double t);

struct PsiCharacteristics {
    double t = 0;
    double eta = 0;      // eta(psi; t)
    double mu = 0;       // t / (eta(t) - t)
    double eta_gap = 0;  // eta(t) - t
};

PsiCharacteristics mu(const PsiSpec& spec, double t);

struct ClassifyFlags {
    bool in_M_plus_inf = false;          // mu strictly increasing on grid
    bool in_M_dprime_inf = false;        // ... and eta-t >= K_floor on grid
    bool psi_over_dpsi_increasing = false;
};

// Sampled evidence only: membership in the asymptotic subclasses cannot be
// proved by a finite computation. The grid used is the caller's record.
ClassifyFlags classify(const PsiSpec& spec, const std::vector<double>& t_grid,
                       double k_floor);

struct TailBound {
    double lhs = 0;  // integral of psi over [m, inf)
    double rhs = 0;  // 2/(1 - 2/mu(m)) * psi(m) * (eta(m) - m)
    bool holds = false;
};

// Requires mu(m) > 2.
TailBound tail_bound_check(const PsiSpec& spec, int m);

// Integral of psi over [a, inf), truncated where psi < 1e-16 * psi(a),
// adaptive quadrature to absolute tolerance 1e-12 * psi(a).
double psi_tail_integral(const PsiSpec& spec, double a);

// Sum_{k>=n} psi(k), accumulated until terms fall below 1e-16 of psi(n).
double psi_tail_sum(const PsiSpec& spec, int n);

}  // namespace otap
