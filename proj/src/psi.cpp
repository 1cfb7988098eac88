#include "otap/psi.hpp"

#include <cmath>
#include <limits>

namespace otap {

PsiSpec PsiSpec::exp_power(double alpha, double r, double gamma) {
    if (alpha <= 0) throw std::invalid_argument("exp_power: alpha must be > 0");
    if (r <= 0 || r > 1) throw std::invalid_argument("exp_power: r must be in (0,1]");
    PsiSpec s;
    s.family = PsiFamily::ExpPower;
    s.alpha = alpha;
    s.r = r;
    s.gamma = gamma;
    return s;
}

PsiSpec PsiSpec::exp_power_log(double alpha, double r, double log_shift) {
    if (alpha <= 0) throw std::invalid_argument("exp_power_log: alpha must be > 0");
    if (r <= 0 || r > 1) throw std::invalid_argument("exp_power_log: r must be in (0,1]");
    if (log_shift <= std::exp(1.0) - 1.0)
        throw std::invalid_argument("exp_power_log: K must be > e-1");
    PsiSpec s;
    s.family = PsiFamily::ExpPowerLog;
    s.alpha = alpha;
    s.r = r;
    s.log_shift = log_shift;
    return s;
}

PsiSpec PsiSpec::power_law(double r) {
    if (r <= 0) throw std::invalid_argument("power_law: r must be > 0");
    PsiSpec s;
    s.family = PsiFamily::PowerLaw;
    s.r = r;
    return s;
}

PsiSpec PsiSpec::from_tag(const std::string& tag, double alpha, double r,
                          double extra) {
    if (tag == "exp_power") return exp_power(alpha, r, extra);
    if (tag == "exp_power_log") return exp_power_log(alpha, r, extra);
    if (tag == "power_law") return power_law(r);
    throw std::invalid_argument("unknown psi family tag: " + tag);
}

std::string PsiSpec::tag() const {
    switch (family) {
        case PsiFamily::ExpPower: return "exp_power";
        case PsiFamily::ExpPowerLog: return "exp_power_log";
        case PsiFamily::PowerLaw: return "power_law";
    }
    return "?";
}

double psi_eval(const PsiSpec& spec, double t) {
    if (t < 0) throw std::domain_error("psi_eval: t must be >= 0");
    if (t < 1.0) t = 1.0;  // psi(0) := psi(1) convention
    switch (spec.family) {
        case PsiFamily::ExpPower: {
            double v = std::exp(-spec.alpha * std::pow(t, spec.r));
            if (spec.gamma != 0.0) v *= std::pow(t, spec.gamma);
            return v;
        }
        case PsiFamily::ExpPowerLog:
            return std::exp(-spec.alpha * std::pow(t, spec.r)) *
                   std::log(t + spec.log_shift);
        case PsiFamily::PowerLaw:
            return std::pow(t, -spec.r);
    }
    return 0;
}

double psi_derivative(const PsiSpec& spec, double t) {
    if (t < 1.0) throw std::domain_error("psi_derivative: t must be >= 1");
    switch (spec.family) {
        case PsiFamily::ExpPower: {
            // psi' = psi * (gamma/t - alpha r t^{r-1})
            return psi_eval(spec, t) *
                   (spec.gamma / t - spec.alpha * spec.r * std::pow(t, spec.r - 1.0));
        }
        case PsiFamily::ExpPowerLog: {
            double e = std::exp(-spec.alpha * std::pow(t, spec.r));
            double lg = std::log(t + spec.log_shift);
            return e * (1.0 / (t + spec.log_shift) -
                        spec.alpha * spec.r * std::pow(t, spec.r - 1.0) * lg);
        }
        case PsiFamily::PowerLaw:
            return -spec.r * std::pow(t, -spec.r - 1.0);
    }
    return 0;
}

std::optional<double> eta_closed_form(const PsiSpec& spec, double t) {
    switch (spec.family) {
        case PsiFamily::ExpPower:
            if (spec.gamma == 0.0) {
                double x = std::pow(t, spec.r) + std::log(2.0) / spec.alpha;
                return std::pow(x, 1.0 / spec.r);
            }
            return std::nullopt;
        case PsiFamily::PowerLaw:
            return std::pow(2.0, 1.0 / spec.r) * t;
        default:
            return std::nullopt;
    }
}

double eta(const PsiSpec& spec, double t) {
    if (t < 1.0) throw std::domain_error("eta: t must be >= 1");
    const double target = psi_eval(spec, t) / 2.0;
    if (!(target > 0) || !std::isfinite(target))
        throw std::range_error("eta: psi(t) underflowed before bracketing");

    // Bracket: double the offset until psi drops below half.
    double lo = t, hi = t + 1.0;
    while (psi_eval(spec, hi) > target) {
        lo = hi;
        hi = t + 2.0 * (hi - t);
        if (!std::isfinite(hi) || psi_eval(spec, hi) == 0.0)
            throw std::range_error("eta: bracket not found before psi underflow");
    }

    const double tol = 1e-10 * psi_eval(spec, t);
    double flo = psi_eval(spec, lo) - target;
    double fhi = psi_eval(spec, hi) - target;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        // Secant proposal, fall back to bisection when it leaves the bracket.
        double xs = (fhi != flo) ? hi - fhi * (hi - lo) / (fhi - flo)
                                 : 0.5 * (lo + hi);
        if (!(xs > lo && xs < hi)) xs = 0.5 * (lo + hi);
        x = xs;
        double fx = psi_eval(spec, x) - target;
        if (std::fabs(fx) <= tol && (hi - lo) <= 1e-12 * std::max(1.0, x)) break;
        if (fx > 0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if ((hi - lo) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi))
            break;
    }
    return x;
}

PsiCharacteristics mu(const PsiSpec& spec, double t) {
    PsiCharacteristics c;
    c.t = t;
    c.eta = eta(spec, t);
    c.eta_gap = c.eta - t;
    c.mu = t / c.eta_gap;
    return c;
}

ClassifyFlags classify(const PsiSpec& spec, const std::vector<double>& t_grid,
                       double k_floor) {
    if (t_grid.size() < 3)
        throw std::invalid_argument("classify: grid must have length >= 3");
    ClassifyFlags flags;
    bool mu_incr = true, gap_ok = true, ratio_incr = true;
    double prev_mu = 0, prev_ratio = 0;
    bool first = true;
    for (double t : t_grid) {
        PsiCharacteristics c = mu(spec, t);
        double ratio = psi_eval(spec, t) / std::fabs(psi_derivative(spec, t));
        if (!first) {
            if (!(c.mu > prev_mu * (1.0 + 1e-9))) mu_incr = false;
            if (!(ratio > prev_ratio * (1.0 + 1e-9))) ratio_incr = false;
        }
        if (c.eta_gap < k_floor) gap_ok = false;
        prev_mu = c.mu;
        prev_ratio = ratio;
        first = false;
    }
    flags.in_M_plus_inf = mu_incr;
    flags.in_M_dprime_inf = mu_incr && gap_ok;
    flags.psi_over_dpsi_increasing = ratio_incr;
    return flags;
}

namespace {

double simpson(const PsiSpec& spec, double a, double b) {
    double m = 0.5 * (a + b);
    return (b - a) / 6.0 *
           (psi_eval(spec, a) + 4.0 * psi_eval(spec, m) + psi_eval(spec, b));
}

double adaptive(const PsiSpec& spec, double a, double b, double whole,
                double tol, int depth) {
    double m = 0.5 * (a + b);
    double left = simpson(spec, a, m);
    double right = simpson(spec, m, b);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(spec, a, m, left, tol / 2.0, depth - 1) +
           adaptive(spec, m, b, right, tol / 2.0, depth - 1);
}

}  // namespace

double psi_tail_integral(const PsiSpec& spec, double a) {
    const double scale = psi_eval(spec, a);
    // Truncation point: psi below 1e-16 of its left-endpoint value.
    double hi = a + 1.0;
    while (psi_eval(spec, hi) > 1e-16 * scale) {
        hi = a + 2.0 * (hi - a);
        if (!std::isfinite(hi))
            throw std::range_error("psi_tail_integral: no decay before overflow");
    }
    const double tol = 1e-12 * scale;
    // Split into doubling panels so the adaptive recursion stays shallow.
    double total = 0.0, left = a, step = 1.0;
    while (left < hi) {
        double right = std::min(left + step, hi);
        total += adaptive(spec, left, right, simpson(spec, left, right), tol, 40);
        left = right;
        step *= 2.0;
    }
    return total;
}

double psi_tail_sum(const PsiSpec& spec, int n) {
    double first = psi_eval(spec, static_cast<double>(n));
    double sum = 0.0;
    for (int k = n;; ++k) {
        double term = psi_eval(spec, static_cast<double>(k));
        sum += term;
        if (term < 1e-16 * first) break;
        if (k > n + 100000000)
            throw std::range_error("psi_tail_sum: series converging too slowly");
    }
    return sum;
}

TailBound tail_bound_check(const PsiSpec& spec, int m) {
    PsiCharacteristics c = mu(spec, static_cast<double>(m));
    if (!(c.mu > 2.0))
        throw std::invalid_argument(
            "tail_bound_check: Proposition 1 requires mu(m) > 2, got mu(" +
            std::to_string(m) + ") = " + std::to_string(c.mu));
    TailBound tb;
    tb.lhs = psi_tail_integral(spec, static_cast<double>(m));
    tb.rhs = 2.0 / (1.0 - 2.0 / c.mu) * psi_eval(spec, static_cast<double>(m)) *
             c.eta_gap;
    tb.holds = tb.lhs <= tb.rhs;
    return tb;
}

}  // namespace otap
