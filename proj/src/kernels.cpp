#include "otap/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace otap {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex memo_mutex;
std::map<std::pair<int, double>, TrigPoly> dirichlet_memo;
std::map<int, TrigPoly> vp_memo;

TrigPoly build_dirichlet(int k, double beta) {
    const double half = beta * kPi / 2.0;
    std::map<int, Complex> c;
    double c0 = 0.5 * std::cos(half);
    if (c0 != 0.0) c[0] = c0;
    for (int j = 1; j <= k; ++j) {
        c[j] = 0.5 * std::polar(1.0, half);
        c[-j] = 0.5 * std::polar(1.0, -half);
    }
    return TrigPoly(std::move(c));
}

TrigPoly build_vallee_poussin(int m) {
    std::map<int, Complex> c;
    c[0] = 0.5;
    for (int k = 1; k <= m; ++k) {
        c[k] = 0.5;
        c[-k] = 0.5;
    }
    for (int k = m + 1; k <= 2 * m - 1; ++k) {
        double w = 1.0 - static_cast<double>(k) / (2.0 * m);
        c[k] = w;
        c[-k] = w;
    }
    return TrigPoly(std::move(c));
}

}  // namespace

KernelHandle dirichlet_beta(int k, double beta) {
    if (k < 1) throw std::invalid_argument("dirichlet_beta: k must be >= 1");
    KernelHandle h;
    h.kind = KernelKind::DirichletBeta;
    h.order = k;
    h.beta = beta;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = dirichlet_memo.find({k, beta});
        if (it != dirichlet_memo.end()) {
            h.poly = it->second;
            return h;
        }
    }
    TrigPoly p = build_dirichlet(k, beta);
    std::lock_guard<std::mutex> lock(memo_mutex);
    h.poly = dirichlet_memo.emplace(std::make_pair(k, beta), std::move(p))
                 .first->second;
    return h;
}

double dirichlet_beta_closed_form(int k, double beta, double t) {
    const double half = beta * kPi / 2.0;
    double s = std::sin(t / 2.0);
    if (s == 0.0) {
        // Removable singularity: fall back to the coefficient sum.
        return 0.5 * std::cos(half) + k * std::cos(half);
    }
    return (std::sin((k + 0.5) * t + half) - std::cos(t / 2.0) * std::sin(half)) /
           (2.0 * s);
}

KernelHandle vallee_poussin(int m) {
    if (m < 1) throw std::invalid_argument("vallee_poussin: m must be >= 1");
    KernelHandle h;
    h.kind = KernelKind::ValleePoussin;
    h.order = m;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = vp_memo.find(m);
        if (it != vp_memo.end()) {
            h.poly = it->second;
            return h;
        }
    }
    TrigPoly p = build_vallee_poussin(m);
    std::lock_guard<std::mutex> lock(memo_mutex);
    h.poly = vp_memo.emplace(m, std::move(p)).first->second;
    return h;
}

KernelL1Check kernel_l1_check(int m, const QuadratureSpec& quad) {
    KernelL1Check chk;
    chk.norm = lp_norm(vallee_poussin(m).poly, 1.0, quad);
    chk.holds = chk.norm <= 3.0 * kPi + 1e-6;
    return chk;
}

bool dirichlet_bound_check(int k, double beta,
                           const std::vector<double>& t_grid) {
    for (double t : t_grid) {
        if (!(t > 0.0 && t <= kPi))
            throw std::domain_error("dirichlet_bound_check: grid point outside (0, pi]");
        double v = std::fabs(dirichlet_beta_closed_form(k, beta, t));
        if (v > kPi / t + 1e-9) return false;
    }
    return true;
}

}  // namespace otap
