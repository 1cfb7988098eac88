#include "otap/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

namespace otap {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDropTol = 0.0;  // exact zeros only are dropped on input
}  // namespace

TrigPoly::TrigPoly(std::map<int, Complex> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= kDropTol)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

TrigPoly TrigPoly::from_cosine(double constant,
                               const std::vector<std::pair<int, double>>& cosines) {
    std::map<int, Complex> c;
    if (constant != 0.0) c[0] = constant;
    for (auto [k, a] : cosines) {
        if (k <= 0) throw std::invalid_argument("from_cosine: harmonic index must be >= 1");
        if (a == 0.0) continue;
        c[k] += Complex(a / 2.0, 0.0);
        c[-k] += Complex(a / 2.0, 0.0);
    }
    return TrigPoly(std::move(c));
}

Complex TrigPoly::coeff(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex(0, 0) : it->second;
}

void TrigPoly::set_coeff(int k, Complex value) {
    if (std::abs(value) == 0.0)
        coeffs_.erase(k);
    else
        coeffs_[k] = value;
}

int TrigPoly::degree() const {
    int d = 0;
    for (const auto& [k, v] : coeffs_) d = std::max(d, std::abs(k));
    return d;
}

bool TrigPoly::is_real_valued() const {
    double scale = 0;
    for (const auto& [k, v] : coeffs_) scale = std::max(scale, std::abs(v));
    if (scale == 0) return true;
    for (const auto& [k, v] : coeffs_) {
        if (std::abs(v - std::conj(coeff(-k))) > 1e-14 * scale) return false;
    }
    return true;
}

namespace detail {

// Terms ordered by increasing |k|, negative index first on ties.
std::vector<std::pair<int, Complex>> sorted_terms(const TrigPoly& f) {
    std::vector<std::pair<int, Complex>> terms(f.coeffs().begin(),
                                               f.coeffs().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int aa = std::abs(a.first), bb = std::abs(b.first);
        return aa != bb ? aa < bb : a.first < b.first;
    });
    return terms;
}

Complex eval_terms(const std::vector<std::pair<int, Complex>>& terms, double t) {
    Complex sum(0, 0), comp(0, 0);
    for (const auto& [k, v] : terms) {
        Complex term = v * std::polar(1.0, k * t);
        Complex y = term - comp;
        Complex tmp = sum + y;
        comp = (tmp - sum) - y;
        sum = tmp;
    }
    return sum;
}

DenseEval::DenseEval(const TrigPoly& f) {
    degree = f.degree();
    coeffs.assign(2 * degree + 1, Complex(0, 0));
    for (const auto& [k, v] : f.coeffs()) coeffs[k + degree] = v;
}

Complex DenseEval::eval(double t) const {
    // f(t) = e^{-iDt} * Horner_j coeffs[j] (e^{it})^j.
    Complex w = std::polar(1.0, t);
    Complex acc(0, 0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * w + *it;
    return acc * std::polar(1.0, -static_cast<double>(degree) * t);
}

}  // namespace detail

Complex TrigPoly::evaluate(double t) const {
    return detail::eval_terms(detail::sorted_terms(*this), t);
}

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
    std::map<int, Complex> c = coeffs_;
    for (const auto& [k, v] : other.coeffs_) {
        auto [it, inserted] = c.emplace(k, v);
        if (!inserted) it->second += v;
    }
    return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::operator-(const TrigPoly& other) const {
    return *this + other.scaled(Complex(-1, 0));
}

TrigPoly TrigPoly::scaled(Complex factor) const {
    std::map<int, Complex> c;
    if (std::abs(factor) != 0.0)
        for (const auto& [k, v] : coeffs_) c[k] = v * factor;
    return TrigPoly(std::move(c));
}

std::string TrigPoly::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, v] : coeffs_)
        arr.push_back({k, v.real(), v.imag()});
    nlohmann::json obj;
    obj["coeffs"] = arr;
    return obj.dump();
}

TrigPoly TrigPoly::from_json(const std::string& text) {
    nlohmann::json obj = nlohmann::json::parse(text);
    std::map<int, Complex> c;
    for (const auto& entry : obj.at("coeffs")) {
        int k = entry.at(0).get<int>();
        c[k] = Complex(entry.at(1).get<double>(), entry.at(2).get<double>());
    }
    return TrigPoly(std::move(c));
}

TrigPoly partial_sum(const TrigPoly& f, int n) {
    if (n < 1) throw std::invalid_argument("partial_sum: n must be >= 1");
    std::map<int, Complex> c;
    for (const auto& [k, v] : f.coeffs())
        if (std::abs(k) <= n - 1) c[k] = v;
    return TrigPoly(std::move(c));
}

TrigPoly gamma_sum(const TrigPoly& f, const std::set<int>& gamma) {
    std::map<int, Complex> c;
    for (const auto& [k, v] : f.coeffs())
        if (gamma.count(k)) c[k] = v;
    return TrigPoly(std::move(c));
}

int QuadratureSpec::resolve_base(int degree) const {
    int wanted = std::max(1024, 8 * (degree + 1));
    int n = std::max(base_points, wanted);
    n = std::max(n, 4 * (degree + 1));
    return n;
}

TrigPoly psi_beta_derivative(const TrigPoly& f, const ClassSpec& cls) {
    std::map<int, Complex> c;
    const double phase = cls.beta * std::numbers::pi / 2.0;
    for (const auto& [k, v] : f.coeffs()) {
        if (k == 0) continue;
        double pk = psi_eval(cls.psi, std::abs(k));
        if (!(pk > 0) || !std::isfinite(1.0 / pk))
            throw std::range_error("psi_beta_derivative: psi(|k|) underflow at k = " +
                                   std::to_string(k));
        c[k] = v / pk * std::polar(1.0, phase * (k > 0 ? 1.0 : -1.0));
    }
    return TrigPoly(std::move(c));
}

TrigPoly psi_beta_antiderivative(const TrigPoly& f, const ClassSpec& cls) {
    std::map<int, Complex> c;
    const double phase = cls.beta * std::numbers::pi / 2.0;
    for (const auto& [k, v] : f.coeffs()) {
        if (k == 0) continue;
        double pk = psi_eval(cls.psi, std::abs(k));
        c[k] = v * pk * std::polar(1.0, -phase * (k > 0 ? 1.0 : -1.0));
    }
    return TrigPoly(std::move(c));
}

namespace {

// |f|^p trapezoid sum over an N-point uniform grid (trapezoid = rectangle
// rule by periodicity).
double grid_lp_pow(const detail::DenseEval& dense, double p, int n_points) {
    double acc = 0.0, comp = 0.0;
    for (int i = 0; i < n_points; ++i) {
        double t = kTwoPi * i / n_points;
        double a = std::abs(dense.eval(t));
        double term;
        if (p == 1.0)
            term = a;
        else if (p == 2.0)
            term = a * a;
        else
            term = std::pow(a, p);
        double y = term - comp;
        double tmp = acc + y;
        comp = (tmp - acc) - y;
        acc = tmp;
    }
    return acc * kTwoPi / n_points;
}

double grid_sup(const detail::DenseEval& dense, int n_points, double* t_best) {
    double best = -1.0;
    for (int i = 0; i < n_points; ++i) {
        double t = kTwoPi * i / n_points;
        double v = std::abs(dense.eval(t));
        if (v > best) {
            best = v;
            *t_best = t;
        }
    }
    return best;
}

}  // namespace

double lp_norm(const TrigPoly& f, double p, const QuadratureSpec& quad) {
    if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (f.empty()) return 0.0;
    int n = quad.resolve_base(f.degree());
    const detail::DenseEval dense(f);
    if (std::isinf(p)) {
        // Grid max, then local ternary refinement around the best point.
        // The grid is dense relative to the degree, so the basin of the
        // global max is resolved; the result is a lower estimate of the
        // true sup at this grid density.
        double t_best = 0;
        double best = grid_sup(dense, n, &t_best);
        double h = kTwoPi / n;
        double lo = t_best - h, hi = t_best + h;
        while (hi - lo > quad.sup_refine_tol * h) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            double v1 = std::abs(dense.eval(m1)), v2 = std::abs(dense.eval(m2));
            best = std::max({best, v1, v2});
            if (v1 < v2)
                lo = m1;
            else
                hi = m2;
        }
        return best;
    }
    // Doubling refinement with one Richardson step per level: the trapezoid
    // error on |f|^p is O(h^2) at the zeros of f for non-even p, and the
    // extrapolation removes that leading term. For smooth integrands the
    // rule is already spectrally exact and the step is a no-op.
    double raw_prev = grid_lp_pow(dense, p, n);
    double ext_prev = raw_prev;
    for (int iter = 0; iter < 14 && n < (1 << 21); ++iter) {
        n *= 2;
        double raw_cur = grid_lp_pow(dense, p, n);
        double ext_cur = raw_cur + (raw_cur - raw_prev) / 3.0;
        bool done =
            std::fabs(ext_cur - ext_prev) <= quad.rel_tol * std::max(ext_cur, 1e-300);
        raw_prev = raw_cur;
        ext_prev = ext_cur;
        if (done) break;
    }
    return std::pow(ext_prev, 1.0 / p);
}

double rho_n(const TrigPoly& f, int n, double s, const QuadratureSpec& quad) {
    if (n < 1) throw std::invalid_argument("rho_n: n must be >= 1");
    return lp_norm(f - partial_sum(f, n), s, quad);
}

MembershipReport membership_report(const TrigPoly& f, const ClassSpec& cls,
                                   const QuadratureSpec& quad) {
    MembershipReport rep;
    TrigPoly deriv = psi_beta_derivative(f, cls);
    rep.deriv_norm = lp_norm(deriv, cls.p, quad);
    rep.zero_mean = deriv.coeff(0) == Complex(0, 0);
    rep.in_class = rep.deriv_norm <= 1.0 + quad.rel_tol;
    return rep;
}

}  // namespace otap
