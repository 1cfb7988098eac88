#include "otap/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace otap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double parseval_l2(const TrigPoly& f) {
    double s = 0;
    for (const auto& [k, v] : f.coeffs()) s += std::norm(v);
    return std::sqrt(kTwoPi * s);
}

std::vector<int> support_of(const TrigPoly& f) {
    std::vector<int> keys;
    keys.reserve(f.support_size());
    for (const auto& [k, v] : f.coeffs()) keys.push_back(k);
    return keys;  // std::map keeps them sorted
}

double subset_count(std::size_t n, std::size_t m) {
    double total = 0, c = 1;
    for (std::size_t j = 0; j <= std::min(n, m); ++j) {
        total += c;
        c = c * (n - j) / (j + 1);
        if (total > 1e18) break;
    }
    return total;
}

TrigPoly remainder_of(const TrigPoly& f, const std::vector<int>& removed) {
    std::map<int, Complex> c = f.coeffs();
    for (int k : removed) c.erase(k);
    return TrigPoly(std::move(c));
}

// Visits subsets of {0..n-1} of each size 0..m in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t m, Fn&& fn) {
    std::vector<std::size_t> idx;
    fn(idx);
    for (std::size_t size = 1; size <= std::min(n, m); ++size) {
        idx.assign(size, 0);
        for (std::size_t j = 0; j < size; ++j) idx[j] = j;
        while (true) {
            fn(idx);
            std::size_t j = size;
            while (j > 0 && idx[j - 1] == n - size + (j - 1)) --j;
            if (j == 0) break;
            ++idx[j - 1];
            for (std::size_t l = j; l < size; ++l) idx[l] = idx[l - 1] + 1;
        }
    }
}

}  // namespace

ApproxResult best_orthogonal_exact(const TrigPoly& f, int m, double s,
                                   const QuadratureSpec& quad) {
    if (m < 0) throw std::invalid_argument("best_orthogonal_exact: m must be >= 0");
    const std::vector<int> support = support_of(f);
    if (support.size() > 24 ||
        subset_count(support.size(), static_cast<std::size_t>(m)) > 5e6)
        throw CapacityError(
            "best_orthogonal_exact: instance too large for exhaustive search, "
            "use best_orthogonal_greedy");

    ApproxResult best;
    best.method = ApproxMethod::Exact;
    best.value = std::numeric_limits<double>::infinity();
    std::vector<int> removed;
    for_each_subset(support.size(), static_cast<std::size_t>(m),
                    [&](const std::vector<std::size_t>& idx) {
                        removed.clear();
                        for (std::size_t i : idx) removed.push_back(support[i]);
                        TrigPoly rem = remainder_of(f, removed);
                        double v = s == 2.0 ? parseval_l2(rem)
                                            : lp_norm(rem, s, quad);
                        if (v < best.value) {
                            best.value = v;
                            best.gamma = IndexSet(removed.begin(), removed.end());
                        }
                    });
    return best;
}

namespace {

struct GridScorer {
    double s;
    int n_points;
    std::vector<Complex> full;                // f on the grid
    std::vector<std::vector<Complex>> terms;  // per support index

    GridScorer(const TrigPoly& f, const std::vector<int>& support, double s_in,
               const QuadratureSpec& quad)
        : s(s_in) {
        n_points = 2 * quad.resolve_base(f.degree());
        full.assign(n_points, Complex(0, 0));
        terms.resize(support.size());
        for (std::size_t j = 0; j < support.size(); ++j) {
            int k = support[j];
            Complex c = f.coeff(k);
            terms[j].resize(n_points);
            for (int i = 0; i < n_points; ++i) {
                double t = kTwoPi * i / n_points;
                Complex v = c * std::polar(1.0, k * t);
                terms[j][i] = v;
                full[i] += v;
            }
        }
    }

    double score(const std::vector<Complex>& rem) const {
        if (std::isinf(s)) {
            double best = 0;
            for (const Complex& v : rem) best = std::max(best, std::abs(v));
            return best;
        }
        double acc = 0;
        for (const Complex& v : rem) {
            double a = std::abs(v);
            acc += s == 1.0 ? a : std::pow(a, s);
        }
        return acc;  // monotone surrogate; root and measure factor omitted
    }
};

}  // namespace

ApproxResult best_orthogonal_greedy(const TrigPoly& f, int m, double s,
                                    const QuadratureSpec& quad, int swaps) {
    if (m < 0) throw std::invalid_argument("best_orthogonal_greedy: m must be >= 0");
    std::vector<int> support = support_of(f);
    // Selection order: larger |f_hat| first; ties smaller |k| first, then
    // the positive index. Fixed so runs are reproducible bit-for-bit.
    std::vector<int> order = support;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ma = std::abs(f.coeff(a)), mb = std::abs(f.coeff(b));
        if (ma != mb) return ma > mb;
        int aa = std::abs(a), ab = std::abs(b);
        if (aa != ab) return aa < ab;
        return a > b;
    });
    std::size_t take = std::min<std::size_t>(m, order.size());
    std::vector<int> selected(order.begin(), order.begin() + take);

    ApproxResult res;
    res.method = ApproxMethod::Greedy;

    if (s != 2.0 && take > 0 && take < support.size()) {
        if (swaps < 0) swaps = 2 * m;
        GridScorer scorer(f, support, s, quad);
        std::vector<std::size_t> sel_idx, rest_idx;
        for (std::size_t j = 0; j < support.size(); ++j) {
            if (std::find(selected.begin(), selected.end(), support[j]) !=
                selected.end())
                sel_idx.push_back(j);
            else
                rest_idx.push_back(j);
        }
        std::vector<Complex> rem(scorer.full);
        for (std::size_t j : sel_idx)
            for (int i = 0; i < scorer.n_points; ++i) rem[i] -= scorer.terms[j][i];
        double cur = scorer.score(rem);
        std::vector<Complex> cand(scorer.n_points);
        for (int round = 0; round < swaps; ++round) {
            double best_score = cur;
            std::size_t best_out = 0, best_in = 0;
            bool improved = false;
            for (std::size_t oi = 0; oi < sel_idx.size(); ++oi) {
                for (std::size_t ii = 0; ii < rest_idx.size(); ++ii) {
                    for (int i = 0; i < scorer.n_points; ++i)
                        cand[i] = rem[i] + scorer.terms[sel_idx[oi]][i] -
                                  scorer.terms[rest_idx[ii]][i];
                    double v = scorer.score(cand);
                    if (v < best_score) {
                        best_score = v;
                        best_out = oi;
                        best_in = ii;
                        improved = true;
                    }
                }
            }
            if (!improved) break;
            res.method = ApproxMethod::GreedyPlusSwaps;
            for (int i = 0; i < scorer.n_points; ++i)
                rem[i] += scorer.terms[sel_idx[best_out]][i] -
                          scorer.terms[rest_idx[best_in]][i];
            std::swap(sel_idx[best_out], rest_idx[best_in]);
            cur = best_score;
        }
        selected.clear();
        for (std::size_t j : sel_idx) selected.push_back(support[j]);
    }

    res.gamma = IndexSet(selected.begin(), selected.end());
    TrigPoly rem_poly = remainder_of(f, selected);
    res.value = s == 2.0 ? parseval_l2(rem_poly) : lp_norm(rem_poly, s, quad);
    return res;
}

double pairing_inf(const TrigPoly& f, const TrigPoly& g, int m) {
    if (m < 0) throw std::invalid_argument("pairing_inf: m must be >= 0");
    std::vector<Complex> w;
    for (const auto& [k, fv] : f.coeffs()) {
        Complex gv = g.coeff(-k);
        Complex wk = kTwoPi * fv * gv;
        if (std::abs(wk) != 0.0) w.push_back(wk);
    }
    if (w.empty()) return 0.0;
    if (static_cast<std::size_t>(m) >= w.size()) return 0.0;

    double scale = 0;
    for (const Complex& v : w) scale = std::max(scale, std::abs(v));
    bool nonneg_real = true;
    for (const Complex& v : w)
        if (std::fabs(v.imag()) > 1e-12 * scale || v.real() < -1e-12 * scale)
            nonneg_real = false;

    if (nonneg_real) {
        std::vector<double> re(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) re[i] = w[i].real();
        std::sort(re.begin(), re.end(), std::greater<double>());
        double total = 0;
        for (double v : re) total += v;
        double removed = 0;
        for (int i = 0; i < m; ++i) removed += re[i];
        return total - removed;
    }

    if (w.size() > 24 || subset_count(w.size(), static_cast<std::size_t>(m)) > 5e6)
        throw CapacityError("pairing_inf: mixed-sign terms exceed the exhaustive guard");
    Complex total(0, 0);
    for (const Complex& v : w) total += v;
    double best = std::abs(total);
    for_each_subset(w.size(), static_cast<std::size_t>(m),
                    [&](const std::vector<std::size_t>& idx) {
                        Complex sum = total;
                        for (std::size_t i : idx) sum -= w[i];
                        best = std::min(best, std::abs(sum));
                    });
    return best;
}

double lower_bound_via_pairing(const TrigPoly& f, const TrigPoly& g, int m,
                               double s, const QuadratureSpec& quad) {
    double s_prime = conjugate_exponent(s);
    double g_norm = lp_norm(g, s_prime, quad);
    if (!(g_norm > 0))
        throw std::invalid_argument("lower_bound_via_pairing: ||g||_{s'} must be > 0");
    return pairing_inf(f, g, m) / g_norm;
}

namespace {

// Checks that removing {0, +-1..+-(n-1), one of +-n} is optimal: every
// removed profile value must dominate the remaining maximum psi^2(n).
bool fstar_profile_monotone(const PsiSpec& psi, int n) {
    double floor = psi_eval(psi, n) * psi_eval(psi, n);
    if (psi_eval(psi, 1) * psi_eval(psi, 2.0 * n) < floor) return false;
    for (int k = 1; k <= n - 1; ++k)
        if (psi_eval(psi, k) * psi_eval(psi, 2.0 * n - k) < floor) return false;
    return true;
}

double fstar_tail_sum(const PsiSpec& psi, int n) {
    double pn = psi_eval(psi, n);
    double sum = pn * pn;
    for (int k = n + 1; k <= 2 * n; ++k) {
        double pk = psi_eval(psi, k);
        sum += 2.0 * pk * pk;
    }
    return sum;
}

}  // namespace

ClosedFormPairing i1_closed_form(const ClassSpec& cls, int n,
                                 const BoundConstants& consts) {
    PsiCharacteristics c = mu(cls.psi, static_cast<double>(n));
    double pref = kPi * consts.lambda_p /
                  (2.0 * psi_eval(cls.psi, n) *
                   std::pow(c.eta_gap, 1.0 / consts.p_prime));
    ClosedFormPairing out;
    out.value = pref * fstar_tail_sum(cls.psi, n);
    out.monotone_profile = fstar_profile_monotone(cls.psi, n);
    return out;
}

double i2_main_term(const PsiSpec& psi, int n) {
    double sum = n * psi_eval(psi, n);
    for (int k = n + 1; k <= 2 * n; ++k) sum += 2.0 * k * psi_eval(psi, k);
    return sum / (20.0 * n);
}

ClosedFormPairing i2_closed_form(const PsiSpec& psi, int n) {
    // Analytic coefficient pairing of f*_{2n} with V_{2n}: weights built
    // straight from the defining formulas, then the 2n largest removed.
    std::vector<double> w;
    w.push_back(psi_eval(psi, 1) / (20.0 * n));  // k = 0
    for (int k = 1; k <= 2 * n; ++k) {
        double v = k * psi_eval(psi, k) / (20.0 * n);
        w.push_back(v);
        w.push_back(v);
    }
    for (int k = 2 * n + 1; k <= 4 * n - 1; ++k) {
        double v = (4 * n + 1 - k) * (1.0 - k / (4.0 * n)) * psi_eval(psi, k) /
                   (10.0 * n);
        w.push_back(v);
        w.push_back(v);
    }
    std::sort(w.begin(), w.end(), std::greater<double>());
    double total = 0;
    for (double v : w) total += v;
    double removed = 0;
    for (int i = 0; i < 2 * n && i < static_cast<int>(w.size()); ++i)
        removed += w[i];
    ClosedFormPairing out;
    out.value = total - removed;
    out.monotone_profile = true;  // exact greedy removal, no pattern assumed
    return out;
}

ClosedFormPairing i3_closed_form(const ClassSpec& cls_sprime, int n,
                                 const BoundConstants& consts) {
    PsiCharacteristics c = mu(cls_sprime.psi, static_cast<double>(n));
    double pref = consts.lambda_p /
                  (6.0 * psi_eval(cls_sprime.psi, n) *
                   std::pow(c.eta_gap, 1.0 / consts.p_prime));
    ClosedFormPairing out;
    out.value = pref * fstar_tail_sum(cls_sprime.psi, n);
    out.monotone_profile = fstar_profile_monotone(cls_sprime.psi, n);
    return out;
}

}  // namespace otap
