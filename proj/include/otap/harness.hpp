#pragma once

#include <string>
#include <vector>

#include "otap/approx.hpp"

namespace otap {

enum class VerifyMode { Theorem1, Theorem2, Theorem3, Corollary1, Corollary2 };

VerifyMode mode_from_string(const std::string& s);
std::string mode_to_string(VerifyMode m);

struct ExperimentConfig {
    PsiSpec psi = PsiSpec::exp_power(2.0, 0.5);  // default sweep family
    double beta = 0.0;
    double p = 2.0;  // exponent of the class (theorem1 / corollary1)
    double s = 2.0;  // metric exponent (theorem3 / corollary2)
    int n_min = 9;
    int n_max = 20;
    int n_step = 1;
    VerifyMode mode = VerifyMode::Theorem1;
    QuadratureSpec quad;
    int swaps = -1;  // -1: engine default of 2m
    std::string output_path;
    std::string output_format = "csv";  // "csv" or "json"

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);

    std::vector<int> n_values() const;
};

// One row per n: every link of the theorem's inequality chain plus the
// constants and flags. Fields not meaningful for a mode hold NaN.
struct BoundRow {
    int n = 0;
    double psi_n = 0;
    double eta_n = 0;
    double eta_gap = 0;
    double mu_n = 0;
    double order_term = 0;        // psi(n) (eta(n)-n)^{1/q}
    double lower_paper = 0;       // stated lower constant times order_term
    double pairing_lower = 0;     // I / ||g|| certified lower bound
    double pairing_raw = 0;       // the pairing infimum I itself
    double e_upper_greedy = 0;    // greedy e_perp of the extremal member
    double rho_upper = 0;         // ||rho_n(extremal)||
    double rho_bound_paper = 0;   // (1/pi) sum_{k>=n} psi(k), theorem2 only
    double class_upper_paper = 0; // stated upper constant times order_term
    double class_upper_alt = 0;   // alternate of the two stated upper forms
    double membership_norm = 0;   // ||(member)^psi_beta||_p
    double fdstar_deriv_l1 = 0;   // measured ||(f**)^psi_beta||_1, theorem3 only
    double closed_form_rel_err = 0;  // |pairing - closed form| / closed form
    bool chain_ok = false;
    bool membership_ok = false;
    bool conditions_ok = false;
};

struct BoundReport {
    VerifyMode mode = VerifyMode::Theorem1;
    ExperimentConfig config;
    BoundConstants consts;
    bool consts_valid = false;
    std::string consts_error;
    std::vector<BoundRow> rows;

    bool all_chains_ok() const;  // over conditions_ok rows
};

BoundReport verify_theorem1(const ExperimentConfig& cfg);
BoundReport verify_theorem2(const ExperimentConfig& cfg);
BoundReport verify_theorem3(const ExperimentConfig& cfg);
BoundReport verify(const ExperimentConfig& cfg);

struct RatioRow {
    int n = 0;
    double denom = 0;        // exp(-alpha n^r) n^{(1-r)/q}
    double ratio_lower = 0;  // pairing_lower / denom
    double ratio_upper = 0;  // e_upper_greedy / denom
};

struct RatioTable {
    VerifyMode mode = VerifyMode::Corollary1;
    std::vector<RatioRow> rows;
    double lower_max_over_min = 0;
    double upper_max_over_min = 0;
};

RatioTable sweep_corollary(const ExperimentConfig& cfg);

// CSV columns exactly in BoundRow field order with a header row; JSON
// mirrors the field names. Floats carry 17 significant digits.
std::string emit_report(const BoundReport& report, const std::string& format);
BoundReport report_from_json(const std::string& text);
std::string emit_ratio_table(const RatioTable& table, const std::string& format);
void write_file(const std::string& path, const std::string& contents);

}  // namespace otap
