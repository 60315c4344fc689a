#pragma once
//
// Least-squares identification of r^a (log 1/r)^b (loglog 1/r)^c behavior
// near 0, and verification of computed weights against a table of expected
// exponents.
//

#include "riembed/weight.hpp"

#include <string>
#include <vector>

namespace riembed {

struct LogPowerFit {
    double a = 0.0;        // exponent of r
    double b = 0.0;        // exponent of log(1/r)
    double c = 0.0;        // exponent of loglog(1/r); kept only when it earns
                           // a >= 10% residual improvement over real residual
    bool c_active = false;
    double shift = 0.0;     // offset inside the logs: (log(1/r) + shift)^b;
                            // asymptotically irrelevant, absorbs the leading
                            // finite-r corrections of log-type weights
    double residual = 0.0;  // relative RMS of the log-values over the window
    double r_lo = 0.0, r_hi = 0.0;
};

struct FitWindow {
    double r_lo = 1e-12;
    double r_hi = 1e-4;
};

/// Least squares of log(value) on {1, log r, log log(1/r), log loglog(1/r)},
/// with the inner log(1/r) replaced by log(1/r) + shift and the shift chosen
/// by a residual scan. The loglog regressor enters only when it improves a
/// non-negligible residual by >= 10%; `force_loglog` pins the model choice
/// (used when a table row is tagged as a loglog branch), and `loglog_shift`
/// offsets the second log level (ln n moves it to the measure variable r^n).
/// Requires >= 20 positive samples inside the window.
LogPowerFit fit_log_power(const ArrayXd& r, const ArrayXd& value, const FitWindow& w = {},
                          int force_loglog = -1, double loglog_shift = 0.0);
LogPowerFit fit_log_power(const Weight& weight, const FitWindow& w = {},
                          int force_loglog = -1, double loglog_shift = 0.0);

struct CorollaryRow {
    std::string key;     // e.g. "lebesgue-morrey/p<n-over-m/n3m1p2"
    std::string target;  // "morrey" | "campanato"
    std::string family;  // "lebesgue" | "zygmund"
    double p = 2.0;
    double alpha = 0.0;  // zygmund only
    int n = 3, m = 1;
    int k = -1;  // campanato only
    double expect_a = 0.0, expect_b = 0.0, expect_c = 0.0;
    std::string case_label;
    std::string note;  // documented reason when inconclusive is acceptable
    bool loglog_branch() const { return expect_c != 0.0; }
};

struct CorollaryTable {
    int version = 1;
    std::vector<CorollaryRow> rows;

    static CorollaryTable load(const std::string& path);
    void save(const std::string& path) const;
    /// Built-in default covering every case branch of the encoded families.
    static CorollaryTable builtin();
};

enum class RowOutcome { Pass, Fail, Inconclusive };

struct RowVerification {
    RowOutcome outcome = RowOutcome::Fail;
    LogPowerFit fit;
    double delta_a = 0.0, delta_b = 0.0, delta_c = 0.0;
};

struct VerifyTolerances {
    double tol_a = 0.02;
    double tol_b = 0.1;
    double tol_c = 0.2;
    double residual_max = 0.05;  // beyond: inconclusive, reported distinctly
};

/// Fit the computed weight over the window and compare exponents against
/// the row's expectation.
RowVerification verify_corollary(const CorollaryRow& row, const Weight& computed,
                                 const FitWindow& w = {}, const VerifyTolerances& tol = {});

/// Build the row's space and compute its optimal target weight.
Weight compute_row_target(const CorollaryRow& row, double r_min = 1e-13, int per_decade = 12);

}  // namespace riembed
