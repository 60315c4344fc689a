#include "riembed/asymptotics.hpp"

#include "riembed/criteria.hpp"
#include "riembed/spaces.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace riembed {

namespace {

using nlohmann::json;

}  // namespace

LogPowerFit fit_log_power(const ArrayXd& r, const ArrayXd& value, const FitWindow& w,
                          int force_loglog, double loglog_shift) {
    std::vector<double> lr, lv;
    for (Index i = 0; i < r.size(); ++i) {
        if (r[i] < w.r_lo || r[i] > w.r_hi) continue;
        if (r[i] >= 0.2) continue;  // the log regressors need log(1/r) > 1
        if (!(value[i] > 0.0) || !std::isfinite(value[i]))
            throw std::invalid_argument("fit_log_power: values must be positive and finite");
        lr.push_back(std::log(r[i]));
        lv.push_back(std::log(value[i]));
    }
    const Index n = static_cast<Index>(lr.size());
    if (n < 20) throw std::invalid_argument("fit_log_power: need >= 20 samples in the window");

    Eigen::VectorXd y(n);
    for (Index i = 0; i < n; ++i) y(i) = lv[static_cast<size_t>(i)];

    // scan the shift; log-type weights carry finite-r corrections of the
    // shape (log(1/r) + s)^b, so the shifted regressor family fits them
    // without biasing b, while pure power-log inputs recover exactly
    auto fit_model = [&](bool with_c, double s1, Eigen::VectorXd* coef, double* res) {
        const int cols = with_c ? 4 : 3;
        Eigen::MatrixXd X(n, cols);
        for (Index i = 0; i < n; ++i) {
            const double x = lr[static_cast<size_t>(i)];
            const double shifted = -x + s1;
            if (!(shifted > 1.2)) return false;
            X(i, 0) = 1.0;
            X(i, 1) = x;
            X(i, 2) = std::log(shifted);
            if (with_c) {
                const double inner = std::log(shifted) + loglog_shift;
                if (!(inner > 0.2)) return false;
                X(i, 3) = std::log(inner);
            }
        }
        *coef = X.colPivHouseholderQr().solve(y);
        *res = std::sqrt((y - X * (*coef)).squaredNorm() / static_cast<double>(n));
        return true;
    };
    auto scan = [&](bool with_c, Eigen::VectorXd* coef, double* res, double* shift) {
        *res = std::numeric_limits<double>::infinity();
        for (double s1 = -4.0; s1 <= 12.01; s1 += 0.25) {
            Eigen::VectorXd c;
            double rr = 0.0;
            if (!fit_model(with_c, s1, &c, &rr)) continue;
            if (rr < *res) {
                *res = rr;
                *coef = c;
                *shift = s1;
            }
        }
        return std::isfinite(*res);
    };

    Eigen::VectorXd b3, b4;
    double res3 = 0.0, res4 = 0.0, s3 = 0.0, s4 = 0.0;
    if (!scan(false, &b3, &res3, &s3))
        throw std::invalid_argument("fit_log_power: degenerate window");
    scan(true, &b4, &res4, &s4);

    bool use_c;
    if (force_loglog >= 0)
        use_c = force_loglog > 0;
    else
        use_c = res3 > 1e-14 && res4 <= 0.1 * res3;

    LogPowerFit fit;
    fit.r_lo = w.r_lo;
    fit.r_hi = w.r_hi;
    if (use_c) {
        fit.a = b4(1);
        fit.b = b4(2);
        fit.c = b4(3);
        fit.c_active = true;
        fit.residual = res4;
        fit.shift = s4;
    } else {
        fit.a = b3(1);
        fit.b = b3(2);
        fit.c = 0.0;
        fit.residual = res3;
        fit.shift = s3;
    }
    return fit;
}

LogPowerFit fit_log_power(const Weight& weight, const FitWindow& w, int force_loglog,
                          double loglog_shift) {
    const int per_decade = 16;
    const double decades = std::log10(w.r_hi / w.r_lo);
    const int n = std::max(20, static_cast<int>(decades * per_decade));
    ArrayXd r(n + 1), v(n + 1);
    for (int i = 0; i <= n; ++i) {
        r[i] = w.r_lo * std::pow(w.r_hi / w.r_lo, static_cast<double>(i) / n);
        v[i] = weight(r[i]);
    }
    return fit_log_power(r, v, w, force_loglog, loglog_shift);
}

// ---------------------------------------------------------------------------
// corollary table
// ---------------------------------------------------------------------------

CorollaryTable CorollaryTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("CorollaryTable::load: cannot open " + path);
    json doc = json::parse(in);
    CorollaryTable t;
    t.version = doc.at("version").get<int>();
    if (t.version != 1)
        throw std::runtime_error("CorollaryTable::load: unsupported version");
    for (const auto& jr : doc.at("rows")) {
        CorollaryRow row;
        row.key = jr.at("key").get<std::string>();
        row.target = jr.at("target").get<std::string>();
        row.family = jr.at("family").get<std::string>();
        row.p = jr.at("p").get<double>();
        row.alpha = jr.value("alpha", 0.0);
        row.n = jr.at("n").get<int>();
        row.m = jr.at("m").get<int>();
        row.k = jr.value("k", -1);
        row.expect_a = jr.at("expect").at("a").get<double>();
        row.expect_b = jr.at("expect").at("b").get<double>();
        row.expect_c = jr.at("expect").at("c").get<double>();
        row.case_label = jr.at("case").get<std::string>();
        row.note = jr.value("note", "");
        t.rows.push_back(std::move(row));
    }
    return t;
}

void CorollaryTable::save(const std::string& path) const {
    nlohmann::ordered_json doc;
    doc["version"] = version;
    auto jrows = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json jr;
        jr["key"] = r.key;
        jr["target"] = r.target;
        jr["family"] = r.family;
        jr["p"] = r.p;
        if (r.family == "zygmund") jr["alpha"] = r.alpha;
        jr["n"] = r.n;
        jr["m"] = r.m;
        if (r.k >= 0) jr["k"] = r.k;
        jr["expect"] = nlohmann::ordered_json{{"a", r.expect_a}, {"b", r.expect_b}, {"c", r.expect_c}};
        jr["case"] = r.case_label;
        if (!r.note.empty()) jr["note"] = r.note;
        jrows.push_back(std::move(jr));
    }
    doc["rows"] = std::move(jrows);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("CorollaryTable::save: cannot write " + path);
    out << doc.dump(2) << "\n";
}

CorollaryTable CorollaryTable::builtin() {
    CorollaryTable t;
    auto morrey = [&](std::string key, std::string family, double p, double alpha, int n,
                      int m, double a, double b, double c, std::string label) {
        t.rows.push_back({std::move(key), "morrey", std::move(family), p, alpha, n, m, -1, a,
                          b, c, std::move(label), ""});
    };
    auto campanato = [&](std::string key, std::string family, double p, double alpha, int n,
                         int m, int k, double a, double b, double c, std::string label) {
        t.rows.push_back({std::move(key), "campanato", std::move(family), p, alpha, n, m, k,
                          a, b, c, std::move(label), ""});
    };

    // optimal Morrey targets, Zygmund-Sobolev domains
    morrey("zygmund-morrey/sub/n3m1p2a1", "zygmund", 2.0, 1.0, 3, 1, -0.5, -0.5, 0.0,
           "p<n/m");
    morrey("zygmund-morrey/crit-lowlog/n4m2p2a0.5", "zygmund", 2.0, 0.5, 4, 2, 0.0, 0.25,
           0.0, "p=n/m, alpha<(n-m)/m");
    morrey("zygmund-morrey/crit-boundary/n4m2p2a1", "zygmund", 2.0, 1.0, 4, 2, 0.0, 0.0,
           0.5, "p=n/m, alpha=(n-m)/m");
    morrey("zygmund-morrey/crit-highlog/n4m2p2a4", "zygmund", 2.0, 4.0, 4, 2, 0.0, 0.0, 0.0,
           "p=n/m, alpha>(n-m)/m");
    morrey("zygmund-morrey/super/n3m1p6a1", "zygmund", 6.0, 1.0, 3, 1, 0.0, 0.0, 0.0,
           "p>n/m");
    morrey("zygmund-morrey/sub-p1/n3m1p1a1", "zygmund", 1.0, 1.0, 3, 1, -2.0, -1.0, 0.0,
           "p<n/m, p=1");
    morrey("zygmund-morrey/crit-neg-alpha/n2m1p2a-0.5", "zygmund", 2.0, -0.5, 2, 1, 0.0,
           0.75, 0.0, "p=n/m, alpha<(n-m)/m, alpha<0");

    // optimal Morrey targets, Lebesgue-Sobolev domains
    morrey("lebesgue-morrey/p<n-over-m/n3m1p2", "lebesgue", 2.0, 0.0, 3, 1, -0.5, 0.0, 0.0,
           "p<n/m");
    morrey("lebesgue-morrey/p=n-over-m/n2m1p2", "lebesgue", 2.0, 0.0, 2, 1, 0.0, 0.5, 0.0,
           "p=n/m");
    morrey("lebesgue-morrey/p>n-over-m/n3m2p3", "lebesgue", 3.0, 0.0, 3, 2, 0.0, 0.0, 0.0,
           "p>n/m");
    morrey("lebesgue-morrey/p=n-over-m/n4m1p4", "lebesgue", 4.0, 0.0, 4, 1, 0.0, 0.75, 0.0,
           "p=n/m");
    morrey("lebesgue-morrey/p<n-over-m/n4m3p1", "lebesgue", 1.0, 0.0, 4, 3, -1.0, 0.0, 0.0,
           "p<n/m, p=1");
    morrey("lebesgue-morrey/p<n-over-m/n4m2p1", "lebesgue", 1.0, 0.0, 4, 2, -2.0, 0.0, 0.0,
           "p<n/m, p=1");

    // optimal Campanato targets, Zygmund-Sobolev domains
    campanato("zygmund-campanato/sub/n3m2k0p2a1", "zygmund", 2.0, 1.0, 3, 2, 0, 0.5, -0.5,
              0.0, "p<n/(m-k-1)");
    campanato("zygmund-campanato/crit-lowlog/n3m2k0p3a1", "zygmund", 3.0, 1.0, 3, 2, 0, 1.0,
              1.0 / 3.0, 0.0, "p=n/(m-k-1), alpha<(n-m+k+1)/(m-k-1)");
    campanato("zygmund-campanato/crit-boundary/n3m2k0p3a2", "zygmund", 3.0, 2.0, 3, 2, 0,
              1.0, 0.0, 2.0 / 3.0, "p=n/(m-k-1), alpha=(n-m+k+1)/(m-k-1)");
    campanato("zygmund-campanato/crit-highlog/n3m2k0p3a5", "zygmund", 3.0, 5.0, 3, 2, 0,
              1.0, 0.0, 0.0, "p=n/(m-k-1), alpha>(n-m+k+1)/(m-k-1)");
    campanato("zygmund-campanato/k=m-1/n3m2k1p4a1", "zygmund", 4.0, 1.0, 3, 2, 1, 0.25,
              -0.25, 0.0, "k=m-1: p<n/(m-k-1)=inf");
    campanato("zygmund-campanato/m-k>=n+1/n2m4k1p2a1", "zygmund", 2.0, 1.0, 2, 4, 1, 1.0,
              0.0, 0.0, "m-k>=n+1");
    campanato("zygmund-campanato/k=m-1-neg-alpha/n3m2k1p2a-1", "zygmund", 2.0, -1.0, 3, 2,
              1, -0.5, 0.5, 0.0, "k=m-1, alpha<0");

    // optimal Campanato targets, Lebesgue-Sobolev domains
    campanato("lebesgue-campanato/bmo-row/n4m3k1p2", "lebesgue", 2.0, 0.0, 4, 3, 1, 0.0,
              0.0, 0.0, "p<n/(m-k-1), p=n/(m-k)");
    campanato("lebesgue-campanato/crit/n4m3k1p4", "lebesgue", 4.0, 0.0, 4, 3, 1, 1.0, 0.75,
              0.0, "p=n/(m-k-1)");
    campanato("lebesgue-campanato/super/n4m3k1p8", "lebesgue", 8.0, 0.0, 4, 3, 1, 1.0, 0.0,
              0.0, "p>n/(m-k-1)");
    campanato("lebesgue-campanato/k=m-1/n2m1k0p4", "lebesgue", 4.0, 0.0, 2, 1, 0, 0.5, 0.0,
              0.0, "k=m-1: p<n/(m-k-1)=inf");
    campanato("lebesgue-campanato/m-k>=n+1/n2m3k0p2", "lebesgue", 2.0, 0.0, 2, 3, 0, 1.0,
              0.0, 0.0, "m-k>=n+1");
    campanato("lebesgue-campanato/k=m-1-p1/n3m1k0p1", "lebesgue", 1.0, 0.0, 3, 1, 0, -2.0,
              0.0, 0.0, "k=m-1, p=1");
    return t;
}

RowVerification verify_corollary(const CorollaryRow& row, const Weight& computed,
                                 const FitWindow& w, const VerifyTolerances& tol) {
    RowVerification out;
    out.fit = fit_log_power(computed, w, row.loglog_branch() ? 1 : 0,
                            row.loglog_branch() ? std::log((double)row.n) : 0.0);
    out.delta_a = out.fit.a - row.expect_a;
    out.delta_b = out.fit.b - row.expect_b;
    out.delta_c = out.fit.c - row.expect_c;
    if (out.fit.residual > tol.residual_max) {
        out.outcome = RowOutcome::Inconclusive;
        return out;
    }
    const bool pass = std::abs(out.delta_a) <= tol.tol_a && std::abs(out.delta_b) <= tol.tol_b &&
                      std::abs(out.delta_c) <= tol.tol_c;
    out.outcome = pass ? RowOutcome::Pass : RowOutcome::Fail;
    return out;
}

Weight compute_row_target(const CorollaryRow& row, double r_min, int per_decade) {
    RiSpace X = row.family == "lebesgue" ? RiSpace::lebesgue(row.p)
                                         : RiSpace::zygmund(row.p, row.alpha);
    TargetSampling s;
    s.r_min = r_min;
    s.per_decade = per_decade;
    if (row.target == "morrey") return optimal_morrey_target(X, row.n, row.m, s);
    if (row.target == "campanato")
        return optimal_campanato_target(X, row.n, row.m, row.k, s);
    throw std::invalid_argument("compute_row_target: unknown target " + row.target);
}

}  // namespace riembed
