#include "wkfi/commands.hpp"

#include "wkfi/ekfi.hpp"
#include "wkfi/errors.hpp"
#include "wkfi/landscape.hpp"
#include "wkfi/quadrature.hpp"
#include "wkfi/svg.hpp"
#include "wkfi/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace wkfi {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ScenarioConfig apply_options(ScenarioConfig config, const CommandOptions& options) {
    if (options.order) config.quadrature_order = *options.order;
    if (options.phi_variant) config.phi_variant = *options.phi_variant;
    if (options.f2_constant) config.f2_constant = *options.f2_constant;
    if (options.window_scale != 1.0) {
        if (!(options.window_scale > 0.0)) {
            throw ConfigError("--window-scale must be > 0");
        }
        config.grid = config.grid.scaled(options.window_scale);
    }
    return config;
}

std::string fmt17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

void write_grid_csv(const std::string& path, int dim,
                    const std::vector<LandscapeSample>& samples) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    for (int k = 0; k < dim; ++k) out << "t" << (k + 1) << ",";
    out << "sigma,lambda,f1,f2,in_s\n";
    for (const LandscapeSample& s : samples) {
        for (int k = 0; k < dim; ++k) out << fmt17(s.t[k]) << ",";
        out << fmt17(s.sigma) << "," << fmt17(s.lambda) << "," << fmt17(s.f1) << ","
            << fmt17(s.f2) << "," << (s.in_s ? 1 : 0) << "\n";
    }
    if (!out) throw IoError("failed while writing " + path);
}

json sym_to_json(const SymMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json origin_to_json(const OriginReport& report) {
    json j;
    j["hessian"] = sym_to_json(report.hessian);
    j["paper_sign_hessian"] = sym_to_json(report.paper_sign_hessian);
    j["eigenvalues"] = report.eigenvalues;
    j["classification"] = to_string(report.classification);
    return j;
}

json critical_point_to_json(const CriticalPointReport& report) {
    json j;
    json loc = json::array();
    for (int k = 0; k < report.location.dim(); ++k) loc.push_back(report.location[k]);
    j["location"] = loc;
    j["grad_norm"] = report.grad_norm;
    j["eigenvalues"] = report.eigenvalues;
    j["classification"] = to_string(report.classification);
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["fixed_point_residual"] = report.fixed_point_residual;
    return j;
}

struct ScanBundle {
    Scenario scenario;
    std::vector<LandscapeSample> samples;
    ScenarioSummary summary;
    BoundedSReport bounded;
    std::vector<CriticalPointReport> stationary;
};

ScanBundle run_scan_bundle(const ScenarioConfig& config) {
    const Scenario scenario = config.build_scenario();
    ScanBundle bundle{scenario,
                      scan(scenario, config.grid, config.f2_constant),
                      {},
                      {},
                      {}};
    bundle.summary = summarize(scenario, bundle.samples, config.grid);
    bundle.bounded = bounded_s_probe(scenario, config.grid, config.f2_constant);
    bundle.stationary = find_stationary_points(
        scenario, default_seeds(config.grid, kDefaultPrngSeed));
    return bundle;
}

json summary_to_json(const ScenarioConfig& config, const ScanBundle& bundle) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["prng_seed"] = kDefaultPrngSeed;
    j["config"] = config_to_json(config);
    const ScenarioSummary& s = bundle.summary;
    j["s_sample_count"] = s.s_sample_count;
    j["s_empty_in_window"] = s.s_empty_in_window;
    if (s.min_lambda_on_s) j["min_lambda_on_s"] = *s.min_lambda_on_s;
    if (s.max_lambda_on_s) j["max_lambda_on_s"] = *s.max_lambda_on_s;
    if (s.min_sigma_on_s) j["min_sigma_on_s"] = *s.min_sigma_on_s;
    j["improvement_verdict"] = to_string(s.improvement_verdict);
    j["origin"] = origin_to_json(s.origin);
    j["origin_isolated_on_grid"] = s.origin_isolated_on_grid;
    json bounded;
    bounded["bounded_in_window"] = bundle.bounded.bounded_in_window;
    bounded["base_nontrivial_members"] = bundle.bounded.base_nontrivial_members;
    bounded["outside_members_x2"] = bundle.bounded.outside_members_x2;
    bounded["outside_members_x4"] = bundle.bounded.outside_members_x4;
    j["bounded_s"] = bounded;
    json stationary = json::array();
    for (const CriticalPointReport& report : bundle.stationary) {
        stationary.push_back(critical_point_to_json(report));
    }
    j["stationary_points"] = stationary;
    return j;
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("failed while writing " + path);
}

SymMatrix fd_hessian(const Scenario& s, double h) {
    const int d = s.dim();
    SymMatrix fd(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            Vec tpp = Vec::zero(d), tpm = Vec::zero(d), tmp = Vec::zero(d), tmm = Vec::zero(d);
            tpp[i] += h; tpp[j] += h;
            tpm[i] += h; tpm[j] -= h;
            tmp[i] -= h; tmp[j] += h;
            tmm[i] -= h; tmm[j] -= h;
            const double value =
                (lambda_gap(s, tpp) - lambda_gap(s, tpm) - lambda_gap(s, tmp) +
                 lambda_gap(s, tmm)) /
                (4.0 * h * h);
            fd.set(i, j, value);
        }
    }
    return fd;
}

double max_abs_entry_diff(const SymMatrix& a, const SymMatrix& b) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

} // namespace

int cmd_scan(const std::string& config_path, const std::string& out_dir,
             const CommandOptions& options) {
    const ScenarioConfig config = apply_options(load_config(config_path), options);
    ensure_dir(out_dir);
    const ScanBundle bundle = run_scan_bundle(config);
    write_grid_csv(out_dir + "/grid.csv", config.dim, bundle.samples);
    write_json_file(out_dir + "/summary.json", summary_to_json(config, bundle));
    if (config.dim == 2) {
        write_lambda_svg(out_dir + "/lambda.svg", config.grid, bundle.samples,
                         "Lambda(t) landscape");
    }
    std::cout << "scan: " << bundle.samples.size() << " samples, verdict "
              << to_string(bundle.summary.improvement_verdict) << ", S members "
              << bundle.summary.s_sample_count << "\n";
    return 0;
}

int cmd_classify(const std::string& config_path, const CommandOptions& options) {
    const ScenarioConfig config = apply_options(load_config(config_path), options);
    const Scenario scenario = config.build_scenario();
    const OriginReport report = origin_report(scenario);

    const SymMatrix fd = fd_hessian(scenario, 1e-4);
    const double dist_definitional = max_abs_entry_diff(fd, report.hessian);
    const double dist_printed = max_abs_entry_diff(fd, report.paper_sign_hessian);
    const bool fd_matches_definitional = dist_definitional <= dist_printed;

    std::cout << "origin classification: " << to_string(report.classification) << "\n";
    std::cout << "eigenvalues (definitional Hessian):";
    for (double ev : report.eigenvalues) std::cout << " " << fmt17(ev);
    std::cout << "\n";
    std::cout << "finite-difference check (h = 1e-4): max deviation "
              << fmt17(dist_definitional) << " from the definitional Hessian, "
              << fmt17(dist_printed) << " from the printed-sign form\n";
    if (fd_matches_definitional) {
        std::cout << "finite differences agree with the definitional Hessian; the "
                     "printed-sign form (paper_sign_hessian) has the opposite sign\n";
    } else {
        std::cout << "finite differences agree with the printed-sign form\n";
    }

    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["config"] = config_to_json(config);
    j["origin"] = origin_to_json(report);
    j["fd_max_deviation_definitional"] = dist_definitional;
    j["fd_max_deviation_printed_sign"] = dist_printed;
    j["fd_matches_definitional"] = fd_matches_definitional;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_oracle_verify(const std::string& config_path, const CommandOptions& options) {
    const ScenarioConfig config = apply_options(load_config(config_path), options);
    const Scenario scenario = config.build_scenario();
    const int order = config.quadrature_order;
    const int d = config.dim;

    // Deterministic probe set: the origin, half-window along each axis, and the
    // half-window diagonal.
    std::vector<Vec> probes;
    probes.push_back(Vec::zero(d));
    const GridSpec g = config.grid.normalized();
    Vec diag(d);
    for (int k = 0; k < d; ++k) {
        const GridAxis& axis = g.axes[static_cast<std::size_t>(k)];
        const double half = 0.5 * std::max(std::abs(axis.min), std::abs(axis.max));
        Vec p = Vec::zero(d);
        p[k] = half;
        probes.push_back(p);
        diag[k] = half;
    }
    if (d > 1) probes.push_back(diag);

    double max_alpha_err = 0.0;
    double max_phi_paper_err = 0.0, max_phi_full_err = 0.0;
    double max_sigma_paper_err = 0.0, max_sigma_full_err = 0.0;
    bool all_converged = true;

    std::cout << "oracle-verify (orders " << order << "/" << order + 8 << ")\n";
    for (const Vec& t : probes) {
        for (const SpdMatrix* c : {&scenario.c1, &scenario.c2, &scenario.c}) {
            const CertifiedValue alpha_cert = certify_expectation(
                *c, [&](const Vec& x) { return std::exp(t.dot(x)); }, order, order + 8);
            if (!alpha_cert.converged) all_converged = false;
            const double alpha_closed = alpha_exp(*c, t);
            const double alpha_err = std::abs(alpha_closed - alpha_cert.value) /
                                     std::max(1.0, std::abs(alpha_cert.value));
            max_alpha_err = std::max(max_alpha_err, alpha_err);

            const SymMatrix phi_oracle = phi_numeric(*c, t, order);
            const double phi_scale = std::max(1.0, phi_oracle.max_abs());
            max_phi_paper_err = std::max(
                max_phi_paper_err,
                max_abs_entry_diff(phi_matrix_exp(*c, t, PhiVariant::paper).phi,
                                   phi_oracle) /
                    phi_scale);
            max_phi_full_err = std::max(
                max_phi_full_err,
                max_abs_entry_diff(phi_matrix_exp(*c, t, PhiVariant::full_moment).phi,
                                   phi_oracle) /
                    phi_scale);

            const double wde = wde_numeric(*c, t, order);
            const double wde_scale = std::max(1.0, std::abs(wde));
            max_sigma_paper_err = std::max(
                max_sigma_paper_err,
                std::abs(sigma_weighted(*c, phi_matrix_exp(*c, t, PhiVariant::paper)) -
                         wde) /
                    wde_scale);
            max_sigma_full_err = std::max(
                max_sigma_full_err,
                std::abs(
                    sigma_weighted(*c, phi_matrix_exp(*c, t, PhiVariant::full_moment)) -
                    wde) /
                    wde_scale);
        }
    }

    const bool full_matches = max_phi_full_err < 1e-6;
    const bool paper_matches = max_phi_paper_err < 1e-6;
    std::cout << "max relative error, alpha closed form vs oracle:      "
              << fmt17(max_alpha_err) << "\n";
    std::cout << "max relative error, Phi paper form vs oracle:        "
              << fmt17(max_phi_paper_err) << "\n";
    std::cout << "max relative error, Phi full-moment form vs oracle:  "
              << fmt17(max_phi_full_err) << "\n";
    std::cout << "max relative error, sigma paper form vs WDE oracle:  "
              << fmt17(max_sigma_paper_err) << "\n";
    std::cout << "max relative error, sigma full-moment vs WDE oracle: "
              << fmt17(max_sigma_full_err) << "\n";
    if (full_matches && !paper_matches) {
        std::cout << "verdict: the full-moment Phi variant matches the defining "
                     "integral; the default closed form does not (it matches only "
                     "the trace contraction used downstream)\n";
    } else if (paper_matches && !full_matches) {
        std::cout << "verdict: the default closed form matches the defining integral\n";
    } else if (paper_matches && full_matches) {
        std::cout << "verdict: both variants match at the probed points (t near 0)\n";
    } else {
        std::cout << "verdict: neither variant matches the defining integral at the "
                     "probed points\n";
    }
    if (!all_converged) {
        std::cout << "warning: quadrature convergence certificate failed for at "
                     "least one probe\n";
    }
    if (max_alpha_err > 1e-6 || !all_converged) {
        std::cout << "oracle-verify FAILED: alpha closed form disagrees or oracle "
                     "did not converge\n";
        return 5;
    }
    return 0;
}

std::vector<FigureSpec> bundled_figures() {
    const auto make = [](const std::string& name, const std::string& expected,
                         double s1, double r1, double s2, double r2, double lambda1,
                         double window) {
        FigureSpec fig;
        fig.name = name;
        fig.expected = expected;
        fig.config.dim = 2;
        fig.config.c1.sigma = s1;
        fig.config.c1.rho = r1;
        fig.config.c2.sigma = s2;
        fig.config.c2.rho = r2;
        fig.config.lambda1 = lambda1;
        fig.config.grid.axes = {{-window, window, 101}, {-window, window, 101}};
        return fig;
    };
    return {
        make("fig31a", "improvement verdict with origin local-minimum",
             0.70710678118654752, 0.0, 0.79056941504209483, 0.6, 0.99, 1.5),
        make("fig31b", "bounded-S flag under x2/x4 window doubling",
             1.9762, 0.0, 1.9723, -0.3759, 0.001, 1.5),
        make("fig32", "origin saddle", 1.0, 0.9, 1.0, 0.3, 0.5, 1.5),
        make("fig34", "some S-member with Lambda < -1e-10", 1.0, 0.0, 1.2, 0.8, 0.99,
             2.0),
        make("fig35", "S empty in window except origin", 1.4142135623730951, 0.1, 1.0,
             0.3, 0.5, 1.5),
    };
}

int cmd_figures(const std::string& out_dir, const CommandOptions& options) {
    ensure_dir(out_dir);
    json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["prng_seed"] = kDefaultPrngSeed;
    manifest["note"] =
        "Scenario parameters are reconstructions chosen to reproduce each "
        "described qualitative regime; they are not source-figure data.";
    json figures = json::array();
    bool theorem_ok = true;
    bool all_met = true;

    for (const FigureSpec& fig : bundled_figures()) {
        const ScenarioConfig config = apply_options(fig.config, options);
        const std::string fig_dir = out_dir + "/" + fig.name;
        ensure_dir(fig_dir);
        const ScanBundle bundle = run_scan_bundle(config);
        write_grid_csv(fig_dir + "/grid.csv", config.dim, bundle.samples);
        write_json_file(fig_dir + "/summary.json", summary_to_json(config, bundle));
        write_lambda_svg(fig_dir + "/lambda.svg", config.grid, bundle.samples,
                         fig.name + ": Lambda(t) landscape");

        // The weighted-gap theorem at desk scale: Sigma >= -1e-10 on S-members.
        const bool sigma_nonneg =
            !bundle.summary.min_sigma_on_s || *bundle.summary.min_sigma_on_s >= -1e-10;
        theorem_ok = theorem_ok && sigma_nonneg;

        bool met = false;
        if (fig.name == "fig31a") {
            met = bundle.summary.improvement_verdict == Verdict::improvement &&
                  bundle.summary.origin.classification == CriticalKind::local_minimum;
        } else if (fig.name == "fig31b") {
            met = bundle.bounded.bounded_in_window &&
                  bundle.bounded.base_nontrivial_members > 0;
        } else if (fig.name == "fig32") {
            met = bundle.summary.origin.classification == CriticalKind::saddle;
        } else if (fig.name == "fig34") {
            met = bundle.summary.min_lambda_on_s &&
                  *bundle.summary.min_lambda_on_s < -1e-10;
        } else if (fig.name == "fig35") {
            met = bundle.summary.s_empty_in_window;
        }
        all_met = all_met && met;

        json entry;
        entry["name"] = fig.name;
        entry["expected"] = fig.expected;
        entry["met"] = met;
        entry["sigma_nonneg_on_s"] = sigma_nonneg;
        entry["verdict"] = to_string(bundle.summary.improvement_verdict);
        entry["origin_classification"] =
            to_string(bundle.summary.origin.classification);
        entry["s_sample_count"] = bundle.summary.s_sample_count;
        entry["bounded_in_window"] = bundle.bounded.bounded_in_window;
        if (bundle.summary.min_lambda_on_s) {
            entry["min_lambda_on_s"] = *bundle.summary.min_lambda_on_s;
        }
        if (bundle.summary.min_sigma_on_s) {
            entry["min_sigma_on_s"] = *bundle.summary.min_sigma_on_s;
        }
        entry["config"] = config_to_json(config);
        figures.push_back(entry);
        std::cout << fig.name << ": expected \"" << fig.expected << "\" -> "
                  << (met ? "met" : "NOT met") << "\n";
    }
    manifest["figures"] = figures;
    manifest["theorem_sigma_nonneg_on_s"] = theorem_ok;
    manifest["all_expected_met"] = all_met;
    write_json_file(out_dir + "/manifest.json", manifest);
    if (!theorem_ok) {
        std::cout << "FAILURE: an S-member with Sigma < -1e-10 was found\n";
        return 5;
    }
    return 0;
}

int cmd_check_1d(double c1, double c2, double lambda1, double t_max, int n) {
    if (!(c1 > 0.0 && c2 > 0.0)) throw ConfigError("c1 and c2 must be > 0");
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) throw ConfigError("lambda1 must be in [0, 1]");
    if (!(t_max > 0.0)) throw ConfigError("t-max must be > 0");
    if (n < 3) throw ConfigError("n must be >= 3");

    const Scenario s(SpdMatrix::scalar(c1), SpdMatrix::scalar(c2), lambda1);
    const double c = lambda1 * c1 + (1.0 - lambda1) * c2;

    std::cout << "1-D profile: c1 = " << c1 << ", c2 = " << c2
              << ", lambda1 = " << lambda1 << ", c = " << c << "\n";
    std::cout << "t, lambda, f1_reduced, f2_reduced, in_s\n";
    GridSpec grid;
    grid.axes = {{-t_max, t_max, n}};
    for (double t : grid.normalized().axis_values(0)) {
        Vec tv{t};
        const RegionVerdict v = scalar_region_1d(c1, c2, lambda1, t);
        std::cout << fmt17(t) << ", " << fmt17(lambda_gap(s, tv)) << ", "
                  << fmt17(v.f1) << ", " << fmt17(v.f2) << ", " << (v.in_s ? 1 : 0)
                  << "\n";
    }

    const double definitional = hess_lambda(s, Vec::zero(1))(0, 0);
    const double printed_sign = scalar_second_derivative_origin(c1, c2, lambda1);
    std::cout << "second derivative of Lambda at 0 (definitional): "
              << fmt17(definitional) << "\n";
    std::cout << "convex-combination form (printed sign convention): "
              << fmt17(printed_sign) << "\n";

    const double two_pi_inv = 1.0 / (2.0 * std::numbers::pi);
    if (c < two_pi_inv) {
        std::cout << "unboundedness heuristic fires: c = " << c << " < 1/(2pi) = "
                  << two_pi_inv << "\n";
    } else {
        std::cout << "unboundedness heuristic silent: c = " << c << " >= 1/(2pi)\n";
    }
    const bool member_at_edge = scalar_region_1d(c1, c2, lambda1, t_max).in_s;
    std::cout << "membership observed at |t| = " << t_max << ": "
              << (member_at_edge ? "yes" : "no") << "\n";
    return 0;
}

} // namespace wkfi
