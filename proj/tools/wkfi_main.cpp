#include "wkfi/commands.hpp"
#include "wkfi/errors.hpp"
#include "wkfi/version.hpp"

#include <iostream>
#include <string>

#include <CLI11.hpp>

namespace {

// Exit-code contract: 0 ok, 2 config, 3 guard, 4 I/O, 5 verification failure.
int run(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the exponentially weighted Ky Fan "
                 "inequality"};
    app.set_version_flag("--version", std::string(wkfi::kToolVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    wkfi::CommandOptions options;
    int order = 0;
    std::string phi_variant;
    std::string f2_constant;
    double window_scale = 1.0;

    const auto add_common = [&](CLI::App* cmd, bool needs_config, bool needs_out) {
        if (needs_config) {
            cmd->add_option("--config", config_path, "Scenario config JSON path")
                ->required();
        }
        if (needs_out) {
            cmd->add_option("--out", out_dir, "Output directory");
        }
        cmd->add_option("--order", order, "Quadrature order override (2..64)");
        cmd->add_option("--phi-variant", phi_variant,
                        "Phi closed form: paper|full")
            ->check(CLI::IsMember({"paper", "full"}));
        cmd->add_option("--f2-constant", f2_constant,
                        "Constant in F2: 2pi|2pie")
            ->check(CLI::IsMember({"2pi", "2pie"}));
        cmd->add_option("--window-scale", window_scale,
                        "Scale factor applied to the grid ranges");
    };

    CLI::App* scan_cmd = app.add_subcommand("scan", "Grid scan: CSV + JSON + SVG");
    add_common(scan_cmd, true, true);
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Classify the critical point at the origin");
    add_common(classify_cmd, true, false);
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle-verify", "Check closed forms against the quadrature oracle");
    add_common(oracle_cmd, true, false);
    CLI::App* figures_cmd =
        app.add_subcommand("figures", "Run the five bundled scenario reconstructions");
    add_common(figures_cmd, false, true);

    CLI::App* check1d_cmd =
        app.add_subcommand("check-1d", "Scalar-case profile and origin diagnostics");
    double c1 = 1.0, c2 = 1.0, lambda1 = 0.5, t_max = 5.0;
    int n = 41;
    check1d_cmd->add_option("--c1", c1, "First variance")->required();
    check1d_cmd->add_option("--c2", c2, "Second variance")->required();
    check1d_cmd->add_option("--lambda1", lambda1, "Mixture weight")->required();
    check1d_cmd->add_option("--t-max", t_max, "Profile half-width");
    check1d_cmd->add_option("--n", n, "Profile sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (order != 0) options.order = order;
    if (!phi_variant.empty()) {
        options.phi_variant = phi_variant == "paper" ? wkfi::PhiVariant::paper
                                                     : wkfi::PhiVariant::full_moment;
    }
    if (!f2_constant.empty()) {
        options.f2_constant = f2_constant == "2pi" ? wkfi::F2Constant::two_pi
                                                   : wkfi::F2Constant::two_pi_e;
    }
    options.window_scale = window_scale;

    try {
        if (scan_cmd->parsed()) return wkfi::cmd_scan(config_path, out_dir, options);
        if (classify_cmd->parsed()) return wkfi::cmd_classify(config_path, options);
        if (oracle_cmd->parsed()) return wkfi::cmd_oracle_verify(config_path, options);
        if (figures_cmd->parsed()) return wkfi::cmd_figures(out_dir, options);
        if (check1d_cmd->parsed()) {
            return wkfi::cmd_check_1d(c1, c2, lambda1, t_max, n);
        }
    } catch (const wkfi::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const wkfi::GuardError& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 3;
    } catch (const wkfi::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 4;
    } catch (const wkfi::VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
