#pragma once

#include "wkfi/config.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace wkfi {

inline constexpr std::uint64_t kDefaultPrngSeed = 987654321u;

// CLI flag overrides applied on top of the config file.
struct CommandOptions {
    std::optional<int> order;
    std::optional<PhiVariant> phi_variant;
    std::optional<F2Constant> f2_constant;
    double window_scale = 1.0;
};

// Each command returns a process exit code (0 ok, 5 verification failure);
// config/guard/io problems are thrown and mapped by the caller.
int cmd_scan(const std::string& config_path, const std::string& out_dir,
             const CommandOptions& options);
int cmd_classify(const std::string& config_path, const CommandOptions& options);
int cmd_oracle_verify(const std::string& config_path, const CommandOptions& options);
int cmd_figures(const std::string& out_dir, const CommandOptions& options);
int cmd_check_1d(double c1, double c2, double lambda1, double t_max, int n);

// The five bundled scenario reconstructions behind cmd_figures.
struct FigureSpec {
    std::string name;
    std::string expected;  // human-readable expected qualitative regime
    ScenarioConfig config;
};

std::vector<FigureSpec> bundled_figures();

} // namespace wkfi
