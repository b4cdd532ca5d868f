#pragma once

#include "wkfi/ekfi.hpp"
#include "wkfi/entropy.hpp"
#include "wkfi/landscape.hpp"

#include <optional>
#include <string>

#include <json.hpp>

namespace wkfi {

// One covariance input: either the 2x2 sigma/rho shorthand or an explicit
// matrix (the two forms are mutually exclusive).
struct MatrixConfig {
    std::optional<double> sigma;
    std::optional<double> rho;
    std::optional<std::vector<std::vector<double>>> matrix;

    SpdMatrix build(int dim, const std::string& field) const;
};

struct ScenarioConfig {
    int dim = 2;
    MatrixConfig c1;
    MatrixConfig c2;
    double lambda1 = 0.5;
    GridSpec grid;
    int quadrature_order = 40;
    PhiVariant phi_variant = PhiVariant::paper;
    F2Constant f2_constant = F2Constant::two_pi;

    Scenario build_scenario() const;
};

ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::string& path);

// Round-trippable echo of the resolved configuration.
nlohmann::json config_to_json(const ScenarioConfig& config);

} // namespace wkfi
