#include "wkfi/config.hpp"

#include "wkfi/errors.hpp"

#include <fstream>

namespace wkfi {

using nlohmann::json;

SpdMatrix MatrixConfig::build(int dim, const std::string& field) const {
    const bool has_sr = sigma.has_value() || rho.has_value();
    if (has_sr && matrix.has_value()) {
        throw ConfigError(field + ": sigma/rho and matrix forms are mutually exclusive");
    }
    try {
        if (matrix.has_value()) {
            const auto& rows = *matrix;
            if (static_cast<int>(rows.size()) != dim) {
                throw ConfigError(field + ".matrix: expected " + std::to_string(dim) +
                                  " rows");
            }
            std::vector<double> entries;
            for (const auto& row : rows) {
                if (static_cast<int>(row.size()) != dim) {
                    throw ConfigError(field + ".matrix: ragged or wrong-width row");
                }
                entries.insert(entries.end(), row.begin(), row.end());
            }
            return SpdMatrix(dim, entries);
        }
        if (!sigma.has_value() || !rho.has_value()) {
            throw ConfigError(field + ": provide either {sigma, rho} or {matrix}");
        }
        if (dim != 2) {
            throw ConfigError(field + ": sigma/rho shorthand requires dim = 2");
        }
        return spd_from_sigma_rho(*sigma, *rho);
    } catch (const std::domain_error& e) {
        throw ConfigError(field + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

Scenario ScenarioConfig::build_scenario() const {
    try {
        return Scenario(c1.build(dim, "c1"), c2.build(dim, "c2"), lambda1);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("lambda1: ") + e.what());
    }
}

namespace {

MatrixConfig parse_matrix(const json& doc, const std::string& field) {
    if (!doc.is_object()) throw ConfigError(field + ": expected an object");
    MatrixConfig m;
    if (doc.contains("sigma")) m.sigma = doc.at("sigma").get<double>();
    if (doc.contains("rho")) m.rho = doc.at("rho").get<double>();
    if (doc.contains("matrix")) {
        m.matrix = doc.at("matrix").get<std::vector<std::vector<double>>>();
    }
    return m;
}

} // namespace

ScenarioConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    ScenarioConfig config;
    try {
        if (!doc.contains("c1") || !doc.contains("c2")) {
            throw ConfigError("config requires c1 and c2");
        }
        config.c1 = parse_matrix(doc.at("c1"), "c1");
        config.c2 = parse_matrix(doc.at("c2"), "c2");
        if (doc.contains("dim")) {
            config.dim = doc.at("dim").get<int>();
        } else if (config.c1.matrix.has_value()) {
            config.dim = static_cast<int>(config.c1.matrix->size());
        } else {
            config.dim = 2;
        }
        if (config.dim < 1 || config.dim > kMaxDim) {
            throw ConfigError("dim must be 1, 2, or 3");
        }
        if (!doc.contains("lambda1")) throw ConfigError("config requires lambda1");
        config.lambda1 = doc.at("lambda1").get<double>();
        if (!doc.contains("grid")) throw ConfigError("config requires grid");
        const json& grid = doc.at("grid");
        if (!grid.is_array() || static_cast<int>(grid.size()) != config.dim) {
            throw ConfigError("grid must be an array with one {min,max,count} per axis");
        }
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const json& axis = grid[k];
            GridAxis a;
            const std::string field = "grid[" + std::to_string(k) + "]";
            if (!axis.contains("min") || !axis.contains("max") || !axis.contains("count")) {
                throw ConfigError(field + ": requires min, max, count");
            }
            a.min = axis.at("min").get<double>();
            a.max = axis.at("max").get<double>();
            a.count = axis.at("count").get<int>();
            config.grid.axes.push_back(a);
        }
        config.grid.validate();
        if (doc.contains("quadrature_order")) {
            config.quadrature_order = doc.at("quadrature_order").get<int>();
            if (config.quadrature_order < 2 || config.quadrature_order > 64) {
                throw ConfigError("quadrature_order must be in [2, 64]");
            }
        }
        if (doc.contains("phi_variant")) {
            const std::string v = doc.at("phi_variant").get<std::string>();
            if (v == "paper") config.phi_variant = PhiVariant::paper;
            else if (v == "full-moment" || v == "full") config.phi_variant = PhiVariant::full_moment;
            else throw ConfigError("phi_variant must be 'paper' or 'full-moment'");
        }
        if (doc.contains("f2_constant")) {
            const std::string v = doc.at("f2_constant").get<std::string>();
            if (v == "2pi") config.f2_constant = F2Constant::two_pi;
            else if (v == "2pie") config.f2_constant = F2Constant::two_pi_e;
            else throw ConfigError("f2_constant must be '2pi' or '2pie'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    // Fail fast on non-SPD matrices or bad lambda.
    (void)config.build_scenario();
    return config;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON (" + path + "): " + e.what());
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const ScenarioConfig& config) {
    json doc;
    doc["dim"] = config.dim;
    const auto matrix_json = [](const MatrixConfig& m) {
        json j;
        if (m.matrix.has_value()) {
            j["matrix"] = *m.matrix;
        } else {
            j["sigma"] = *m.sigma;
            j["rho"] = *m.rho;
        }
        return j;
    };
    doc["c1"] = matrix_json(config.c1);
    doc["c2"] = matrix_json(config.c2);
    doc["lambda1"] = config.lambda1;
    json grid = json::array();
    for (const GridAxis& axis : config.grid.normalized().axes) {
        grid.push_back({{"min", axis.min}, {"max", axis.max}, {"count", axis.count}});
    }
    doc["grid"] = grid;
    doc["quadrature_order"] = config.quadrature_order;
    doc["phi_variant"] =
        config.phi_variant == PhiVariant::paper ? "paper" : "full-moment";
    doc["f2_constant"] =
        config.f2_constant == F2Constant::two_pi ? "2pi" : "2pie";
    return doc;
}

} // namespace wkfi
