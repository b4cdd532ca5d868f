#pragma once

#include "wkfi/ekfi.hpp"
#include "wkfi/entropy.hpp"
#include "wkfi/spd.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace wkfi {

struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

// Rectangular t-grid.  normalized() bumps even counts to odd on axes that
// straddle 0 and is what scan() actually enumerates; axis_values() snaps the
// sample nearest 0 to exactly 0 so the origin anchor is hit exactly.
struct GridSpec {
    std::vector<GridAxis> axes;

    int dim() const { return static_cast<int>(axes.size()); }
    long long total_points() const;
    GridSpec normalized() const;
    GridSpec scaled(double factor) const;  // ranges scaled about 0
    std::vector<double> axis_values(int axis) const;
    void validate() const;  // throws GuardError / ConfigError
};

struct LandscapeSample {
    Vec t;
    double sigma = 0.0;   // Sigma(t)
    double lambda = 0.0;  // Lambda(t) = Sigma(t) - Sigma(0)
    double f1 = 0.0;
    double f2 = 0.0;
    bool in_s = false;
};

struct CriticalPointReport {
    Vec location;
    double grad_norm = 0.0;
    std::vector<double> eigenvalues;
    CriticalKind classification = CriticalKind::degenerate;
    bool converged = false;
    int iterations = 0;
    double fixed_point_residual = 0.0;
};

enum class Verdict { improvement, deterioration, mixed, vacuous };
std::string to_string(Verdict verdict);

struct ScenarioSummary {
    bool s_empty_in_window = false;  // no member except (possibly) the origin
    long long s_sample_count = 0;
    std::optional<double> min_lambda_on_s;
    std::optional<double> max_lambda_on_s;
    std::optional<double> min_sigma_on_s;
    Verdict improvement_verdict = Verdict::vacuous;
    OriginReport origin;
    bool origin_isolated_on_grid = false;  // no grid neighbor of 0 is a member
};

// Row-major (last axis fastest) enumeration; deterministic ordering.
std::vector<LandscapeSample> scan(const Scenario& s, const GridSpec& grid,
                                  F2Constant constant = F2Constant::two_pi);

// Newton on grad Lambda with step-halving damping; origin always seeded first;
// converged reports deduplicated by location distance < 1e-6.
std::vector<CriticalPointReport> find_stationary_points(
    const Scenario& s, const std::vector<Vec>& seeds, int max_iter = 60);

std::vector<Vec> default_seeds(const GridSpec& grid, std::uint64_t prng_seed);

ScenarioSummary summarize(const Scenario& s,
                          const std::vector<LandscapeSample>& samples,
                          const GridSpec& grid);

// Window-doubling heuristic for "S looks bounded relative to this window":
// rescan at x2 and x4 ranges and count members strictly outside the base box.
struct BoundedSReport {
    bool bounded_in_window = false;
    long long base_nontrivial_members = 0;
    long long outside_members_x2 = 0;
    long long outside_members_x4 = 0;
};

BoundedSReport bounded_s_probe(const Scenario& s, const GridSpec& base,
                               F2Constant constant = F2Constant::two_pi);

} // namespace wkfi
