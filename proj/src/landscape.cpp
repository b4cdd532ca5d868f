#include "wkfi/landscape.hpp"

#include "wkfi/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wkfi {

namespace {

constexpr long long kMaxGridPoints = 10'000'000;

bool straddles_zero(const GridAxis& axis) {
    return axis.min < 0.0 && axis.max > 0.0;
}

} // namespace

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::improvement: return "improvement";
        case Verdict::deterioration: return "deterioration";
        case Verdict::mixed: return "mixed";
        case Verdict::vacuous: return "vacuous";
    }
    return "vacuous";
}

long long GridSpec::total_points() const {
    long long total = 1;
    for (const GridAxis& axis : axes) total *= axis.count;
    return total;
}

void GridSpec::validate() const {
    if (axes.empty() || dim() > kMaxDim) {
        throw ConfigError("grid must have 1 to 3 axes");
    }
    for (const GridAxis& axis : axes) {
        if (!(axis.min < axis.max)) throw ConfigError("grid axis requires min < max");
        if (axis.count < 3) throw ConfigError("grid axis count must be >= 3");
    }
    if (total_points() > kMaxGridPoints) {
        throw GuardError("grid too large: " + std::to_string(total_points()) +
                         " points requested, at most " +
                         std::to_string(kMaxGridPoints) + " allowed");
    }
}

GridSpec GridSpec::normalized() const {
    GridSpec out = *this;
    for (GridAxis& axis : out.axes) {
        if (straddles_zero(axis) && axis.count % 2 == 0) axis.count += 1;
    }
    return out;
}

GridSpec GridSpec::scaled(double factor) const {
    GridSpec out = *this;
    for (GridAxis& axis : out.axes) {
        axis.min *= factor;
        axis.max *= factor;
    }
    return out;
}

std::vector<double> GridSpec::axis_values(int axis) const {
    const GridAxis& a = axes[static_cast<std::size_t>(axis)];
    std::vector<double> values(static_cast<std::size_t>(a.count));
    const double step = (a.max - a.min) / static_cast<double>(a.count - 1);
    for (int i = 0; i < a.count; ++i) {
        values[static_cast<std::size_t>(i)] = a.min + i * step;
    }
    if (straddles_zero(a)) {
        // Snap the sample nearest 0 to exactly 0 (no-op for symmetric ranges).
        std::size_t nearest = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (std::abs(values[i]) < std::abs(values[nearest])) nearest = i;
        }
        values[nearest] = 0.0;
    }
    return values;
}

std::vector<LandscapeSample> scan(const Scenario& s, const GridSpec& grid,
                                  F2Constant constant) {
    if (grid.dim() != s.dim()) {
        throw std::invalid_argument("grid dimension does not match scenario dimension");
    }
    grid.validate();
    const GridSpec g = grid.normalized();
    const int d = g.dim();
    std::vector<std::vector<double>> values(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) values[static_cast<std::size_t>(k)] = g.axis_values(k);

    const double sigma0 = sigma_big(s, Vec::zero(d));
    std::vector<LandscapeSample> samples;
    samples.reserve(static_cast<std::size_t>(g.total_points()));

    std::array<int, kMaxDim> idx{};
    for (;;) {
        LandscapeSample sample;
        sample.t = Vec(d);
        for (int k = 0; k < d; ++k) {
            sample.t[k] = values[static_cast<std::size_t>(k)]
                                [static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
        }
        sample.sigma = sigma_big(s, sample.t);
        sample.lambda = sample.sigma - sigma0;
        const RegionVerdict v = region_membership(s, sample.t, constant);
        sample.f1 = v.f1;
        sample.f2 = v.f2;
        sample.in_s = v.in_s;
        samples.push_back(sample);
        // Row-major: last axis fastest.
        int k = d - 1;
        while (k >= 0) {
            if (++idx[static_cast<std::size_t>(k)] <
                g.axes[static_cast<std::size_t>(k)].count) {
                break;
            }
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return samples;
}

namespace {

// Solve the small symmetric (possibly indefinite) system H p = -g by Gaussian
// elimination with partial pivoting; returns false if H is numerically singular.
bool newton_step(const SymMatrix& h, const Vec& g, Vec& step) {
    const int d = g.dim();
    std::array<std::array<double, kMaxDim + 1>, kMaxDim> m{};
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = h(i, j);
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] = -g[i];
    }
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int row = col + 1; row < d; ++row) {
            if (std::abs(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) >
                std::abs(m[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)])) {
                pivot = row;
            }
        }
        if (std::abs(m[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]) < 1e-14 * (1.0 + h.max_abs())) {
            return false;
        }
        std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
        for (int row = col + 1; row < d; ++row) {
            const double f = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] /
                             m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int j = col; j <= d; ++j) {
                m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
            }
        }
    }
    step = Vec(d);
    for (int i = d - 1; i >= 0; --i) {
        double s = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
        for (int j = i + 1; j < d; ++j) s -= m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * step[j];
        step[i] = s / m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    return true;
}

bool is_converged(const Scenario& s, const Vec& t, double grad_norm) {
    return grad_norm <= 1e-10 * (1.0 + std::abs(lambda_gap(s, t)));
}

CriticalPointReport polish(const Scenario& s, Vec t, int max_iter) {
    CriticalPointReport report;
    int iter = 0;
    double grad_norm = grad_lambda(s, t).norm();
    while (iter < max_iter && !is_converged(s, t, grad_norm)) {
        const Vec g = grad_lambda(s, t);
        const SymMatrix h = hess_lambda(s, t);
        Vec step(t.dim());
        if (!newton_step(h, g, step)) break;
        // Damp by halving while the step fails to reduce the gradient norm.
        double alpha = 1.0;
        Vec candidate = t + step * alpha;
        double candidate_norm = grad_lambda(s, candidate).norm();
        int halvings = 0;
        while (candidate_norm >= grad_norm && halvings < 30) {
            alpha *= 0.5;
            candidate = t + step * alpha;
            candidate_norm = grad_lambda(s, candidate).norm();
            ++halvings;
        }
        if (candidate_norm >= grad_norm) break;  // no descent direction left
        t = candidate;
        grad_norm = candidate_norm;
        ++iter;
    }
    report.location = t;
    report.grad_norm = grad_norm;
    report.iterations = iter;
    report.converged = is_converged(s, t, grad_norm);
    report.eigenvalues = hess_lambda(s, t).eigenvalues();
    report.classification = classify_eigenvalues(report.eigenvalues);
    report.fixed_point_residual = fixed_point_residual(s, t);
    return report;
}

} // namespace

std::vector<CriticalPointReport> find_stationary_points(
    const Scenario& s, const std::vector<Vec>& seeds, int max_iter) {
    if (max_iter < 1) throw std::domain_error("max_iter must be >= 1");
    std::vector<Vec> all_seeds;
    all_seeds.push_back(Vec::zero(s.dim()));  // origin always seeded
    for (const Vec& seed : seeds) all_seeds.push_back(seed);

    std::vector<CriticalPointReport> reports;
    for (const Vec& seed : all_seeds) {
        CriticalPointReport report = polish(s, seed, max_iter);
        bool duplicate = false;
        if (report.converged) {
            for (const CriticalPointReport& kept : reports) {
                if (kept.converged && (kept.location - report.location).norm() < 1e-6) {
                    duplicate = true;
                    break;
                }
            }
        }
        if (!duplicate) reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<Vec> default_seeds(const GridSpec& grid, std::uint64_t prng_seed) {
    const GridSpec g = grid.normalized();
    const int d = g.dim();
    std::vector<Vec> seeds;
    // 2^d window corners.
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vec corner(d);
        for (int k = 0; k < d; ++k) {
            const GridAxis& axis = g.axes[static_cast<std::size_t>(k)];
            corner[k] = (mask >> k) & 1 ? axis.max : axis.min;
        }
        seeds.push_back(corner);
    }
    // 8 random interior points with a fixed, recorded seed.
    std::mt19937_64 rng(prng_seed);
    for (int i = 0; i < 8; ++i) {
        Vec p(d);
        for (int k = 0; k < d; ++k) {
            const GridAxis& axis = g.axes[static_cast<std::size_t>(k)];
            std::uniform_real_distribution<double> dist(axis.min, axis.max);
            p[k] = dist(rng);
        }
        seeds.push_back(p);
    }
    return seeds;
}

ScenarioSummary summarize(const Scenario& s,
                          const std::vector<LandscapeSample>& samples,
                          const GridSpec& grid) {
    if (samples.empty()) throw std::invalid_argument("summarize: no samples");
    ScenarioSummary summary;
    summary.origin = origin_report(s);

    bool any_member = false, any_nontrivial = false;
    double min_lambda = 0.0, max_lambda = 0.0, min_sigma = 0.0;
    double max_lambda_nontrivial = 0.0;
    bool have_nontrivial_extreme = false;
    for (const LandscapeSample& sample : samples) {
        if (!sample.in_s) continue;
        summary.s_sample_count += 1;
        if (!any_member) {
            min_lambda = max_lambda = sample.lambda;
            min_sigma = sample.sigma;
            any_member = true;
        } else {
            min_lambda = std::min(min_lambda, sample.lambda);
            max_lambda = std::max(max_lambda, sample.lambda);
            min_sigma = std::min(min_sigma, sample.sigma);
        }
        if (sample.t.norm() > 0.0) {
            any_nontrivial = true;
            if (!have_nontrivial_extreme) {
                max_lambda_nontrivial = sample.lambda;
                have_nontrivial_extreme = true;
            } else {
                max_lambda_nontrivial = std::max(max_lambda_nontrivial, sample.lambda);
            }
        }
    }
    if (any_member) {
        summary.min_lambda_on_s = min_lambda;
        summary.max_lambda_on_s = max_lambda;
        summary.min_sigma_on_s = min_sigma;
    }
    summary.s_empty_in_window = !any_nontrivial;

    if (!any_nontrivial) {
        summary.improvement_verdict = Verdict::vacuous;
    } else if (min_lambda >= -1e-10 && max_lambda > 1e-10) {
        summary.improvement_verdict = Verdict::improvement;
    } else if (max_lambda_nontrivial <= -1e-10) {
        summary.improvement_verdict = Verdict::deterioration;
    } else {
        summary.improvement_verdict = Verdict::mixed;
    }

    // Flag scenarios where no grid neighbor of the origin is a member.
    const GridSpec g = grid.normalized();
    double min_step = 0.0;
    bool first = true;
    for (int k = 0; k < g.dim(); ++k) {
        const GridAxis& axis = g.axes[static_cast<std::size_t>(k)];
        const double step = (axis.max - axis.min) / static_cast<double>(axis.count - 1);
        min_step = first ? step : std::min(min_step, step);
        first = false;
    }
    const double neighbor_radius = 1.5 * min_step * std::sqrt(static_cast<double>(g.dim()));
    bool neighbor_member = false;
    for (const LandscapeSample& sample : samples) {
        const double r = sample.t.norm();
        if (sample.in_s && r > 0.0 && r <= neighbor_radius) {
            neighbor_member = true;
            break;
        }
    }
    summary.origin_isolated_on_grid = !neighbor_member;
    return summary;
}

BoundedSReport bounded_s_probe(const Scenario& s, const GridSpec& base,
                               F2Constant constant) {
    BoundedSReport report;
    const GridSpec g = base.normalized();
    std::vector<double> box(static_cast<std::size_t>(g.dim()));
    for (int k = 0; k < g.dim(); ++k) {
        const GridAxis& axis = g.axes[static_cast<std::size_t>(k)];
        box[static_cast<std::size_t>(k)] = std::max(std::abs(axis.min), std::abs(axis.max));
    }
    const auto outside_base = [&](const Vec& t) {
        for (int k = 0; k < t.dim(); ++k) {
            if (std::abs(t[k]) > box[static_cast<std::size_t>(k)] + 1e-9) return true;
        }
        return false;
    };
    for (const LandscapeSample& sample : scan(s, g, constant)) {
        if (sample.in_s && sample.t.norm() > 0.0) report.base_nontrivial_members += 1;
    }
    for (const LandscapeSample& sample : scan(s, g.scaled(2.0), constant)) {
        if (sample.in_s && outside_base(sample.t)) report.outside_members_x2 += 1;
    }
    for (const LandscapeSample& sample : scan(s, g.scaled(4.0), constant)) {
        if (sample.in_s && outside_base(sample.t)) report.outside_members_x4 += 1;
    }
    report.bounded_in_window =
        report.outside_members_x2 == 0 && report.outside_members_x4 == 0;
    return report;
}

} // namespace wkfi
