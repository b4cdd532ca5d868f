#include "wkfi/svg.hpp"

#include "wkfi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace wkfi {

namespace {

struct Layout {
    double margin = 48.0;
    double plot = 520.0;
    double width() const { return plot + 2.0 * margin; }
    double height() const { return plot + 2.0 * margin + 16.0; }
};

std::string color_for(double lambda, double pos_scale, double neg_scale) {
    // Diverging map: blue for Lambda < 0, white near 0, red for Lambda > 0.
    int r = 255, g = 255, b = 255;
    if (lambda > 0.0 && pos_scale > 0.0) {
        const double u = std::min(1.0, lambda / pos_scale);
        g = b = static_cast<int>(std::lround(255.0 * (1.0 - 0.85 * u)));
    } else if (lambda < 0.0 && neg_scale > 0.0) {
        const double u = std::min(1.0, -lambda / neg_scale);
        r = g = static_cast<int>(std::lround(255.0 * (1.0 - 0.85 * u)));
    }
    std::ostringstream s;
    s << "rgb(" << r << "," << g << "," << b << ")";
    return s.str();
}

} // namespace

void write_lambda_svg(const std::string& path, const GridSpec& grid,
                      const std::vector<LandscapeSample>& samples,
                      const std::string& title) {
    const GridSpec g = grid.normalized();
    if (g.dim() != 2) {
        throw std::invalid_argument("write_lambda_svg requires a 2-D grid");
    }
    const int n1 = g.axes[0].count;
    const int n2 = g.axes[1].count;
    if (samples.size() != static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2)) {
        throw std::invalid_argument("sample count does not match grid");
    }
    const auto at = [&](int i, int j) -> const LandscapeSample& {
        return samples[static_cast<std::size_t>(i) * static_cast<std::size_t>(n2) +
                       static_cast<std::size_t>(j)];
    };

    double pos_scale = 0.0, neg_scale = 0.0;
    for (const LandscapeSample& s : samples) {
        pos_scale = std::max(pos_scale, s.lambda);
        neg_scale = std::max(neg_scale, -s.lambda);
    }

    const Layout layout;
    const GridAxis& ax1 = g.axes[0];
    const GridAxis& ax2 = g.axes[1];
    const auto px = [&](double t1) {
        return layout.margin + (t1 - ax1.min) / (ax1.max - ax1.min) * layout.plot;
    };
    const auto py = [&](double t2) {
        // SVG y grows downward; put t2.max at the top.
        return layout.margin + (ax2.max - t2) / (ax2.max - ax2.min) * layout.plot;
    };
    const double cell_w = layout.plot / static_cast<double>(n1 - 1);
    const double cell_h = layout.plot / static_cast<double>(n2 - 1);

    std::ofstream out(path);
    if (!out) throw IoError("cannot write SVG file: " + path);
    out << std::setprecision(6);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << layout.width() << "\" height=\"" << layout.height() << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Heatmap cells centered on the grid points.
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const LandscapeSample& s = at(i, j);
            out << "<rect x=\"" << px(s.t[0]) - 0.5 * cell_w << "\" y=\""
                << py(s.t[1]) - 0.5 * cell_h << "\" width=\"" << cell_w
                << "\" height=\"" << cell_h << "\" fill=\""
                << color_for(s.lambda, pos_scale, neg_scale) << "\"/>\n";
        }
    }

    // Lambda = 0 contour via marching squares on grid cells.
    out << "<g stroke=\"black\" stroke-width=\"1.2\" fill=\"none\">\n";
    for (int i = 0; i + 1 < n1; ++i) {
        for (int j = 0; j + 1 < n2; ++j) {
            const LandscapeSample& s00 = at(i, j);
            const LandscapeSample& s10 = at(i + 1, j);
            const LandscapeSample& s01 = at(i, j + 1);
            const LandscapeSample& s11 = at(i + 1, j + 1);
            struct Edge {
                const LandscapeSample* a;
                const LandscapeSample* b;
            };
            const Edge edges[4] = {{&s00, &s10}, {&s10, &s11}, {&s11, &s01}, {&s01, &s00}};
            std::vector<std::pair<double, double>> crossings;
            for (const Edge& e : edges) {
                const double va = e.a->lambda, vb = e.b->lambda;
                if ((va < 0.0) == (vb < 0.0)) continue;
                const double u = va / (va - vb);
                const double t1 = e.a->t[0] + u * (e.b->t[0] - e.a->t[0]);
                const double t2 = e.a->t[1] + u * (e.b->t[1] - e.a->t[1]);
                crossings.emplace_back(px(t1), py(t2));
            }
            for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
                out << "<line x1=\"" << crossings[k].first << "\" y1=\""
                    << crossings[k].second << "\" x2=\"" << crossings[k + 1].first
                    << "\" y2=\"" << crossings[k + 1].second << "\"/>\n";
            }
        }
    }
    out << "</g>\n";

    // Stipple the S-members so the sufficient-condition region reads as a
    // grey overlay on the heatmap.
    out << "<g fill=\"black\" fill-opacity=\"0.45\">\n";
    for (const LandscapeSample& s : samples) {
        if (!s.in_s) continue;
        out << "<circle cx=\"" << px(s.t[0]) << "\" cy=\"" << py(s.t[1])
            << "\" r=\"1.3\"/>\n";
    }
    out << "</g>\n";

    // Frame and labels.
    out << "<rect x=\"" << layout.margin << "\" y=\"" << layout.margin
        << "\" width=\"" << layout.plot << "\" height=\"" << layout.plot
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << layout.margin << "\" y=\"" << layout.margin - 14.0
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    out << "<text x=\"" << layout.margin + 0.5 * layout.plot << "\" y=\""
        << layout.margin + layout.plot + 32.0
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">t1 in ["
        << ax1.min << ", " << ax1.max << "], t2 in [" << ax2.min << ", " << ax2.max
        << "]; shading: Lambda (blue &lt; 0 &lt; red), dots: S-members, line: Lambda = 0</text>\n";
    out << "</svg>\n";
    if (!out) throw IoError("failed while writing SVG file: " + path);
}

} // namespace wkfi
