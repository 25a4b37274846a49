#include "cmlearn/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cmlearn/error.hpp"

namespace cml {

namespace {

std::ofstream open_svg(const std::filesystem::path& path, int w, int h) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out;
}

std::string heat_color(double t) {
    // white -> yellow -> red
    t = std::clamp(t, 0.0, 1.0);
    const int r = 255;
    const int g = static_cast<int>(255.0 * (1.0 - 0.75 * t));
    const int b = static_cast<int>(255.0 * (1.0 - t));
    std::ostringstream ss;
    ss << "rgb(" << r << ',' << g << ',' << b << ')';
    return ss.str();
}

const char* series_color(std::size_t i) {
    static const char* colors[] = {"#4878cf", "#d65f5f", "#6acc65", "#b47cc7", "#c4ad66"};
    return colors[i % 5];
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * (static_cast<double>(v.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

void write_heatmap_svg(const std::filesystem::path& path, const VotingGrid& grid) {
    const int n = grid.cells_per_axis();
    const int cell = std::max(1, 720 / n);
    const int size = n * cell + 80;
    std::ofstream out = open_svg(path, size, size);

    const int maxc = std::max(1, grid.max_count());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int c = grid.count(i, j);
            if (c == 0) continue;
            // theta_x to the right, theta_y up
            const int px = 40 + i * cell;
            const int py = 40 + (n - 1 - j) * cell;
            out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"" << heat_color(double(c) / maxc)
                << "\"/>\n";
        }
    out << "<rect x=\"40\" y=\"40\" width=\"" << n * cell << "\" height=\"" << n * cell
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << size / 2 << "\" y=\"" << size - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">theta_x (cells), max count " << maxc
        << "</text>\n";
    out << "</svg>\n";
}

void write_polygons_svg(const std::filesystem::path& path,
                        std::span<const AngularPolygon> thetas, const AngularPolygon* phi) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    auto grow = [&](const AngularPolygon& p) {
        for (const AngularPoint& v : p.vertices) {
            lo = std::min({lo, v.theta_x, v.theta_y});
            hi = std::max({hi, v.theta_x, v.theta_y});
        }
    };
    for (const AngularPolygon& p : thetas) grow(p);
    if (phi) grow(*phi);
    if (!(hi > lo)) {
        lo = -1.0;
        hi = 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const int size = 720;
    std::ofstream out = open_svg(path, size, size);
    auto px = [&](double x) { return (x - lo) / (hi - lo) * (size - 80) + 40; };
    auto py = [&](double y) { return size - 40 - (y - lo) / (hi - lo) * (size - 80); };

    auto emit = [&](const AngularPolygon& p, const std::string& stroke, const std::string& fill,
                    double opacity) {
        out << "<polygon points=\"";
        for (const AngularPoint& v : p.vertices) out << px(v.theta_x) << ',' << py(v.theta_y) << ' ';
        out << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity << "\" stroke=\"" << stroke
            << "\" stroke-width=\"1.5\"/>\n";
    };
    for (std::size_t i = 0; i < thetas.size(); ++i)
        emit(thetas[i], series_color(i % 2), "none", 0.0);
    if (phi) emit(*phi, "black", "black", 0.25);

    // axes through the origin
    out << "<line x1=\"" << px(lo) << "\" y1=\"" << py(0) << "\" x2=\"" << px(hi) << "\" y2=\""
        << py(0) << "\" stroke=\"#999\"/>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(0) << "\" y2=\""
        << py(hi) << "\" stroke=\"#999\"/>\n";
    out << "</svg>\n";
}

void write_boxplot_svg(const std::filesystem::path& path, std::span<const BoxGroup> groups,
                       const std::string& y_label) {
    const int w = 160 * std::max<std::size_t>(1, groups.size()) + 80;
    const int h = 480;
    std::ofstream out = open_svg(path, w, h);

    double vmax = 0.0;
    for (const BoxGroup& g : groups)
        for (double v : g.values) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;
    vmax *= 1.1;

    auto py = [&](double v) { return h - 60 - v / vmax * (h - 120); };

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const BoxGroup& g = groups[gi];
        if (g.values.empty()) continue;
        const double cx = 80 + 160.0 * static_cast<double>(gi) + 40;
        const double q1 = quantile(g.values, 0.25);
        const double q2 = quantile(g.values, 0.50);
        const double q3 = quantile(g.values, 0.75);
        const double mn = *std::min_element(g.values.begin(), g.values.end());
        const double mx = *std::max_element(g.values.begin(), g.values.end());

        out << "<line x1=\"" << cx << "\" y1=\"" << py(mn) << "\" x2=\"" << cx << "\" y2=\""
            << py(mx) << "\" stroke=\"black\"/>\n";
        out << "<rect x=\"" << cx - 35 << "\" y=\"" << py(q3) << "\" width=\"70\" height=\""
            << py(q1) - py(q3) << "\" fill=\"#cfe0f5\" stroke=\"#4878cf\"/>\n";
        out << "<line x1=\"" << cx - 35 << "\" y1=\"" << py(q2) << "\" x2=\"" << cx + 35
            << "\" y2=\"" << py(q2) << "\" stroke=\"#d65f5f\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << cx << "\" y=\"" << h - 30
            << "\" text-anchor=\"middle\" font-size=\"14\">" << g.label << "</text>\n";
    }
    out << "<text x=\"20\" y=\"" << h / 2 << "\" font-size=\"14\" transform=\"rotate(-90 20 "
        << h / 2 << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
    out << "</svg>\n";
}

void write_bars_svg(const std::filesystem::path& path, std::span<const BarGroup> groups,
                    std::span<const std::string> series, const std::string& y_label) {
    const int w = 200 * std::max<std::size_t>(1, groups.size()) + 80;
    const int h = 480;
    std::ofstream out = open_svg(path, w, h);

    double vmin = 0.0, vmax = 0.0;
    for (const BarGroup& g : groups)
        for (double v : g.values) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    if (vmax - vmin < 1e-12) vmax = vmin + 1.0;
    const double span = (vmax - vmin) * 1.1;

    auto py = [&](double v) { return h - 60 - (v - vmin) / span * (h - 120); };
    const double y0 = py(0.0);

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const BarGroup& g = groups[gi];
        const double gx = 80 + 200.0 * static_cast<double>(gi);
        const double bw = 140.0 / std::max<std::size_t>(1, g.values.size());
        for (std::size_t vi = 0; vi < g.values.size(); ++vi) {
            const double v = g.values[vi];
            const double x = gx + bw * static_cast<double>(vi);
            out << "<rect x=\"" << x << "\" y=\"" << std::min(py(v), y0) << "\" width=\""
                << bw - 6 << "\" height=\"" << std::fabs(py(v) - y0) << "\" fill=\""
                << series_color(vi) << "\"/>\n";
        }
        out << "<text x=\"" << gx + 70 << "\" y=\"" << h - 30
            << "\" text-anchor=\"middle\" font-size=\"14\">" << g.label << "</text>\n";
    }
    for (std::size_t si = 0; si < series.size(); ++si) {
        out << "<rect x=\"" << 80 + 120.0 * static_cast<double>(si) << "\" y=\"10\" width=\"12\""
            << " height=\"12\" fill=\"" << series_color(si) << "\"/>\n";
        out << "<text x=\"" << 96 + 120.0 * static_cast<double>(si)
            << "\" y=\"21\" font-size=\"13\">" << series[si] << "</text>\n";
    }
    out << "<line x1=\"60\" y1=\"" << y0 << "\" x2=\"" << w - 20 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"20\" y=\"" << h / 2 << "\" font-size=\"14\" transform=\"rotate(-90 20 "
        << h / 2 << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
    out << "</svg>\n";
}

}  // namespace cml
