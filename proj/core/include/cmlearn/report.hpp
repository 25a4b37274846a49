#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cmlearn/polygon.hpp"
#include "cmlearn/voting.hpp"

namespace cml {

// Voting-grid heatmap; cells colored by count.
void write_heatmap_svg(const std::filesystem::path& path, const VotingGrid& grid);

// Constraint polygons plus the feasible intersection, in angular coords.
void write_polygons_svg(const std::filesystem::path& path,
                        std::span<const AngularPolygon> thetas, const AngularPolygon* phi);

struct BoxGroup {
    std::string label;
    std::vector<double> values;
};

// Box plot (median, quartiles, min/max whiskers) per group.
void write_boxplot_svg(const std::filesystem::path& path, std::span<const BoxGroup> groups,
                       const std::string& y_label);

struct BarGroup {
    std::string label;
    std::vector<double> values;  // one bar per value
};

// Grouped bar chart, used for the per-model BIC scores.
void write_bars_svg(const std::filesystem::path& path, std::span<const BarGroup> groups,
                    std::span<const std::string> series, const std::string& y_label);

}  // namespace cml
