#include "cmlearn/voting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmlearn/error.hpp"

namespace cml {

namespace {
constexpr double k_half_extent_deg = 90.0;
constexpr double k_deg = std::numbers::pi / 180.0;
}  // namespace

VotingGrid::VotingGrid(double resolution_deg) : resolution_deg_(resolution_deg) {
    if (resolution_deg <= 0.0)
        throw Error(ErrorCode::invalid_input, "voting grid resolution must be positive");
    n_ = std::max(1, static_cast<int>(std::floor(2.0 * k_half_extent_deg / resolution_deg + 0.5)));
    counts_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

AngularPoint VotingGrid::cell_center(int i, int j) const {
    const double res = resolution_deg_ * k_deg;
    const double lo = -k_half_extent_deg * k_deg;
    return {lo + (i + 0.5) * res, lo + (j + 0.5) * res};
}

int VotingGrid::max_count() const {
    int best = 0;
    for (int c : counts_) best = std::max(best, c);
    return best;
}

std::vector<GridCell> VotingGrid::max_cells() const {
    const int best = max_count();
    std::vector<GridCell> cells;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (count(i, j) == best) cells.push_back({i, j});
    return cells;
}

void vote(std::span<const AngularPolygon> polys, VotingGrid& grid) {
    if (polys.empty()) throw Error(ErrorCode::invalid_input, "vote: no polygons");

    const int n = grid.cells_per_axis();
    const double res = grid.resolution_deg() * k_deg;
    const double lo = -k_half_extent_deg * k_deg;

    for (const AngularPolygon& poly : polys) {
        // only the cells under the polygon's bounding box can be inside
        double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
        double min_y = min_x, max_y = -min_x;
        for (const AngularPoint& v : poly.vertices) {
            min_x = std::min(min_x, v.theta_x);
            max_x = std::max(max_x, v.theta_x);
            min_y = std::min(min_y, v.theta_y);
            max_y = std::max(max_y, v.theta_y);
        }
        const int i0 = std::clamp(static_cast<int>(std::floor((min_x - lo) / res)) - 1, 0, n - 1);
        const int i1 = std::clamp(static_cast<int>(std::ceil((max_x - lo) / res)) + 1, 0, n - 1);
        const int j0 = std::clamp(static_cast<int>(std::floor((min_y - lo) / res)) - 1, 0, n - 1);
        const int j1 = std::clamp(static_cast<int>(std::ceil((max_y - lo) / res)) + 1, 0, n - 1);

        for (int i = i0; i <= i1; ++i)
            for (int j = j0; j <= j1; ++j)
                if (point_in_polygon(grid.cell_center(i, j), poly)) ++grid.count(i, j);
    }
    grid.note_polygons(static_cast<int>(polys.size()));
}

VotingGrid vote(std::span<const AngularPolygon> polys, double resolution_deg) {
    VotingGrid grid(resolution_deg);
    vote(polys, grid);
    return grid;
}

GridCell vector_median_cell(const VotingGrid& grid) {
    const std::vector<GridCell> cells = grid.max_cells();
    if (cells.empty() || grid.max_count() == 0)
        throw Error(ErrorCode::invalid_input, "vector_median_cell: empty grid");
    if (cells.size() == 1) return cells[0];

    // max_cells() scans in (i, j) order, so the first minimizer found is
    // already the lexicographic tie-break.
    double best_sum = std::numeric_limits<double>::infinity();
    GridCell best = cells[0];
    for (const GridCell& c : cells) {
        const AngularPoint pc = grid.cell_center(c.i, c.j);
        double sum = 0.0;
        for (const GridCell& o : cells) {
            const AngularPoint po = grid.cell_center(o.i, o.j);
            const double dx = pc.theta_x - po.theta_x;
            const double dy = pc.theta_y - po.theta_y;
            sum += std::sqrt(dx * dx + dy * dy);
        }
        if (sum < best_sum - 1e-12) {
            best_sum = sum;
            best = c;
        }
    }
    return best;
}

}  // namespace cml
