#pragma once

#include <span>
#include <vector>

#include "cmlearn/polygon.hpp"

namespace cml {

struct GridCell {
    int i = 0;  // theta_x index
    int j = 0;  // theta_y index

    bool operator==(const GridCell&) const = default;
};

// Occupancy counter over the angular plane, extent [-90, +90] degrees per
// axis, cells addressed by their centers.
class VotingGrid {
public:
    explicit VotingGrid(double resolution_deg = 1.0);

    int cells_per_axis() const { return n_; }
    double resolution_deg() const { return resolution_deg_; }
    AngularPoint cell_center(int i, int j) const;

    int count(int i, int j) const { return counts_[static_cast<std::size_t>(i) * n_ + j]; }
    int& count(int i, int j) { return counts_[static_cast<std::size_t>(i) * n_ + j]; }

    int max_count() const;
    std::vector<GridCell> max_cells() const;

    int polygons_voted() const { return polygons_voted_; }
    void note_polygons(int k) { polygons_voted_ += k; }

    const std::vector<int>& counts() const { return counts_; }

private:
    double resolution_deg_;
    int n_;
    std::vector<int> counts_;
    int polygons_voted_ = 0;
};

// Adds one count to every cell whose center lies inside each polygon
// (boundary-inclusive, so edge-grazing votes are deterministic).
void vote(std::span<const AngularPolygon> polys, VotingGrid& grid);
VotingGrid vote(std::span<const AngularPolygon> polys, double resolution_deg = 1.0);

// Among the max-count cells, the one minimizing the summed Euclidean
// distance (in angular coordinates) to the others; ties resolve to the
// lexicographically smallest (i, j).
GridCell vector_median_cell(const VotingGrid& grid);

}  // namespace cml
