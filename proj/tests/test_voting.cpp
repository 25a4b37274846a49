#include <doctest.h>

#include "cmlearn/voting.hpp"
#include "test_support.hpp"

using namespace cml;

namespace {

AngularPolygon square(double cx, double cy, double half) {
    return {{{cx - half, cy - half}, {cx + half, cy - half}, {cx + half, cy + half},
             {cx - half, cy + half}}};
}

}  // namespace

TEST_CASE("grid geometry") {
    const VotingGrid grid(1.0);
    CHECK(grid.cells_per_axis() == 180);
    const AngularPoint first = grid.cell_center(0, 0);
    CHECK(first.theta_x == doctest::Approx(-89.5 * test::k_pi / 180.0));
    const AngularPoint last = grid.cell_center(179, 179);
    CHECK(last.theta_y == doctest::Approx(89.5 * test::k_pi / 180.0));
}

TEST_CASE("two identical squares double-count, disjoint ones do not") {
    const AngularPolygon sq = square(0.0, 0.0, 0.3);
    const AngularPolygon polys_same[] = {sq, sq};
    CHECK(vote(polys_same, 1.0).max_count() == 2);

    const AngularPolygon polys_apart[] = {square(-0.8, -0.8, 0.2), square(0.8, 0.8, 0.2)};
    const VotingGrid grid = vote(polys_apart, 1.0);
    CHECK(grid.max_count() == 1);
    CHECK(grid.polygons_voted() == 2);
}

TEST_CASE("per-cell counts equal a direct membership recount") {
    Rng rng(31);
    std::vector<AngularPolygon> polys;
    for (int i = 0; i < 6; ++i) polys.push_back(test::random_convex_polygon(rng, 7, 0.9));
    const VotingGrid grid = vote(polys, 2.0);

    for (int i = 0; i < grid.cells_per_axis(); ++i)
        for (int j = 0; j < grid.cells_per_axis(); ++j) {
            int expected = 0;
            for (const AngularPolygon& p : polys)
                if (point_in_polygon(grid.cell_center(i, j), p)) ++expected;
            REQUIRE(grid.count(i, j) == expected);
        }
}

TEST_CASE("max count never exceeds the number of polygons") {
    Rng rng(37);
    std::vector<AngularPolygon> polys;
    for (int i = 0; i < 5; ++i) polys.push_back(test::random_convex_polygon(rng));
    const VotingGrid grid = vote(polys, 1.0);
    CHECK(grid.max_count() <= 5);
    CHECK(grid.max_count() >= 1);
}

TEST_CASE("vector median of a single max cell") {
    VotingGrid grid(1.0);
    grid.count(42, 99) = 3;
    const GridCell cell = vector_median_cell(grid);
    CHECK(cell == GridCell{42, 99});
}

TEST_CASE("vector median picks the distance-sum minimizer") {
    // cells (0,0), (2,0), (0,2): corner sum 4 beats 2 + 2*sqrt(2)
    VotingGrid grid(1.0);
    grid.count(0, 0) = 5;
    grid.count(2, 0) = 5;
    grid.count(0, 2) = 5;
    CHECK(vector_median_cell(grid) == GridCell{0, 0});
}

TEST_CASE("vector median ties break to the lexicographically smallest cell") {
    VotingGrid grid(1.0);
    grid.count(10, 10) = 2;
    grid.count(20, 20) = 2;  // symmetric pair, equal sums
    CHECK(vector_median_cell(grid) == GridCell{10, 10});
}

TEST_CASE("vector median equals the brute-force minimizer on random max sets") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        VotingGrid grid(1.0);
        std::vector<GridCell> cells;
        const int count = 2 + static_cast<int>(rng.uniform() * 20);
        for (int c = 0; c < count; ++c) {
            const GridCell cell{static_cast<int>(rng.uniform() * 180),
                                static_cast<int>(rng.uniform() * 180)};
            if (grid.count(cell.i, cell.j) != 0) continue;
            grid.count(cell.i, cell.j) = 7;
            cells.push_back(cell);
        }
        if (cells.size() < 2) continue;

        // independent brute force over the marked cells
        double best_sum = 1e300;
        GridCell best{1 << 20, 1 << 20};
        for (std::size_t a = 0; a < cells.size(); ++a) {
            double sum = 0;
            const AngularPoint pa = grid.cell_center(cells[a].i, cells[a].j);
            for (std::size_t b = 0; b < cells.size(); ++b) {
                const AngularPoint pb = grid.cell_center(cells[b].i, cells[b].j);
                sum += std::hypot(pa.theta_x - pb.theta_x, pa.theta_y - pb.theta_y);
            }
            const bool tie = std::fabs(sum - best_sum) <= 1e-12;
            const bool smaller = sum < best_sum - 1e-12;
            const bool lex = std::pair{cells[a].i, cells[a].j} < std::pair{best.i, best.j};
            if (smaller || (tie && lex)) {
                best_sum = std::min(sum, best_sum);
                best = cells[a];
            }
        }
        REQUIRE(vector_median_cell(grid) == best);
    }
}
