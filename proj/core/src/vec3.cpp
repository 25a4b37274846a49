#include "cmlearn/vec3.hpp"

#include <cmath>
#include <utility>

namespace cml {

bool solve3(const Mat3& a, const Vec3& b, Vec3& x) {
    double aug[3][4] = {{a.m[0][0], a.m[0][1], a.m[0][2], b.x},
                        {a.m[1][0], a.m[1][1], a.m[1][2], b.y},
                        {a.m[2][0], a.m[2][1], a.m[2][2], b.z}};

    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(aug[r][col]) > std::fabs(aug[pivot][col])) pivot = r;
        if (std::fabs(aug[pivot][col]) < 1e-14) return false;
        if (pivot != col)
            for (int c = col; c < 4; ++c) std::swap(aug[pivot][c], aug[col][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = aug[r][col] / aug[col][col];
            for (int c = col; c < 4; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    x = {aug[0][3] / aug[0][0], aug[1][3] / aug[1][1], aug[2][3] / aug[2][2]};
    return true;
}

}  // namespace cml
