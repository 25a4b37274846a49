#include "cmlearn/types.hpp"

#include <cmath>
#include <string>

#include "cmlearn/error.hpp"

namespace cml {

void MotionModel::validate() const {
    if (n_compliant < 0 || n_compliant > 2)
        throw Error(ErrorCode::invalid_input, "model: n_compliant must be 0, 1 or 2");
    if (static_cast<int>(compliant_axes.size()) != n_compliant)
        throw Error(ErrorCode::invalid_input, "model: axis list does not match n_compliant");
    if (std::fabs(desired_direction.norm() - 1.0) > 1e-6)
        throw Error(ErrorCode::invalid_input, "model: desired_direction is not unit length");
    for (std::size_t i = 0; i < compliant_axes.size(); ++i) {
        if (std::fabs(compliant_axes[i].norm() - 1.0) > 1e-6)
            throw Error(ErrorCode::invalid_input,
                        "model: compliant axis " + std::to_string(i) + " is not unit length");
        if (std::fabs(compliant_axes[i].dot(desired_direction)) > 1e-6)
            throw Error(ErrorCode::invalid_input,
                        "model: compliant axis " + std::to_string(i) +
                            " is not orthogonal to the desired direction");
        for (std::size_t j = i + 1; j < compliant_axes.size(); ++j)
            if (std::fabs(compliant_axes[i].dot(compliant_axes[j])) > 1e-6)
                throw Error(ErrorCode::invalid_input, "model: compliant axes not orthogonal");
    }
    if (stiffness_stiff < 0.0 || stiffness_compliant < 0.0 || damping <= 0.0)
        throw Error(ErrorCode::invalid_input, "model: stiffness/damping out of range");
}

}  // namespace cml
