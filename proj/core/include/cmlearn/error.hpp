#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cml {

enum class ErrorCode {
    invalid_input,        // malformed data, broken invariants
    no_motion,            // trajectory never moves
    degenerate_geometry,  // collapsed polygon, singular constraint
    conflicting_demos,    // empty feasible set
    io                    // file / parse problems
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Empty intersection between constraint polygons; carries the first pair
// of input polygons found to be mutually disjoint.
class ConflictError : public Error {
public:
    ConflictError(std::size_t first, std::size_t second, const std::string& what)
        : Error(ErrorCode::conflicting_demos, what), first_(first), second_(second) {}
    std::size_t first_index() const { return first_; }
    std::size_t second_index() const { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

}  // namespace cml
