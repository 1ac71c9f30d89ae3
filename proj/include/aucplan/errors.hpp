#pragma once

#include <stdexcept>
#include <string>

namespace aucplan {

// Thrown when an input violates a documented constraint. The message names
// the constraint, e.g. "theta0 must be below theta".
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

void require_finite(double x, const char* name);
void require_open_unit(double p, const char* name);
void require_positive(double x, const char* name);

} // namespace detail
} // namespace aucplan
