#pragma once

#include <stdexcept>

namespace rootgeo {

// Exact division left a remainder.
struct NonZeroRemainder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic attempted between elements of incompatible quadratic fields.
struct MixedRadicand : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation invoked outside the parameter regime it is defined for.
struct WrongRegime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested quantity does not exist for these parameters (negative discriminant).
struct Undefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rootgeo
