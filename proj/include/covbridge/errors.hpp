#pragma once

#include <stdexcept>

namespace covbridge {

/// Invalid parameters or out-of-domain arguments.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A gamma-function pole was hit, or two pole families approached each
/// other within the guard distance where a representation needs them
/// simple.
class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or quadrature failed to reach the requested accuracy.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace covbridge
