#ifndef SPHDPP_ERRORS_HPP
#define SPHDPP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sphdpp {

/// Numerical failure inside an algorithm (eigen-solver stall, quadrature
/// non-convergence, singular configuration, ...). Distinct from
/// std::domain_error, which is reserved for invalid inputs.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The DPP sampler exceeded its consecutive-rejection budget.
class SamplerStallError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The sampler's Gram factorization lost positive definiteness beyond
/// tolerance, or a conditional density went negative beyond slack.
class DegeneracyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A configuration contains (numerically) coincident points, so a pairwise
/// energy is singular.
class SingularConfigurationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace sphdpp

#endif
