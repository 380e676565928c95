// errors.hpp — exception taxonomy shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace gwpt {

struct NotSymmetric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ImaginaryPartNotPositiveDefinite : std::invalid_argument {
    explicit ImaginaryPartNotPositiveDefinite(double eigenvalue)
        : std::invalid_argument("imaginary part is not positive definite (offending eigenvalue "
                                + std::to_string(eigenvalue) + ")"),
          offending_eigenvalue(eigenvalue) {}
    double offending_eigenvalue;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EpsMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// C0 - conj(C) numerically singular. Cannot occur for valid Siegel matrices,
// guarded anyway.
struct SingularDifference : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct NTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidGeometry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooFewPoints : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Experiment configuration text could not be parsed; message carries
// line/field diagnostics. CLI maps this to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// NaN or infinity appeared inside a sweep; message carries rule/N context.
// CLI maps this to exit code 3.
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gwpt
