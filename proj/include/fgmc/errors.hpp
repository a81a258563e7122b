#pragma once

#include <stdexcept>
#include <string>

namespace fgmc {

// CLI exit code 2
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// CLI exit code 3
struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedKernelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedEstimatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CLI exit code 4
struct ContractViolationError : std::logic_error {
    using std::logic_error::logic_error;
};

struct EmptyBinSuspectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

struct IncompleteInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace fgmc
