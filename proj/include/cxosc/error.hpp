#pragma once

#include <stdexcept>
#include <string>

namespace cxosc {

// Each error kind maps onto one C API status code and one CLI exit code.

class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A PotentialParams quadruple outside the admissible domain. The message
/// names the violated inequality.
class ParameterDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The grid cannot resolve the requested state (turning point too close to
/// the window edge, or basis index above the supported ceiling).
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

class NormalizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Request outside the supported physical regime (e.g. Wigner for lambda != 0).
class UnsupportedRegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cxosc
