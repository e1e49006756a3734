#pragma once

#include <stdexcept>
#include <string>

namespace tailcusum {

// Invalid distribution, model, or test parameter.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a function, e.g. a probability not in (0,1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Order-statistic index out of range.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// The tail threshold X_(k) or X_(k+1) is zero, so log-excesses are undefined.
class DegenerateThresholdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Data cannot support the requested fit (singular normal equations and the like).
class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tailcusum
