#ifndef PBOUND_ERRORS_HPP
#define PBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pbound {

// Bad user input: config fields, file contents, argument ranges.
// The CLI maps these (and std::domain_error) to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure at runtime (integration blow-up etc.); CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pbound

#endif
