#ifndef DTBC_ERROR_HPP
#define DTBC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dtbc {

// Bad user input: malformed mesh, out-of-range scheme weights, data that
// violates the tail assumptions. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Breakdown during a computation on validated input (zero pivot, branch cut
// hit by the contour, far-boundary contamination). Exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dtbc

#endif // DTBC_ERROR_HPP
