#ifndef OOVR_ERRORS_HPP
#define OOVR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oovr {

// Bad arguments or violated preconditions. Maps to exit code 1.
class UsageError : public std::runtime_error {
  public:
    explicit UsageError(const std::string &what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data. Maps to exit code 2.
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace oovr

#endif
