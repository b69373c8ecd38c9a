#ifndef BPI_ERRORS_HPP
#define BPI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bpi {

// Invalid configuration or violated type invariant. CLI exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Integration accuracy fell below the requested bound. CLI exit code 3.
struct accuracy_error : std::runtime_error {
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

// File reading/writing failure. CLI exit code 4.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bpi

#endif
