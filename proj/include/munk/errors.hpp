#ifndef MUNK_ERRORS_HPP
#define MUNK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace munk {

// I/O failures: unreadable files, parse errors, truncated model files.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration: invalid kernel parameters, inconsistent flags.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Bad runtime input: dimension mismatches, empty classes, negative entries.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace munk

#endif
