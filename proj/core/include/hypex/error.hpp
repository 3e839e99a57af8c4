#pragma once

#include <stdexcept>
#include <string>

namespace hypex {

enum class ErrorKind {
    Parse,
    Inhomogeneous,
    EmptyInput,
    Dimension,
    Range,
    Domain,
    Instability,
    Budget,
    Convergence,
    NotExist,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hypex
