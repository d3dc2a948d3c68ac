#pragma once

#include <stdexcept>
#include <string>

namespace quartic {

/// Error categories, aligned with the CLI exit codes.
enum class ErrorKind {
    BadInput,         // exit 2: malformed or invalid surface/point spec
    NotOnSurface,     // exit 3
    OmegaPoint,       // exit 4
    Internal,         // exit 5: broken invariant (e.g. tangent inside the curve)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

} // namespace quartic
