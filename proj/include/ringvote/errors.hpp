#pragma once

#include <stdexcept>
#include <string>

namespace ringvote {

// Malformed or out-of-contract input (bad encodings, range violations, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Violation of a structural guarantee (chain linkage, replay mismatch, tampering).
struct IntegrityError : std::runtime_error {
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// A condition that should be unreachable with honest inputs (bounded loops, etc.).
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ringvote
