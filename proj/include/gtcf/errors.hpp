#pragma once

#include <stdexcept>
#include <string>

namespace gtcf {

// Malformed or inconsistent input data (bad tables, unknown variables,
// mismatched blocks, non-injective edge maps, ...). CLI exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured computation bound was exceeded (basis size, degree cap,
// expansion size). Deterministic by construction. CLI exit code 4.
struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gtcf
