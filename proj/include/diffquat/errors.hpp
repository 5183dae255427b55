#pragma once

#include <stdexcept>
#include <string>

namespace diffquat {

// Arithmetic-level failures: division by zero, zero radicand, singular input.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mixing elements of unrelated differential field towers.
struct TowerMismatchError : MathError {
    using MathError::MathError;
};

// Operation requested outside its supported base derivation / coefficient field.
struct CapabilityError : MathError {
    using MathError::MathError;
};

// Expression / problem-file syntax errors. `offset` is a 0-based byte position.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

} // namespace diffquat
