#pragma once

#include <stdexcept>
#include <string>

namespace takagi {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed sequence spec, bit string, or config input.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Input outside the mathematical domain of an operation
// (zero tail mean, degenerate normalizer, out-of-range parameter).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// The requested tolerance cannot be certified at the available
// bit length.  required_bits is a sufficient precision when known.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& msg, long required_bits_hint = 0)
        : Error(msg), required_bits(required_bits_hint) {}
    long required_bits;
};

} // namespace takagi
