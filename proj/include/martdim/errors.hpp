#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace martdim {

/// File parse or serialization failure; carries the byte offset at which the
/// problem was detected.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::uint64_t byte_offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}

    std::uint64_t byte_offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

/// The factorization found a rank different from the caller's expectation.
class RankMismatchError : public std::runtime_error {
public:
    RankMismatchError(int expected, int actual)
        : std::runtime_error("rank mismatch: expected " + std::to_string(expected) +
                             ", found " + std::to_string(actual)),
          expected_(expected), actual_(actual) {}

    int expected() const noexcept { return expected_; }
    int actual() const noexcept { return actual_; }

private:
    int expected_;
    int actual_;
};

/// A matrix that should have orthonormal rows does not, beyond tolerance.
class OrthonormalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Config validation failure, naming the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("config key '" + key + "': " + what), key_(key) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace martdim
