#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hwcl {

/// Dense vertex index in [0, n).
using VertexId = std::uint32_t;

/// Hop count. `kInfinity` marks unreachable pairs.
using Hops = std::uint32_t;
inline constexpr Hops kInfinity = std::numeric_limits<Hops>::max();

/// Largest distance a label entry may carry; 255 is the 8-bit sentinel.
inline constexpr Hops kMaxLabelDistance = 254;
inline constexpr std::uint8_t kSentinel8 = 255;

/// Argument outside the domain of an operation (bad vertex id, bad k, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed edge-list input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Value does not fit the requested index layout or the label value domain.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Corrupt or truncated index stream.
class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " (at byte offset " + std::to_string(offset) +
                           ")"),
        offset_(offset) {}
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace hwcl
