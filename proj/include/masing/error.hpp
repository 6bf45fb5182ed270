#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace masing {

enum class ErrorKind {
  Parse,
  UnknownIdentifier,
  UnknownName,
  OutOfBox,
  Ellipticity,
  NonFinite,
  BoxExit,
  Instability,
  SingularJacobian,
  DegenerateSpeed,
  Coverage,
  Hemisphere,
  NonPureField,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error raised by the library. The kind drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& what, std::size_t position)
      : Error(kind, what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Raised by the march; carries the v-level being computed and the offending grid node.
class MarchError : public Error {
 public:
  MarchError(ErrorKind kind, const std::string& what, std::size_t level, std::size_t node)
      : Error(kind, what), level_(level), node_(node) {}
  std::size_t level() const noexcept { return level_; }
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t level_;
  std::size_t node_;
};

}  // namespace masing
